#include "pfmat/ffield.hpp"

#include <map>

namespace pfm {

namespace {
// digitwise ops on base-p encodings
int poly_add(int a, int b, int p, int k) {
    int r = 0, mul = 1;
    for (int j = 0; j < k; ++j) {
        r += ((a % p + b % p) % p) * mul;
        a /= p;
        b /= p;
        mul *= p;
    }
    return r;
}
int poly_scale(int a, int s, int p, int k) {
    int r = 0, mul = 1;
    for (int j = 0; j < k; ++j) {
        r += ((a % p) * s % p) * mul;
        a /= p;
        mul *= p;
    }
    return r;
}
}  // namespace

FiniteField::FiniteField(int p, int k, int irred) : p_(p), k_(k) {
    q_ = 1;
    for (int j = 0; j < k; ++j) q_ *= p;
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) add_[a * q_ + b] = poly_add(a, b, p, k);
    for (int a = 0; a < q_; ++a) neg_[a] = poly_scale(a, p - 1, p, k);
    // multiplication: schoolbook product then reduction by the irreducible
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) {
            // product as coefficient array of degree <= 2k-2
            int prod[8] = {0};
            int aa = a;
            for (int ia = 0; ia < k; ++ia, aa /= p) {
                int ca = aa % p;
                if (!ca) continue;
                int bb = b;
                for (int ib = 0; ib < k; ++ib, bb /= p)
                    prod[ia + ib] = (prod[ia + ib] + ca * (bb % p)) % p;
            }
            // reduce: x^k = -(irred mod x^k)
            for (int d = 2 * k - 2; d >= k; --d) {
                int c = prod[d];
                if (!c) continue;
                prod[d] = 0;
                int rr = irred;  // irred encodes low k coefficients of the monic irreducible
                for (int j = 0; j < k; ++j, rr /= p)
                    prod[d - k + j] = ((prod[d - k + j] - c * (rr % p)) % p + p) % p;
            }
            int enc = 0, mulp = 1;
            for (int j = 0; j < k; ++j) {
                enc += prod[j] * mulp;
                mulp *= p;
            }
            mul_[a * q_ + b] = enc;
        }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) inv_[a] = b;
}

const FiniteField& FiniteField::gf(int q) {
    static std::map<int, FiniteField*> cache;
    auto it = cache.find(q);
    if (it != cache.end()) return *it->second;
    FiniteField* f = nullptr;
    switch (q) {
        case 2: f = new FiniteField(2, 1, 0); break;
        case 3: f = new FiniteField(3, 1, 0); break;
        case 5: f = new FiniteField(5, 1, 0); break;
        case 7: f = new FiniteField(7, 1, 0); break;
        case 4: f = new FiniteField(2, 2, 1 + 2); break;      // x^2 = x+1
        case 8: f = new FiniteField(2, 3, 1 + 2); break;      // x^3 = x+1
        case 9: f = new FiniteField(3, 2, 1); break;          // x^2 = -1 = 2, irred x^2+1
        default: throw error("unsupported field GF(" + std::to_string(q) + ")");
    }
    cache.emplace(q, f);
    return *f;
}

int FiniteField::inv(int a) const {
    if (a == 0) throw error("inverse of zero");
    return inv_[a];
}

int FiniteField::pow(int a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

int FiniteField::from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    return int(r);
}

std::string FiniteField::elem_str(int a) const {
    if (k_ == 1) return std::to_string(a);
    const char* gen = (q_ == 4 || q_ == 8) ? "w" : "x";
    std::string s;
    int v = a;
    for (int j = 0; j < k_; ++j, v /= p_) {
        int c = v % p_;
        if (!c) continue;
        std::string t;
        if (j == 0)
            t = std::to_string(c);
        else {
            if (c > 1) t = std::to_string(c) + "*";
            t += gen;
            if (j > 1) t += "^" + std::to_string(j);
        }
        s = s.empty() ? t : t + "+" + s;
    }
    return s.empty() ? "0" : s;
}

int FiniteField::parse_elem(const std::string& s) const {
    for (int a = 0; a < q_; ++a)
        if (elem_str(a) == s) return a;
    return -1;
}

}  // namespace pfm
