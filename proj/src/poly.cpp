#include "pfmat/poly.hpp"

#include <sstream>

namespace pfm {

std::string GInt::str() const {
    std::ostringstream os;
    if (im == 0) {
        os << re;
    } else if (re == 0) {
        if (im == 1)
            os << "i";
        else if (im == -1)
            os << "-i";
        else
            os << im << "i";
    } else {
        os << "(" << re << (im > 0 ? "+" : "") << im << "i)";
    }
    return os.str();
}

Poly Poly::constant(GInt c) {
    Poly p;
    if (!c.is_zero()) p.terms_.emplace(Mono{}, std::move(c));
    return p;
}

Poly Poly::variable(int v) {
    Poly p;
    Mono m;
    m.e[v] = 1;
    p.terms_.emplace(m, GInt(1));
    return p;
}

GInt Poly::constant_value() const {
    if (terms_.empty()) return GInt(0);
    return terms_.begin()->second;
}

void Poly::add_term(const Mono& m, const GInt& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

Poly operator-(const Poly& a) {
    Poly r;
    for (auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
    return r;
}

Poly Poly::pow(int k) const {
    Poly r = Poly::constant(GInt(1));
    Poly base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

std::optional<Poly> Poly::div_exact(const Poly& d) const {
    if (d.is_zero()) throw error("division by zero polynomial");
    Poly rem = *this;
    Poly quot;
    const auto& [dm, dc] = *d.terms_.rbegin();  // leading term, graded-lex
    while (!rem.is_zero()) {
        const auto& [rm, rc] = *rem.terms_.rbegin();
        Mono q;
        for (int i = 0; i < kMaxVars; ++i) {
            int diff = rm.e[i] - dm.e[i];
            if (diff < 0) return std::nullopt;
            q.e[i] = std::int16_t(diff);
        }
        auto qc = rc.div_exact(dc);
        if (!qc) return std::nullopt;
        Poly t;
        t.terms_.emplace(q, *qc);
        quot = quot + t;
        rem = rem - t * d;
    }
    return quot;
}

namespace {
u64 mod_int(const Int& v, u64 p) {
    Int r = v % Int(p);
    if (r < 0) r += Int(p);
    return r.convert_to<u64>();
}
u64 pow_mod(u64 b, u64 e, u64 p) {
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = (unsigned __int128)(r)*b % p;
        b = (unsigned __int128)(b)*b % p;
        e >>= 1;
    }
    return r;
}
}  // namespace

u64 Poly::eval_mod(u64 p, const std::array<u64, kMaxVars>& var_images, u64 i_image) const {
    u64 acc = 0;
    for (auto& [m, c] : terms_) {
        u64 t = (mod_int(c.re, p) + (unsigned __int128)(mod_int(c.im, p)) * i_image) % p;
        for (int v = 0; v < kMaxVars; ++v)
            if (m.e[v]) t = (unsigned __int128)(t)*pow_mod(var_images[v], m.e[v], p) % p;
        acc = (acc + t) % p;
    }
    return acc;
}

std::string Poly::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest-degree terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.str();
        for (int v = 0; v < kMaxVars; ++v) {
            if (it->first.e[v] == 0) continue;
            os << "*" << (v < (int)var_names.size() ? var_names[v] : "x" + std::to_string(v));
            if (it->first.e[v] > 1) os << "^" << it->first.e[v];
        }
    }
    return os.str();
}

}  // namespace pfm
