#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pfmat/util.hpp"

namespace pfm {

using Int = boost::multiprecision::cpp_int;

// Element of Z[i]. Fields whose ambient ring has no imaginary unit simply
// keep im == 0 throughout; sharing one coefficient type keeps a single
// polynomial engine for all partial fields.
struct GInt {
    Int re = 0, im = 0;

    GInt() = default;
    GInt(long long r) : re(r) {}
    GInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    Int norm() const { return re * re + im * im; }
    GInt conj() const { return {re, -im}; }
    bool is_unit() const { return norm() == 1; }

    // For a unit, the k with value == i^k.
    int unit_log() const {
        if (re == 1) return 0;
        if (im == 1) return 1;
        if (re == -1) return 2;
        if (im == -1) return 3;
        throw error("unit_log on non-unit");
    }

    friend GInt operator+(const GInt& a, const GInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend GInt operator-(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend GInt operator-(const GInt& a) { return {-a.re, -a.im}; }
    friend GInt operator*(const GInt& a, const GInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GInt& a, const GInt& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GInt& a, const GInt& b) { return !(a == b); }
    friend bool operator<(const GInt& a, const GInt& b) {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
    }

    std::optional<GInt> div_exact(const GInt& d) const {
        Int n = d.norm();
        if (n == 0) throw error("division by zero");
        GInt t = *this * d.conj();
        if (t.re % n != 0 || t.im % n != 0) return std::nullopt;
        return GInt{t.re / n, t.im / n};
    }

    std::string str() const;
};

constexpr int kMaxVars = 3;

// Exponent vector, graded-lex ordered.
struct Mono {
    std::array<std::int16_t, kMaxVars> e{0, 0, 0};

    int total() const { return e[0] + e[1] + e[2]; }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
    friend bool operator<(const Mono& a, const Mono& b) {
        int ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        return a.e < b.e;
    }
    Mono operator+(const Mono& o) const {
        Mono r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::int16_t(e[i] + o.e[i]);
        return r;
    }
};

// Sparse multivariate polynomial over Z[i], at most kMaxVars variables.
class Poly {
  public:
    Poly() = default;
    static Poly constant(GInt c);
    static Poly variable(int v);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{}); }
    GInt constant_value() const;  // requires is_constant()
    int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }
    size_t term_count() const { return terms_.size(); }

    const std::map<Mono, GInt>& terms() const { return terms_; }
    void add_term(const Mono& m, const GInt& c);

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b) { return a.terms_ < b.terms_; }

    Poly pow(int k) const;

    // Exact division in Z[i][x...]; nullopt when the divisor does not divide.
    std::optional<Poly> div_exact(const Poly& d) const;

    // Evaluation mod a prime p, with var_images the residues of the variables
    // and i_image a residue whose square is -1 (only used when im != 0).
    u64 eval_mod(u64 p, const std::array<u64, kMaxVars>& var_images, u64 i_image) const;

    std::string str(const std::vector<std::string>& var_names) const;

  private:
    std::map<Mono, GInt> terms_;  // no zero coefficients stored
};

}  // namespace pfm
