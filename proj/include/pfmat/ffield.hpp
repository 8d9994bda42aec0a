#pragma once

#include <string>
#include <vector>

#include "pfmat/util.hpp"

namespace pfm {

// Small finite field GF(p^k), q <= 9. Elements are integers 0..q-1 encoding
// polynomials over GF(p) in base p (digit j = coefficient of x^j). The
// non-prime fields use fixed irreducible polynomials so serialized values
// never depend on build details:
//   GF(4) = GF(2)[x]/(x^2+x+1), GF(8) = GF(2)[x]/(x^3+x+1),
//   GF(9) = GF(3)[x]/(x^2+1).
class FiniteField {
  public:
    static const FiniteField& gf(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int characteristic() const { return p_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int inv(int a) const;
    int pow(int a, long long e) const;
    int from_int(long long v) const;  // reduce an ordinary integer mod char

    // x, the generator adjoined for the non-prime fields.
    int x() const { return p_; }

    std::string name() const { return "GF(" + std::to_string(q_) + ")"; }
    std::string elem_str(int a) const;
    // parse "0","1",..,"w","w+1","x",... ; returns -1 if malformed
    int parse_elem(const std::string& s) const;

  private:
    FiniteField(int p, int k, int irred);
    int p_, k_, q_;
    std::vector<int> add_, mul_, neg_, inv_;
};

}  // namespace pfm
