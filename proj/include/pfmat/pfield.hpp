#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfmat/ffield.hpp"
#include "pfmat/poly.hpp"

namespace pfm {

class PartialField;

// Element of a partial field in factored normal form:
//   value = u^unit * prod_j gen_j^exps[j]
// where u is the torsion unit of the owner (-1, or i when the ambient ring is
// Z[i]). ZERO is flagged separately. For a finite field used as a partial
// field, `unit` simply holds the field value and `exps` stays empty.
struct PfElement {
    const PartialField* pf = nullptr;
    bool zero = true;
    int unit = 0;
    std::vector<std::int16_t> exps;

    bool is_zero() const { return zero; }
    bool is_one() const;
    friend bool operator==(const PfElement& a, const PfElement& b) {
        return a.pf == b.pf && a.zero == b.zero && (a.zero || (a.unit == b.unit && a.exps == b.exps));
    }
    friend bool operator!=(const PfElement& a, const PfElement& b) { return !(a == b); }
    friend bool operator<(const PfElement& a, const PfElement& b) {
        if (a.zero != b.zero) return a.zero;
        if (a.unit != b.unit) return a.unit < b.unit;
        return a.exps < b.exps;
    }
    std::string str() const;
};

// A homomorphism into a small finite field, given by residues for the
// variables (and for i when present). Validated on registration: every
// generator must land on a nonzero field element.
struct FqImage {
    const FiniteField* F = nullptr;
    std::array<int, kMaxVars> var_images{};
    int nvars = 0;
    int i_image = 0;
    std::vector<int> gen_images;  // cached, indexed like the owner's generators
    std::string describe() const;
};

class PartialField {
  public:
    PartialField(std::string name, std::vector<std::string> vars, bool has_i);

    // The seven named fields of the artifact, constructed once.
    static const PartialField& U2();
    static const PartialField& U3();
    static const PartialField& H5();
    static const PartialField& K2();
    static const PartialField& H4();
    static const PartialField& H2();
    static const PartialField& GF(int q);  // finite field in partial-field clothing
    static const PartialField* by_name(const std::string& name);

    int add_generator(const std::string& name, Poly p);
    void add_image(const FiniteField& F, std::array<int, kMaxVars> var_images, int i_image = 0);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& variables() const { return vars_; }
    bool has_i() const { return has_i_; }
    int torsion_order() const { return finite_ ? 0 : (has_i_ ? 4 : 2); }
    bool finite() const { return finite_; }
    const FiniteField* finite_field() const { return ff_; }
    int generator_count() const { return int(gens_.size()); }
    const std::string& generator_name(int j) const { return gens_[j].name; }
    const Poly& generator_poly(int j) const { return gens_[j].poly; }
    int generator_index(const std::string& name) const;  // -1 if absent
    const std::vector<FqImage>& images() const { return images_; }

    // element constructors
    PfElement zero() const;
    PfElement one() const;
    PfElement minus_one() const;
    PfElement generator(int j) const;
    PfElement generator(const std::string& name) const;
    PfElement make(int unit, const std::vector<std::pair<int, int>>& exps) const;
    PfElement ff_value(int v) const;  // finite mode only

    // arithmetic; add returns nullopt when the sum leaves G ∪ {0}
    PfElement mul(const PfElement& a, const PfElement& b) const;
    PfElement inv(const PfElement& a) const;
    PfElement neg(const PfElement& a) const;
    PfElement pow(const PfElement& a, int k) const;
    std::optional<PfElement> add(const PfElement& a, const PfElement& b) const;
    std::optional<PfElement> sub(const PfElement& a, const PfElement& b) const;

    // expansion to a polynomial fraction and the inverse direction
    std::pair<Poly, Poly> expand(const PfElement& a) const;
    std::optional<PfElement> normalize(Poly num, Poly den) const;

    int eval(const PfElement& a, const FqImage& img) const;
    // evaluation mod an arbitrary prime with given variable residues; the
    // cross-check oracle for normal-form uniqueness
    u64 eval_mod(const PfElement& a, u64 p, const std::array<u64, kMaxVars>& var_images,
                 u64 i_image) const;

    std::string to_string(const PfElement& a) const;
    PfElement parse(const std::string& s) const;

  private:
    friend class PfHom;
    std::string name_;
    std::vector<std::string> vars_;
    bool has_i_ = false;
    struct Gen {
        std::string name;
        Poly poly;
    };
    std::vector<Gen> gens_;
    std::vector<int> division_order_;  // ascending total degree, ties by registration
    std::vector<FqImage> images_;
    bool finite_ = false;
    const FiniteField* ff_ = nullptr;

    void rebuild_division_order();
};

// Homomorphism between partial fields: an assignment of target elements to
// source variables under which every source generator lands in the target's
// unit group. Construction throws when that fails.
class PfHom {
  public:
    PfHom(const PartialField& src, const PartialField& dst, std::vector<PfElement> var_images);

    const PartialField& src() const { return *src_; }
    const PartialField& dst() const { return *dst_; }
    const PfElement& var_image(int v) const { return var_images_[v]; }
    const PfElement& gen_image(int j) const { return gen_images_[j]; }
    PfElement apply(const PfElement& a) const;

  private:
    const PartialField* src_;
    const PartialField* dst_;
    std::vector<PfElement> var_images_;
    std::vector<PfElement> gen_images_;
};

// true iff hf∘hb and hb∘hf fix all variables of their respective fields
bool pf_roundtrip_check(const PfHom& hf, const PfHom& hb);

}  // namespace pfm
