#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfmat/matroid.hpp"

namespace pfm {

// A fixed family of small 3-connected target matroids for minor testing.
// The family of interest throughout is {U(2,5), U(3,5)}.
class MinorFamily {
  public:
    MinorFamily(std::string name, std::vector<Matroid> members);

    static const MinorFamily& five_points();  // {U(2,5), U(3,5)}
    static const MinorFamily& u25();
    static const MinorFamily& u35();

    const std::string& name() const { return name_; }
    const std::vector<Matroid>& members() const { return members_; }
    MinorFamily dual() const;

  private:
    std::string name_;
    std::vector<Matroid> members_;
};

// Minor witness: M / contracted \ deleted is isomorphic to the target.
struct MinorWitness {
    std::vector<std::string> contracted;
    std::vector<std::string> deleted;
};

// Least witness in (|C| asc, label-lex C, label-lex D) order, or nullopt.
std::optional<MinorWitness> find_minor(const Matroid& M, const Matroid& N);
bool has_minor(const Matroid& M, const Matroid& N);
bool has_minor(const Matroid& M, const MinorFamily& F);

struct ElementFlags {
    bool deletable = false;
    bool contractible = false;
    bool essential() const { return !deletable && !contractible; }
    bool flexible() const { return deletable && contractible; }
};

struct FragilityReport {
    std::string family;
    std::vector<std::string> ground;
    std::vector<ElementFlags> flags;   // parallel to ground
    bool has_family_minor = false;
    bool fragile = false;              // has a family minor and no flexible element

    const ElementFlags& of(const std::string& label) const;
    std::vector<std::string> essentials() const;
    std::vector<std::string> flexibles() const;
};

FragilityReport classify_elements(const Matroid& M, const MinorFamily& F);
bool is_fragile(const Matroid& M, const MinorFamily& F);

// Basis-relative element properties.  An element e is (F,B)-robust when
// e in B and M/e keeps a family minor, or e in B* and M\e does; strong
// additionally requires si(M/e) (resp. co(M\e)) to be 3-connected with a
// family minor.
struct RobustStrongReport {
    std::vector<std::string> ground;
    u32 basis = 0;
    std::vector<bool> robust;
    std::vector<bool> strong;
    int robust_count() const;
    int strong_count() const;
};

RobustStrongReport robust_strong(const Matroid& M, const MinorFamily& F, u32 basis);

// Checks every maximal fan of size >= 4 against the fragile-fan lemmas:
// spokes are never contractible, rims never deletable, no element of a
// >=5-fan (or end of a 4-fan) is essential, and neither M nor M* has an
// M(K4)-restriction.  Returns human-readable violations; empty means clean.
std::vector<std::string> fan_fragility_violations(const Matroid& M, const MinorFamily& F);

// Triples {a,b,c} such that M\a,b,c is 3-connected with a {U(2,5),U(3,5)}-
// minor.  Triples containing an excluded pair are skipped; with special_only,
// only triples whose removal leaves no triangles are kept.
std::vector<std::vector<std::string>> delete_triples(
    const Matroid& M,
    const std::vector<std::pair<std::string, std::string>>& pair_exclusions = {},
    bool special_only = false);
bool has_delete_triple(const Matroid& M);

// 3-connected after collapsing series and parallel classes.
bool three_connected_up_to_sp(const Matroid& M);

}  // namespace pfm
