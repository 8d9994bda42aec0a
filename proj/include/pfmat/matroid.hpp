#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pfm {

using u32 = std::uint32_t;

// Certificate for a failed connectivity check: a side X with lambda(X) < order
// and both sides of size >= order.
struct SeparationCertificate {
    u32 side = 0;
    int order = 0;
    bool exact = false;
    enum class Kind { plain, vertical, cyclic } kind = Kind::plain;
    int guts_element = -1;
};

// Matroid on at most 20 labeled elements, stored as its basis family.
// Immutable after construction; rank queries are memoized and safe for
// concurrent readers.
class Matroid {
  public:
    Matroid(std::vector<std::string> ground, std::vector<u32> bases, bool trusted = false);

    static Matroid from_bases(std::vector<std::string> ground,
                              const std::vector<std::vector<std::string>>& bases);
    static Matroid uniform(int r, int n);
    static Matroid wheel(int r);  // graphic wheel; spokes s1..sr, rim r1..rr
    static Matroid free_on(std::vector<std::string> ground);

    int size() const { return n_; }
    int rank() const { return r_; }
    int corank() const { return n_ - r_; }
    const std::vector<std::string>& ground() const { return ground_; }
    const std::string& label(int e) const { return ground_[e]; }
    int index_of(const std::string& label) const;  // -1 when absent
    u32 full_mask() const { return n_ == 0 ? 0 : (u32(1) << n_) - 1; }
    const std::vector<u32>& bases() const { return bases_; }
    u32 mask_of(const std::vector<std::string>& S) const;  // throws on unknown label
    std::vector<std::string> labels_of(u32 S) const;

    int rank_of(u32 S) const;
    int corank_of(u32 S) const;
    bool independent(u32 S) const;
    bool coindependent(u32 S) const;
    bool is_basis(u32 S) const;
    bool spanning(u32 S) const { return rank_of(S) == r_; }
    u32 closure(u32 S) const;
    u32 coclosure(u32 S) const;
    u32 fcl(u32 S) const;  // alternate closure/coclosure to a fixed point

    bool is_circuit(u32 S) const;
    bool is_cocircuit(u32 S) const;
    std::vector<u32> circuits_of_size(int k) const;
    std::vector<u32> cocircuits_of_size(int k) const;
    std::vector<u32> triangles() const { return circuits_of_size(3); }
    std::vector<u32> triads() const { return cocircuits_of_size(3); }
    bool is_circuit_hyperplane(u32 S) const;

    Matroid dual() const;
    Matroid remove(u32 del, u32 con) const;  // delete del, contract con
    Matroid remove(const std::vector<std::string>& del,
                   const std::vector<std::string>& con) const;
    Matroid si() const;  // keep the least-indexed element of each parallel class
    Matroid co() const;
    Matroid relabel(const std::vector<std::string>& new_ground) const;

    int lambda(u32 X) const;
    int local_conn(u32 X, u32 Y) const;
    bool k_separating(u32 X, int k) const { return lambda(X) <= k - 1; }
    bool is_k_connected(int k, SeparationCertificate* cert = nullptr) const;
    bool is_3connected() const { return is_k_connected(3); }

    struct Vert3Sep {
        u32 X = 0;
        int z = -1;
        u32 Y = 0;
    };
    std::vector<Vert3Sep> vertical_3_separations() const;
    std::vector<Vert3Sep> vertical_3_separations_at(int z) const;

    bool isomorphic_to(const Matroid& N, std::vector<int>* bijection = nullptr) const;
    std::string canonical_form() const;

    // per-element invariant used by the isomorphism search:
    // (#triangles, #triads, #4-circuits) through the element
    std::vector<std::array<int, 3>> element_invariants() const;

  private:
    int n_ = 0;
    int r_ = 0;
    std::vector<std::string> ground_;
    std::vector<u32> bases_;
    std::vector<int8_t> rank_memo_;  // 1 << n_ entries, built at construction

    void validate() const;
};

}  // namespace pfm
