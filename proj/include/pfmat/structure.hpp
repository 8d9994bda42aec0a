#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pfmat/matroid.hpp"
#include "pfmat/util.hpp"

namespace pfm {

// ---------------------------------------------------------------------------
// Fans

enum class FanRole { spoke, rim, internal };

// A fan ordering (f1,...,fl): the first triple is a triangle or a triad and
// consecutive triples alternate between the two.  Role tags follow the
// convention that positions get spoke/rim names only when l >= 5, or at the
// two ends when l = 4; everything else is internal.
struct FanDescriptor {
    std::vector<std::string> ordering;
    std::vector<FanRole> roles;
    bool first_triple_is_triangle = false;
    bool maximal = false;

    int size() const { return int(ordering.size()); }
    std::vector<std::string> ends() const;               // empty when size 3
    std::vector<std::string> internal_elements() const;  // empty when size 3
};

// All maximal fans of M, one descriptor per fan set, reported once up to
// reversal, sorted by canonical ordering.
std::vector<FanDescriptor> find_fans(const Matroid& M);

// Does `ordering` satisfy the fan conditions in M?
bool is_fan_ordering(const Matroid& M, const std::vector<std::string>& ordering);

// ---------------------------------------------------------------------------
// Segments and cosegments

// Largest segment (every 3-subset a triangle) containing the triangle T, i.e.
// the points of the line spanned by T; dually for a triad.
std::vector<std::string> maximal_segment(const Matroid& M, const std::vector<std::string>& T);
std::vector<std::string> maximal_cosegment(const Matroid& M, const std::vector<std::string>& T);
bool is_segment(const Matroid& M, u32 S);
bool is_cosegment(const Matroid& M, u32 S);

// ---------------------------------------------------------------------------
// Sequential orderings (path width three)

// An ordering of E(M) whose every proper prefix is 3-separating, or nullopt
// when M does not have path width three.  Deterministic: at each step the
// least-label extension that still completes is taken.
std::optional<std::vector<std::string>> sequential_ordering(const Matroid& M);
bool has_path_width_3(const Matroid& M);

// `count` sequential orderings drawn with seeded pseudo-random tie-breaking;
// used to exercise the well-definedness of ends across orderings.
std::vector<std::vector<std::string>> random_sequential_orderings(const Matroid& M, int count,
                                                                  u64 seed);

// A sequential ordering that begins with the elements of `head` and ends with
// the elements of `tail` (each in some feasible internal order).
std::optional<std::vector<std::string>> sequential_ordering_between(
    const Matroid& M, const std::vector<std::string>& head, const std::vector<std::string>& tail);

// ---------------------------------------------------------------------------
// Ends of a sequential ordering

enum class EndKind { none, triangle, triad, segment, cosegment, fan };

struct EndInfo {
    EndKind kind = EndKind::none;
    std::vector<std::string> elements;
};

// L(sigma) / R(sigma): the case analysis on the first (last) three elements:
// a triangle or triad not in a larger segment, cosegment or fan is its own
// end; inside a 4-segment/4-cosegment the end is the maximal one; inside a
// fan of size >= 4 the end is the internal-element set of a maximal such fan.
EndInfo left_end(const Matroid& M, const std::vector<std::string>& sigma);
EndInfo right_end(const Matroid& M, const std::vector<std::string>& sigma);

// ---------------------------------------------------------------------------
// Guts-coguts paths

enum class CellTag { left_end, right_end, guts, coguts };
enum class Justification { none, left, right };

struct PathDescription {
    std::vector<std::vector<std::string>> cells;
    std::vector<CellTag> tags;  // parallel to cells
    EndKind left_kind = EndKind::none;
    EndKind right_kind = EndKind::none;
    Justification justification = Justification::none;

    int size() const { return int(cells.size()); }
    const std::vector<std::string>& left() const { return cells.front(); }
    const std::vector<std::string>& right() const { return cells.back(); }
    std::string str() const;  // ({a,b,c},{d},...) tuple notation
};

// The unique concatenation of sigma into a guts-coguts path whose end cells
// are the initial segment P and the terminal segment Q of sigma.
PathDescription guts_coguts_concatenation(const Matroid& M, const std::vector<std::string>& sigma,
                                          const std::vector<std::string>& P,
                                          const std::vector<std::string>& Q);

// Recomputes every defining condition; reason for failure in *why.
bool is_guts_coguts_path(const Matroid& M, const PathDescription& path, std::string* why = nullptr);

PathDescription left_justify(const Matroid& M, PathDescription path);
PathDescription right_justify(const Matroid& M, PathDescription path);
// the left-justification of the reversed path
PathDescription reversal(const Matroid& M, PathDescription path);

// A guts-coguts path with maximal triangle/triad/segment/cosegment/fan ends,
// interior cells of size at most 3, left-justified; nullopt when M is not
// 3-connected {U(2,5),U(3,5)}-fragile of path width three with |E| >= 10.
std::optional<PathDescription> nice_path_description(const Matroid& M);

// ---------------------------------------------------------------------------
// Generalized parallel connection, delta-wye, wheel gluing

// P_T(M, N): requires E(M) and E(N) to share exactly the labels T, with
// identical restrictions to T, and T a modular flat of N.
Matroid generalized_parallel_connection(const Matroid& M, const Matroid& N,
                                        const std::vector<std::string>& T);

// Replace a coindependent triangle T by a triad: P_T(M, M(K4)) \ T with the
// three fresh K4 elements taking over the labels of T.
Matroid delta_y(const Matroid& M, const std::vector<std::string>& T);
// Replace an independent triad by a triangle; the dual operation.
Matroid wye_delta(const Matroid& M, const std::vector<std::string>& T);

// Glue an r-wheel onto the triangle (x1,x2,x3) of M, where x1 and x3 play
// spokes of the wheel, and delete X (which must contain x2).  When
// resulting_fan is non-null it receives the fan ordering of E(W) - X.
Matroid glue_wheel(const Matroid& M, const std::array<std::string, 3>& xyz, int r,
                   const std::vector<std::string>& X,
                   std::vector<std::string>* resulting_fan = nullptr);

}  // namespace pfm
