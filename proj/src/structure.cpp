#include "pfmat/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "pfmat/fragility.hpp"
#include "pfmat/util.hpp"

namespace pfm {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::vector<int> indices_of(const Matroid& M, const std::vector<std::string>& labels) {
    std::vector<int> out;
    out.reserve(labels.size());
    for (const std::string& l : labels) {
        int e = M.index_of(l);
        if (e < 0) fail("unknown element '" + l + "'");
        out.push_back(e);
    }
    return out;
}

u32 mask_of(const Matroid& M, const std::vector<std::string>& labels) {
    u32 m = 0;
    for (int e : indices_of(M, labels)) m |= u32(1) << e;
    return m;
}

std::vector<std::string> sorted_labels(const Matroid& M, u32 S) {
    std::vector<std::string> out = M.labels_of(S);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fans

std::vector<std::string> FanDescriptor::ends() const {
    if (size() < 4) return {};
    return {ordering.front(), ordering.back()};
}

std::vector<std::string> FanDescriptor::internal_elements() const {
    if (size() < 4) return {};
    return std::vector<std::string>(ordering.begin() + 1, ordering.end() - 1);
}

namespace {

std::vector<FanRole> fan_roles(int l, bool first_is_triangle) {
    std::vector<FanRole> roles(l, FanRole::internal);
    auto tag = [&](int i) {  // 1-based position
        bool spoke = first_is_triangle ? (i % 2 == 1) : (i % 2 == 0);
        roles[i - 1] = spoke ? FanRole::spoke : FanRole::rim;
    };
    if (l >= 5)
        for (int i = 1; i <= l; ++i) tag(i);
    else if (l == 4) {
        tag(1);
        tag(4);
    }
    return roles;
}

struct TripleIndex {
    std::set<u32> triangles, triads;
    bool is_triangle(u32 t) const { return triangles.count(t) != 0; }
    bool is_triple(u32 t) const { return triangles.count(t) || triads.count(t); }
};

TripleIndex triple_index(const Matroid& M) {
    TripleIndex ti;
    for (u32 t : M.triangles()) ti.triangles.insert(t);
    for (u32 t : M.triads()) ti.triads.insert(t);
    return ti;
}

u32 seq_mask(const std::vector<int>& seq) {
    u32 m = 0;
    for (int e : seq) m |= u32(1) << e;
    return m;
}

}  // namespace

bool is_fan_ordering(const Matroid& M, const std::vector<std::string>& ordering) {
    if (ordering.size() < 3) return false;
    std::vector<int> seq = indices_of(M, ordering);
    if (popcount(seq_mask(seq)) != int(seq.size())) return false;
    TripleIndex ti = triple_index(M);
    u32 first = (u32(1) << seq[0]) | (u32(1) << seq[1]) | (u32(1) << seq[2]);
    if (!ti.is_triple(first)) return false;
    bool tri = ti.is_triangle(first);
    for (size_t i = 1; i + 2 < seq.size(); ++i) {
        u32 t = (u32(1) << seq[i]) | (u32(1) << seq[i + 1]) | (u32(1) << seq[i + 2]);
        tri = !tri;
        if (tri ? !ti.is_triangle(t) : !ti.triads.count(t)) return false;
    }
    return true;
}

std::vector<FanDescriptor> find_fans(const Matroid& M) {
    const TripleIndex ti = triple_index(M);
    const int n = M.size();

    // all fan orderings that cannot be extended on either side, found by
    // depth-first extension to the right from every ordered triple
    std::set<std::vector<int>> sequences;
    auto last_triple = [&](const std::vector<int>& seq) {
        size_t k = seq.size();
        return (u32(1) << seq[k - 3]) | (u32(1) << seq[k - 2]) | (u32(1) << seq[k - 1]);
    };
    auto dfs = [&](auto&& self, std::vector<int>& seq, u32 used) -> void {
        bool last_tri = ti.is_triangle(last_triple(seq));
        bool extended = false;
        u32 tail = (u32(1) << seq[seq.size() - 2]) | (u32(1) << seq.back());
        for (int z = 0; z < n; ++z) {
            if (used >> z & 1) continue;
            u32 t = tail | (u32(1) << z);
            if (last_tri ? !ti.triads.count(t) : !ti.is_triangle(t)) continue;
            seq.push_back(z);
            self(self, seq, used | (u32(1) << z));
            seq.pop_back();
            extended = true;
        }
        if (extended) return;
        // inextensible to the right; require the same on the left
        u32 head = (u32(1) << seq[0]) | (u32(1) << seq[1]);
        u32 first = head | (u32(1) << seq[2]);
        bool first_tri = ti.is_triangle(first);
        for (int z = 0; z < n; ++z) {
            if (used >> z & 1) continue;
            u32 t = head | (u32(1) << z);
            if (first_tri ? ti.triads.count(t) : ti.is_triangle(t)) return;
        }
        sequences.insert(seq);
    };
    std::vector<u32> triples;
    for (u32 t : ti.triangles) triples.push_back(t);
    for (u32 t : ti.triads) triples.push_back(t);
    for (u32 t : triples) {
        std::vector<int> elems;
        for (u32 m = t; m; m &= m - 1) elems.push_back(ctz(m));
        std::sort(elems.begin(), elems.end());
        do {
            std::vector<int> seq = elems;
            dfs(dfs, seq, t);
        } while (std::next_permutation(elems.begin(), elems.end()));
    }

    // group by element set, keep only set-maximal fans
    std::map<u32, std::vector<std::vector<int>>> by_set;
    for (const std::vector<int>& seq : sequences) by_set[seq_mask(seq)].push_back(seq);
    std::vector<FanDescriptor> out;
    for (const auto& [mask, orderings] : by_set) {
        bool covered = false;
        for (const auto& [other, unused] : by_set)
            if (other != mask && (mask & other) == mask) {
                covered = true;
                break;
            }
        if (covered) continue;
        // canonical ordering: label-lex least among all orderings and reversals
        std::vector<std::string> best;
        for (const std::vector<int>& seq : orderings)
            for (int dir = 0; dir < 2; ++dir) {
                std::vector<int> s = seq;
                if (dir) std::reverse(s.begin(), s.end());
                std::vector<std::string> lab;
                for (int e : s) lab.push_back(M.label(e));
                if (best.empty() || lab < best) best = std::move(lab);
            }
        FanDescriptor fd;
        fd.ordering = std::move(best);
        u32 first = mask_of(M, {fd.ordering[0], fd.ordering[1], fd.ordering[2]});
        fd.first_triple_is_triangle = ti.is_triangle(first);
        fd.roles = fan_roles(int(fd.ordering.size()), fd.first_triple_is_triangle);
        fd.maximal = true;
        out.push_back(std::move(fd));
    }
    std::sort(out.begin(), out.end(),
              [](const FanDescriptor& a, const FanDescriptor& b) { return a.ordering < b.ordering; });
    return out;
}

// ---------------------------------------------------------------------------
// Segments and cosegments

bool is_segment(const Matroid& M, u32 S) {
    if (popcount(S) < 3) return false;
    bool ok = true;
    for_each_subset_of_size(S, 3, [&](u32 t) { ok = ok && M.is_circuit(t); });
    return ok;
}

bool is_cosegment(const Matroid& M, u32 S) {
    if (popcount(S) < 3) return false;
    bool ok = true;
    for_each_subset_of_size(S, 3, [&](u32 t) { ok = ok && M.is_cocircuit(t); });
    return ok;
}

namespace {

// grow T by every element that keeps the every-3-subset property, ascending
u32 grow_segment(const Matroid& M, u32 T, bool dual) {
    auto triple_ok = [&](u32 t) { return dual ? M.is_cocircuit(t) : M.is_circuit(t); };
    u32 S = T;
    for (int e = 0; e < M.size(); ++e) {
        u32 eb = u32(1) << e;
        if (S & eb) continue;
        bool ok = true;
        for_each_subset_of_size(S, 2, [&](u32 p) { ok = ok && triple_ok(p | eb); });
        if (ok) S |= eb;
    }
    return S;
}

}  // namespace

std::vector<std::string> maximal_segment(const Matroid& M, const std::vector<std::string>& T) {
    u32 t = mask_of(M, T);
    if (!is_segment(M, t)) fail("maximal_segment needs a triangle or segment to start from");
    u32 S = grow_segment(M, t, false);
    if (!is_segment(M, S)) fail("segment growth produced a non-segment");
    return sorted_labels(M, S);
}

std::vector<std::string> maximal_cosegment(const Matroid& M, const std::vector<std::string>& T) {
    u32 t = mask_of(M, T);
    if (!is_cosegment(M, t)) fail("maximal_cosegment needs a triad or cosegment to start from");
    u32 S = grow_segment(M, t, true);
    if (!is_cosegment(M, S)) fail("cosegment growth produced a non-cosegment");
    return sorted_labels(M, S);
}

// ---------------------------------------------------------------------------
// Sequential orderings

namespace {

// Can-finish table over prefix sets: cf[S] says the prefix set S extends to a
// full ordering with every intermediate prefix 3-separating (and compatible
// with the optional head/tail constraint).
struct SeqSearch {
    const Matroid& M;
    u32 head = 0, tail = 0;
    std::vector<uint8_t> cf;

    SeqSearch(const Matroid& m, u32 h, u32 t) : M(m), head(h), tail(t) {
        const u32 full = M.full_mask();
        const u32 N = full + 1;
        cf.assign(N, 0);
        cf[full] = 1;
        for (u32 S = full - 1;; --S) {
            if (ok(S) && allowed(S)) {
                for (int e = 0; e < M.size(); ++e)
                    if (!(S >> e & 1) && cf[S | (u32(1) << e)]) {
                        cf[S] = 1;
                        break;
                    }
            }
            if (S == 0) break;
        }
    }

    bool ok(u32 S) const { return S == 0 || S == M.full_mask() || M.lambda(S) <= 2; }
    bool allowed(u32 S) const {
        if (head && (S & head) != head && (S & ~head) != 0) return false;
        if (tail && (S & tail) != 0 && (~S & ~tail & M.full_mask()) != 0) return false;
        return true;
    }
    bool feasible() const { return cf[0] != 0; }

    // least-label extraction; a nonzero seed draws random feasible extensions
    std::vector<std::string> extract(u64 seed) const {
        std::vector<int> order(M.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return M.label(a) < M.label(b); });
        std::vector<std::string> out;
        u64 state = seed;
        u32 S = 0;
        while (S != M.full_mask()) {
            std::vector<int> choices;
            for (int e : order)
                if (!(S >> e & 1) && cf[S | (u32(1) << e)] && allowed(S | (u32(1) << e)))
                    choices.push_back(e);
            if (choices.empty()) fail("sequential extraction stuck despite feasible table");
            int e = seed == 0 ? choices[0] : choices[splitmix64(state) % choices.size()];
            out.push_back(M.label(e));
            S |= u32(1) << e;
        }
        return out;
    }
};

}  // namespace

std::optional<std::vector<std::string>> sequential_ordering(const Matroid& M) {
    if (M.size() < 4) fail("sequential orderings need at least 4 elements");
    SeqSearch s(M, 0, 0);
    if (!s.feasible()) return std::nullopt;
    return s.extract(0);
}

bool has_path_width_3(const Matroid& M) {
    if (M.size() < 4) fail("path width three needs at least 4 elements");
    return SeqSearch(M, 0, 0).feasible();
}

std::vector<std::vector<std::string>> random_sequential_orderings(const Matroid& M, int count,
                                                                  u64 seed) {
    if (M.size() < 4) fail("sequential orderings need at least 4 elements");
    SeqSearch s(M, 0, 0);
    std::vector<std::vector<std::string>> out;
    if (!s.feasible()) return out;
    for (int i = 0; i < count; ++i) out.push_back(s.extract(seed + 1 + u64(i)));
    return out;
}

std::optional<std::vector<std::string>> sequential_ordering_between(
    const Matroid& M, const std::vector<std::string>& head, const std::vector<std::string>& tail) {
    u32 h = mask_of(M, head), t = mask_of(M, tail);
    if (h & t) fail("head and tail overlap");
    SeqSearch s(M, h, t);
    if (!s.feasible()) return std::nullopt;
    return s.extract(0);
}

// ---------------------------------------------------------------------------
// Ends

namespace {

EndInfo end_from_triple(const Matroid& M, u32 T) {
    EndInfo info;
    bool tri = M.is_circuit(T), triad = M.is_cocircuit(T);
    if (!tri && !triad)
        fail("boundary triple " + std::to_string(T) + " is neither a triangle nor a triad");
    if (tri) {
        u32 S = grow_segment(M, T, false);
        if (popcount(S) >= 4) {
            info.kind = EndKind::segment;
            info.elements = sorted_labels(M, S);
            return info;
        }
    }
    if (triad) {
        u32 S = grow_segment(M, T, true);
        if (popcount(S) >= 4) {
            info.kind = EndKind::cosegment;
            info.elements = sorted_labels(M, S);
            return info;
        }
    }
    std::vector<std::vector<std::string>> internal_sets;
    for (const FanDescriptor& fan : find_fans(M)) {
        if (fan.size() < 4) continue;
        if ((mask_of(M, fan.ordering) & T) != T) continue;
        std::vector<std::string> internals = fan.internal_elements();
        std::sort(internals.begin(), internals.end());
        if (std::find(internal_sets.begin(), internal_sets.end(), internals) ==
            internal_sets.end())
            internal_sets.push_back(internals);
    }
    if (!internal_sets.empty()) {
        if (internal_sets.size() > 1)
            fail("ambiguous fan end: the boundary triple lies in maximal fans with different "
                 "internal sets");
        info.kind = EndKind::fan;
        info.elements = internal_sets.front();
        return info;
    }
    info.kind = tri ? EndKind::triangle : EndKind::triad;
    info.elements = sorted_labels(M, T);
    return info;
}

}  // namespace

EndInfo left_end(const Matroid& M, const std::vector<std::string>& sigma) {
    if (sigma.size() < 3) fail("ordering too short for an end");
    return end_from_triple(M, mask_of(M, {sigma[0], sigma[1], sigma[2]}));
}

EndInfo right_end(const Matroid& M, const std::vector<std::string>& sigma) {
    size_t n = sigma.size();
    if (n < 3) fail("ordering too short for an end");
    return end_from_triple(M, mask_of(M, {sigma[n - 1], sigma[n - 2], sigma[n - 3]}));
}

// ---------------------------------------------------------------------------
// Guts-coguts paths

std::string PathDescription::str() const {
    std::string s = "(";
    for (size_t i = 0; i < cells.size(); ++i) {
        s += "{";
        for (size_t j = 0; j < cells[i].size(); ++j) {
            if (j) s += ",";
            s += cells[i][j];
        }
        s += "}";
        if (i + 1 < cells.size()) s += ",";
    }
    return s + ")";
}

namespace {

// guts/coguts status of the element at 0-based position t of sigma
enum class GC { guts, coguts };

GC classify_position(const Matroid& M, const std::vector<int>& seq, size_t t) {
    u32 before = 0;
    for (size_t i = 0; i < t; ++i) before |= u32(1) << seq[i];
    u32 eb = u32(1) << seq[t];
    u32 after = M.full_mask() & ~before & ~eb;
    bool guts = (M.closure(before) & eb) && (M.closure(after) & eb);
    bool coguts = (M.coclosure(before) & eb) && (M.coclosure(after) & eb);
    if (guts == coguts)
        fail("interior element " + M.label(seq[t]) +
             (guts ? " is both guts and coguts" : " is neither guts nor coguts"));
    return guts ? GC::guts : GC::coguts;
}

}  // namespace

PathDescription guts_coguts_concatenation(const Matroid& M, const std::vector<std::string>& sigma,
                                          const std::vector<std::string>& P,
                                          const std::vector<std::string>& Q) {
    const size_t n = sigma.size();
    if (int(n) != M.size() || popcount(mask_of(M, sigma)) != M.size())
        fail("BadEnds: ordering is not a permutation of the ground set");
    if (!M.is_3connected()) fail("guts_coguts_concatenation needs a 3-connected matroid");
    if (P.size() < 2 || Q.size() < 2) fail("BadEnds: each end needs at least 2 elements");
    if (P.size() + Q.size() > n) fail("BadEnds: ends overlap");
    u32 pm = mask_of(M, P), qm = mask_of(M, Q);
    if (pm & qm) fail("BadEnds: ends overlap");
    std::vector<int> seq = indices_of(M, sigma);
    u32 prefix = 0;
    for (size_t i = 0; i < P.size(); ++i) prefix |= u32(1) << seq[i];
    if (prefix != pm) fail("BadEnds: P is not an initial segment of the ordering");
    u32 suffix = 0;
    for (size_t i = n - Q.size(); i < n; ++i) suffix |= u32(1) << seq[i];
    if (suffix != qm) fail("BadEnds: Q is not a terminal segment of the ordering");
    for (size_t t = 1; t < n; ++t) {
        u32 S = 0;
        for (size_t i = 0; i < t; ++i) S |= u32(1) << seq[i];
        if (M.lambda(S) > 2) fail("BadEnds: ordering is not sequential");
    }

    PathDescription path;
    path.cells.push_back(std::vector<std::string>(sigma.begin(), sigma.begin() + P.size()));
    path.tags.push_back(CellTag::left_end);
    std::optional<GC> run_type;
    for (size_t t = P.size(); t < n - Q.size(); ++t) {
        GC gc = classify_position(M, seq, t);
        if (!run_type || *run_type != gc) {
            path.cells.emplace_back();
            path.tags.push_back(gc == GC::guts ? CellTag::guts : CellTag::coguts);
            run_type = gc;
        }
        path.cells.back().push_back(sigma[t]);
    }
    path.cells.push_back(std::vector<std::string>(sigma.end() - Q.size(), sigma.end()));
    path.tags.push_back(CellTag::right_end);
    return path;
}

bool is_guts_coguts_path(const Matroid& M, const PathDescription& path, std::string* why) {
    auto reject = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int m = path.size();
    if (m < 2) return reject("fewer than two cells");
    if (int(path.tags.size()) != m) return reject("tag list out of step with cells");
    if (path.tags.front() != CellTag::left_end || path.tags.back() != CellTag::right_end)
        return reject("outer cells must be tagged as ends");
    u32 seen = 0;
    for (const auto& cell : path.cells) {
        if (cell.empty()) return reject("empty cell");
        u32 c = mask_of(M, cell);
        if (seen & c) return reject("cells overlap");
        seen |= c;
    }
    if (seen != M.full_mask()) return reject("cells do not cover the ground set");

    u32 A = 0;
    for (int i = 0; i < m - 1; ++i) {
        A |= mask_of(M, path.cells[i]);
        if (M.lambda(A) > 2) return reject("prefix union " + std::to_string(i) + " not 3-separating");
    }
    A = 0;
    for (int i = 0; i < m; ++i) {
        u32 cell = mask_of(M, path.cells[i]);
        u32 rest = M.full_mask() & ~A & ~cell;
        if (i > 0 && i < m - 1) {
            bool guts = (cell & ~M.closure(A)) == 0 && (cell & ~M.closure(rest)) == 0;
            bool coguts = (cell & ~M.coclosure(A)) == 0 && (cell & ~M.coclosure(rest)) == 0;
            if (path.tags[i] == CellTag::guts && !guts)
                return reject("cell " + std::to_string(i) + " tagged guts but is not");
            if (path.tags[i] == CellTag::coguts && !coguts)
                return reject("cell " + std::to_string(i) + " tagged coguts but is not");
            if (path.tags[i] != CellTag::guts && path.tags[i] != CellTag::coguts)
                return reject("interior cell " + std::to_string(i) + " lacks a guts/coguts tag");
            if (i >= 2 && i <= m - 2 && path.tags[i] == path.tags[i - 1])
                return reject("cells " + std::to_string(i - 1) + "," + std::to_string(i) +
                              " violate alternation");
        }
        A |= cell;
    }
    return true;
}

namespace {

PathDescription reverse_cells(PathDescription path) {
    std::reverse(path.cells.begin(), path.cells.end());
    for (auto& cell : path.cells) std::reverse(cell.begin(), cell.end());
    std::reverse(path.tags.begin(), path.tags.end());
    for (CellTag& t : path.tags) {
        if (t == CellTag::left_end)
            t = CellTag::right_end;
        else if (t == CellTag::right_end)
            t = CellTag::left_end;
    }
    std::swap(path.left_kind, path.right_kind);
    path.justification = Justification::none;
    return path;
}

}  // namespace

PathDescription left_justify(const Matroid& M, PathDescription path) {
    std::string why;
    if (!is_guts_coguts_path(M, path, &why)) fail("left_justify: not a guts-coguts path: " + why);
    EndKind lk = path.left_kind, rk = path.right_kind;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 1; i + 1 < path.size() && !moved; ++i) {
            u32 L = 0;
            for (int j = 0; j <= i; ++j) L |= mask_of(M, path.cells[j]);
            u32 hull = path.tags[i] == CellTag::guts ? M.closure(L) : M.coclosure(L);
            u32 offenders = hull & ~L & ~mask_of(M, path.cells.back());
            if (!offenders) continue;
            std::vector<std::string> names = sorted_labels(M, offenders);
            // pull the offenders in right after cell i and re-concatenate
            std::vector<std::string> sigma;
            for (int j = 0; j <= i; ++j)
                sigma.insert(sigma.end(), path.cells[j].begin(), path.cells[j].end());
            sigma.insert(sigma.end(), names.begin(), names.end());
            for (int j = i + 1; j < path.size(); ++j)
                for (const std::string& x : path.cells[j])
                    if (!(offenders & mask_of(M, {x}))) sigma.push_back(x);
            path = guts_coguts_concatenation(M, sigma, path.cells.front(), path.cells.back());
            moved = true;
        }
    }
    path.left_kind = lk;
    path.right_kind = rk;
    path.justification = Justification::left;
    return path;
}

PathDescription right_justify(const Matroid& M, PathDescription path) {
    path = reverse_cells(left_justify(M, reverse_cells(std::move(path))));
    path.justification = Justification::right;
    return path;
}

PathDescription reversal(const Matroid& M, PathDescription path) {
    return left_justify(M, reverse_cells(std::move(path)));
}

// ---------------------------------------------------------------------------
// Nice path descriptions

namespace {

bool is_wheel_or_whirl(const Matroid& M) {
    if (M.size() != 2 * M.rank() || M.rank() < 2) return false;
    Matroid W = Matroid::wheel(M.rank());
    if (M.isomorphic_to(W)) return true;
    std::vector<std::string> rim;
    for (int i = 1; i <= M.rank(); ++i) rim.push_back("r" + std::to_string(i));
    u32 rim_mask = 0;
    for (const std::string& l : rim) rim_mask |= u32(1) << W.index_of(l);
    std::vector<u32> bases = W.bases();
    bases.push_back(rim_mask);  // relaxing the rim yields the whirl
    Matroid whirl(W.ground(), bases);
    return M.isomorphic_to(whirl);
}

// the end cell demanded by clause (1) for a computed end
std::vector<std::string> end_cell(const Matroid& M, const EndInfo& info) {
    if (info.kind != EndKind::fan) return info.elements;
    std::vector<std::string> want = info.elements;
    for (const FanDescriptor& fan : find_fans(M)) {
        if (fan.size() < 4) continue;
        std::vector<std::string> internals = fan.internal_elements();
        std::sort(internals.begin(), internals.end());
        if (internals == want) {
            std::vector<std::string> cell = fan.ordering;
            return cell;
        }
    }
    fail("no maximal fan matches the computed fan end");
}

}  // namespace

std::optional<PathDescription> nice_path_description(const Matroid& M) {
    if (M.size() < 10 || !M.is_3connected()) return std::nullopt;
    if (M.rank() < 3 || M.corank() < 3) return std::nullopt;
    if (is_wheel_or_whirl(M)) return std::nullopt;
    if (!is_fragile(M, MinorFamily::five_points())) return std::nullopt;
    std::optional<std::vector<std::string>> sigma0 = sequential_ordering(M);
    if (!sigma0) return std::nullopt;

    EndInfo L = left_end(M, *sigma0), R = right_end(M, *sigma0);
    std::vector<std::string> P1 = end_cell(M, L), Pm = end_cell(M, R);
    if (mask_of(M, P1) & mask_of(M, Pm)) fail("nice path ends overlap");

    std::optional<std::vector<std::string>> sigma = sequential_ordering_between(M, P1, Pm);
    if (!sigma) return std::nullopt;
    PathDescription path = guts_coguts_concatenation(M, *sigma, P1, Pm);
    path.left_kind = L.kind;
    path.right_kind = R.kind;
    path = left_justify(M, std::move(path));

    for (int i = 1; i + 1 < path.size(); ++i)
        if (path.cells[i].size() > 3)
            fail("interior cell larger than 3 in a nice path description");

    // clause (2): no strictly larger segment/cosegment/fan inside E - other end
    for (int side = 0; side < 2; ++side) {
        u32 self = mask_of(M, side == 0 ? path.cells.front() : path.cells.back());
        u32 other = mask_of(M, side == 0 ? path.cells.back() : path.cells.front());
        EndKind kind = side == 0 ? path.left_kind : path.right_kind;
        if (kind == EndKind::triangle || kind == EndKind::segment) {
            u32 S = grow_segment(M, self, false);
            if ((S & ~self) & ~other && S != self) fail("end not segment-maximal");
        }
        if (kind == EndKind::triad || kind == EndKind::cosegment) {
            u32 S = grow_segment(M, self, true);
            if ((S & ~self) & ~other && S != self) fail("end not cosegment-maximal");
        }
        for (const FanDescriptor& fan : find_fans(M)) {
            u32 f = mask_of(M, fan.ordering);
            if ((f & self) == self && f != self && (f & other) == 0)
                fail("end contained in a larger fan");
        }
    }

    // clause (3): a non-fan end has a non-deletable (segment side) or
    // non-contractible (cosegment side) element
    FragilityReport rep = classify_elements(M, MinorFamily::five_points());
    for (int side = 0; side < 2; ++side) {
        EndKind kind = side == 0 ? path.left_kind : path.right_kind;
        const std::vector<std::string>& cell = side == 0 ? path.cells.front() : path.cells.back();
        if (kind == EndKind::fan) continue;
        bool seg = kind == EndKind::triangle || kind == EndKind::segment;
        bool ok = false;
        for (const std::string& x : cell)
            if (seg ? !rep.of(x).deletable : !rep.of(x).contractible) ok = true;
        if (!ok) fail("end violates the deletable/contractible clause");
    }
    return path;
}

// ---------------------------------------------------------------------------
// Generalized parallel connection

namespace {

struct GluePlan {
    std::vector<std::string> ground;  // of the connection
    std::vector<int> m_index;         // position in ground -> index in M, or -1
    std::vector<int> n_index;         //                   -> index in N, or -1
    u32 em = 0, en = 0;               // sides as masks over the new ground
};

GluePlan plan_connection(const Matroid& M, const Matroid& N, const std::vector<std::string>& T) {
    for (const std::string& t : T)
        if (M.index_of(t) < 0 || N.index_of(t) < 0) fail("flat element '" + t + "' not shared");
    for (const std::string& l : M.ground()) {
        bool in_T = std::find(T.begin(), T.end(), l) != T.end();
        if ((N.index_of(l) >= 0) != in_T)
            fail("ground sets must share exactly the connecting flat (offender '" + l + "')");
    }
    GluePlan plan;
    for (const std::string& l : M.ground()) plan.ground.push_back(l);
    for (const std::string& l : N.ground())
        if (M.index_of(l) < 0) plan.ground.push_back(l);
    if (plan.ground.size() > 20) fail("connection exceeds 20 elements");
    for (const std::string& l : plan.ground) {
        plan.m_index.push_back(M.index_of(l));
        plan.n_index.push_back(N.index_of(l));
    }
    for (size_t i = 0; i < plan.ground.size(); ++i) {
        if (plan.m_index[i] >= 0) plan.em |= u32(1) << i;
        if (plan.n_index[i] >= 0) plan.en |= u32(1) << i;
    }
    return plan;
}

u32 project(const GluePlan& plan, u32 S, bool to_n) {
    u32 out = 0;
    const std::vector<int>& idx = to_n ? plan.n_index : plan.m_index;
    for (size_t i = 0; i < plan.ground.size(); ++i)
        if ((S >> i & 1) && idx[i] >= 0) out |= u32(1) << idx[i];
    return out;
}

u32 lift(const GluePlan& plan, u32 S, bool from_n) {
    u32 out = 0;
    const std::vector<int>& idx = from_n ? plan.n_index : plan.m_index;
    for (size_t i = 0; i < plan.ground.size(); ++i)
        if (idx[i] >= 0 && (S >> idx[i] & 1)) out |= u32(1) << i;
    return out;
}

}  // namespace

Matroid generalized_parallel_connection(const Matroid& M, const Matroid& N,
                                        const std::vector<std::string>& T) {
    GluePlan plan = plan_connection(M, N, T);
    const u32 tM = [&] {
        u32 m = 0;
        for (const std::string& t : T) m |= u32(1) << M.index_of(t);
        return m;
    }();
    const u32 tN = [&] {
        u32 m = 0;
        for (const std::string& t : T) m |= u32(1) << N.index_of(t);
        return m;
    }();
    // identical restrictions to T
    for_each_submask(tM, [&](u32 S) {
        u32 SN = 0;
        for (const std::string& t : T)
            if (S >> M.index_of(t) & 1) SN |= u32(1) << N.index_of(t);
        if (M.rank_of(S) != N.rank_of(SN)) fail("the two matroids disagree on the flat");
    });
    // T must be a modular flat of N
    if (N.closure(tN) != tN) fail("connecting set is not a flat of the second matroid");
    if (N.size() > 16) fail("modularity check capped at 16 elements");
    const int rT = N.rank_of(tN);
    for (u32 F = 0; F <= N.full_mask(); ++F) {
        if (N.closure(F) != F) continue;
        if (N.rank_of(tN) + N.rank_of(F) != N.rank_of(tN | F) + N.rank_of(tN & F))
            fail("connecting flat is not modular in the second matroid");
        if (F == N.full_mask()) break;
    }

    // rank of X: the N side talks to M only through the part of T it spans
    auto rank_of = [&](u32 X) {
        u32 XN = project(plan, X, true);
        u32 TX = N.closure(XN) & tN;
        u32 XM = project(plan, X, false) | project(plan, lift(plan, TX, true), false);
        return N.rank_of(XN) - N.rank_of(TX) + M.rank_of(XM);
    };
    const int n = int(plan.ground.size());
    const u32 full = n == 0 ? 0 : (u32(1) << n) - 1;
    const int r = rank_of(full);
    if (r != M.rank() + N.rank() - rT) fail("rank of the connection came out wrong");

    std::vector<u32> bases;
    for_each_subset_of_size(full, r, [&](u32 B) {
        if (rank_of(B) == r) bases.push_back(B);
    });
    if (bases.empty()) fail("connection produced no bases");

    const bool validate = bases.size() <= 4000;
    Matroid P(plan.ground, bases, /*trusted=*/!validate);
    if (!validate) {
        // spot-check the basis family: the closure-iteration oracle must agree
        // with the rank formula, and sampled exchange pairs must succeed
        auto closure_P = [&](u32 S) {
            u32 cur = S;
            for (;;) {
                u32 next = cur | lift(plan, M.closure(project(plan, cur, false)), false) |
                           lift(plan, N.closure(project(plan, cur, true)), true);
                if (next == cur) return cur;
                cur = next;
            }
        };
        auto greedy_rank = [&](u32 X) {
            u32 I = 0;
            int cnt = 0;
            for (int e = 0; e < n; ++e)
                if ((X >> e & 1) && !(closure_P(I) >> e & 1)) {
                    I |= u32(1) << e;
                    ++cnt;
                }
            return cnt;
        };
        u64 state = 0x9e3779b9u ^ (u64(full) << 20) ^ bases.size();
        for (int i = 0; i < 500; ++i) {
            u32 S = u32(splitmix64(state)) & full;
            if (greedy_rank(S) != rank_of(S)) fail("rank formula disagrees with closure oracle");
        }
        std::set<u32> basis_set(bases.begin(), bases.end());
        for (int i = 0; i < 20000; ++i) {
            u32 B1 = bases[splitmix64(state) % bases.size()];
            u32 B2 = bases[splitmix64(state) % bases.size()];
            u32 only1 = B1 & ~B2;
            if (!only1) continue;
            std::vector<int> xs;
            for (u32 m = only1; m; m &= m - 1) xs.push_back(ctz(m));
            int x = xs[splitmix64(state) % xs.size()];
            bool ok = false;
            for (u32 m = B2 & ~B1; m && !ok; m &= m - 1)
                if (basis_set.count((B1 & ~(u32(1) << x)) | (u32(1) << ctz(m)))) ok = true;
            if (!ok) fail("sampled basis-exchange failed in the connection");
        }
    }
    return P;
}

// ---------------------------------------------------------------------------
// Delta-wye

namespace {

std::string fresh_label(std::string base, const std::vector<std::string>& used) {
    while (std::find(used.begin(), used.end(), base) != used.end()) base += "'";
    return base;
}

}  // namespace

Matroid delta_y(const Matroid& M, const std::vector<std::string>& T) {
    if (T.size() != 3) fail("delta_y needs a triangle of three elements");
    u32 t = mask_of(M, T);
    if (!M.is_circuit(t)) fail("TriangleNotCoindependent: the set is not a triangle");
    if (!M.coindependent(t)) fail("TriangleNotCoindependent: the triangle is codependent");

    std::vector<std::string> used = M.ground();
    std::vector<std::string> fresh;
    for (const std::string& x : T) {
        std::string f = fresh_label(x + "~", used);
        fresh.push_back(f);
        used.push_back(f);
    }
    // M(K4) on T and the fresh copies: besides T itself, the triangles pair
    // each element of T with the two fresh labels it did not spawn
    std::vector<std::string> k4_ground = {T[0], T[1], T[2], fresh[0], fresh[1], fresh[2]};
    std::vector<u32> tri_masks = {
        u32(0b000111), u32(0b110001), u32(0b101010), u32(0b011100),
    };  // {T0,T1,T2}, {T0,f1,f2}, {T1,f0,f2}, {T2,f0,f1}
    std::vector<u32> k4_bases;
    for_each_subset_of_size(0b111111, 3, [&](u32 B) {
        if (std::find(tri_masks.begin(), tri_masks.end(), B) == tri_masks.end())
            k4_bases.push_back(B);
    });
    Matroid K4(k4_ground, k4_bases);

    Matroid P = generalized_parallel_connection(M, K4, T);
    Matroid D = P.remove(T, {});
    // the fresh elements take over the labels of T
    std::vector<std::string> relabeled = D.ground();
    for (size_t i = 0; i < 3; ++i) {
        int e = D.index_of(fresh[i]);
        if (e < 0) fail("fresh element lost in the exchange");
        relabeled[e] = T[i];
    }
    return D.relabel(relabeled);
}

Matroid wye_delta(const Matroid& M, const std::vector<std::string>& T) {
    if (T.size() != 3) fail("wye_delta needs a triad of three elements");
    u32 t = mask_of(M, T);
    if (!M.is_cocircuit(t)) fail("TriadNotIndependent: the set is not a triad");
    if (!M.independent(t)) fail("TriadNotIndependent: the triad is dependent");
    return delta_y(M.dual(), T).dual();
}

// ---------------------------------------------------------------------------
// Wheel gluing

Matroid glue_wheel(const Matroid& M, const std::array<std::string, 3>& xyz, int r,
                   const std::vector<std::string>& X, std::vector<std::string>* resulting_fan) {
    if (r < 3) fail("wheels of rank less than 3 cannot be glued");
    std::vector<std::string> T(xyz.begin(), xyz.end());
    u32 t = mask_of(M, T);
    if (!M.is_circuit(t)) fail("(x1,x2,x3) must be a triangle");
    bool has_x2 = false;
    for (const std::string& x : X) {
        if (std::find(T.begin(), T.end(), x) == T.end())
            fail("remove set must be a subset of the triangle");
        if (x == xyz[1]) has_x2 = true;
    }
    if (!has_x2) fail("remove set must contain x2");

    // relabel the wheel so its triangle {s1, r1, s2} lands on (x1, x2, x3)
    Matroid W0 = Matroid::wheel(r);
    std::vector<std::string> used = M.ground();
    std::vector<std::string> wground(W0.size());
    auto assign = [&](const std::string& wl, const std::string& nl) {
        wground[W0.index_of(wl)] = nl;
    };
    assign("s1", xyz[0]);
    assign("r1", xyz[1]);
    assign("s2", xyz[2]);
    std::vector<std::string> others;
    for (int i = 3; i <= r; ++i) others.push_back("s" + std::to_string(i));
    for (int i = 2; i <= r; ++i) others.push_back("r" + std::to_string(i));
    std::map<std::string, std::string> renamed;
    for (const std::string& wl : others) {
        std::string nl = fresh_label(wl, used);
        used.push_back(nl);
        renamed[wl] = nl;
        assign(wl, nl);
    }
    Matroid W = W0.relabel(wground);
    if (!W.is_circuit(mask_of(W, T))) fail("wheel triangle construction broke");

    Matroid P = generalized_parallel_connection(M, W, T);
    Matroid out = P.remove(X, {});

    if (resulting_fan) {
        std::vector<std::string> fan;
        fan.push_back(xyz[2]);  // s2
        for (int i = 2; i <= r; ++i) {
            fan.push_back(renamed["r" + std::to_string(i)]);
            if (i < r) fan.push_back(renamed["s" + std::to_string(i + 1)]);
        }
        fan.push_back(xyz[0]);  // s1
        std::erase_if(fan, [&](const std::string& l) {
            return std::find(X.begin(), X.end(), l) != X.end();
        });
        if (!is_fan_ordering(out, fan)) fail("glued wheel remnant is not a fan");
        *resulting_fan = std::move(fan);
    }
    return out;
}

}  // namespace pfm
