#include "pfmat/fragility.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "pfmat/structure.hpp"
#include "pfmat/util.hpp"

namespace pfm {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

// element indices sorted by label, so that subset enumeration is label-lex
std::vector<int> label_order(const Matroid& M) {
    std::vector<int> order(M.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return M.label(a) < M.label(b); });
    return order;
}

// visit k-subsets of the elements in `universe` in label-lex order
template <typename F>
void for_label_lex_subsets(const Matroid& M, u32 universe, int k, F&& f) {
    std::vector<int> elems;
    for (int e : label_order(M))
        if (universe >> e & 1) elems.push_back(e);
    int n = int(elems.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        u32 s = 0;
        for (int i : idx) s |= u32(1) << elems[i];
        if (f(s)) return;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool is_uniform(const Matroid& N) {
    u64 binom = 1;
    for (int i = 1; i <= N.rank(); ++i) binom = binom * u64(N.size() - N.rank() + i) / i;
    return N.bases().size() == binom;
}

// Does M have a U(2,m)-minor (or U(m-2,m) when in_dual)?  Rank-2 targets
// reduce to counting parallel classes after contracting an independent set.
bool has_line_minor(const Matroid& M, int m, bool in_dual) {
    auto rk = [&](u32 S) { return in_dual ? M.corank_of(S) : M.rank_of(S); };
    const int r = in_dual ? M.corank() : M.rank();
    const int n = M.size();
    if (r < 2 || n < m) return false;
    // count rank-1 classes of the contraction by C among unspanned elements
    auto enough_points = [&](u32 C, int rC) {
        std::vector<int> reps;
        for (int e = 0; e < n; ++e) {
            if (C >> e & 1) continue;
            u32 eb = u32(1) << e;
            if (rk(C | eb) == rC) continue;  // spanned: a loop after contracting
            bool fresh = true;
            for (int f : reps)
                if (rk(C | eb | (u32(1) << f)) == rC + 1) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                reps.push_back(e);
                if (int(reps.size()) >= m) return true;
            }
        }
        return false;
    };
    // DFS over independent sets of size r-2
    std::vector<int> stack;
    auto dfs = [&](auto&& self, u32 C, int from, int rC) -> bool {
        if (rC == r - 2) return enough_points(C, rC);
        for (int e = from; e < n; ++e) {
            u32 eb = u32(1) << e;
            if (rk(C | eb) != rC + 1) continue;
            if (self(self, C | eb, e + 1, rC + 1)) return true;
        }
        return false;
    };
    return dfs(dfs, 0, 0, 0);
}

bool fast_minor_check(const Matroid& M, const Matroid& N, bool* answered) {
    *answered = false;
    if (N.rank() > M.rank() || N.corank() > M.corank() || N.size() > M.size()) {
        *answered = true;
        return false;
    }
    if (!is_uniform(N)) return false;
    if (N.rank() == 2 && N.size() >= 3) {
        *answered = true;
        return has_line_minor(M, N.size(), false);
    }
    if (N.corank() == 2 && N.size() >= 3) {
        *answered = true;
        return has_line_minor(M, N.size(), true);
    }
    return false;
}

}  // namespace

MinorFamily::MinorFamily(std::string name, std::vector<Matroid> members)
    : name_(std::move(name)), members_(std::move(members)) {
    if (members_.empty()) fail("a minor family needs at least one member");
}

const MinorFamily& MinorFamily::five_points() {
    static const MinorFamily f("{U(2,5),U(3,5)}", {Matroid::uniform(2, 5), Matroid::uniform(3, 5)});
    return f;
}

const MinorFamily& MinorFamily::u25() {
    static const MinorFamily f("{U(2,5)}", {Matroid::uniform(2, 5)});
    return f;
}

const MinorFamily& MinorFamily::u35() {
    static const MinorFamily f("{U(3,5)}", {Matroid::uniform(3, 5)});
    return f;
}

MinorFamily MinorFamily::dual() const {
    std::vector<Matroid> duals;
    duals.reserve(members_.size());
    for (const Matroid& N : members_) duals.push_back(N.dual());
    return MinorFamily(name_ + "*", std::move(duals));
}

bool has_minor(const Matroid& M, const Matroid& N) {
    bool answered = false;
    bool fast = fast_minor_check(M, N, &answered);
    if (answered) return fast;
    return find_minor(M, N).has_value();
}

bool has_minor(const Matroid& M, const MinorFamily& F) {
    for (const Matroid& N : F.members())
        if (has_minor(M, N)) return true;
    return false;
}

std::optional<MinorWitness> find_minor(const Matroid& M, const Matroid& N) {
    if (N.rank() > M.rank() || N.corank() > M.corank() || N.size() > M.size()) return std::nullopt;
    {
        bool answered = false;
        if (!fast_minor_check(M, N, &answered) && answered) return std::nullopt;
    }
    const int ncon = M.rank() - N.rank();
    const int ndel = M.size() - N.size() - ncon;
    if (ndel < 0) return std::nullopt;
    std::optional<MinorWitness> found;
    for_label_lex_subsets(M, M.full_mask(), ncon, [&](u32 C) {
        if (!M.independent(C)) return false;
        std::optional<u32> D;
        for_label_lex_subsets(M, M.full_mask() & ~C, ndel, [&](u32 Dc) {
            u32 keep = M.full_mask() & ~C & ~Dc;
            if (M.rank_of(keep | C) != M.rank()) return false;  // minor would lose rank
            Matroid minor = M.remove(Dc, C);
            if (minor.isomorphic_to(N)) {
                D = Dc;
                return true;
            }
            return false;
        });
        if (D) {
            MinorWitness w;
            w.contracted = M.labels_of(C);
            w.deleted = M.labels_of(*D);
            std::sort(w.contracted.begin(), w.contracted.end());
            std::sort(w.deleted.begin(), w.deleted.end());
            found = std::move(w);
            return true;
        }
        return false;
    });
    return found;
}

const ElementFlags& FragilityReport::of(const std::string& label) const {
    for (size_t i = 0; i < ground.size(); ++i)
        if (ground[i] == label) return flags[i];
    fail("no element '" + label + "' in the report");
}

std::vector<std::string> FragilityReport::essentials() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < ground.size(); ++i)
        if (flags[i].essential()) out.push_back(ground[i]);
    return out;
}

std::vector<std::string> FragilityReport::flexibles() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < ground.size(); ++i)
        if (flags[i].flexible()) out.push_back(ground[i]);
    return out;
}

FragilityReport classify_elements(const Matroid& M, const MinorFamily& F) {
    FragilityReport rep;
    rep.family = F.name();
    rep.ground = M.ground();
    rep.flags.resize(M.size());
    rep.has_family_minor = has_minor(M, F);
    for (int e = 0; e < M.size(); ++e) {
        u32 eb = u32(1) << e;
        rep.flags[e].deletable = has_minor(M.remove(eb, 0), F);
        rep.flags[e].contractible = has_minor(M.remove(0, eb), F);
    }
    rep.fragile = rep.has_family_minor;
    for (const ElementFlags& f : rep.flags)
        if (f.flexible()) rep.fragile = false;
    return rep;
}

bool is_fragile(const Matroid& M, const MinorFamily& F) {
    if (!has_minor(M, F)) return false;
    for (int e = 0; e < M.size(); ++e) {
        u32 eb = u32(1) << e;
        if (has_minor(M.remove(eb, 0), F) && has_minor(M.remove(0, eb), F)) return false;
    }
    return true;
}

int RobustStrongReport::robust_count() const {
    return int(std::count(robust.begin(), robust.end(), true));
}

int RobustStrongReport::strong_count() const {
    return int(std::count(strong.begin(), strong.end(), true));
}

RobustStrongReport robust_strong(const Matroid& M, const MinorFamily& F, u32 basis) {
    if (!M.is_basis(basis)) fail("robust_strong needs a basis of M");
    RobustStrongReport rep;
    rep.ground = M.ground();
    rep.basis = basis;
    rep.robust.assign(M.size(), false);
    rep.strong.assign(M.size(), false);
    for (int e = 0; e < M.size(); ++e) {
        u32 eb = u32(1) << e;
        bool in_B = (basis >> e & 1) != 0;
        Matroid minor = in_B ? M.remove(0, eb) : M.remove(eb, 0);
        rep.robust[e] = has_minor(minor, F);
        Matroid reduced = in_B ? minor.si() : minor.co();
        rep.strong[e] = reduced.is_3connected() && has_minor(reduced, F);
    }
    return rep;
}

std::vector<std::string> fan_fragility_violations(const Matroid& M, const MinorFamily& F) {
    std::vector<std::string> out;
    FragilityReport rep = classify_elements(M, F);
    if (!rep.fragile)
        out.push_back("matroid is not " + F.name() + "-fragile");

    for (const FanDescriptor& fan : find_fans(M)) {
        if (fan.size() < 4) continue;
        for (int i = 0; i < fan.size(); ++i) {
            const std::string& x = fan.ordering[i];
            if (fan.roles[i] == FanRole::spoke && rep.of(x).contractible)
                out.push_back("spoke " + x + " of a " + std::to_string(fan.size()) +
                              "-fan is contractible");
            if (fan.roles[i] == FanRole::rim && rep.of(x).deletable)
                out.push_back("rim " + x + " of a " + std::to_string(fan.size()) +
                              "-fan is deletable");
        }
        if (fan.size() == 4) {
            for (const std::string& x : fan.ends())
                if (rep.of(x).essential())
                    out.push_back("end " + x + " of a 4-fan is essential");
        } else {
            for (const std::string& x : fan.ordering)
                if (rep.of(x).essential())
                    out.push_back("element " + x + " of a " + std::to_string(fan.size()) +
                                  "-fan is essential");
        }
    }

    // no M(K4)-restriction in M or in its dual
    const Matroid K4 = Matroid::wheel(3);
    for (int pass = 0; pass < 2; ++pass) {
        const Matroid side = pass == 0 ? M : M.dual();
        bool found = false;
        for_each_subset_of_size(side.full_mask(), 6, [&](u32 X) {
            if (found || side.rank_of(X) != 3) return;
            if (side.remove(side.full_mask() & ~X, 0).isomorphic_to(K4)) found = true;
        });
        if (found)
            out.push_back(std::string(pass == 0 ? "M" : "M*") + " has an M(K4)-restriction");
    }
    return out;
}

std::vector<std::vector<std::string>> delete_triples(
    const Matroid& M, const std::vector<std::pair<std::string, std::string>>& pair_exclusions,
    bool special_only) {
    std::vector<std::vector<std::string>> out;
    if (M.size() < 8) return out;  // a 3-connected {U(2,5),U(3,5)}-minor needs 5 elements left

    std::vector<u32> excluded;
    for (const auto& [p, q] : pair_exclusions)
        excluded.push_back(M.mask_of({p}) | M.mask_of({q}));

    std::vector<u32> small_cocircuits;
    for (int k = 1; k <= 3; ++k)
        for (u32 C : M.cocircuits_of_size(k)) small_cocircuits.push_back(C);

    for_label_lex_subsets(M, M.full_mask(), 3, [&](u32 t) {
        for (u32 pair : excluded)
            if ((t & pair) == pair) return false;
        // a small cocircuit partly inside the triple leaves a series pair or
        // coloop behind, so the deletion cannot be 3-connected
        for (u32 C : small_cocircuits)
            if ((C & t) != 0 && (C & ~t) != 0) return false;
        Matroid Mdel = M.remove(t, 0);
        if (!Mdel.is_3connected()) return false;
        if (!has_minor(Mdel, MinorFamily::five_points())) return false;
        if (special_only && !Mdel.triangles().empty()) return false;
        std::vector<std::string> triple = M.labels_of(t);
        std::sort(triple.begin(), triple.end());
        out.push_back(std::move(triple));
        return false;
    });
    return out;
}

bool has_delete_triple(const Matroid& M) {
    if (M.size() < 8) return false;
    std::vector<u32> small_cocircuits;
    for (int k = 1; k <= 3; ++k)
        for (u32 C : M.cocircuits_of_size(k)) small_cocircuits.push_back(C);
    bool found = false;
    for_label_lex_subsets(M, M.full_mask(), 3, [&](u32 t) {
        for (u32 C : small_cocircuits)
            if ((C & t) != 0 && (C & ~t) != 0) return false;
        Matroid Mdel = M.remove(t, 0);
        if (!Mdel.is_3connected()) return false;
        if (!has_minor(Mdel, MinorFamily::five_points())) return false;
        found = true;
        return true;
    });
    return found;
}

bool three_connected_up_to_sp(const Matroid& M) {
    if (!M.is_k_connected(2)) return false;
    const int n = M.size();
    auto parallel_class = [&](u32 X) { return M.rank_of(X) == 1 && M.closure(X) == X; };
    auto series_class = [&](u32 X) { return M.corank_of(X) == 1 && M.coclosure(X) == X; };
    for (u32 X = 1; X < M.full_mask(); ++X) {
        int k = popcount(X);
        if (k < 2 || n - k < 2) continue;
        if (M.lambda(X) > 1) continue;
        u32 Y = M.full_mask() & ~X;
        if (parallel_class(X) || parallel_class(Y) || series_class(X) || series_class(Y)) continue;
        return false;
    }
    return true;
}

}  // namespace pfm
