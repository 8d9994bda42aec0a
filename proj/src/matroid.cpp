#include "pfmat/matroid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace pfm {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

int pc(u32 x) { return std::popcount(x); }

// next k-subset mask in lexicographic order (Gosper's hack)
u32 next_subset(u32 v) {
    u32 c = v & -v;
    u32 r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

template <typename F>
void for_subsets_of_size(u32 universe, int k, F&& f) {
    std::vector<int> elems;
    for (int e = 0; e < 32; ++e)
        if (universe >> e & 1) elems.push_back(e);
    int n = int(elems.size());
    if (k < 0 || k > n) return;
    if (k == 0) {
        f(u32(0));
        return;
    }
    u32 v = (u32(1) << k) - 1;
    u32 last = v << (n - k);
    for (;;) {
        u32 m = 0;
        for (int i = 0; i < n; ++i)
            if (v >> i & 1) m |= u32(1) << elems[i];
        f(m);
        if (v == last) break;
        v = next_subset(v);
    }
}

}  // namespace

Matroid::Matroid(std::vector<std::string> ground, std::vector<u32> bases, bool trusted)
    : n_(int(ground.size())), ground_(std::move(ground)), bases_(std::move(bases)) {
    if (n_ < 1 || n_ > 20) fail("ground set must have 1..20 elements");
    if (bases_.empty()) fail("matroid needs at least one basis");
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    r_ = pc(bases_[0]);
    for (u32 B : bases_) {
        if (B > full_mask()) fail("basis outside the ground set");
        if (pc(B) != r_) fail("bases of unequal size");
    }
    {
        std::unordered_set<std::string> seen;
        for (auto& l : ground_)
            if (!seen.insert(l).second) fail("duplicate ground label '" + l + "'");
    }
    // independence table: subsets of bases
    std::vector<int8_t> ind(std::size_t(1) << n_, 0);
    for (u32 B : bases_) {
        for (u32 T = B;; T = (T - 1) & B) {
            ind[T] = 1;
            if (!T) break;
        }
    }
    // rank by subset DP: r(S) = |S| if independent, else max over one-element removals
    rank_memo_.assign(std::size_t(1) << n_, 0);
    for (u32 S = 1; S <= full_mask(); ++S) {
        if (ind[S]) {
            rank_memo_[S] = int8_t(pc(S));
        } else {
            int8_t best = 0;
            for (u32 T = S; T;) {
                u32 bit = T & -T;
                T ^= bit;
                best = std::max(best, rank_memo_[S ^ bit]);
            }
            rank_memo_[S] = best;
        }
    }
    if (!trusted) validate();
}

void Matroid::validate() const {
    std::unordered_set<u32> bset(bases_.begin(), bases_.end());
    auto exchange_ok = [&](u32 B1, u32 B2) {
        u32 out = B1 & ~B2;
        while (out) {
            u32 x = out & -out;
            out ^= x;
            bool found = false;
            for (u32 in = B2 & ~B1; in; in &= in - 1) {
                u32 y = in & -in;
                if (bset.count((B1 ^ x) | y)) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };
    if (n_ <= 12) {
        for (u32 B1 : bases_)
            for (u32 B2 : bases_)
                if (B1 != B2 && !exchange_ok(B1, B2)) fail("basis-exchange axiom violated");
    } else {
        std::mt19937 rng(0xB45E5);
        std::uniform_int_distribution<std::size_t> pick(0, bases_.size() - 1);
        for (int t = 0; t < 2000; ++t) {
            u32 B1 = bases_[pick(rng)], B2 = bases_[pick(rng)];
            if (B1 != B2 && !exchange_ok(B1, B2)) fail("basis-exchange axiom violated");
        }
    }
}

Matroid Matroid::from_bases(std::vector<std::string> ground,
                            const std::vector<std::vector<std::string>>& bases) {
    std::vector<u32> ms;
    Matroid probe(ground, {ground.empty() ? 0 : (u32(1) << ground.size()) - 1}, true);
    for (auto& B : bases) ms.push_back(probe.mask_of(B));
    return Matroid(std::move(ground), std::move(ms));
}

Matroid Matroid::uniform(int r, int n) {
    std::vector<std::string> g;
    for (int i = 1; i <= n; ++i) g.push_back("e" + std::to_string(i));
    std::vector<u32> bs;
    for_subsets_of_size((u32(1) << n) - 1, r, [&](u32 m) { bs.push_back(m); });
    return Matroid(std::move(g), std::move(bs), true);
}

Matroid Matroid::wheel(int r) {
    // vertices: hub 0, rim 1..r; spoke si = (0,i), rim edge ri = (i, i mod r + 1)
    std::vector<std::string> g;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= r; ++i) {
        g.push_back("s" + std::to_string(i));
        edges.push_back({0, i});
    }
    for (int i = 1; i <= r; ++i) {
        g.push_back("r" + std::to_string(i));
        edges.push_back({i, i % r + 1});
    }
    int n = 2 * r, verts = r + 1;
    std::vector<u32> bs;
    std::vector<int> uf(verts);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for_subsets_of_size((u32(1) << n) - 1, r, [&](u32 m) {
        for (int v = 0; v < verts; ++v) uf[v] = v;
        int merges = 0;
        for (u32 t = m; t; t &= t - 1) {
            auto [x, y] = edges[std::countr_zero(t)];
            int fx = find(x), fy = find(y);
            if (fx == fy) return;
            uf[fx] = fy;
            ++merges;
        }
        if (merges == r) bs.push_back(m);
    });
    return Matroid(std::move(g), std::move(bs), true);
}

Matroid Matroid::free_on(std::vector<std::string> ground) {
    u32 full = (u32(1) << ground.size()) - 1;
    return Matroid(std::move(ground), {full}, true);
}

int Matroid::index_of(const std::string& label) const {
    for (int e = 0; e < n_; ++e)
        if (ground_[e] == label) return e;
    return -1;
}

u32 Matroid::mask_of(const std::vector<std::string>& S) const {
    u32 m = 0;
    for (auto& l : S) {
        int e = index_of(l);
        if (e < 0) fail("unknown element '" + l + "'");
        m |= u32(1) << e;
    }
    return m;
}

std::vector<std::string> Matroid::labels_of(u32 S) const {
    std::vector<std::string> out;
    for (int e = 0; e < n_; ++e)
        if (S >> e & 1) out.push_back(ground_[e]);
    return out;
}

int Matroid::rank_of(u32 S) const { return rank_memo_[S & full_mask()]; }

int Matroid::corank_of(u32 S) const { return pc(S) + rank_of(full_mask() & ~S) - r_; }

bool Matroid::independent(u32 S) const { return rank_of(S) == pc(S); }

bool Matroid::coindependent(u32 S) const { return corank_of(S) == pc(S); }

bool Matroid::is_basis(u32 S) const {
    return pc(S) == r_ && std::binary_search(bases_.begin(), bases_.end(), S);
}

u32 Matroid::closure(u32 S) const {
    u32 out = S;
    int rs = rank_of(S);
    for (int e = 0; e < n_; ++e)
        if (!(S >> e & 1) && rank_of(S | (u32(1) << e)) == rs) out |= u32(1) << e;
    return out;
}

u32 Matroid::coclosure(u32 S) const {
    u32 out = S;
    int rs = corank_of(S);
    for (int e = 0; e < n_; ++e)
        if (!(S >> e & 1) && corank_of(S | (u32(1) << e)) == rs) out |= u32(1) << e;
    return out;
}

u32 Matroid::fcl(u32 S) const {
    for (;;) {
        u32 next = coclosure(closure(S));
        if (next == S) return S;
        S = next;
    }
}

bool Matroid::is_circuit(u32 S) const {
    if (!S || independent(S)) return false;
    for (u32 t = S; t; t &= t - 1)
        if (!independent(S ^ (t & -t))) return false;
    return true;
}

bool Matroid::is_cocircuit(u32 S) const {
    if (!S || coindependent(S)) return false;
    for (u32 t = S; t; t &= t - 1)
        if (!coindependent(S ^ (t & -t))) return false;
    return true;
}

std::vector<u32> Matroid::circuits_of_size(int k) const {
    std::vector<u32> out;
    for_subsets_of_size(full_mask(), k, [&](u32 S) {
        if (is_circuit(S)) out.push_back(S);
    });
    return out;
}

std::vector<u32> Matroid::cocircuits_of_size(int k) const {
    std::vector<u32> out;
    for_subsets_of_size(full_mask(), k, [&](u32 S) {
        if (is_cocircuit(S)) out.push_back(S);
    });
    return out;
}

bool Matroid::is_circuit_hyperplane(u32 S) const {
    return rank_of(S) == r_ - 1 && is_circuit(S) && closure(S) == S;
}

Matroid Matroid::dual() const {
    std::vector<u32> bs;
    bs.reserve(bases_.size());
    for (u32 B : bases_) bs.push_back(full_mask() & ~B);
    return Matroid(ground_, std::move(bs), true);
}

Matroid Matroid::remove(u32 del, u32 con) const {
    if (del & con) fail("delete and contract sets overlap");
    u32 keep = full_mask() & ~(del | con);
    if (!keep) fail("empty minor");
    int rc = rank_of(con);
    int rr = rank_of(full_mask() & ~del) - rc;
    std::vector<std::string> g;
    std::vector<int> old_of;
    for (int e = 0; e < n_; ++e)
        if (keep >> e & 1) {
            g.push_back(ground_[e]);
            old_of.push_back(e);
        }
    std::vector<u32> bs;
    for_subsets_of_size(u32((u32(1) << g.size()) - 1), rr, [&](u32 S) {
        u32 up = con;
        for (u32 t = S; t; t &= t - 1) up |= u32(1) << old_of[std::countr_zero(t)];
        if (rank_of(up) == rc + rr) bs.push_back(S);
    });
    return Matroid(std::move(g), std::move(bs), true);
}

Matroid Matroid::remove(const std::vector<std::string>& del,
                        const std::vector<std::string>& con) const {
    return remove(mask_of(del), mask_of(con));
}

Matroid Matroid::si() const {
    u32 del = 0;
    for (int e = 0; e < n_; ++e) {
        if (rank_of(u32(1) << e) == 0) {
            del |= u32(1) << e;  // loop
            continue;
        }
        for (int f = 0; f < e; ++f)
            if (!(del >> f & 1) && rank_of((u32(1) << e) | (u32(1) << f)) == 1) {
                del |= u32(1) << e;
                break;
            }
    }
    return del ? remove(del, 0) : *this;
}

Matroid Matroid::co() const { return dual().si().dual(); }

Matroid Matroid::relabel(const std::vector<std::string>& new_ground) const {
    if (int(new_ground.size()) != n_) fail("relabel needs one label per element");
    return Matroid(new_ground, bases_, true);
}

int Matroid::lambda(u32 X) const {
    X &= full_mask();
    return rank_of(X) + rank_of(full_mask() & ~X) - r_;
}

int Matroid::local_conn(u32 X, u32 Y) const {
    return rank_of(X) + rank_of(Y) - rank_of(X | Y);
}

bool Matroid::is_k_connected(int k, SeparationCertificate* cert) const {
    if (k < 2 || k > 4) fail("is_k_connected supports k in {2,3,4}");
    bool found = false;
    int best_j = 0, best_size = 0;
    u32 best_X = 0;
    for (int j = 1; j < k && !found; ++j) {
        for (u32 X = 1; X < full_mask(); ++X) {
            u32 Y = full_mask() & ~X;
            if (pc(X) < j || pc(Y) < j) continue;
            if (lambda(X) <= j - 1) {
                int side = std::min(pc(X), pc(Y));
                u32 norm = pc(X) < pc(Y) || (pc(X) == pc(Y) && X < Y) ? X : Y;
                if (!found || side < best_size || (side == best_size && norm < best_X)) {
                    found = true;
                    best_j = j;
                    best_size = side;
                    best_X = norm;
                }
            }
        }
    }
    if (found && cert) {
        cert->side = best_X;
        cert->order = best_j;
        cert->exact = lambda(best_X) == best_j - 1;
        cert->kind = SeparationCertificate::Kind::plain;
        cert->guts_element = -1;
    }
    return !found;
}

std::vector<Matroid::Vert3Sep> Matroid::vertical_3_separations_at(int z) const {
    std::vector<Vert3Sep> out;
    u32 zbit = u32(1) << z;
    u32 rest = full_mask() & ~zbit;
    // iterate X over subsets of rest containing rest's least element (dedupe X/Y swap)
    u32 low = rest & -rest;
    for (u32 X = rest;; X = (X - 1) & rest) {
        if ((X & low) && X != rest) {
            u32 Y = rest & ~X;
            auto vert = [&](u32 A, u32 B) {
                return lambda(A) <= 2 && pc(A) >= 3 && pc(B) >= 3 && rank_of(A) >= 3 &&
                       rank_of(B) >= 3;
            };
            if (vert(X | zbit, Y) && vert(X, Y | zbit) && (closure(X) >> z & 1) &&
                (closure(Y) >> z & 1))
                out.push_back({X, z, Y});
        }
        if (!X) break;
    }
    return out;
}

std::vector<Matroid::Vert3Sep> Matroid::vertical_3_separations() const {
    std::vector<Vert3Sep> out;
    for (int z = 0; z < n_; ++z) {
        auto at = vertical_3_separations_at(z);
        out.insert(out.end(), at.begin(), at.end());
    }
    return out;
}

std::vector<std::array<int, 3>> Matroid::element_invariants() const {
    std::vector<std::array<int, 3>> inv(n_, {0, 0, 0});
    for (u32 C : circuits_of_size(3))
        for (u32 t = C; t; t &= t - 1) inv[std::countr_zero(t)][0]++;
    for (u32 C : cocircuits_of_size(3))
        for (u32 t = C; t; t &= t - 1) inv[std::countr_zero(t)][1]++;
    for (u32 C : circuits_of_size(4))
        for (u32 t = C; t; t &= t - 1) inv[std::countr_zero(t)][2]++;
    return inv;
}

namespace {

struct IsoData {
    std::vector<int> color;                  // refined invariant class per element
    std::vector<std::array<int, 3>> pair2;   // flattened n*n pair counts
    int n;

    std::array<int, 3>& pair(int e, int f) { return pair2[e * n + f]; }
    const std::array<int, 3>& pair(int e, int f) const { return pair2[e * n + f]; }
};

IsoData iso_data(const Matroid& M) {
    int n = M.size();
    IsoData d;
    d.n = n;
    d.pair2.assign(n * n, {0, 0, 0});
    auto add_pairs = [&](const std::vector<u32>& sets, int slot) {
        for (u32 S : sets)
            for (u32 t = S; t; t &= t - 1)
                for (u32 s = t & (t - 1); s; s &= s - 1) {
                    int e = std::countr_zero(t & -t), f = std::countr_zero(s & -s);
                    d.pair(e, f)[slot]++;
                    d.pair(f, e)[slot]++;
                }
    };
    add_pairs(M.circuits_of_size(3), 0);
    add_pairs(M.cocircuits_of_size(3), 1);
    add_pairs(M.circuits_of_size(4), 2);

    auto inv = M.element_invariants();
    std::vector<std::vector<int>> key(n);
    for (int e = 0; e < n; ++e) key[e] = {inv[e][0], inv[e][1], inv[e][2]};
    // refine colors by the multiset of (neighbor color, pair counts), to a fixed point
    for (int round = 0; round < 4; ++round) {
        // ids must be canonical (sorted signature order), not first-encounter
        // order, so that equal classes in different matroids get equal ids
        std::map<std::vector<int>, int> ids;
        for (int e = 0; e < n; ++e) ids.emplace(key[e], 0);
        int next_id = 0;
        for (auto& [k, v] : ids) v = next_id++;
        std::vector<int> col(n);
        for (int e = 0; e < n; ++e) col[e] = ids[key[e]];
        if (int(ids.size()) == n || (round > 0 && col == d.color)) {
            d.color = col;
            break;
        }
        d.color = col;
        std::vector<std::vector<int>> next(n);
        for (int e = 0; e < n; ++e) {
            std::vector<std::array<int, 4>> nb;
            for (int f = 0; f < n; ++f)
                if (f != e) nb.push_back({col[f], d.pair(e, f)[0], d.pair(e, f)[1], d.pair(e, f)[2]});
            std::sort(nb.begin(), nb.end());
            next[e] = {col[e]};
            for (auto& a : nb) next[e].insert(next[e].end(), a.begin(), a.end());
        }
        key = std::move(next);
    }
    return d;
}

// sorted color-class signature, used as a fast isomorphism reject
std::vector<int> color_multiset(const IsoData& d) {
    std::vector<int> v = d.color;
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

bool Matroid::isomorphic_to(const Matroid& N, std::vector<int>* bijection) const {
    if (n_ != N.n_ || r_ != N.r_ || bases_.size() != N.bases_.size()) return false;
    IsoData dm = iso_data(*this), dn = iso_data(N);
    if (color_multiset(dm) != color_multiset(dn)) return false;

    // process rarest colors first
    std::vector<int> freq(n_, 0);
    for (int c : dm.color) freq[c]++;
    std::vector<int> order(n_);
    for (int i = 0; i < n_; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (freq[dm.color[a]] != freq[dm.color[b]]) return freq[dm.color[a]] < freq[dm.color[b]];
        return a < b;
    });

    std::unordered_set<u32> nbases(N.bases_.begin(), N.bases_.end());
    std::vector<int> map(n_, -1);
    std::vector<bool> used(n_, false);

    auto leaf_ok = [&]() {
        for (u32 B : bases_) {
            u32 img = 0;
            for (u32 t = B; t; t &= t - 1) img |= u32(1) << map[std::countr_zero(t & -t)];
            if (!nbases.count(img)) return false;
        }
        return true;
    };

    std::function<bool(int)> dfs = [&](int pos) -> bool {
        if (pos == n_) return leaf_ok();
        int e = order[pos];
        for (int f = 0; f < n_; ++f) {
            if (used[f] || dn.color[f] != dm.color[e]) continue;
            bool ok = true;
            for (int q = 0; q < pos && ok; ++q) {
                int e2 = order[q];
                ok = dm.pair(e, e2) == dn.pair(f, map[e2]);
            }
            if (!ok) continue;
            map[e] = f;
            used[f] = true;
            if (dfs(pos + 1)) return true;
            used[f] = false;
            map[e] = -1;
        }
        return false;
    };
    if (!dfs(0)) return false;
    if (bijection) *bijection = map;
    return true;
}

std::string Matroid::canonical_form() const {
    IsoData d = iso_data(*this);
    // positions grouped by color, colors ordered by (frequency, color id)
    std::vector<int> freq(n_, 0);
    for (int c : d.color) freq[c]++;
    std::vector<int> colors;
    for (int c = 0; c < n_; ++c)
        if (freq[c]) colors.push_back(c);
    std::sort(colors.begin(), colors.end(), [&](int a, int b) {
        if (freq[a] != freq[b]) return freq[a] < freq[b];
        return a < b;
    });
    std::vector<std::vector<int>> groups;
    double leaves = 1;
    for (int c : colors) {
        groups.push_back({});
        for (int e = 0; e < n_; ++e)
            if (d.color[e] == c) groups.back().push_back(e);
        for (int i = 2; i <= int(groups.back().size()); ++i) leaves *= i;
    }
    if (leaves > 4e7) fail("canonical_form: automorphism classes too coarse");

    std::vector<int> pos_of(n_, -1);  // element -> canonical position
    std::vector<u32> best;
    bool have_best = false;

    std::vector<u32> img(bases_.size());
    auto leaf = [&]() {
        for (std::size_t i = 0; i < bases_.size(); ++i) {
            u32 m = 0;
            for (u32 t = bases_[i]; t; t &= t - 1) m |= u32(1) << pos_of[std::countr_zero(t & -t)];
            img[i] = m;
        }
        std::sort(img.begin(), img.end());
        if (!have_best || img < best) {
            best = img;
            have_best = true;
        }
    };

    int next_pos = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t gi) {
        if (gi == groups.size()) {
            leaf();
            return;
        }
        auto& g = groups[gi];
        std::sort(g.begin(), g.end());
        do {
            for (std::size_t i = 0; i < g.size(); ++i) pos_of[g[i]] = next_pos + int(i);
            next_pos += int(g.size());
            rec(gi + 1);
            next_pos -= int(g.size());
        } while (std::next_permutation(g.begin(), g.end()));
        for (int e : g) pos_of[e] = -1;
    };
    rec(0);

    std::string out;
    auto push32 = [&](u32 v) {
        for (int s = 24; s >= 0; s -= 8) out.push_back(char((v >> s) & 0xff));
    };
    push32(u32(n_));
    push32(u32(r_));
    push32(u32(best.size()));
    for (u32 m : best) push32(m);
    return out;
}

}  // namespace pfm
