#include "pfmat/pmatrix.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pfm {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

using u64 = std::uint64_t;

u64 key_of(u32 rows, u32 cols) { return (u64(rows) << 20) | cols; }

}  // namespace

PMatrix::PMatrix(const PartialField& P, std::vector<std::string> row_labels,
                 std::vector<std::string> col_labels)
    : pf_(&P), rows_(std::move(row_labels)), cols_(std::move(col_labels)) {
    if (nrows() + ncols() > 20) fail("matrix label count exceeds 20");
    for (auto& r : rows_)
        for (auto& c : cols_)
            if (r == c) fail("row and column labels must be disjoint: '" + r + "'");
    a_.assign(rows_.size(), std::vector<PfElement>(cols_.size(), P.zero()));
}

int PMatrix::row_index(const std::string& l) const {
    for (int i = 0; i < nrows(); ++i)
        if (rows_[i] == l) return i;
    return -1;
}

int PMatrix::col_index(const std::string& l) const {
    for (int j = 0; j < ncols(); ++j)
        if (cols_[j] == l) return j;
    return -1;
}

void PMatrix::set(int r, int c, PfElement v) {
    a_.at(r).at(c) = std::move(v);
    verified_ = Verified::unchecked;
    vres_.reset();
}

void PMatrix::set(const std::string& row, const std::string& col, const std::string& expr) {
    int r = row_index(row), c = col_index(col);
    if (r < 0 || c < 0) fail("no such entry " + row + "," + col);
    set(r, c, pf_->parse(expr));
}

std::optional<PfElement> PMatrix::det(u32 row_mask, u32 col_mask) const {
    if (std::popcount(row_mask) != std::popcount(col_mask)) fail("determinant of non-square submatrix");
    std::unordered_map<u64, std::optional<PfElement>> memo;

    // exact ring determinant as a polynomial fraction, for the cases where
    // unit-by-unit accumulation leaves the group partway through
    using Frac = std::pair<Poly, Poly>;
    std::unordered_map<u64, Frac> ring_memo;
    std::function<Frac(u32, u32)> ring = [&](u32 R, u32 C) -> Frac {
        Poly one = Poly::constant(GInt(1));
        if (!R) return {one, one};
        auto it = ring_memo.find(key_of(R, C));
        if (it != ring_memo.end()) return it->second;
        int r0 = std::countr_zero(R);
        Frac acc{Poly(), one};
        int sign = 0;
        for (u32 t = C; t; t &= t - 1, ++sign) {
            int c = std::countr_zero(t & -t);
            if (a_[r0][c].is_zero()) continue;
            auto [en, ed] = pf_->expand(a_[r0][c]);
            Frac sub = ring(R & (R - 1), C ^ (t & -t));
            Poly tn = en * sub.first, td = ed * sub.second;
            if (sign & 1) tn = -tn;
            acc = {acc.first * td + tn * acc.second, acc.second * td};
        }
        ring_memo.emplace(key_of(R, C), acc);
        return acc;
    };

    std::function<std::optional<PfElement>(u32, u32)> go = [&](u32 R,
                                                               u32 C) -> std::optional<PfElement> {
        if (!R) return pf_->one();
        auto it = memo.find(key_of(R, C));
        if (it != memo.end()) return it->second;
        int r0 = std::countr_zero(R);
        std::optional<PfElement> acc = pf_->zero();
        int sign = 0;
        for (u32 t = C; t; t &= t - 1, ++sign) {
            int c = std::countr_zero(t & -t);
            const PfElement& e = a_[r0][c];
            if (e.is_zero()) continue;
            auto sub = go(R & (R - 1), C ^ (t & -t));
            if (!sub) {
                acc.reset();
                break;
            }
            if (sub->is_zero()) continue;
            PfElement term = pf_->mul(e, *sub);
            if (sign & 1) term = pf_->neg(term);
            acc = pf_->add(*acc, term);
            if (!acc) break;
        }
        if (!acc && !pf_->finite()) {
            // a partial sum left the group; decide membership exactly
            auto [n, d] = ring(R, C);
            acc = pf_->normalize(n, d);
        }
        memo.emplace(key_of(R, C), acc);
        return acc;
    };
    return go(row_mask, col_mask);
}

std::optional<PfElement> PMatrix::subdet(const std::vector<std::string>& Z) const {
    u32 rm = 0, cm = 0;
    for (auto& l : Z) {
        int r = row_index(l), c = col_index(l);
        if (r >= 0)
            rm |= u32(1) << r;
        else if (c >= 0)
            cm |= u32(1) << c;
        else
            fail("label '" + l + "' is not in the matrix");
    }
    if (std::popcount(rm) != std::popcount(cm)) fail("Z does not induce a square submatrix");
    return det(rm, cm);
}

const PMatrix::VerifyResult& PMatrix::verify() const {
    if (vres_) return *vres_;
    VerifyResult res;
    res.ok = true;
    int m = nrows(), n = ncols();
    // ascending size, then lexicographic on index sets, for a deterministic witness
    std::vector<std::vector<u32>> by_size_rows(std::min(m, n) + 1), by_size_cols(std::min(m, n) + 1);
    for (u32 R = 1; R < (u32(1) << m); ++R)
        if (std::popcount(R) <= std::min(m, n)) by_size_rows[std::popcount(R)].push_back(R);
    for (u32 C = 1; C < (u32(1) << n); ++C)
        if (std::popcount(C) <= std::min(m, n)) by_size_cols[std::popcount(C)].push_back(C);
    for (int k = 1; k <= std::min(m, n) && res.ok; ++k) {
        std::sort(by_size_rows[k].begin(), by_size_rows[k].end());
        std::sort(by_size_cols[k].begin(), by_size_cols[k].end());
        for (u32 R : by_size_rows[k]) {
            for (u32 C : by_size_cols[k]) {
                if (det(R, C)) continue;
                res.ok = false;
                for (int i = 0; i < m; ++i)
                    if (R >> i & 1) res.witness.push_back(rows_[i]);
                for (int j = 0; j < n; ++j)
                    if (C >> j & 1) res.witness.push_back(cols_[j]);
                break;
            }
            if (!res.ok) break;
        }
    }
    verified_ = res.ok ? Verified::p_matrix : Verified::not_p_matrix;
    vres_ = std::move(res);
    return *vres_;
}

Matroid PMatrix::matroid_of(int image) const {
    if (verified_ == Verified::unchecked) fail("matroid_of requires a verified matrix");
    if (verified_ == Verified::not_p_matrix) fail("matroid_of on a non-P-matrix");
    int m = nrows(), n = ncols();
    // evaluate entries into a finite field; nonzeroness transfers both ways
    // because homomorphisms carry units to units
    const FiniteField* F;
    std::vector<std::vector<int>> v(m, std::vector<int>(n, 0));
    if (pf_->finite()) {
        F = pf_->finite_field();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) v[i][j] = a_[i][j].is_zero() ? 0 : a_[i][j].unit;
    } else {
        if (image < 0 || image >= int(pf_->images().size()))
            fail("partial field has no registered finite image with that index");
        const FqImage& img = pf_->images()[image];
        F = img.F;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) v[i][j] = pf_->eval(a_[i][j], img);
    }
    std::unordered_map<u64, int> memo;
    std::function<int(u32, u32)> go = [&](u32 R, u32 C) -> int {
        if (!R) return 1;
        auto it = memo.find(key_of(R, C));
        if (it != memo.end()) return it->second;
        int r0 = std::countr_zero(R);
        int acc = 0, sign = 0;
        for (u32 t = C; t; t &= t - 1, ++sign) {
            int c = std::countr_zero(t & -t);
            if (!v[r0][c]) continue;
            int sub = go(R & (R - 1), C ^ (t & -t));
            if (!sub) continue;
            int term = F->mul(v[r0][c], sub);
            acc = F->add(acc, sign & 1 ? F->neg(term) : term);
        }
        memo.emplace(key_of(R, C), acc);
        return acc;
    };
    std::vector<std::string> ground = rows_;
    ground.insert(ground.end(), cols_.begin(), cols_.end());
    u32 xmask = (u32(1) << m) - 1;
    std::vector<u32> bases;
    for (u32 R = 0; R < (u32(1) << m); ++R) {
        for (u32 C = 0; C < (u32(1) << n); ++C) {
            if (std::popcount(R) != std::popcount(C)) continue;
            if (!go(R, C)) continue;
            bases.push_back((xmask & ~R) | (C << m));
        }
    }
    return Matroid(std::move(ground), std::move(bases));
}

PMatrix PMatrix::pivot(const std::string& x, const std::string& y) const {
    int xi = row_index(x), yj = col_index(y);
    if (xi < 0 || yj < 0) fail("pivot needs a row label and a column label");
    const PfElement& p = a_[xi][yj];
    if (p.is_zero()) fail("pivot on a zero entry");
    PfElement pinv = pf_->inv(p);

    std::vector<std::string> nr = rows_, nc = cols_;
    nr[xi] = y;
    nc[yj] = x;
    PMatrix out(*pf_, nr, nc);
    for (int u = 0; u < nrows(); ++u) {
        for (int w = 0; w < ncols(); ++w) {
            PfElement e = pf_->zero();
            if (u == xi && w == yj) {
                e = pinv;
            } else if (u == xi) {
                e = pf_->mul(pinv, a_[xi][w]);
            } else if (w == yj) {
                e = pf_->neg(pf_->mul(pinv, a_[u][yj]));
            } else {
                PfElement corr = pf_->mul(pinv, pf_->mul(a_[u][yj], a_[xi][w]));
                auto s = pf_->sub(a_[u][w], corr);
                if (!s) fail("pivot sum left the partial field (not a P-matrix)");
                e = *s;
            }
            out.a_[u][w] = e;
        }
    }
    if (verified_ == Verified::p_matrix) {
        out.verified_ = Verified::p_matrix;  // pivoting preserves the property
        out.vres_ = VerifyResult{true, {}};
    }
    return out;
}

PMatrix PMatrix::transpose_dual() const {
    PMatrix out(*pf_, cols_, rows_);
    for (int i = 0; i < nrows(); ++i)
        for (int j = 0; j < ncols(); ++j) out.a_[j][i] = a_[i][j];
    out.verified_ = verified_;
    if (vres_) out.vres_ = vres_;
    return out;
}

bool PMatrix::scaling_equivalent(const PMatrix& B) const {
    if (pf_ != B.pf_ || rows_ != B.rows_ || cols_ != B.cols_) return false;
    int m = nrows(), n = ncols();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (a_[i][j].is_zero() != B.a_[i][j].is_zero()) return false;
    // scale both to a common form: spanning forest of the shared support gets 1
    auto normalize = [&](const PMatrix& M) {
        std::vector<PfElement> rs(m, pf_->one()), cs(n, pf_->one());
        std::vector<int> rseen(m, 0), cseen(n, 0);
        for (int start = 0; start < m; ++start) {
            if (rseen[start]) continue;
            rseen[start] = 1;
            std::vector<std::pair<bool, int>> queue{{true, start}};
            while (!queue.empty()) {
                auto [is_row, idx] = queue.back();
                queue.pop_back();
                if (is_row) {
                    for (int j = 0; j < n; ++j)
                        if (!M.a_[idx][j].is_zero() && !cseen[j]) {
                            cseen[j] = 1;
                            // rs[idx] * a * cs[j] = 1
                            cs[j] = pf_->inv(pf_->mul(rs[idx], M.a_[idx][j]));
                            queue.push_back({false, j});
                        }
                } else {
                    for (int i = 0; i < m; ++i)
                        if (!M.a_[i][idx].is_zero() && !rseen[i]) {
                            rseen[i] = 1;
                            rs[i] = pf_->inv(pf_->mul(M.a_[i][idx], cs[idx]));
                            queue.push_back({true, i});
                        }
                }
            }
        }
        std::vector<std::vector<PfElement>> out(m, std::vector<PfElement>(n, pf_->zero()));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (!M.a_[i][j].is_zero()) out[i][j] = pf_->mul(rs[i], pf_->mul(M.a_[i][j], cs[j]));
        return out;
    };
    return normalize(*this) == normalize(B);
}

std::string PMatrix::str() const {
    std::ostringstream os;
    os << "        ";
    for (auto& c : cols_) os << c << " ";
    os << "\n";
    for (int i = 0; i < nrows(); ++i) {
        os << rows_[i] << ": ";
        for (int j = 0; j < ncols(); ++j) os << a_[i][j].str() << " ";
        os << "\n";
    }
    return os.str();
}

IncriminationResult incriminates(const Matroid& M, const PMatrix& A,
                                 const std::vector<std::string>& Z) {
    IncriminationResult res;
    res.Z = Z;
    auto d = A.subdet(Z);  // throws when not square
    u32 B = M.mask_of(A.row_labels());
    u32 zm = M.mask_of(Z);
    u32 BdZ = B ^ zm;
    using V = IncriminationResult::Verdict;
    if (!d)
        res.verdict = V::det_outside_p;
    else if (d->is_zero() && M.is_basis(BdZ))
        res.verdict = V::det_zero_but_basis;
    else if (!d->is_zero() && !M.independent(BdZ))
        res.verdict = V::det_nonzero_but_dependent;
    else
        res.verdict = V::consistent;
    return res;
}

}  // namespace pfm
