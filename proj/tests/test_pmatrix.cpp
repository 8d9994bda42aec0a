#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pfmat/pmatrix.hpp"

using namespace pfm;

namespace {

PMatrix build(const PartialField& P, const std::vector<std::string>& rows,
              const std::vector<std::string>& cols,
              const std::vector<std::vector<std::string>>& entries) {
    PMatrix A(P, rows, cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            if (entries[i][j] != "0") A.set(rows[i], cols[j], entries[i][j]);
    return A;
}

// the canonical rank-2 five-point matrix: all nine nonzero subdeterminants
// are units exactly when a1, a2 are "independent enough"
PMatrix u25_matrix() {
    return build(PartialField::U2(), {"x1", "x2"}, {"y1", "y2", "y3"},
                 {{"1", "1", "1"}, {"1", "a1", "a2"}});
}

// 8x6 companion of the first no-delete-triple outcome
PMatrix a1_matrix() {
    return build(PartialField::U2(),
                 {"p1'", "p2", "p3", "p4", "p6", "p7", "p8", "p9'"},
                 {"a'", "p1", "p5", "p5'", "p9", "b'"},
                 {{"1", "a1", "0", "0", "0", "0"},
                  {"1", "a1", "1", "1", "0", "0"},
                  {"1", "1", "1", "1", "0", "0"},
                  {"1", "1", "0", "1", "0", "0"},
                  {"0", "0", "0", "1", "1", "1"},
                  {"0", "0", "1", "1", "1", "1"},
                  {"0", "0", "1", "1", "a2", "1"},
                  {"0", "0", "0", "0", "a2", "1"}});
}

// Like the first companion but with row p6 supported on {p5, p9, b'} instead
// of {p5', p9, b'}.  With that support the column-p9 units must move off a2:
// a2/(a2-1) is the (unique up to representation choice) value making every
// subdeterminant a unit or zero while keeping the six target triads, the two
// 4-element cocircuits through p6, and fragility.  (Keeping a2 itself gives a
// 4x4 subdeterminant a1 + a2 - a1*a2, which is not in the group.)
PMatrix a2_matrix() {
    return build(PartialField::U2(),
                 {"p1'", "p2", "p3", "p4", "p6", "p7", "p8", "p9'"},
                 {"a'", "p1", "p5", "p5'", "p9", "b'"},
                 {{"1", "a1", "0", "0", "0", "0"},
                  {"1", "a1", "1", "1", "0", "0"},
                  {"1", "1", "1", "1", "0", "0"},
                  {"1", "1", "0", "1", "0", "0"},
                  {"0", "0", "1", "0", "1", "1"},
                  {"0", "0", "1", "1", "1", "1"},
                  {"0", "0", "1", "1", "a2*a2-1^-1", "1"},
                  {"0", "0", "0", "0", "a2*a2-1^-1", "1"}});
}

PMatrix a3_matrix() {
    return build(PartialField::U2(),
                 {"a'", "p1", "p1'", "p3'", "p4", "p5", "p6", "p7'"},
                 {"p1''", "p2", "p2'", "p3", "p7", "b'"},
                 {{"1", "a1", "0", "a1", "0", "0"},
                  {"0", "1", "0", "1", "0", "0"},
                  {"1", "1", "0", "1", "0", "0"},
                  {"1", "1", "1", "1", "0", "0"},
                  {"1", "1", "1", "1", "a2-1", "1"},
                  {"1", "1", "1", "0", "a2-1", "1"},
                  {"1", "1", "1", "0", "a2", "1"},
                  {"0", "0", "0", "0", "a2", "1"}});
}

// Leibniz-formula determinant over polynomial fractions: an oracle that
// never touches partial addition or the memoized cofactor path
std::optional<PfElement> leibniz_det(const PMatrix& A, u32 R, u32 C) {
    const PartialField& P = A.field();
    std::vector<int> ri, ci;
    for (int i = 0; i < A.nrows(); ++i)
        if (R >> i & 1) ri.push_back(i);
    for (int j = 0; j < A.ncols(); ++j)
        if (C >> j & 1) ci.push_back(j);
    int k = int(ri.size());
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    Poly num, den = Poly::constant(GInt(1));
    do {
        int inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inv;
        Poly tn = Poly::constant(GInt(inv % 2 ? -1 : 1)), td = Poly::constant(GInt(1));
        bool zero = false;
        for (int i = 0; i < k && !zero; ++i) {
            const PfElement& e = A.at(ri[i], ci[perm[i]]);
            if (e.is_zero()) {
                zero = true;
                break;
            }
            auto [en, ed] = P.expand(e);
            tn = tn * en;
            td = td * ed;
        }
        if (zero) continue;
        num = num * td + tn * den;
        den = den * td;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return P.normalize(num, den);
}

}  // namespace

TEST_CASE("labels must be disjoint and entries addressable") {
    const auto& U2 = PartialField::U2();
    CHECK_THROWS(PMatrix(U2, {"x"}, {"x"}));
    PMatrix A(U2, {"x"}, {"y"});
    CHECK(A.at(0, 0).is_zero());
    A.set("x", "y", "a1");
    CHECK(A.at(0, 0) == U2.parse("a1"));
    CHECK_THROWS(A.set("y", "x", "1"));
    CHECK(A.row_index("x") == 0);
    CHECK(A.col_index("q") == -1);
}

TEST_CASE("subdeterminants: 1x1, the 2x2 fundamental, and a vanishing pair") {
    const auto& U2 = PartialField::U2();
    PMatrix E(U2, {"x"}, {"y"});
    E.set("x", "y", "-a2");
    auto d = E.subdet({"x", "y"});
    REQUIRE(d);
    CHECK(*d == U2.parse("-a2"));

    PMatrix B = build(U2, {"x1", "x2"}, {"y1", "y2"}, {{"1", "1"}, {"1", "a1"}});
    auto d2 = B.subdet({"x1", "x2", "y1", "y2"});
    REQUIRE(d2);
    CHECK(*d2 == U2.parse("a1-1"));  // a1 - 1, a fundamental element

    // rows {p1',p2} x cols {a',p1} of the first companion matrix:
    // det = 1*a1 - a1*1 = 0
    PMatrix A1 = a1_matrix();
    auto d3 = A1.subdet({"p1'", "p2", "a'", "p1"});
    REQUIRE(d3);
    CHECK(d3->is_zero());

    CHECK_THROWS(A1.subdet({"p1'", "a'", "p1"}));  // not square
    CHECK_THROWS(A1.subdet({"nope"}));
}

TEST_CASE("verification accepts the named companion matrices") {
    PMatrix U = u25_matrix();
    CHECK(U.verify().ok);
    CHECK(U.verified() == Verified::p_matrix);
    for (PMatrix A : {a1_matrix(), a2_matrix(), a3_matrix()}) {
        CHECK(A.verify().ok);
        CHECK(A.verify().witness.empty());
    }
}

TEST_CASE("verification rejects with a minimal witness") {
    const auto& U2 = PartialField::U2();
    // det = 1*1 - (-a1)*1 = 1 + a1, which is not a unit of this field
    PMatrix B = build(U2, {"x1", "x2"}, {"y1", "y2"}, {{"1", "-a1"}, {"1", "1"}});
    auto& res = B.verify();
    CHECK(!res.ok);
    CHECK(B.verified() == Verified::not_p_matrix);
    CHECK(res.witness == std::vector<std::string>{"x1", "x2", "y1", "y2"});
    CHECK(!B.subdet({"x1", "x2", "y1", "y2"}));
    CHECK_THROWS(B.matroid_of());
}

TEST_CASE("a partial sum may leave the group while the determinant does not") {
    const auto& U2 = PartialField::U2();
    // expansion along the first row accumulates 1 + a1 (not a unit) before
    // the third term brings the total back to 1
    PMatrix A = build(U2, {"x1", "x2", "x3"}, {"y1", "y2", "y3"},
                      {{"1", "-a1", "a1"}, {"1", "1", "0"}, {"1", "0", "1"}});
    auto d = A.subdet({"x1", "x2", "x3", "y1", "y2", "y3"});
    REQUIRE(d);
    CHECK(d->is_one());
    // the same matrix still fails verification on a 2x2 corner
    CHECK(!A.verify().ok);
}

TEST_CASE("the five-point line: matroid over every image, across pivots") {
    PMatrix U = u25_matrix();
    REQUIRE(U.verify().ok);
    Matroid M = U.matroid_of();
    CHECK(M.size() == 5);
    CHECK(M.rank() == 2);
    CHECK(M.isomorphic_to(Matroid::uniform(2, 5)));
    CHECK(M.ground() == std::vector<std::string>{"x1", "x2", "y1", "y2", "y3"});
    CHECK(M.is_basis(M.mask_of({"x1", "x2"})));  // the rows

    // identical basis family over every registered characteristic image
    for (int im = 1; im < int(U.field().images().size()); ++im) {
        Matroid Mi = U.matroid_of(im);
        CHECK(Mi.bases() == M.bases());
    }

    // pivoting anywhere preserves the represented matroid
    auto family = [](const Matroid& N) {
        std::set<std::set<std::string>> f;
        for (u32 B : N.bases()) {
            auto ls = N.labels_of(B);
            f.insert(std::set<std::string>(ls.begin(), ls.end()));
        }
        return f;
    };
    for (auto& x : U.row_labels())
        for (auto& y : U.col_labels()) {
            PMatrix P = U.pivot(x, y);
            CHECK(P.verified() == Verified::p_matrix);
            CHECK(family(P.matroid_of()) == family(M));
        }
}

TEST_CASE("a matrix with no columns represents the free matroid") {
    PMatrix A(PartialField::GF(3), {"x1", "x2", "x3"}, {});
    REQUIRE(A.verify().ok);
    Matroid M = A.matroid_of();
    CHECK(M.size() == 3);
    CHECK(M.rank() == 3);
    CHECK(M.bases().size() == 1);
}

TEST_CASE("the first companion matrix yields a triangle-free 3-connected matroid") {
    PMatrix A1 = a1_matrix();
    REQUIRE(A1.verify().ok);
    Matroid M = A1.matroid_of();
    CHECK(M.size() == 14);
    CHECK(M.rank() == 8);
    CHECK(M.triangles().empty());
    CHECK(M.is_3connected());
}

TEST_CASE("the second companion matrix: column-p9 units are forced off a2") {
    // moving row p6's support from p5' to p5 while keeping the rest of the
    // first companion matrix does NOT give a p-matrix...
    PMatrix bad = build(PartialField::U2(),
                        {"p1'", "p2", "p3", "p4", "p6", "p7", "p8", "p9'"},
                        {"a'", "p1", "p5", "p5'", "p9", "b'"},
                        {{"1", "a1", "0", "0", "0", "0"},
                         {"1", "a1", "1", "1", "0", "0"},
                         {"1", "1", "1", "1", "0", "0"},
                         {"1", "1", "0", "1", "0", "0"},
                         {"0", "0", "1", "0", "1", "1"},
                         {"0", "0", "1", "1", "1", "1"},
                         {"0", "0", "1", "1", "a2", "1"},
                         {"0", "0", "0", "0", "a2", "1"}});
    CHECK(!bad.verify().ok);
    // ...the offending subdeterminant normalizes to a1 + a2 - a1*a2
    auto d = bad.subdet({"p2", "p4", "p6", "p8", "p1", "p5", "p5'", "p9"});
    CHECK(!d);

    // the corrected matrix verifies and its matroid has the expected local
    // structure: same triads as the first companion except through p5'/p5
    PMatrix A2 = a2_matrix();
    REQUIRE(A2.verify().ok);
    Matroid M2 = A2.matroid_of();
    CHECK(M2.size() == 14);
    CHECK(M2.rank() == 8);
    CHECK(M2.triangles().empty());
    CHECK(M2.is_3connected());

    auto fam = [](const Matroid& M, const std::vector<u32>& masks) {
        std::set<std::set<std::string>> f;
        for (u32 mk : masks) {
            auto ls = M.labels_of(mk);
            f.insert(std::set<std::string>(ls.begin(), ls.end()));
        }
        return f;
    };
    std::set<std::set<std::string>> want_triads = {
        {"a'", "p1'", "p1"}, {"p1", "p2", "p3"}, {"p3", "p4", "p5"},
        {"p5'", "p6", "p7"}, {"p7", "p8", "p9"}, {"p9", "p9'", "b'"}};
    CHECK(fam(M2, M2.triads()) == want_triads);
    auto co4 = fam(M2, M2.cocircuits_of_size(4));
    CHECK(co4.count({"a'", "p1", "p4", "p5'"}));
    CHECK(co4.count({"p5", "p6", "p9", "b'"}));
    CHECK(co4.count({"p1'", "p2", "p8", "p9'"}));
    auto ci4 = fam(M2, M2.circuits_of_size(4));
    CHECK(ci4.count({"a'", "p1'", "p1", "p2"}));
    CHECK(ci4.count({"p8", "p9", "p9'", "b'"}));
    CHECK(ci4.count({"a'", "p1", "p3", "p4"}));
    CHECK(ci4.count({"p6", "p7", "p9", "b'"}));
    CHECK(ci4.count({"p4", "p5", "p5'", "p6"}));

    // a genuinely different matroid from the first companion's
    PMatrix A1 = a1_matrix();
    REQUIRE(A1.verify().ok);
    Matroid M1 = A1.matroid_of();
    CHECK(M1.bases().size() == 1314);
    CHECK(M2.bases().size() == 1318);
    CHECK(!M2.isomorphic_to(M1));
}

TEST_CASE("pivoting: inverse entry, involution, and a zero-pivot error") {
    const auto& U2 = PartialField::U2();
    PMatrix E(U2, {"x"}, {"y"});
    E.set("x", "y", "a1");
    PMatrix Ei = E.pivot("x", "y");
    CHECK(Ei.row_labels() == std::vector<std::string>{"y"});
    CHECK(Ei.col_labels() == std::vector<std::string>{"x"});
    CHECK(Ei.at(0, 0) == U2.parse("a1^-1"));

    PMatrix U = u25_matrix();
    for (auto& x : U.row_labels())
        for (auto& y : U.col_labels()) {
            PMatrix back = U.pivot(x, y).pivot(y, x);
            CHECK(back.row_labels() == U.row_labels());
            CHECK(back.col_labels() == U.col_labels());
            for (int i = 0; i < U.nrows(); ++i)
                for (int j = 0; j < U.ncols(); ++j) CHECK(back.at(i, j) == U.at(i, j));
        }

    PMatrix Z = build(U2, {"x1", "x2"}, {"y1", "y2"}, {{"1", "0"}, {"1", "1"}});
    CHECK_THROWS(Z.pivot("x1", "y2"));
}

TEST_CASE("pivoting preserves the matroid of random matrices over GF(5)") {
    const auto& F5 = PartialField::GF(5);
    std::mt19937 rng(314159);
    auto family = [](const Matroid& N) {
        std::set<std::set<std::string>> f;
        for (u32 B : N.bases()) {
            auto ls = N.labels_of(B);
            f.insert(std::set<std::string>(ls.begin(), ls.end()));
        }
        return f;
    };
    int done = 0;
    while (done < 50) {
        PMatrix A(F5, {"x1", "x2", "x3", "x4"}, {"y1", "y2", "y3", "y4"});
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int v = int(rng() % 5);
                if (v) A.set(i, j, F5.make(v, {}));
            }
        REQUIRE(A.verify().ok);  // over a field every matrix qualifies
        std::vector<std::pair<int, int>> nz;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!A.at(i, j).is_zero()) nz.push_back({i, j});
        if (nz.empty()) continue;
        auto [pi, pj] = nz[rng() % nz.size()];
        PMatrix B = A.pivot(A.row_labels()[pi], A.col_labels()[pj]);
        CHECK(family(A.matroid_of()) == family(B.matroid_of()));
        ++done;
    }
}

TEST_CASE("scaling equivalence: unit row/column scalings yes, permutations no") {
    PMatrix U = u25_matrix();
    CHECK(U.scaling_equivalent(U));

    const auto& U2 = PartialField::U2();
    PMatrix S = u25_matrix();
    for (int j = 0; j < 3; ++j)
        if (!S.at(1, j).is_zero()) S.set(1, j, U2.mul(U2.parse("a1"), S.at(1, j)));
    CHECK(U.scaling_equivalent(S));
    CHECK(S.scaling_equivalent(U));

    PMatrix C = u25_matrix();
    for (int i = 0; i < 2; ++i) C.set(i, 2, U2.mul(U2.parse("a2-1"), C.at(i, 2)));
    CHECK(U.scaling_equivalent(C));

    // swapping the a1 and a2 columns is a permutation, not a scaling
    PMatrix P = build(U2, {"x1", "x2"}, {"y1", "y2", "y3"},
                      {{"1", "1", "1"}, {"1", "a2", "a1"}});
    CHECK(!U.scaling_equivalent(P));

    // different zero support
    PMatrix Z = build(U2, {"x1", "x2"}, {"y1", "y2", "y3"},
                      {{"1", "0", "1"}, {"1", "a1", "a2"}});
    CHECK(!U.scaling_equivalent(Z));
}

TEST_CASE("incrimination: all three clauses and consistency") {
    const auto& F3 = PartialField::GF(3);
    PMatrix A = build(F3, {"e1", "e2"}, {"e3", "e4"}, {{"1", "1"}, {"1", "1"}});
    Matroid U24 = Matroid::uniform(2, 4);

    auto r1 = incriminates(U24, A, {"e1", "e2", "e3", "e4"});
    CHECK(r1.verdict == IncriminationResult::Verdict::det_zero_but_basis);

    // same matroid claim, different matrix: det nonzero but {e3,e4} is
    // dependent in the matroid the all-ones matrix actually represents
    PMatrix B = build(F3, {"e1", "e2"}, {"e3", "e4"}, {{"1", "1"}, {"1", "2"}});
    REQUIRE(A.verify().ok);
    Matroid MA = A.matroid_of();  // e3 parallel to e4
    auto r2 = incriminates(MA, B, {"e1", "e2", "e3", "e4"});
    CHECK(r2.verdict == IncriminationResult::Verdict::det_nonzero_but_dependent);

    // determinant outside the group
    const auto& U2 = PartialField::U2();
    PMatrix D = build(U2, {"e1", "e2"}, {"e3", "e4"}, {{"1", "-a1"}, {"1", "1"}});
    Matroid U24r = U24;
    auto r3 = incriminates(U24r, D, {"e1", "e2", "e3", "e4"});
    CHECK(r3.verdict == IncriminationResult::Verdict::det_outside_p);

    // a represented matroid is never incriminated by its own matrix
    for (u32 R = 0; R < 4; ++R)
        for (u32 C = 0; C < 4; ++C) {
            if (std::popcount(R) != std::popcount(C)) continue;
            std::vector<std::string> Z;
            for (int i = 0; i < 2; ++i)
                if (R >> i & 1) Z.push_back(A.row_labels()[i]);
            for (int j = 0; j < 2; ++j)
                if (C >> j & 1) Z.push_back(A.col_labels()[j]);
            auto r = incriminates(MA, A, Z);
            CHECK(r.verdict == IncriminationResult::Verdict::consistent);
        }

    CHECK_THROWS(incriminates(U24, A, {"e1", "e3", "e4"}));  // not square
}

TEST_CASE("every subdeterminant agrees with the Leibniz-formula oracle") {
    const auto& U2 = PartialField::U2();
    const auto& K2 = PartialField::K2();
    std::vector<PMatrix> corpus;
    corpus.push_back(u25_matrix());
    corpus.push_back(build(U2, {"x1", "x2"}, {"y1", "y2"}, {{"1", "-a1"}, {"1", "1"}}));
    corpus.push_back(build(U2, {"x1", "x2", "x3"}, {"y1", "y2", "y3"},
                           {{"1", "-a1", "a1"}, {"1", "1", "0"}, {"1", "0", "1"}}));
    // top-left 4x4 block of the first companion matrix
    corpus.push_back(build(U2, {"p1'", "p2", "p3", "p4"}, {"a'", "p1", "p5", "p5'"},
                           {{"1", "a1", "0", "0"},
                            {"1", "a1", "1", "1"},
                            {"1", "1", "1", "1"},
                            {"1", "1", "0", "1"}}));
    // a rank-3 matrix over the fourth-root field
    corpus.push_back(build(K2, {"x1", "x2", "x3"}, {"y1", "y2", "y3", "y4"},
                           {{"1", "1", "0", "1"},
                            {"1", "0", "-a^-1", "1"},
                            {"0", "a", "1", "1"}}));
    for (const PMatrix& A : corpus) {
        bool oracle_ok = true;
        for (u32 R = 1; R < (u32(1) << A.nrows()); ++R)
            for (u32 C = 1; C < (u32(1) << A.ncols()); ++C) {
                if (std::popcount(R) != std::popcount(C)) continue;
                auto got = A.det(R, C);
                auto want = leibniz_det(A, R, C);
                CHECK(got.has_value() == want.has_value());
                if (got && want) CHECK(*got == *want);
                if (!want) oracle_ok = false;
            }
        CHECK(A.verify().ok == oracle_ok);
    }
}

TEST_CASE("transposing represents the dual matroid") {
    PMatrix U = u25_matrix();
    REQUIRE(U.verify().ok);
    PMatrix T = U.transpose_dual();
    CHECK(T.nrows() == 3);
    CHECK(T.ncols() == 2);
    CHECK(T.at(0, 1) == U.at(1, 0));
    Matroid D = T.matroid_of();
    Matroid M = U.matroid_of().dual();
    CHECK(D.isomorphic_to(M));
    auto family = [](const Matroid& N) {
        std::set<std::set<std::string>> f;
        for (u32 B : N.bases()) {
            auto ls = N.labels_of(B);
            f.insert(std::set<std::string>(ls.begin(), ls.end()));
        }
        return f;
    };
    CHECK(family(D) == family(M));
}
