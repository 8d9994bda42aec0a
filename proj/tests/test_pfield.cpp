#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pfmat/pfield.hpp"

using namespace pfm;

namespace {

// uniformly random unit: product of generators with exponents in [-2, 2]
PfElement random_unit(const PartialField& P, std::mt19937& rng) {
    std::uniform_int_distribution<int> ex(-2, 2);
    std::vector<std::pair<int, int>> exps;
    for (int j = 0; j < P.generator_count(); ++j) {
        int e = ex(rng);
        if (e) exps.push_back({j, e});
    }
    std::uniform_int_distribution<int> un(0, P.torsion_order() - 1);
    return P.make(un(rng), exps);
}

// residues for the variables that keep every generator nonzero mod p
std::array<u64, kMaxVars> good_residues(const PartialField& P, u64 p, std::mt19937& rng) {
    std::uniform_int_distribution<u64> dist(2, p - 2);
    for (;;) {
        std::array<u64, kMaxVars> r{};
        for (auto& x : r) x = dist(rng);
        bool ok = true;
        for (int j = 0; j < P.generator_count() && ok; ++j)
            ok = P.generator_poly(j).eval_mod(p, r, 0) != 0;
        if (ok) return r;
    }
}

const PartialField* kInfinite[] = {&PartialField::U2(), &PartialField::U3(),
                                   &PartialField::H5(), &PartialField::K2(),
                                   &PartialField::H4()};

}  // namespace

TEST_CASE("generator sets are the derived ones") {
    auto names = [](const PartialField& P) {
        std::vector<std::string> v;
        for (int j = 0; j < P.generator_count(); ++j) v.push_back(P.generator_name(j));
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(names(PartialField::K2()) == std::vector<std::string>{"a", "a+1", "a-1"});
    CHECK(names(PartialField::H4()) ==
          std::vector<std::string>{"a", "a+b-2ab", "a-1", "ab-1", "b", "b-1"});
    CHECK(names(PartialField::H2()) == std::vector<std::string>{"1-i"});
    CHECK(PartialField::U2().generator_count() == 5);
    CHECK(PartialField::U3().generator_count() == 9);
    CHECK(PartialField::H5().generator_count() == 9);
    CHECK(PartialField::H2().torsion_order() == 4);
    CHECK(PartialField::U2().torsion_order() == 2);
}

TEST_CASE("every named field carries its validated finite-field images") {
    CHECK(PartialField::U2().images().size() == 4);
    CHECK(PartialField::U3().images().size() == 3);
    CHECK(PartialField::H5().images().size() == 3);
    CHECK(PartialField::K2().images().size() == 3);
    CHECK(PartialField::H4().images().size() == 4);
    CHECK(PartialField::H2().images().size() == 3);
    for (const PartialField* P : kInfinite)
        for (const auto& img : P->images())
            for (int j = 0; j < P->generator_count(); ++j) CHECK(img.gen_images[j] != 0);
    CHECK(PartialField::U2().images()[0].describe() == "GF(4)[w,w+1]");
    CHECK(PartialField::H2().images()[0].describe() == "GF(5)[i=2]");
}

TEST_CASE("parse and print round-trip") {
    std::mt19937 rng(7);
    for (const PartialField* P : kInfinite) {
        for (int t = 0; t < 200; ++t) {
            PfElement x = random_unit(*P, rng);
            CHECK(P->parse(x.str()) == x);
        }
        CHECK(P->parse("0") == P->zero());
        CHECK(P->parse("1") == P->one());
        CHECK(P->parse("-1") == P->minus_one());
        CHECK_THROWS(P->parse("nonsense"));
    }
    const auto& H2 = PartialField::H2();
    CHECK(H2.parse("i").str() == "i");
    CHECK(H2.mul(H2.parse("i"), H2.parse("i")) == H2.minus_one());
    CHECK(H2.pow(H2.parse("i"), 4) == H2.one());
    CHECK(H2.parse("-i*1-i^-1").str() == "-i*1-i^-1");
}

TEST_CASE("partial addition: the defining examples") {
    const auto& U2 = PartialField::U2();
    PfElement a1 = U2.generator("a1"), a2 = U2.generator("a2");

    auto d = U2.add(a1, U2.neg(a2));
    REQUIRE(d.has_value());
    CHECK(*d == U2.generator("a1-a2"));

    CHECK_FALSE(U2.add(a1, a2).has_value());  // a1 + a2 is not in the group

    auto e = U2.add(U2.neg(U2.generator("a1-1")), a1);  // (1 - a1) + a1
    REQUIRE(e.has_value());
    CHECK(*e == U2.one());

    CHECK(U2.sub(a1, a1) == U2.zero());
    CHECK(U2.add(a1, U2.zero()) == a1);
    CHECK(U2.add(U2.one(), U2.minus_one()) == U2.zero());
}

TEST_CASE("H2 arithmetic with the torsion unit") {
    const auto& H2 = PartialField::H2();
    // i + i = -(1-i)^2  and  1 + i = i(1-i)
    auto s = H2.add(H2.parse("i"), H2.parse("i"));
    REQUIRE(s.has_value());
    CHECK(s->str() == "-1-i^2");
    auto t = H2.add(H2.one(), H2.parse("i"));
    REQUIRE(t.has_value());
    CHECK(*t == H2.parse("i*1-i"));
    // (1+i)/2 + (1-i)/2 = 1
    auto u = H2.add(H2.parse("1-i^-1"), H2.parse("-i*1-i^-1"));
    REQUIRE(u.has_value());
    CHECK(*u == H2.one());
    // 2 = i (1-i)^2
    auto two = H2.add(H2.one(), H2.one());
    REQUIRE(two.has_value());
    CHECK(*two == H2.parse("i*1-i^2"));
}

TEST_CASE("multiplicative laws") {
    std::mt19937 rng(11);
    for (const PartialField* P : kInfinite) {
        for (int t = 0; t < 100; ++t) {
            PfElement x = random_unit(*P, rng), y = random_unit(*P, rng);
            CHECK(P->mul(x, P->inv(x)) == P->one());
            CHECK(P->mul(x, y) == P->mul(y, x));
            CHECK(P->pow(x, 3) == P->mul(x, P->mul(x, x)));
            CHECK(P->mul(x, P->one()) == x);
            CHECK(P->neg(P->neg(x)) == x);
        }
    }
}

TEST_CASE("addition agrees with evaluation at random primes") {
    std::mt19937 rng(13);
    const u64 primes[] = {1000003, 2000003};
    for (const PartialField* P : kInfinite) {
        // a generator g with 1 - g again a unit, so x + (-x g) is always defined
        PfElement g = P->zero();
        for (int j = 0; j < P->generator_count(); ++j)
            if (auto d = P->add(P->one(), P->neg(P->generator(j))); d && !d->is_zero()) {
                g = P->generator(j);
                break;
            }
        REQUIRE(!g.is_zero());
        for (u64 p : primes) {
            auto res = good_residues(*P, p, rng);
            for (int t = 0; t < 300; ++t) {
                PfElement x = random_unit(*P, rng), y = random_unit(*P, rng);
                u64 vx = P->eval_mod(x, p, res, 0), vy = P->eval_mod(y, p, res, 0);
                if (auto s = P->add(x, y); s.has_value())
                    CHECK(P->eval_mod(*s, p, res, 0) == (vx + vy) % p);
                auto s2 = P->add(x, P->neg(P->mul(x, g)));
                REQUIRE(s2.has_value());
                u64 vg = P->eval_mod(g, p, res, 0);
                CHECK(P->eval_mod(*s2, p, res, 0) == vx * ((p + 1 - vg) % p) % p);
                CHECK(*P->add(x, P->neg(x)) == P->zero());
                (void)vy;
            }
        }
    }
}

TEST_CASE("normal forms are unique") {
    // two elements equal as fractions compare equal as normal forms
    std::mt19937 rng(17);
    for (const PartialField* P : kInfinite) {
        for (int t = 0; t < 100; ++t) {
            PfElement x = random_unit(*P, rng);
            auto [n, d] = P->expand(x);
            auto y = P->normalize(n, d);
            REQUIRE(y.has_value());
            CHECK(*y == x);
        }
    }
}

TEST_CASE("finite fields in partial-field clothing") {
    const auto& F5 = PartialField::GF(5);
    CHECK(F5.finite());
    CHECK(F5.add(F5.ff_value(2), F5.ff_value(3)) == F5.zero());
    CHECK(F5.mul(F5.ff_value(2), F5.ff_value(3)) == F5.one());
    CHECK(F5.inv(F5.ff_value(2)) == F5.ff_value(3));
    CHECK(F5.parse("4") == F5.neg(F5.one()));

    const auto& F4 = PartialField::GF(4);
    CHECK(F4.mul(F4.parse("w"), F4.parse("w")) == F4.parse("w+1"));
    CHECK(F4.add(F4.parse("w"), F4.parse("w")) == F4.zero());
    CHECK(PartialField::by_name("GF(7)") != nullptr);
    CHECK(PartialField::by_name("U2") == &PartialField::U2());
}

TEST_CASE("evaluation respects every registered image") {
    std::mt19937 rng(19);
    for (const PartialField* P : kInfinite) {
        for (const auto& img : P->images()) {
            for (int t = 0; t < 50; ++t) {
                PfElement x = random_unit(*P, rng), y = random_unit(*P, rng);
                const FiniteField& F = *img.F;
                CHECK(P->eval(P->mul(x, y), img) == F.mul(P->eval(x, img), P->eval(y, img)));
                auto s = P->add(x, y);
                if (s.has_value())
                    CHECK(P->eval(*s, img) == F.add(P->eval(x, img), P->eval(y, img)));
            }
        }
    }
}

TEST_CASE("homomorphisms preserve sums") {
    const auto& U2 = PartialField::U2();
    const auto& F4 = PartialField::GF(4);
    PfHom h(U2, F4, {F4.parse("w"), F4.parse("w+1")});
    std::mt19937 rng(23);
    for (int t = 0; t < 300; ++t) {
        PfElement x = random_unit(U2, rng), y = random_unit(U2, rng);
        CHECK(h.apply(U2.mul(x, y)) == F4.mul(h.apply(x), h.apply(y)));
        auto s = U2.add(x, y);
        if (s.has_value()) {
            auto hs = F4.add(h.apply(x), h.apply(y));
            REQUIRE(hs.has_value());
            CHECK(h.apply(*s) == *hs);
        }
    }
    // a1 and a2 must stay distinct for a1-a2 to stay a unit
    CHECK_THROWS(PfHom(U2, F4, {F4.parse("w"), F4.parse("w")}));
}

TEST_CASE("the six-element fields are isomorphic") {
    const auto& H5 = PartialField::H5();
    const auto& U3 = PartialField::U3();
    PfHom fwd(H5, U3,
              {U3.generator("a1"), U3.parse("-a2-a3*a1-a2^-1"), U3.generator("a3")});
    PfHom bwd(U3, H5, {H5.generator("a"), H5.parse("-g-ab*b-1^-1"), H5.generator("g")});
    CHECK(pf_roundtrip_check(fwd, bwd));

    // the two awkward generators land on the documented normal forms
    CHECK(fwd.apply(H5.generator("g-ab")).str() == "a2*a1-a2^-1*a1-a3");
    CHECK(fwd.apply(H5.generator("ab-b-g+1")).str() == "-a2-1*a1-a2^-1*a1-a3");

    std::mt19937 rng(29);
    for (int t = 0; t < 300; ++t) {
        PfElement x = random_unit(H5, rng), y = random_unit(H5, rng);
        CHECK(bwd.apply(fwd.apply(x)) == x);
        auto s = H5.add(x, y);
        auto fs = U3.add(fwd.apply(x), fwd.apply(y));
        CHECK(s.has_value() == fs.has_value());
        if (s) CHECK(fwd.apply(*s) == *fs);
    }
}
