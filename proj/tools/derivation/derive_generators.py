#!/usr/bin/env python3
"""Derive the multiplicative generator sets for K2, H4 and H2.

For each catalog matrix given as a reduced representation over one of these
rings, every square submatrix determinant that is nonzero must be a unit of
the partial field.  This script computes all such subdeterminants, factors
them, and reports the set of irreducible factors that occur.  The partial
field then needs exactly those factors (plus -1, plus i where applicable) as
multiplicative generators.

It also sanity-checks the published finite-field substitutions: every
reported generator must stay nonzero under each substitution.

Run from anywhere:  python3 tools/derivation/derive_generators.py
"""

from itertools import combinations

import sympy as sp

a, b = sp.symbols("a b")
I = sp.I

# produced by derive_k2_matrices.py (lift search against independent targets)
K2_MATRICES = {
    "F7=": sp.Matrix([[1, 1, 0, 1], [1, 0, -1 / a, 1], [0, a, 1, 1]]),
    "TQ8": sp.Matrix(
        [
            [0, 1, 1, 1],
            [1 - a, a + 1, -(a - 1) * (a + 1), 1],
            [1, a + 1, a + 1, 1],
            [1, -1 / (a - 1), 1, 1],
        ]
    ),
    "P8-": sp.Matrix(
        [
            [1, 1, 0, 1],
            [a, 1, 1, 1],
            [0, (a - 1) / a, 1, 1],
            [a - 1, (a - 1) / a, 1, 0],
        ]
    ),
}

H4_MATRICES = {
    "M(K4)+e": sp.Matrix(
        [[1, a, a, 1], [0, 1, 1, 1], [1, 0, a, b * (a - 1) / (1 - b)]]
    ),
    "L3": sp.Matrix(
        [
            [1, 1, a + b - 2 * a * b, a * b - 1],
            [1, a, 0, a * (b - 1)],
            [1, 0, a * (1 - b), a * (b - 1)],
        ]
    ),
}

H2_MATRICES = {
    "W3+e": sp.Matrix([[1, 0, I, 1], [I, 1, 0, 1], [0, I, 1, 1]]),
    "Q6+e": sp.Matrix(
        [[(I + 1) / 2, 0, I, 1], [1, 1, 1, 1], [0, (1 - I) / 2, -I, 1]]
    ),
}


def subdets(M):
    m, n = M.shape
    for k in range(1, min(m, n) + 1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                d = sp.cancel(M.extract(list(rows), list(cols)).det())
                if d != 0:
                    yield d


def canonical(p):
    """Sign-normalize an irreducible polynomial: leading coeff (lex a>b) > 0."""
    p = sp.Poly(sp.expand(p), a, b)
    lc = p.coeffs()[0]
    if lc < 0:
        p = -p
    return p.as_expr()


def rational_factors(d):
    """Irreducible non-constant factors of a rational function over Q, and the
    rational constant left over."""
    num, den = sp.fraction(sp.cancel(d))
    out = {}
    const = sp.Integer(1)
    for poly, sign in ((num, 1), (den, -1)):
        c, facs = sp.factor_list(poly)
        const *= c**sign
        for f, mult in facs:
            cf = canonical(f)
            flip = -1 if sp.simplify(cf + f) == 0 else 1
            if flip < 0:
                const *= sp.Integer(-1) ** (mult * sign)
            out[cf] = out.get(cf, 0) + mult * sign
    return out, const


def report_rational(name, mats, subs):
    gens = set()
    consts = set()
    count = 0
    for label, M in mats.items():
        for d in subdets(M):
            count += 1
            facs, const = rational_factors(d)
            gens |= {f for f, m in facs.items() if m != 0}
            consts.add(sp.Abs(const))
    print(f"{name}: {count} nonzero subdeterminants across {len(mats)} matrices")
    print(f"  irreducible factors: {sorted(map(str, gens))}")
    print(f"  |constant| parts seen: {sorted(map(str, consts))}")
    assert consts <= {sp.Integer(1)}, "unexpected constant factor; generator set incomplete"
    for sub in subs:
        vals = [sp.Mod(sp.Integer(g.subs(sub)), 5) for g in gens]
        ok = all(v != 0 for v in vals)
        print(f"  GF(5) {sub}: generators -> {vals}  {'ok' if ok else 'VANISHES'}")
        assert ok
    return gens


def gaussian_norm(z):
    return sp.Integer(sp.expand(z * sp.conjugate(z)))


def report_h2():
    count = 0
    for label, M in H2_MATRICES.items():
        for d in subdets(M):
            count += 1
            num, den = sp.fraction(sp.together(sp.expand(d)))
            for z in (num, den):
                n = gaussian_norm(sp.expand(z))
                assert n > 0
                # must be i^k (1-i)^m: norm a power of 2
                while n % 2 == 0:
                    n //= 2
                assert n == 1, f"subdet {d} of {label} is not of the form i^k (1-i)^m"
    print(f"H2: {count} nonzero subdeterminants, all of the form i^k (1-i)^m")
    print("  generators: ['1-i'] plus the torsion unit i")
    for iv in (2, 3):
        assert (iv * iv + 1) % 5 == 0
        assert (1 - iv) % 5 != 0
    print("  GF(5) i in {2,3}: i^2 = -1 and 1-i nonzero  ok")


if __name__ == "__main__":
    k2 = report_rational(
        "K2", K2_MATRICES, subs=[{a: 2}, {a: 3}]
    )
    h4 = report_rational(
        "H4", H4_MATRICES, subs=[{a: 2, b: 2}, {a: 3, b: 3}, {a: 3, b: 4}, {a: 4, b: 3}]
    )
    report_h2()
    print()
    print("K2 generator set:", sorted(map(str, k2)))
    print("H4 generator set:", sorted(map(str, h4)))
