#!/usr/bin/env python3
"""Derive the reduced K2-representations of F7=, TQ8 and P8-.

K2 = (Q(a), <-1, a, a-1, a+1>).  A reduced K2-representation is a matrix in
which every square subdeterminant is zero or of the form +-a^x (a-1)^y (a+1)^z;
such a matrix yields a representation over every field with at least four
elements (a -> w over GF(4); a -> 2 or 3 over GF(5); and so on).

Each matrix is derived, not transcribed: starting from the known support and
characteristic-2 image of the representation, the off-tree entries are solved
for by depth-first search over bounded-exponent units of K2, subject to every
subdeterminant matching the GF(4) zero pattern and being a unit of K2.  The
represented matroid is then checked against an independent construction:

  F7=  -- extend M(K4) by a point placed freely on the line through a matching
          pair of edges; equivalently, relax any circuit-hyperplane of the
          non-Fano matroid F7- (all six relaxations are isomorphic).
  P8-  -- relax either one of the unique pair of disjoint circuit-hyperplanes
          of the ternary matroid P8 (the two relaxations are isomorphic).
  TQ8  -- determined by its GF(4) image, which is checked to be an 8-element
          rank-4 matroid that is 3-connected, self-dual, and isomorphic to
          neither P8 nor P8-.

The GF(4) zero patterns are taken from the templates below.  Signs and unit
magnitudes are invisible in characteristic 2, so the search reconstructs them;
the emitted matrix is the valid assignment of smallest total exponent size.

Run:  python3 tools/derivation/derive_k2_matrices.py
"""

from fractions import Fraction
from itertools import combinations

import sympy as sp

A = sp.symbols("a")

# support and GF(4) image: 0, 1, "a" (-> w), "a1" (-> w^2 = w+1)
TEMPLATES = {
    "F7=": [[1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, "a"]],
    "TQ8": [[0, 1, 1, 1], [1, "a", 1, "a1"], [1, 1, 1, "a"], [1, "a1", "a", "a"]],
    "P8-": [[1, "a1", 0, 1], ["a1", "a1", "a", 1], [0, "a", "a", 1], [1, 1, 1, 0]],
}

EXP_BOUND = 2  # unit pool: +-a^x (a-1)^y (a+1)^z, |x|,|y|,|z| <= EXP_BOUND

# unit checks run at three rational points; a subdeterminant is accepted as a
# unit only if one exponent triple explains the value at all three
POINTS = [17, 19, 23]
POINT_PRIMES = {17: (17, 16, 18), 19: (19, 18, 20), 23: (23, 22, 24)}


# ---------------------------------------------------------------------------
# GF(4): elements 0,1,2=w,3=w+1

G4INV = {1: 1, 2: 3, 3: 2}


def g4mul(a, b):
    if a == 0 or b == 0:
        return 0
    log = {1: 0, 2: 1, 3: 2}
    return [1, 2, 3][(log[a] + log[b]) % 3]


def det_gf4(M):
    n = len(M)
    M = [row[:] for row in M]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
        inv = G4INV[M[c][c]]
        for r in range(c + 1, n):
            if M[r][c]:
                f = g4mul(M[r][c], inv)
                M[r] = [M[r][j] ^ g4mul(f, M[c][j]) for j in range(n)]
    return 1 if all(M[i][i] for i in range(n)) else 0


def det_mod(M, q):
    n = len(M)
    M = [[x % q for x in row] for row in M]
    d = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d = d * M[c][c] % q
        inv = pow(M[c][c], q - 2, q)
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv % q
                M[r] = [(M[r][j] - f * M[c][j]) % q for j in range(n)]
    return d % q


def submatrices(m, n):
    out = []
    for k in range(1, min(m, n) + 1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                out.append((rows, cols))
    return out


# ---------------------------------------------------------------------------
# matroid helpers: bases as frozensets of 0..n-1

def bases_of_reduced(value, r, n):
    bases = set()
    for S in combinations(range(n), r):
        T = [e for e in S if e < r]
        C = tuple(e - r for e in S if e >= r)
        R = tuple(i for i in range(r) if i not in T)
        if len(R) != len(C):
            continue
        if len(R) == 0 or value(R, C):
            bases.add(frozenset(S))
    return bases


def rank_fn(bases):
    return lambda X: max(len(X & B) for B in bases)


def isomorphic(b1, b2, n):
    if len(b1) != len(b2):
        return False
    d1 = {e: sum(1 for B in b1 if e in B) for e in range(n)}
    d2 = {e: sum(1 for B in b2 if e in B) for e in range(n)}
    if sorted(d1.values()) != sorted(d2.values()):
        return False
    by_deg = {}
    for e, d in d2.items():
        by_deg.setdefault(d, []).append(e)
    order = sorted(range(n), key=lambda e: d1[e])

    def bt(i, mapping, used):
        if i == n:
            return {frozenset(mapping[x] for x in B) for B in b1} == b2
        e = order[i]
        for f in by_deg.get(d1[e], []):
            if f not in used:
                mapping[e] = f
                used.add(f)
                if bt(i + 1, mapping, used):
                    return True
                used.discard(f)
        return False

    return bt(0, {}, set())


def dual_bases(bases, n):
    E = frozenset(range(n))
    return {E - B for B in bases}


def is_3connected(bases, n):
    rk = rank_fn(bases)
    E = frozenset(range(n))
    r = rk(E)
    for bits in range(1, 1 << (n - 1)):
        X = frozenset(e for e in range(n) if bits >> e & 1)
        Y = E - X
        if min(len(X), len(Y)) < 2:
            continue
        if rk(X) + rk(Y) - r <= 1:
            return False
    return True


# ---------------------------------------------------------------------------
# independent targets

def f7eq_target():
    t = 7
    cols = [[1, -1, 0], [0, 1, -1], [1, 0, -1], [1, t, -t]]
    M = [[cols[j][i] for j in range(4)] for i in range(3)]

    def val(R, C):
        return det_mod([[M[i][j] for j in C] for i in R], 10007)

    return bases_of_reduced(val, 3, 7)


def p8_and_relaxation():
    Ap8 = [[0, 1, 1, -1], [1, 0, 1, 1], [1, 1, 0, 1], [-1, 1, 1, 0]]

    def val(R, C):
        return det_mod([[Ap8[i][j] for j in C] for i in R], 3)

    p8 = bases_of_reduced(val, 4, 8)
    rk = rank_fn(p8)
    chs = []
    for S in combinations(range(8), 4):
        X = frozenset(S)
        if X in p8:
            continue
        if any(rk(frozenset(T)) < 3 for T in combinations(S, 3)):
            continue
        if all(rk(X | {e}) == 4 for e in range(8) if e not in X):
            chs.append(X)
    disj = [(X, Y) for X, Y in combinations(chs, 2) if not X & Y]
    assert len(disj) == 1, "P8 should have a unique pair of disjoint circuit-hyperplanes"
    X, Y = disj[0]
    ra, rb = p8 | {X}, p8 | {Y}
    assert isomorphic(ra, rb, 8)
    return p8, ra


# ---------------------------------------------------------------------------
# the lift search

def unit_pool():
    pool = []
    B = EXP_BOUND
    for s in (1, -1):
        for x in range(-B, B + 1):
            for y in range(-B, B + 1):
                for z in range(-B, B + 1):
                    vals = tuple(
                        Fraction(s)
                        * Fraction(t) ** x
                        * Fraction(t - 1) ** y
                        * Fraction(t + 1) ** z
                        for t in POINTS
                    )
                    pool.append(((s, x, y, z), vals))
    return pool


def explained_as_unit(vals):
    """Try to express the evaluated values as one unit of K2; None if not."""
    f = vals[0]
    num, den = f.numerator, f.denominator
    s = 1
    if num < 0:
        s, num = -1, -num
    exps = {}
    for p in (2, 3, 17):
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        exps[p] = e
    if num != 1 or den != 1:
        return None
    x = exps[17]
    if exps[3] % 2:
        return None
    z = exps[3] // 2
    if (exps[2] - z) % 4:
        return None
    y = (exps[2] - z) // 4
    for t, v in zip(POINTS, vals):
        if v != Fraction(s) * Fraction(t) ** x * Fraction(t - 1) ** y * Fraction(t + 1) ** z:
            return None
    return (s, x, y, z)


def spanning_tree(support, m, n):
    """Entries (i,j) forming a spanning tree of the row/col incidence graph."""
    seen = {("r", 0)}
    tree = []
    frontier = [("r", 0)]
    while frontier:
        node = frontier.pop()
        if node[0] == "r":
            i = node[1]
            for j in range(n):
                if support[i][j] and ("c", j) not in seen:
                    seen.add(("c", j))
                    tree.append((i, j))
                    frontier.append(("c", j))
        else:
            j = node[1]
            for i in range(m):
                if support[i][j] and ("r", i) not in seen:
                    seen.add(("r", i))
                    tree.append((i, j))
                    frontier.append(("r", i))
    assert len(seen) == m + n, "support graph is connected for these matrices"
    return set(tree)


def lift(name, template):
    m, n = len(template), len(template[0])
    subs = submatrices(m, n)
    support = [[0 if x == 0 else 1 for x in row] for row in template]

    # target zero pattern, from GF(4) at both a=w and a=w^2
    pats = []
    for al in (2, 3):
        conv = {0: 0, 1: 1, "a": al, "a1": al ^ 1}
        M4 = [[conv[x] for x in row] for row in template]
        pats.append(
            tuple(det_gf4([[M4[i][j] for j in C] for i in R]) != 0 for R, C in subs)
        )
    assert pats[0] == pats[1], "GF(4) template inconsistent"
    req = dict(zip(subs, pats[0]))

    tree = spanning_tree(support, m, n)
    unknowns = [
        (i, j) for i in range(m) for j in range(n) if support[i][j] and (i, j) not in tree
    ]

    # order unknowns so each placement closes as many minors as possible
    ordered = []
    placed = set(tree)
    rest = set(unknowns)
    while rest:
        def gain(p):
            i, j = p
            g = 0
            for R, C in subs:
                if i in R and j in C:
                    cells = [
                        (r, c)
                        for r in R
                        for c in C
                        if support[r][c] and (r, c) != (i, j)
                    ]
                    if all(c in placed for c in cells):
                        g += 1
            return g

        best = max(rest, key=gain)
        ordered.append(best)
        placed.add(best)
        rest.discard(best)

    # minors that become checkable at each step
    step_minors = []
    placed = set(tree)
    for p in ordered:
        placed.add(p)
        ms = []
        for R, C in subs:
            cells = [(r, c) for r in R for c in C if support[r][c]]
            if p in cells and all(c in placed for c in cells):
                ms.append((R, C))
        step_minors.append(ms)

    pool = unit_pool()
    one = tuple(Fraction(1) for _ in POINTS)
    zero = tuple(Fraction(0) for _ in POINTS)

    vals = [[zero if not support[i][j] else None for j in range(n)] for i in range(m)]
    sym = [[None] * n for _ in range(m)]
    for i, j in tree:
        vals[i][j] = one
        sym[i][j] = (1, 0, 0, 0)

    solutions = []

    def det_at(R, C, k):
        sub = [[vals[i][j][k] for j in C] for i in R]
        d = Fraction(0)
        # simple Laplace along the first row; sizes are at most 4
        if len(R) == 1:
            return sub[0][0]
        for c in range(len(C)):
            if sub[0][c] == 0:
                continue
            minor = [row[:c] + row[c + 1 :] for row in sub[1:]]
            sign = -1 if c % 2 else 1

            def md(M):
                if len(M) == 1:
                    return M[0][0]
                acc = Fraction(0)
                for cc in range(len(M)):
                    if M[0][cc] == 0:
                        continue
                    acc += (-1 if cc % 2 else 1) * M[0][cc] * md(
                        [r[:cc] + r[cc + 1 :] for r in M[1:]]
                    )
                return acc

            d += sign * sub[0][c] * md(minor)
        return d

    def dfs(step):
        if step == len(ordered):
            solutions.append([row[:] for row in sym])
            return
        i, j = ordered[step]
        for u, uvals in pool:
            vals[i][j] = uvals
            sym[i][j] = u
            ok = True
            for R, C in step_minors[step]:
                ds = tuple(det_at(R, C, k) for k in range(len(POINTS)))
                if req[(R, C)]:
                    if any(d == 0 for d in ds) or explained_as_unit(ds) is None:
                        ok = False
                        break
                else:
                    if any(d != 0 for d in ds):
                        ok = False
                        break
            if ok:
                dfs(step + 1)
        vals[i][j] = None
        sym[i][j] = None

    dfs(0)
    print(f"{name}: {len(solutions)} unit assignments match the GF(4) pattern")
    return solutions, subs


def sym_matrix(sol, m, n):
    M = sp.zeros(m, n)
    for i in range(m):
        for j in range(n):
            if sol[i][j] is not None:
                s, x, y, z = sol[i][j]
                M[i, j] = sp.together(s * A**x * (A - 1) ** y * (A + 1) ** z)
    return M


def verify_exact(M, subs):
    for R, C in subs:
        d = sp.cancel(M.extract(list(R), list(C)).det())
        if d == 0:
            continue
        num, den = sp.fraction(d)
        for poly in (num, den):
            c, facs = sp.factor_list(poly)
            if abs(c) != 1:
                return False
            for f, _ in facs:
                if f not in (A, A - 1, A + 1):
                    return False
    return True


def matroid_of(sol, m, n):
    k = 0  # evaluate at the first point
    t = POINTS[k]

    def value(R, C):
        sub = [
            [
                0
                if sol[i][j] is None
                else Fraction(sol[i][j][0])
                * Fraction(t) ** sol[i][j][1]
                * Fraction(t - 1) ** sol[i][j][2]
                * Fraction(t + 1) ** sol[i][j][3]
                for j in C
            ]
            for i in R
        ]
        d = sp.Matrix(sub).det()
        return d != 0

    return bases_of_reduced(value, m, m + n)


def entry_str(e):
    if e is None:
        return "0"
    s, x, y, z = e
    parts = []
    for base, p in (("a", x), ("a-1", y), ("a+1", z)):
        if p:
            parts.append(base if p == 1 else f"{base}^{p}")
    body = "*".join(parts) if parts else "1"
    return ("-" if s < 0 else "") + body


def run(name, target=None, expect_selfdual=False, avoid=()):
    template = TEMPLATES[name]
    m, n = len(template), len(template[0])
    sols, subs = lift(name, template)
    good = [s for s in sols if verify_exact(sym_matrix(s, m, n), subs)]
    print(f"{name}: {len(good)} verified exactly")
    assert good, f"{name}: no lift found; widen EXP_BOUND"
    b0 = matroid_of(good[0], m, n)
    if target is not None:
        assert isomorphic(b0, target, m + n), f"{name}: wrong matroid"
        print(f"{name}: matroid matches its independent construction")
    if expect_selfdual:
        assert isomorphic(b0, dual_bases(b0, m + n), m + n), f"{name}: not self-dual"
        assert is_3connected(b0, m + n), f"{name}: not 3-connected"
        print(f"{name}: self-dual and 3-connected")
    for label, bs in avoid:
        assert not isomorphic(b0, bs, m + n), f"{name} is isomorphic to {label}"

    def weight(sol):
        return sum(
            abs(sol[i][j][1]) + abs(sol[i][j][2]) + abs(sol[i][j][3]) + (sol[i][j][0] < 0)
            for i in range(m)
            for j in range(n)
            if sol[i][j] is not None
        )

    best = min(good, key=lambda s: (weight(s), str(s)))
    print(f"{name} (reduced, {m}x{n}, over K2):")
    for i in range(m):
        print("   ", " ".join(entry_str(best[i][j]).rjust(8) for j in range(n)))
    return best, b0


if __name__ == "__main__":
    f7eq = f7eq_target()
    p8, p8m = p8_and_relaxation()
    run("F7=", target=f7eq)
    run("P8-", target=p8m, expect_selfdual=True)
    run("TQ8", expect_selfdual=True, avoid=[("P8", p8), ("P8-", p8m)])
