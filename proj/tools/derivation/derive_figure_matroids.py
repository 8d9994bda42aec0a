#!/usr/bin/env python3
"""Derive frozen basis lists for the three matroids that exist only as
geometric figures (Y8, X8, M99), and discover the explicit circuit-hyperplane
label sets used by the relaxation-based catalog entries (the F7 chain and the
P8 pair).

The figures are transcribed as exact rational coordinates (rank-3 figures as
points in the projective plane, rank-4 figures as two planes folded along
their common line).  Ranks come from Gaussian elimination over Q, so every
incidence is exact.  Each decoded matroid is then checked against everything
the text quotes about it:

  Y8:  /3\\{y1,y2} ~ U25 for all 2-subsets {y1,y2} of {1,2,4};  /5\\{7,8} ~ U25;
       three essential elements for one of the two five-point lines, none for
       the other; 3-connected; fragile.
  X8:  /{5,7}\\y ~ U25 for y in {2,6};  /{5,8}\\1 ~ U25;  /3\\{y1,y2} ~ U35 for
       all 2-subsets of {1,2,4}; self-dual; exactly one U25-essential and one
       U35-essential element; 3-connected; fragile.
  M99: no U25- or U35-essential elements; 3-connected; fragile.

The script prints the basis lists as hex masks over the ground order 1..n,
ready to embed in the catalog, plus the chosen relaxation label sets.
"""

from fractions import Fraction as Fr
from itertools import combinations

# ---------------------------------------------------------------------------
# tiny matroid toolkit over basis bitmask lists


def popcount(x):
    return bin(x).count("1")


class Mat:
    def __init__(self, n, bases):
        self.n = n
        self.bases = sorted(set(bases))
        self.r = popcount(self.bases[0])
        assert all(popcount(b) == self.r for b in self.bases)

    def rank_of(self, S):
        return max(popcount(B & S) for B in self.bases)

    def independent(self, S):
        return self.rank_of(S) == popcount(S)

    def full(self):
        return (1 << self.n) - 1

    def dual(self):
        full = self.full()
        return Mat(self.n, [full ^ B for B in self.bases])

    def minor(self, C, D):
        """Contract C, delete D; returns a Mat on the remaining elements with
        their positions preserved (ground stays 0..n-1 conceptually)."""
        keep = self.full() & ~C & ~D
        rC = self.rank_of(C)
        want = None
        out = []
        for size in range(self.r - rC, -1, -1):
            for comb in combinations([i for i in range(self.n) if keep >> i & 1], size):
                S = 0
                for i in comb:
                    S |= 1 << i
                if self.rank_of(S | C) == size + rC:
                    out.append(S)
            if out:
                want = size
                break
        return Mat(self.n, out) if out else Mat(self.n, [0])

    def elements(self):
        seen = 0
        for B in self.bases:
            seen |= B
        # elements that are loops in a minor still "exist"; track via bases only
        return seen


def has_u25_minor(M, ground):
    """ground: bitmask of live elements. U25-minor test by parallel-class
    counting after contracting an independent set of size r-2."""
    elems = [i for i in range(M.n) if ground >> i & 1]
    r = M.rank_of(ground)
    if r < 2:
        return False
    for comb in combinations(elems, r - 2):
        C = 0
        for i in comb:
            C |= 1 << i
        if not M.independent(C):
            continue
        rC = r - 2
        classes = []
        for e in elems:
            eb = 1 << e
            if eb & C or M.rank_of(C | eb) == rC:
                continue
            for cls in classes:
                if M.rank_of(C | cls | eb) == rC + 1:
                    break
            else:
                classes.append(eb)
        if len(classes) >= 5:
            return True
    return False


def has_u35_minor(M, ground):
    return has_u25_minor(M.dual(), ground)


def essential_elements(M, which):
    """which: 'u25' or 'u35'.  Returns the list of elements e such that
    neither M\\e nor M/e has the given minor."""
    has = has_u25_minor if which == "u25" else has_u35_minor
    full = M.full()
    out = []
    for e in range(M.n):
        eb = 1 << e
        if has(M.minor(0, eb), full ^ eb):
            continue
        if has(M.minor(eb, 0), full ^ eb):
            continue
        out.append(e)
    return out


def fragile_family(M):
    """{U25,U35}-fragile: has a family minor, no element both deletable and
    contractible (family-wise)."""
    full = M.full()
    if not (has_u25_minor(M, full) or has_u35_minor(M, full)):
        return False
    for e in range(M.n):
        eb = 1 << e
        dele = M.minor(0, eb)
        cont = M.minor(eb, 0)
        d = has_u25_minor(dele, full ^ eb) or has_u35_minor(dele, full ^ eb)
        c = has_u25_minor(cont, full ^ eb) or has_u35_minor(cont, full ^ eb)
        if d and c:
            return False
    return True


def is_3connected(M):
    full = M.full()
    r = M.r
    for S in range(1, full):
        a, b = popcount(S), M.n - popcount(S)
        lam = M.rank_of(S) + M.rank_of(full ^ S) - r
        if min(a, b) >= 1 and lam < 1:
            return False
        if min(a, b) >= 2 and lam < 2:
            return False
    return True


def isomorphic(A, B):
    if A.n != B.n or A.r != B.r or len(A.bases) != len(B.bases):
        return False
    targets = set(B.bases)

    def deg(M, e):
        return sum(1 for b in M.bases if b >> e & 1)

    degA = [deg(A, e) for e in range(A.n)]
    degB = [deg(B, e) for e in range(B.n)]
    if sorted(degA) != sorted(degB):
        return False

    perm = [-1] * A.n
    used = [False] * B.n

    def extend(i):
        if i == A.n:
            for b in A.bases:
                img = 0
                for e in range(A.n):
                    if b >> e & 1:
                        img |= 1 << perm[e]
                if img not in targets:
                    return False
            return True
        for j in range(B.n):
            if used[j] or degA[i] != degB[j]:
                continue
            perm[i] = j
            used[j] = True
            if extend(i + 1):
                return True
            used[j] = False
        perm[i] = -1
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# rank oracles from exact coordinates


def mat_from_columns(cols):
    """cols: list of tuples of Fractions.  Basis list of the column matroid."""
    n = len(cols)
    d = len(cols[0])

    def rank(idx):
        rows = [list(cols[i]) for i in idx]
        m = len(rows)
        r = 0
        col = 0
        while r < m and col < d:
            piv = None
            for i in range(r, m):
                if rows[i][col] != 0:
                    piv = i
                    break
            if piv is None:
                col += 1
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(r + 1, m):
                if rows[i][col] != 0:
                    f = rows[i][col] / rows[r][col]
                    for c in range(col, d):
                        rows[i][c] -= f * rows[r][c]
            r += 1
            col += 1
        return r

    rk = rank(range(n))
    bases = []
    for comb in combinations(range(n), rk):
        if rank(comb) == rk:
            S = 0
            for i in comb:
                S |= 1 << i
            bases.append(S)
    return Mat(n, bases)


def lines_of(M):
    """rank-2 flats with >= 3 points, as sorted element tuples (rank-3 M)."""
    out = set()
    for a, b, c in combinations(range(M.n), 3):
        S = (1 << a) | (1 << b) | (1 << c)
        if M.rank_of(S) == 2:
            flat = [e for e in range(M.n) if M.rank_of(S | (1 << e)) == 2]
            out.add(tuple(flat))
    return sorted(out)


def planes_of(M):
    """rank-3 flats with >= 4 points (rank-4 M)."""
    out = set()
    for comb in combinations(range(M.n), 4):
        S = 0
        for i in comb:
            S |= 1 << i
        if M.rank_of(S) == 3:
            flat = tuple(e for e in range(M.n) if M.rank_of(S | (1 << e)) == 3)
            out.add(flat)
    return sorted(out)


def mask_from(labels, elems):
    S = 0
    for e in elems:
        S |= 1 << labels.index(e)
    return S


def check_u25(minor, ground):
    """the minor restricted to ground must literally be U25 (5 pts rank 2,
    no parallel pairs)."""
    elems = [i for i in range(minor.n) if ground >> i & 1]
    if len(elems) != 5 or minor.rank_of(ground) != 2:
        return False
    for a, b in combinations(elems, 2):
        if minor.rank_of((1 << a) | (1 << b)) != 2:
            return False
    return True


def check_u35(minor, ground):
    elems = [i for i in range(minor.n) if ground >> i & 1]
    if len(elems) != 5 or minor.rank_of(ground) != 3:
        return False
    for comb in combinations(elems, 3):
        S = 0
        for i in comb:
            S |= 1 << i
        if minor.rank_of(S) != 3:
            return False
    return True


def print_bases(name, labels, M):
    print(f"{name}: n={M.n} rank={M.r} bases={len(M.bases)}")
    print(f"  ground: {labels}")
    masks = ", ".join(f"0x{b:04x}" for b in M.bases)
    print(f"  masks: {masks}")


# ---------------------------------------------------------------------------
# Y8  (rank 3; labels 1..8)

Y8_LABELS = [1, 2, 3, 4, 5, 6, 7, 8]
y8_pts = {
    1: (0, -1),
    2: (Fr(2, 3), Fr(-3, 2)),
    3: (Fr(4, 3), -2),
    4: (2, Fr(-5, 2)),
    5: (Fr(2, 5), Fr(-5, 2)),
    6: (Fr(4, 3), -3),
    7: (Fr(2, 3), Fr(-7, 2)),
    8: (0, -4),
}
Y8 = mat_from_columns([(Fr(x), Fr(y), Fr(1)) for x, y in (y8_pts[k] for k in Y8_LABELS)])

expected_lines = [(0, 1, 2, 3), (0, 4, 6), (1, 4, 7), (3, 5, 6, 7)]
assert lines_of(Y8) == sorted(expected_lines), lines_of(Y8)

# quoted identities
for y1, y2 in combinations([1, 2, 4], 2):
    C = mask_from(Y8_LABELS, [3])
    D = mask_from(Y8_LABELS, [y1, y2])
    assert check_u25(Y8.minor(C, D), Y8.full() ^ C ^ D), (y1, y2)
C = mask_from(Y8_LABELS, [5])
D = mask_from(Y8_LABELS, [7, 8])
assert check_u25(Y8.minor(C, D), Y8.full() ^ C ^ D)

ess25 = [Y8_LABELS[e] for e in essential_elements(Y8, "u25")]
ess35 = [Y8_LABELS[e] for e in essential_elements(Y8, "u35")]
assert ess25 == [], ess25
assert ess35 == [3, 5, 6], ess35
assert is_3connected(Y8) and fragile_family(Y8)
print("Y8 identities, essential counts (u25:0, u35:3 = {3,5,6}), 3-connectivity,")
print("and fragility all verified.")
print_bases("Y8", Y8_LABELS, Y8)
print()

# ---------------------------------------------------------------------------
# X8  (rank 4; labels 1..8; lower plane folded to z=0, upper to y=0)

X8_LABELS = [1, 2, 3, 4, 5, 6, 7, 8]
x8_cols = {
    1: (4, -3, 0),
    2: (3, -2, 0),
    3: (2, -1, 0),
    4: (1, 0, 0),
    5: (Fr(17, 5), Fr(-6, 5), 0),
    6: (3, 0, Fr(7, 2)),
    7: (Fr(100, 29), 0, Fr(56, 29)),
    8: (3, 0, Fr(4, 3)),
}
X8 = mat_from_columns(
    [(Fr(x), Fr(y), Fr(z), Fr(1)) for x, y, z in (x8_cols[k] for k in X8_LABELS)]
)

# intended flat structure: exactly one long line, and exactly these planes
long_lines = [
    tuple(e for e in range(8) if X8.rank_of(S | (1 << e)) == 2)
    for S in [sum(1 << i for i in c) for c in combinations(range(8), 3)]
    if X8.rank_of(S) == 2
]
assert set(long_lines) == {(0, 1, 2, 3)}, set(long_lines)
expected_planes = {
    (0, 1, 2, 3, 4),
    (0, 1, 2, 3, 5),
    (0, 1, 2, 3, 6),
    (0, 1, 2, 3, 7),
    (3, 5, 6, 7),
    (0, 4, 5, 7),
    (1, 4, 5, 6),
}
assert set(planes_of(X8)) == expected_planes, set(planes_of(X8))

for y in [2, 6]:
    C = mask_from(X8_LABELS, [5, 7])
    D = mask_from(X8_LABELS, [y])
    assert check_u25(X8.minor(C, D), X8.full() ^ C ^ D), y
C = mask_from(X8_LABELS, [5, 8])
D = mask_from(X8_LABELS, [1])
assert check_u25(X8.minor(C, D), X8.full() ^ C ^ D)
for y1, y2 in combinations([1, 2, 4], 2):
    C = mask_from(X8_LABELS, [3])
    D = mask_from(X8_LABELS, [y1, y2])
    assert check_u35(X8.minor(C, D), X8.full() ^ C ^ D), (y1, y2)

assert isomorphic(X8, X8.dual()), "X8 must be self-dual"
x8_e25 = [X8_LABELS[e] for e in essential_elements(X8, "u25")]
x8_e35 = [X8_LABELS[e] for e in essential_elements(X8, "u35")]
assert len(x8_e25) == 1 and len(x8_e35) == 1, (x8_e25, x8_e35)
assert is_3connected(X8) and fragile_family(X8)
print(f"X8 identities verified; self-dual; u25-essential {x8_e25},")
print(f"u35-essential {x8_e35}; 3-connected; fragile.")
print_bases("X8", X8_LABELS, X8)
print()

# ---------------------------------------------------------------------------
# M99  (rank 4; labels 1..9).  The figure admits more than one reading for the
# upper-plane incidences; each candidate differs in whether point 7 lies on
# the line through 9 that meets the common line at (4,0) (the figure draws it
# on that segment) and is filtered by the quoted metadata: no U25- or
# U35-essential elements, 3-connected, fragile.

M99_LABELS = [1, 2, 3, 4, 5, 6, 7, 8, 9]


def m99_candidate(reading):
    """reading selects which of 7, 8 lie on the drawn line from 9 to the
    (4,0) anchor; the remaining upper incidences follow exactly."""
    pts = {
        1: (4, -3, 0),
        2: (3, -2, 0),
        3: (2, -1, 0),
        4: (Fr(17, 5), Fr(-6, 5), 0),
        5: (3, 0, 0),
        9: (Fr(9, 4), 0, Fr(17, 5)),
    }
    on_A = lambda x: (x, 0, Fr(-68, 35) * (x - 4))  # line from (4,0) through 9
    if reading == "78":  # both 7 and 8 on that line
        pts[7] = on_A(Fr(17, 5))
        pts[8] = on_A(Fr(3))
        # 6 = intersection of line {9,5} with line from (1,0) through 8
        pts[6] = (Fr(45, 17), 0, Fr(8, 5))
    elif reading == "7":  # 7 on the line; 8 at its exact drawn spot
        pts[7] = on_A(Fr(17, 5))
        pts[8] = (3, 0, 2)
        pts[6] = (Fr(219, 83), 0, Fr(136, 83))
    elif reading == "8":  # 8 on the line; 7 at its exact drawn spot
        pts[7] = (Fr(17, 5), 0, Fr(6, 5))
        pts[8] = on_A(Fr(3))
        pts[6] = (Fr(45, 17), 0, Fr(8, 5))
    else:  # neither
        pts[7] = (Fr(17, 5), 0, Fr(6, 5))
        pts[8] = (3, 0, 2)
        pts[6] = (Fr(219, 83), 0, Fr(136, 83))
    return mat_from_columns(
        [(Fr(x), Fr(y), Fr(z), Fr(1)) for x, y, z in (pts[k] for k in M99_LABELS)]
    )


survivors = []
for reading in ["78", "7", "8", "none"]:
    cand = m99_candidate(reading)
    e25 = [M99_LABELS[e] for e in essential_elements(cand, "u25")]
    e35 = [M99_LABELS[e] for e in essential_elements(cand, "u35")]
    conn = is_3connected(cand)
    frag = fragile_family(cand)
    ok = not e25 and not e35 and conn and frag
    print(f"M99 reading({reading}): u25-ess={e25} u35-ess={e35} "
          f"3conn={conn} fragile={frag} -> {'PASS' if ok else 'fail'}")
    if ok:
        survivors.append((reading, cand))

assert survivors, "no M99 reading passes the metadata"
primary = survivors[0][1]
for reading, cand in survivors[1:]:
    assert isomorphic(primary, cand), "metadata does not pin M99 to one matroid"
print(f"M99: {len(survivors)} reading(s) pass; figure-faithful reading frozen.")
print_bases("M99", M99_LABELS, primary)
print()

# ---------------------------------------------------------------------------
# circuit-hyperplane discovery for the relaxation entries


def gf_mat(q, rows, labels):
    """column matroid over GF(q) (prime q) of [I|A] with A given by rows."""
    m = len(rows)
    cols = []
    for i in range(m):
        cols.append([1 if j == i else 0 for j in range(m)])
    for c in range(len(rows[0])):
        cols.append([rows[r][c] % q for r in range(m)])

    def rank(idx):
        a = [list(cols[i]) for i in idx]
        r = 0
        col = 0
        while r < len(a) and col < m:
            piv = next((i for i in range(r, len(a)) if a[i][col] % q), None)
            if piv is None:
                col += 1
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = pow(a[r][col], q - 2, q)
            for i in range(r + 1, len(a)):
                if a[i][col] % q:
                    f = a[i][col] * inv % q
                    for cc in range(col, m):
                        a[i][cc] = (a[i][cc] - f * a[r][cc]) % q
            r += 1
            col += 1
        return r

    n = len(cols)
    bases = []
    for comb in combinations(range(n), m):
        if rank(comb) == m:
            S = 0
            for i in comb:
                S |= 1 << i
            bases.append(S)
    return Mat(n, bases), labels


def circuit_hyperplanes(M):
    out = []
    full = M.full()
    for size in range(2, M.n + 1):
        for comb in combinations(range(M.n), size):
            S = 0
            for i in comb:
                S |= 1 << i
            if M.rank_of(S) != M.r - 1 or M.rank_of(S) != size - 1:
                continue
            # circuit: every proper subset independent
            if any(M.rank_of(S ^ (1 << i)) != size - 1 for i in comb):
                continue
            # hyperplane: closure is S itself
            if any(
                M.rank_of(S | (1 << e)) == M.r - 1
                for e in range(M.n)
                if not S >> e & 1
            ):
                continue
            out.append(S)
    return out


F7_LABELS = ["x1", "x2", "x3", "y1", "y2", "y3", "y4"]
F7, _ = gf_mat(2, [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]], F7_LABELS)
chs = circuit_hyperplanes(F7)
print(f"F7 circuit-hyperplanes ({len(chs)}):")
for S in chs:
    print("  ", [F7_LABELS[e] for e in range(7) if S >> e & 1])

P8_LABELS = ["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]
P8, _ = gf_mat(
    3, [[0, 1, 1, -1], [1, 0, 1, 1], [1, 1, 0, 1], [-1, 1, 1, 0]], P8_LABELS
)
chs8 = circuit_hyperplanes(P8)
print(f"P8 circuit-hyperplanes ({len(chs8)}):")
for S in chs8:
    print("  ", [P8_LABELS[e] for e in range(8) if S >> e & 1])
pairs = [
    (a, b) for a in chs8 for b in chs8 if a < b and a & b == 0
]
print(f"disjoint pairs: {[([P8_LABELS[e] for e in range(8) if a >> e & 1], [P8_LABELS[e] for e in range(8) if b >> e & 1]) for a, b in pairs]}")
assert P8.dual() and isomorphic(P8, P8.dual()), "P8 should be self-dual"
print("P8 self-duality verified.")
