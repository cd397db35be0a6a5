#!/usr/bin/env python3
"""Construct the shipped generator files under data/groups/.

Every group is built from an explicit combinatorial or linear-algebra
construction (see data/PROVENANCE.md) and its order is checked with sympy
before the file is written.  Run from the repository root:

    python3 data/scripts/build_groups.py data/groups
"""
import itertools
import os
import random
import sys

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

sys.path.insert(0, os.path.dirname(__file__))
from graph_iso import isomorphism  # noqa: E402

OUT = sys.argv[1] if len(sys.argv) > 1 else "data/groups"
os.makedirs(OUT, exist_ok=True)
rng = random.Random(20240517)


def write_group(fname, name, degree, gens):
    for g in gens:
        assert sorted(g) == list(range(degree)), name
    with open(os.path.join(OUT, fname), "w") as f:
        f.write(f"degree: {degree}\nname: {name}\n")
        for g in gens:
            f.write(" ".join(map(str, g)) + "\n")


def order(gens):
    return PermutationGroup([Permutation(list(g)) for g in gens]).order()


def two_generators(group, degree, target, restrict=None):
    """Random pairs from `group` until they generate a group of order target."""
    while True:
        a = group.random().array_form
        b = group.random().array_form
        if restrict is not None:
            a, b = restrict(a), restrict(b)
        else:
            a, b = a[:degree], b[:degree]
        if order([a, b]) == target:
            return [list(a), list(b)]


def check(name, gens, expected):
    got = order(gens)
    assert got == expected, f"{name}: order {got}, expected {expected}"
    print(f"{name}: order {got}")


# ---------------------------------------------------------------------------
# M24 on the projective line over F_23 (infinity = 23), Golay code, octads.
P = 23
INF = 23
QR = {(x * x) % P for x in range(1, P)}


def finv(x):
    return pow(x, P - 2, P)


def on_line(f):
    return [f(x) for x in range(24)]


m24_shift = on_line(lambda x: INF if x == INF else (x + 1) % P)
m24_invert = on_line(lambda x: 0 if x == INF else INF if x == 0 else (-finv(x)) % P)


def _cube(x):
    if x in (0, INF):
        return x
    if x in QR:
        return (pow(x, 3, P) * finv(9)) % P
    return (9 * pow(x, 3, P)) % P


m24_cube = on_line(_cube)
M24_GENS = [m24_shift, m24_invert, m24_cube]
check("M24", M24_GENS, 244823040)
M24 = PermutationGroup([Permutation(g) for g in M24_GENS])
write_group("m24.grp", "M24", 24, M24_GENS)


def golay_octads():
    vecs = []
    for k in range(23):
        v = 0
        for x in QR | {0}:
            v |= 1 << ((x + k) % 23)
        if bin(v).count("1") % 2:
            v |= 1 << 23
        vecs.append(v)
    vecs.append((1 << 24) - 1)
    basis = []
    for v in vecs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    words = {0}
    for b in basis:
        words |= {w ^ b for w in words}
    octs = [frozenset(i for i in range(24) if w >> i & 1)
            for w in words if bin(w).count("1") == 8]
    assert len(octs) == 759
    return sorted(octs, key=sorted)


OCTADS = golay_octads()

# M23: stabilizer of infinity; x -> x + 1 and the cube map both fix it.
M23_GENS = [m24_shift[:23], m24_cube[:23]]
check("M23", M23_GENS, 10200960)
write_group("m23.grp", "M23", 23, M23_GENS)

# M22: pointwise stabilizer of {22, 23} in M24, acting on 0..21.
M22_GENS = two_generators(M24.pointwise_stabilizer([22, 23]), 22, 443520)
check("M22", M22_GENS, 443520)
write_group("m22.grp", "M22", 22, M22_GENS)

# M12 and M11.
M12_GENS = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0, 11],
    list(Permutation([[2, 6, 10, 7], [3, 9, 4, 5]], size=12).array_form),
    list(Permutation([[0, 11], [1, 10], [2, 5], [3, 7], [4, 8], [6, 9]], size=12).array_form),
]
check("M12", M12_GENS, 95040)
write_group("m12.grp", "M12", 12, M12_GENS)
M12 = PermutationGroup([Permutation(g) for g in M12_GENS])
M11_GENS = two_generators(M12.stabilizer(11), 11, 7920)
check("M11", M11_GENS, 7920)
write_group("m11.grp", "M11", 11, M11_GENS)

# ---------------------------------------------------------------------------
# HS on the 100 vertices of the Higman-Sims graph:
# vertex 0 = infinity, 1..22 = points of S(3,6,22), 23..99 = hexads.
HEXADS = [o - {22, 23} for o in OCTADS if 22 in o and 23 in o]
assert len(HEXADS) == 77
hs_adj = np.zeros((100, 100), dtype=np.int8)
for x in range(22):
    hs_adj[0, 1 + x] = hs_adj[1 + x, 0] = 1
for i, h in enumerate(HEXADS):
    for x in h:
        hs_adj[1 + x, 23 + i] = hs_adj[23 + i, 1 + x] = 1
    for j, k in enumerate(HEXADS):
        if not (h & k):
            hs_adj[23 + i, 23 + j] = 1
assert set(hs_adj.sum(axis=1)) == {22}
hexad_index = {h: i for i, h in enumerate(HEXADS)}


def m22_on_hs_graph(p):
    return [0] + [1 + p[x] for x in range(22)] + \
        [23 + hexad_index[frozenset(p[x] for x in h)] for h in HEXADS]


hs_extra = isomorphism(hs_adj, hs_adj, 0, 1)
assert hs_extra is not None
HS_GENS = [m22_on_hs_graph(g) for g in M22_GENS] + [[int(x) for x in hs_extra]]
check("HS", HS_GENS, 44352000)
write_group("hs.grp", "HS", 100, HS_GENS)

# ---------------------------------------------------------------------------
# Co3 on 276 points: the regular two-graph on the 23 points and 253 heptads
# of S(4,7,23).  Graph in the switching class: point~heptad when incident,
# heptad~heptad when they meet in one point.
HEPTADS = [o - {23} for o in OCTADS if 23 in o]
assert len(HEPTADS) == 253
tg = np.zeros((276, 276), dtype=np.int8)
for i, h in enumerate(HEPTADS):
    for x in h:
        tg[x, 23 + i] = tg[23 + i, x] = 1
    for j, k in enumerate(HEPTADS):
        if j != i and len(h & k) == 1:
            tg[23 + i, 23 + j] = 1


def isolate(adj, v):
    nbr = adj[v].astype(bool)
    flip = np.outer(nbr, ~nbr) | np.outer(~nbr, nbr)
    out = adj ^ flip.astype(np.int8)
    assert out[v].sum() == 0
    return out


co3_extra = isomorphism(isolate(tg, 0), isolate(tg, 23), 0, 23)
assert co3_extra is not None
heptad_index = {h: i for i, h in enumerate(HEPTADS)}


def m23_on_two_graph(p):
    return list(p[:23]) + [23 + heptad_index[frozenset(p[x] for x in h)] for h in HEPTADS]


CO3_GENS = [m23_on_two_graph(g) for g in M23_GENS] + [[int(x) for x in co3_extra]]
check("Co3", CO3_GENS, 495766656000)
write_group("co3.grp", "Co3", 276, CO3_GENS)

# ---------------------------------------------------------------------------
# S6 with PGL2(5) acting on the projective line over F_5 (infinity = 5).


def pl5(f):
    return [f(x) for x in range(6)]


S6_GENS = [[1, 0, 2, 3, 4, 5], [1, 2, 3, 4, 5, 0]]
PGL25_GENS = [
    pl5(lambda x: 5 if x == 5 else (x + 1) % 5),
    pl5(lambda x: 5 if x == 5 else (2 * x) % 5),
    pl5(lambda x: 0 if x == 5 else 5 if x == 0 else (-pow(x, 3, 5)) % 5),
]
check("S6", S6_GENS, 720)
check("PGL2(5)", PGL25_GENS, 120)
write_group("s6.grp", "S6", 6, S6_GENS)
write_group("s6_pgl2_5.grp", "PGL2(5)", 6, PGL25_GENS)

# S8 with S4 wr S2 (blocks {0,1,2,3} and {4,5,6,7}).
S8_GENS = [[1, 0, 2, 3, 4, 5, 6, 7], [1, 2, 3, 4, 5, 6, 7, 0]]
WR_GENS = [[1, 0, 2, 3, 4, 5, 6, 7], [1, 2, 3, 0, 4, 5, 6, 7], [4, 5, 6, 7, 0, 1, 2, 3]]
check("S8", S8_GENS, 40320)
check("S4 wr S2", WR_GENS, 1152)
write_group("s8.grp", "S8", 8, S8_GENS)
write_group("s8_s4wrs2.grp", "S4 wr S2", 8, WR_GENS)

# ---------------------------------------------------------------------------
# Linear groups over prime fields.


def proj_points(n, q):
    pts = []
    for v in itertools.product(range(q), repeat=n):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            pts.append(tuple(v))
    return pts


def normalize(v, q):
    for x in v:
        if x:
            s = pow(x, q - 2, q)
            return tuple((s * y) % q for y in v)
    raise ValueError("zero vector")


def matvec(m, v, q):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) % q for i in range(len(m)))


def matinv(m, q):
    n = len(m)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        r = next(r for r in range(c, n) if a[r][c] % q)
        a[c], a[r] = a[r], a[c]
        s = pow(a[c][c], q - 2, q)
        a[c] = [(x * s) % q for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % q for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def transpose(m):
    return [list(r) for r in zip(*m)]


def flag_action(q):
    """PGL3(q) on incident (point, line) pairs; lines given by dual vectors."""
    pts = proj_points(3, q)
    flags = [(p, l) for p in pts for l in pts
             if sum(a * b for a, b in zip(p, l)) % q == 0]
    index = {f: i for i, f in enumerate(flags)}

    def act(m):
        mit = transpose(matinv(m, q))
        return [index[(normalize(matvec(m, p, q), q), normalize(matvec(mit, l, q), q))]
                for p, l in flags]
    return flags, act


def elementary(n, i, j, q, a=1):
    m = [[int(r == c) for c in range(n)] for r in range(n)]
    m[i][j] = a % q
    return m


def diag(vals):
    n = len(vals)
    return [[vals[r] if r == c else 0 for c in range(n)] for r in range(n)]


for q, expected, label in ((2, 168, "L3(2)"), (3, 5616, "L3(3)")):
    flags, act = flag_action(q)
    gens = [act(elementary(3, i, j, q)) for i in range(3) for j in range(3) if i != j]
    grp = PermutationGroup([Permutation(g) for g in gens])
    gens = two_generators(grp, len(flags), expected)
    check(f"{label} on flags", gens, expected)
    write_group(f"l3_{q}_flags.grp", f"{label} on {len(flags)} flags", len(flags), gens)

# L4(3) family on 40 points + 40 planes of PG(3,3).
PTS4 = proj_points(4, 3)
INDEX4 = {p: i for i, p in enumerate(PTS4)}


def pg3_action(m):
    mit = transpose(matinv(m, 3))
    return [INDEX4[normalize(matvec(m, p, 3), 3)] for p in PTS4] + \
        [40 + INDEX4[normalize(matvec(mit, p, 3), 3)] for p in PTS4]


DUALITY = [40 + i for i in range(40)] + list(range(40))
SL4 = [pg3_action(elementary(4, i, j, 3)) for i in range(4) for j in range(4) if i != j]
DIAG = pg3_action(diag([2, 1, 1, 1]))
L43 = PermutationGroup([Permutation(g) for g in SL4])
L43_GENS = two_generators(L43, 80, 6065280)
check("L4(3)", L43_GENS, 6065280)
write_group("l4_3.grp", "L4(3) on points and planes", 80, L43_GENS)
variants = {
    "l4_3_pgl.grp": ("PGL4(3) = L4(3).2_1", L43_GENS + [DIAG]),
    "l4_3_graph.grp": ("L4(3).2_2 (duality)", L43_GENS + [DUALITY]),
    "l4_3_graphdiag.grp": ("L4(3).2_3 (duality x diagonal)",
                           L43_GENS + [[DUALITY[DIAG[i]] for i in range(80)]]),
    "aut_l4_3.grp": ("Aut(L4(3))", L43_GENS + [DIAG, DUALITY]),
}
for fname, (name, gens) in variants.items():
    expected = 6065280 * (4 if fname.startswith("aut") else 2)
    check(name, gens, expected)
    write_group(fname, name, 80, gens)
