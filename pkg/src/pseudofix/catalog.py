"""Small groups and complexes used by the tests, the docs and the CLI corpus."""

from __future__ import annotations

from itertools import combinations

from .complexes import GCWComplex, trivial_group
from .groups import FiniteGroup, direct_product

# groups -----------------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    """Z_n with element ``k`` equal to the ``k``-th power of the generator."""
    if n == 1:
        return trivial_group()
    gen = [(i + 1) % n for i in range(n)]
    return FiniteGroup.from_permutation_generators(n, [gen], name=f"Z{n}")


def dihedral(k: int) -> FiniteGroup:
    """Symmetries of the regular ``k``-gon, order ``2k``."""
    rot = [(i + 1) % k for i in range(k)]
    ref = [(-i) % k for i in range(k)]
    return FiniteGroup.from_permutation_generators(k, [rot, ref], name=f"D{2 * k}")


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return trivial_group()
    swap = [1, 0] + list(range(2, n))
    cycle = [(i + 1) % n for i in range(n)]
    return FiniteGroup.from_permutation_generators(n, [swap, cycle], name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return trivial_group()
    gens = []
    for i in range(n - 2):
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = p[i + 1], p[i + 2], p[i]
        gens.append(p)
    return FiniteGroup.from_permutation_generators(n, gens, name=f"A{n}")


def klein() -> FiniteGroup:
    """Z_2 x Z_2 as ``{1, s, r, rs}`` at indices 0..3 (``s = 1``, ``r = 2``)."""
    z2 = cyclic(2)
    return direct_product(z2, z2, name="Z2xZ2")


GROUPS = {
    "trivial": trivial_group,
    "z2": lambda: cyclic(2),
    "z3": lambda: cyclic(3),
    "z4": lambda: cyclic(4),
    "z6": lambda: cyclic(6),
    "z12": lambda: cyclic(12),
    "klein": klein,
    "s3": lambda: symmetric(3),
    "d8": lambda: dihedral(4),
    "d10": lambda: dihedral(5),
    "a4": lambda: alternating(4),
    "d12": lambda: dihedral(6),
    "s4": lambda: symmetric(4),
    "d20": lambda: dihedral(10),
    "a5": lambda: alternating(5),
    "z2xs3": lambda: direct_product(cyclic(2), symmetric(3), name="Z2xS3"),
    "z3xs3": lambda: direct_product(cyclic(3), symmetric(3), name="Z3xS3"),
}


def group(name: str) -> FiniteGroup:
    return GROUPS[name]()


# complexes ----------------------------------------------------------------------


def point(G: FiniteGroup | None = None) -> GCWComplex:
    return GCWComplex([(0, 0)], group=G, name="point")


def interval() -> GCWComplex:
    return GCWComplex([(0, 0), (1, 0), (2, 1)], {2: [(1, 1), (0, -1)]}, name="interval")


def circle() -> GCWComplex:
    """Two vertices and two edges, both running from 0 to 1."""
    return GCWComplex(
        [(0, 0), (1, 0), (2, 1), (3, 1)],
        {2: [(1, 1), (0, -1)], 3: [(1, 1), (0, -1)]},
        name="circle",
    )


def sphere2() -> GCWComplex:
    """Two vertices, two edges, two hemispheres."""
    return GCWComplex(
        [(0, 0), (1, 0), (2, 1), (3, 1), (4, 2), (5, 2)],
        {2: [(1, 1), (0, -1)], 3: [(1, 1), (0, -1)], 4: [(2, 1), (3, -1)], 5: [(3, 1), (2, -1)]},
        name="sphere2",
    )


def projective_plane() -> GCWComplex:
    """One vertex, a loop, and a disk attached along the loop twice."""
    return GCWComplex([(0, 0), (1, 1), (2, 2)], {1: [(0, 1), (0, -1)], 2: [(1, 2)]}, name="projective_plane")


def conjugation_circle() -> GCWComplex:
    """Complex conjugation on the unit circle.

    Vertex 0 is ``z = 1`` and vertex 1 is ``z = -1``; the upper and lower arcs
    (cells 2 and 3) both run from 1 to -1 and are swapped.
    """
    z2 = cyclic(2)
    cells = [(0, 0), (1, 0), (2, 1), (3, 1)]
    boundary = {2: [(1, 1), (0, -1)], 3: [(1, 1), (0, -1)]}
    action = {1: {2: (3, 1), 3: (2, 1)}}
    return GCWComplex(cells, boundary, action, z2, name="conjugation_circle")


def antipodal_circle() -> GCWComplex:
    """Free Z_2 action on the circle by the half turn."""
    z2 = cyclic(2)
    cells = [(0, 0), (1, 0), (2, 1), (3, 1)]
    boundary = {2: [(1, 1), (0, -1)], 3: [(0, 1), (1, -1)]}
    action = {1: {0: (1, 1), 1: (0, 1), 2: (3, 1), 3: (2, 1)}}
    return GCWComplex(cells, boundary, action, z2, name="antipodal_circle")


def reflected_sphere() -> GCWComplex:
    """Z_2 reflecting the 2-sphere through its equator; the fixed set is a circle."""
    base = sphere2()
    action = {1: {4: (5, -1), 5: (4, -1)}}
    return GCWComplex(
        [(c, base.dims[c]) for c in base.ids], base.raw_boundary, action, cyclic(2), name="reflected_sphere"
    )


def fixed_point_z2() -> GCWComplex:
    return point(cyclic(2))


SQUARE_KERNEL = (0, 2)


def square_cover() -> GCWComplex:
    """Double cover of the conjugation circle by a square.

    Gamma is Z_2 x Z_2 = {1, s, r, rs} (indices 0, 1, 2, 3).  Vertices A_k
    (ids 0..3) sit at angles k*pi/2 and edges E_k (ids 4..7) run from A_k to
    A_{k+1}.  ``r`` is the half turn (the deck group ``pi``), ``s`` is the
    reflection fixing A_0 and A_2, and ``rs`` fixes A_1 and A_3.
    """
    G = klein()
    cells = [(k, 0) for k in range(4)] + [(4 + k, 1) for k in range(4)]
    boundary = {4 + k: [((k + 1) % 4, 1), (k, -1)] for k in range(4)}
    r = {k: ((k + 2) % 4, 1) for k in range(4)}
    r.update({4 + k: (4 + (k + 2) % 4, 1) for k in range(4)})
    s = {0: (0, 1), 1: (3, 1), 2: (2, 1), 3: (1, 1), 4: (7, -1), 5: (6, -1), 6: (5, -1), 7: (4, -1)}
    return GCWComplex.from_generator_action(cells, boundary, G, {2: r, 1: s}, name="square_cover")


def free_cayley_graph(G: FiniteGroup, gens) -> GCWComplex:
    """Cayley graph with ``G`` acting freely on the left.

    Vertex ``g`` has id ``g``; the edge from ``g`` to ``g t`` for the ``i``-th
    generator ``t`` has id ``|G| * (i + 1) + g``.
    """
    n = G.order
    cells = [(g, 0) for g in range(n)]
    boundary = {}
    for i, t in enumerate(gens):
        for g in range(n):
            e = n * (i + 1) + g
            cells.append((e, 1))
            boundary[e] = [(G.mul[g][t], 1), (g, -1)]
    action = {}
    for h in range(n):
        act = {g: (G.mul[h][g], 1) for g in range(n)}
        for i in range(len(gens)):
            for g in range(n):
                act[n * (i + 1) + g] = (n * (i + 1) + G.mul[h][g], 1)
        action[h] = act
    return GCWComplex(cells, boundary, action, G, name="free_cayley_graph")


def suspension_of_points(m: int, k: int) -> GCWComplex:
    """Suspension of ``k`` points with Z_m rotating the ``k`` arcs through Z_k.

    Poles are cells 0 and 1 and arc ``j`` (cell ``2 + j``) runs from 0 to 1.
    Requires ``k`` to divide ``m``; the subgroup of index ``k`` acts trivially.
    """
    if m % k:
        raise ValueError("k must divide m")
    G = cyclic(m)
    cells = [(0, 0), (1, 0)] + [(2 + j, 1) for j in range(k)]
    boundary = {2 + j: [(1, 1), (0, -1)] for j in range(k)}
    action = {g: {2 + j: (2 + (j + g) % k, 1) for j in range(k)} for g in range(m)}
    return GCWComplex(cells, boundary, action, G, name=f"suspension_{k}_points_z{m}")


def simplicial(facets, G: FiniteGroup | None = None, vertex_action=None, name=None) -> GCWComplex:
    """Cell complex of the simplicial complex spanned by ``facets``.

    Simplices are oriented by increasing vertex label.  ``vertex_action`` maps
    group elements to vertex permutations (dicts); the induced cell action
    carries the sign of the sorting permutation.
    """
    simplices = set()
    for f in facets:
        f = tuple(sorted(f))
        for d in range(1, len(f) + 1):
            simplices.update(combinations(f, d))
    ordered = sorted(simplices, key=lambda s: (len(s), s))
    ids = {s: i for i, s in enumerate(ordered)}
    cells = [(ids[s], len(s) - 1) for s in ordered]
    boundary = {}
    for s in ordered:
        if len(s) > 1:
            boundary[ids[s]] = [(ids[s[:i] + s[i + 1:]], (-1) ** i) for i in range(len(s))]
    action = None
    if vertex_action:
        action = {}
        for g, vmap in vertex_action.items():
            act = {}
            for s in ordered:
                img = [vmap.get(v, v) for v in s]
                srt = tuple(sorted(img))
                act[ids[s]] = (ids[srt], _perm_sign(img))
            action[g] = act
    return GCWComplex(cells, boundary, action, G, name=name)


def _perm_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def disk2() -> GCWComplex:
    """A triangulated 2-disk: a square split along one diagonal."""
    return simplicial([(0, 1, 2), (0, 2, 3)], name="disk2")


COMPLEXES = {
    "point": point,
    "interval": interval,
    "circle": circle,
    "sphere2": sphere2,
    "projective_plane": projective_plane,
    "disk2": disk2,
    "conjugation_circle": conjugation_circle,
    "antipodal_circle": antipodal_circle,
    "reflected_sphere": reflected_sphere,
    "fixed_point_z2": fixed_point_z2,
    "square_cover": square_cover,
    "theta_z6": lambda: suspension_of_points(6, 3),
    "free_klein_circles": lambda: free_cayley_graph(klein(), [2]),
}


def complex_(name: str) -> GCWComplex:
    return COMPLEXES[name]()
