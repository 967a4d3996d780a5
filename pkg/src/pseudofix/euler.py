"""Euler profiles of cellular maps, cone rebalancing and deficit vectors.

A profile records, for every cell ``σ`` of the target, the Euler
characteristic ``e(σ)`` of the preimage of the closed cell.  Compactly
supported Euler characteristics of open-cell preimages ("open values") are
recovered by Möbius inversion over the face poset; they are additive, which
is what makes the bookkeeping below exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .complexes import (
    GCWComplex,
    Subcomplex,
    closed_cell_euler,
    components,
    euler_characteristic,
    fixed_subcomplex,
    is_connected,
)
from .errors import (
    CarrierNotFaceCompatible,
    ComponentMismatch,
    EmptySource,
    GlobalCongruenceFails,
    HypothesisFails,
    InvalidInput,
    NotRegular,
)


def congruent(x: int, y: int, n: Optional[int]) -> bool:
    """``x ≡ y (mod n)`` with ``n = 0`` meaning equality."""
    if n == 0:
        return x == y
    return (x - y) % n == 0


# profiles ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellularMap:
    """A map ``F -> Y`` recorded by the target cell carrying each source cell."""

    source: GCWComplex
    target: GCWComplex
    carrier: Mapping[int, int]

    def incompatible_pairs(self) -> list:
        Y = self.target
        bad = []
        for c in self.source.ids:
            if c not in self.carrier or self.carrier[c] not in Y.dims:
                bad.append((c, None))
                continue
            home = Y.closures[self.carrier[c]]
            for f, _ in self.source.raw_boundary[c]:
                if self.carrier.get(f) not in home:
                    bad.append((c, f))
        return bad


@dataclass(frozen=True)
class EulerProfile:
    """Closed-cell preimage Euler characteristics over ``target``.

    ``nonempty`` says whether the source is known to be nonempty; when left
    as None it is inferred from some value being positive.
    """

    target: GCWComplex
    values: Mapping[int, int]
    nonempty: Optional[bool] = None

    def __post_init__(self):
        missing = set(self.target.ids) - set(self.values)
        extra = set(self.values) - set(self.target.ids)
        if missing or extra:
            raise InvalidInput(f"profile cells differ from target cells (missing {sorted(missing)}, unknown {sorted(extra)})")
        object.__setattr__(self, "values", {c: int(self.values[c]) for c in self.target.ids})

    @property
    def source_nonempty(self) -> bool:
        if self.nonempty is not None:
            return self.nonempty
        return any(v > 0 for v in self.values.values())

    def open_values(self) -> dict:
        return open_from_closed(self.target, self.values)

    def total(self) -> int:
        """``χ(F)``."""
        return sum(self.open_values().values())

    def boundary_value(self, c: int) -> int:
        """``χ(f⁻¹(∂σ))``."""
        o = self.open_values()
        return sum(o[t] for t in self.target.closures[c] if t != c)


def open_from_closed(Y: GCWComplex, closed: Mapping[int, int]) -> dict:
    out = {}
    for c in sorted(Y.ids, key=lambda x: (Y.dims[x], x)):
        out[c] = closed[c] - sum(out[t] for t in Y.closures[c] if t != c)
    return out


def closed_from_open(Y: GCWComplex, opens: Mapping[int, int]) -> dict:
    return {c: sum(opens[t] for t in Y.closures[c]) for c in Y.ids}


def profile_from_map(f: CellularMap) -> EulerProfile:
    bad = f.incompatible_pairs()
    if bad:
        raise CarrierNotFaceCompatible(f"{len(bad)} source cell(s) carried incompatibly with their faces", bad)
    Y, F = f.target, f.source
    opens = {c: 0 for c in Y.ids}
    for c in F.ids:
        opens[f.carrier[c]] += (-1) ** F.dims[c]
    return EulerProfile(Y, closed_from_open(Y, opens), nonempty=bool(F.ids))


def sphere_euler(Y: GCWComplex, c: int) -> int:
    """``χ(∂σ)`` counted cell by cell."""
    return sum((-1) ** Y.dims[t] for t in Y.closures[c] if t != c)


def is_euler_regular(Y: GCWComplex) -> bool:
    """Every closed cell has Euler characteristic 1, as a disk would."""
    return all(closed_cell_euler(Y, c) == 1 for c in Y.ids)


# the cell-wise partition check ---------------------------------------------------------


@dataclass(frozen=True)
class PartitionReport:
    modulus: int
    chi_source: int
    chi_target: int
    holds: bool


def check_partition(P: EulerProfile, n: int) -> PartitionReport:
    """Check ``e(σ) ≡ 1`` on every cell, then derive ``χ(F)`` skeleton by skeleton.

    The derivation attaches top-dimensional cells one at a time and applies
    inclusion-exclusion with the preimage of each cell's boundary, which is
    itself computed the same way.
    """
    if n < 0:
        raise InvalidInput("modulus must be nonnegative")
    Y = P.target
    if not is_euler_regular(Y):
        raise NotRegular("some closed cell of the target does not have Euler characteristic 1")
    bad = [c for c in Y.ids if not congruent(P.values[c], 1, n)]
    if bad:
        raise HypothesisFails(f"{len(bad)} cell(s) violate e(σ) ≡ 1 mod {n}", bad)
    memo = {}

    def chi_pre(cells: frozenset) -> int:
        if cells in memo:
            return memo[cells]
        if not cells:
            return 0
        top = max(Y.dims[c] for c in cells)
        tops = sorted(c for c in cells if Y.dims[c] == top)
        if top == 0:
            val = sum(P.values[c] for c in tops)
        else:
            val = chi_pre(frozenset(c for c in cells if Y.dims[c] < top))
            for c in tops:
                val += P.values[c] - chi_pre(Y.closures[c] - {c})
        memo[cells] = val
        return val

    chi_F = chi_pre(frozenset(Y.ids))
    chi_Y = euler_characteristic(Y)
    return PartitionReport(n, chi_F, chi_Y, congruent(chi_F, chi_Y, n))


check_lemma1 = check_partition  # name used by the published operation list


# cone moves -------------------------------------------------------------------------------


def solve_cone_system(delta_sigma: int, delta_boundary: int) -> tuple:
    """``(a, b)`` with ``a + 2b = delta_sigma`` and ``a + 3b = delta_boundary``."""
    b = delta_boundary - delta_sigma
    return 3 * delta_sigma - 2 * delta_boundary, b


def solve_cone_system_dangling(delta_sigma: int, delta_v0: int, delta_v1: int) -> tuple:
    """``(a, b, c)`` with ``a+2b+c = δσ``, ``a+3b+c = δv0`` and ``c = δv1``."""
    c = delta_v1
    b = delta_v0 - delta_sigma
    return delta_sigma - 2 * b - c, b, c


class MoveKind(enum.Enum):
    REGULAR = "regular"
    DANGLING = "dangling"
    SINGLE_TOP_CELL = "single_top_cell"
    SINGLE_EDGE = "single_edge"


@dataclass(frozen=True)
class ConeMove:
    """Cones ``cA``, ``cB`` (and ``cC``) glued at the anchor and pushed to ``target``.

    ``path`` lists the cells crossed between the anchor vertex and ``entry``,
    alternating open upper cells and lower cells passed through at a point.
    ``increments`` is the resulting change of every open value.
    """

    kind: MoveKind
    target: int
    a: int
    b: int
    c: int
    entry: int
    path: tuple
    anchor: int
    free_vertex: Optional[int] = None
    increments: Mapping[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "target": self.target,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "entry": self.entry,
            "path": list(self.path),
            "anchor": self.anchor,
            "free_vertex": self.free_vertex,
            "increments": {str(k): v for k, v in sorted(self.increments.items())},
        }


def _move_increments(path, entry, target, a, b, c, free_vertex=None) -> dict:
    m = a + b + c
    inc = {}

    def add(cell, x):
        if x:
            inc[cell] = inc.get(cell, 0) + x

    uppers = path[0::2]
    lowers = path[1::2]
    for u in uppers:
        add(u, -m)
    for w in lowers:
        add(w, m)
    add(uppers[-1], -b)
    add(entry, a + 3 * b + c)
    add(target, -b - c)
    if free_vertex is not None:
        add(free_vertex, c)
    return {k: v for k, v in inc.items() if v}


def apply_move(opens: Mapping[int, int], move: ConeMove) -> dict:
    out = dict(opens)
    for c, x in move.increments.items():
        out[c] = out.get(c, 0) + x
    return out


def _zigzag(Y: GCWComplex, K: frozenset, anchor: int, sigma: int, entry_ok) -> Optional[tuple]:
    """Shortest ``u1, l1, u2, ..., uk, ρ`` from the anchor to a cell accepted by ``entry_ok``.

    Uppers and intermediate lowers avoid the closed cell ``σ``; each upper
    contains the preceding lower (the anchor first) and the following one.
    """
    banned = Y.closures[sigma]
    uppers_of = {}
    for u in K:
        if u in banned:
            continue
        for w in Y.closures[u]:
            if w != u and w in K:
                uppers_of.setdefault(w, []).append(u)
    for w in uppers_of:
        uppers_of[w].sort(key=lambda x: (Y.dims[x], x))
    prev = {anchor: None}
    frontier = [anchor]
    while frontier:
        nxt = []
        for lower in frontier:
            for u in uppers_of.get(lower, ()):
                faces = sorted((w for w in Y.closures[u] if w != u and w in K), key=lambda x: (Y.dims[x], x))
                for w in faces:
                    if entry_ok(w):
                        chain = [u, w]
                        x = lower
                        while prev[x] is not None:
                            pu, pl = prev[x]
                            chain = [pu, x] + chain
                            x = pl
                        return tuple(chain)
                for w in faces:
                    if w not in banned and w not in prev:
                        prev[w] = (u, lower)
                        nxt.append(w)
        frontier = nxt
    return None


def _top_cells(Y: GCWComplex, K: frozenset) -> list:
    covered = set()
    for c in K:
        covered |= Y.closures[c] - {c}
    return sorted((c for c in K if c not in covered), key=lambda x: (-Y.dims[x], x))


def _connected(Y: GCWComplex, cells: frozenset) -> bool:
    if not cells:
        return True
    return len(components(Subcomplex(Y, cells))) == 1


def rebalance_profile(P: EulerProfile, n: int, anchor: Optional[int] = None) -> tuple:
    """Cone moves bringing every closed-cell value to ``1 mod n``.

    Peels top cells other than the base cell, largest dimension first, then
    smallest id.  A top cell whose removal would disconnect the remaining
    complex is a dangling edge and gets the three-cone move.  When only the
    base cell is left, its boundary is fixed with cones running from the
    anchor through the open base cell, and peeling continues on the
    boundary.  Returns ``(moves, final profile)``.
    """
    if n < 0:
        raise InvalidInput("modulus must be nonnegative")
    Y = P.target
    if not Y.ids:
        raise InvalidInput("target is empty")
    if not is_connected(Y):
        raise InvalidInput("target is not connected")
    if not is_euler_regular(Y):
        raise NotRegular("some closed cell of the target does not have Euler characteristic 1")
    if not P.source_nonempty:
        raise EmptySource("the source of the profile is empty")
    opens = P.open_values()
    chi_F, chi_Y = sum(opens.values()), euler_characteristic(Y)
    if not congruent(chi_F, chi_Y, n):
        raise GlobalCongruenceFails(f"χ(F) = {chi_F} is not congruent to χ(Y) = {chi_Y} mod {n}")

    K = frozenset(Y.ids)
    tops = _top_cells(Y, K)
    if anchor is None:
        base = tops[0]
        anchor = min(c for c in Y.closures[base] if Y.dims[c] == 0)
    else:
        if anchor not in Y.dims or Y.dims[anchor] != 0:
            raise InvalidInput("anchor must be a vertex of the target")
        base = next(t for t in tops if anchor in Y.closures[t])
    moves = []

    def closed(c):
        return sum(opens[t] for t in Y.closures[c])

    def bnd(c):
        return sum(opens[t] for t in Y.closures[c] if t != c)

    def commit(move):
        nonlocal opens
        opens = apply_move(opens, move)
        moves.append(move)

    while True:
        tops = _top_cells(Y, K)
        if base not in tops:
            base = next(t for t in tops if anchor in Y.closures[t])
        others = [t for t in tops if t != base]
        if others:
            chosen = None
            for s in others:
                if _connected(Y, K - {s}):
                    chosen = (s, None)
                    break
            if chosen is None:
                for s in others:
                    if Y.dims[s] != 1:
                        continue
                    ends = [w for w in Y.closures[s] if w != s]
                    free = [w for w in ends if not any(w in Y.closures[t] for t in K if t != s and t != w)]
                    if len(free) == 1 and len(ends) == 2:
                        chosen = (s, free[0])
                        break
            if chosen is None:
                raise NotRegular("cannot peel a top cell without disconnecting the remaining complex")
            s, w1 = chosen
            if w1 is None:
                d_s, d_b = 1 - closed(s), sphere_euler(Y, s) - bnd(s)
                if not (congruent(d_s, 0, n) and congruent(d_b, 0, n)):
                    path = _zigzag(Y, K, anchor, s, lambda w: w in Y.closures[s] and w != s)
                    a, b = solve_cone_system(d_s, d_b)
                    entry = path[-1]
                    commit(ConeMove(MoveKind.REGULAR, s, a, b, 0, entry, path[:-1], anchor, None,
                                    _move_increments(path[:-1], entry, s, a, b, 0)))
                K = K - {s}
            else:
                w0 = next(w for w in Y.closures[s] if w not in (s, w1))
                d_s, d_0, d_1 = 1 - closed(s), 1 - closed(w0), 1 - closed(w1)
                if not all(congruent(x, 0, n) for x in (d_s, d_0, d_1)):
                    path = _zigzag(Y, K, anchor, s, lambda w: w == w0)
                    a, b, c = solve_cone_system_dangling(d_s, d_0, d_1)
                    commit(ConeMove(MoveKind.DANGLING, s, a, b, c, w0, path[:-1], anchor, w1,
                                    _move_increments(path[:-1], w0, s, a, b, c, w1)))
                K = K - {s, w1}
            continue
        if Y.dims[base] >= 2:
            d_b = sphere_euler(Y, base) - bnd(base)
            if not congruent(d_b, 0, n):
                # the cone runs from the anchor into the open base cell and back to the anchor
                inc = {base: -d_b, anchor: d_b}
                commit(ConeMove(MoveKind.SINGLE_TOP_CELL, base, d_b, 0, 0, anchor, (base,), anchor, None, inc))
            K = K - {base}
            continue
        if Y.dims[base] == 1:
            w1 = next(w for w in Y.closures[base] if w not in (base, anchor))
            a, c = 1 - closed(anchor), 1 - closed(w1)
            if not (congruent(a, 0, n) and congruent(c, 0, n)):
                inc = {k: v for k, v in {base: -a - c, anchor: a, w1: c}.items() if v}
                commit(ConeMove(MoveKind.SINGLE_EDGE, base, a, 0, c, anchor, (base,), anchor, w1, inc))
        break

    final = EulerProfile(Y, closed_from_open(Y, opens), nonempty=True)
    bad = [c for c in Y.ids if not congruent(final.values[c], 1, n)]
    if bad:
        raise AssertionError(f"rebalancing left cells {bad} unbalanced")
    return moves, final


# deficit vectors -------------------------------------------------------------------------


@dataclass(frozen=True)
class DeficitVector:
    """``χ(F_C) - χ(C)`` for each component ``C`` of ``Y^G``, keyed by component id."""

    components: tuple
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(int(c) for c in self.components))
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.components) != len(self.entries):
            raise ComponentMismatch("one entry per component is required")

    @classmethod
    def zero(cls, comps) -> "DeficitVector":
        comps = tuple(comps)
        return cls(comps, (0,) * len(comps))

    def as_dict(self) -> dict:
        return dict(zip(self.components, self.entries))

    def __neg__(self) -> "DeficitVector":
        return negate(self)

    def __add__(self, other) -> "DeficitVector":
        return add(self, other)

    def __len__(self):
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)


def negate(v: DeficitVector) -> DeficitVector:
    return DeficitVector(v.components, tuple(-x for x in v.entries))


def add(v: DeficitVector, w: DeficitVector) -> DeficitVector:
    if v.components != w.components:
        raise ComponentMismatch(f"component ids {v.components} and {w.components} differ")
    return DeficitVector(v.components, tuple(x + y for x, y in zip(v.entries, w.entries)))


def deficit_vector(fixed_euler: Mapping[int, Optional[int]], Y: GCWComplex, G=None) -> DeficitVector:
    """Deficits against the components of ``Y^G``; a None value means ``F_C`` is empty."""
    H = Y.group.whole if G is None else G
    comps = components(fixed_subcomplex(Y, H))
    keys = [C.key for C in comps]
    given = {int(k): v for k, v in fixed_euler.items()}
    if set(given) != set(keys):
        raise ComponentMismatch(f"expected component ids {keys}, got {sorted(given)}")
    entries = [(given[C.key] or 0) - euler_characteristic(C) for C in comps]
    return DeficitVector(tuple(keys), tuple(entries))


class Membership(enum.Enum):
    IN_LOWER_BOUND = "InLowerBound"
    IN_UPPER_BOUND_ONLY = "InUpperBoundOnly"
    OUTSIDE_UPPER_BOUND = "OutsideUpperBound"
    INDETERMINATE = "Indeterminate"


def ny_membership(v: DeficitVector, modulus: Optional[int]) -> Membership:
    """Locate ``v`` between ``n Z^A`` and ``{a : n | Σ a}``; None means ``n`` is unknown."""
    if modulus is None:
        return Membership.INDETERMINATE
    if all(congruent(x, 0, modulus) for x in v.entries):
        return Membership.IN_LOWER_BOUND
    if not congruent(v.total, 0, modulus):
        return Membership.OUTSIDE_UPPER_BOUND
    return Membership.IN_UPPER_BOUND_ONLY
