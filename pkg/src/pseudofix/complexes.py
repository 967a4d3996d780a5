"""Finite G-CW complexes with signed cellular actions.

A cell is an integer id with a dimension.  The boundary of a cell is a list
of ``(face id, incidence)`` pairs.  A group element acts by permuting cell
ids and attaching a sign per cell, so ``g`` sends the oriented chain ``c`` to
``sign_g(c) * g(c)``.  Admissibility means a cell fixed by ``g`` is fixed
with sign ``+1``; that is what makes fixed sets subcomplexes.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from .errors import InvalidComplex
from .groups import FiniteGroup, Subgroup, conjugate_subgroups
from .homology import ChainComplex

_TRIVIAL = None


def trivial_group() -> FiniteGroup:
    global _TRIVIAL
    if _TRIVIAL is None:
        _TRIVIAL = FiniteGroup([[0]], [0], name="1")
    return _TRIVIAL


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    cell: Optional[int] = None
    element: Optional[int] = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


class GCWComplex:
    """A finite CW complex with a cellular action of a finite group.

    ``action`` maps group elements to ``{cell: (image, sign)}``.  Cells missing
    from an element's entry are fixed with sign +1, and elements missing
    altogether act as the identity, so a complex with trivial action needs no
    ``action`` at all.  Nothing is validated here; call :func:`validate` or
    :meth:`checked`.
    """

    def __init__(self, cells, boundary=None, action=None, group: Optional[FiniteGroup] = None, name=None):
        self.group = group if group is not None else trivial_group()
        self.name = name
        dims = {}
        for cid, dim in cells:
            cid, dim = int(cid), int(dim)
            if cid in dims:
                raise InvalidComplex(f"duplicate cell id {cid}")
            dims[cid] = dim
        self.dims = dims
        self.ids = tuple(sorted(dims))
        raw = {c: () for c in self.ids}
        for cid, faces in (boundary or {}).items():
            cid = int(cid)
            if cid not in dims:
                raise InvalidComplex(f"boundary given for unknown cell {cid}")
            raw[cid] = tuple((int(f), int(k)) for f, k in faces)
        self.raw_boundary = raw
        merged = {}
        for cid, faces in raw.items():
            acc = defaultdict(int)
            for f, k in faces:
                acc[f] += k
            merged[cid] = {f: k for f, k in sorted(acc.items()) if k}
        self.boundary = merged
        act = []
        given = action or {}
        for g in range(self.group.order):
            table = {c: (c, 1) for c in self.ids}
            entry = given.get(g, given.get(str(g)))
            if entry is not None:
                items = entry.items() if isinstance(entry, Mapping) else ((c, (im, s)) for c, im, s in entry)
                for c, (im, s) in items:
                    table[int(c)] = (int(im), int(s))
            act.append(table)
        self._act = tuple(act)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<GCWComplex{tag}: {len(self.ids)} cells, group order {self.group.order}>"

    @classmethod
    def from_generator_action(cls, cells, boundary, group: FiniteGroup, generator_action: Mapping, name=None):
        """Build the full action from the action of a generating set.

        ``generator_action`` maps group elements to cell actions; the rest is
        filled in by ``(g s)(c) = g(s(c))``.  Inconsistent data raise.
        """
        gens = {int(g): {int(c): (int(im), int(s)) for c, (im, s) in _items(a)} for g, a in generator_action.items()}
        ids = [int(c) for c, _ in cells]
        full = {0: {c: (c, 1) for c in ids}}
        for g, a in gens.items():
            for c in ids:
                a.setdefault(c, (c, 1))
        queue = deque([0])
        while queue:
            g = queue.popleft()
            ag = full[g]
            for s, a_s in gens.items():
                gs = group.mul[g][s]
                comp = {}
                for c in ids:
                    im1, s1 = a_s[c]
                    im2, s2 = ag[im1]
                    comp[c] = (im2, s1 * s2)
                if gs in full:
                    if full[gs] != comp:
                        raise InvalidComplex(f"generator action is not a homomorphism (element {gs})")
                else:
                    full[gs] = comp
                    queue.append(gs)
        if len(full) != group.order:
            raise InvalidComplex("generators do not generate the group")
        return cls(cells, boundary, full, group, name=name)

    # queries ----------------------------------------------------------------

    def dim(self, c: int) -> int:
        return self.dims[c]

    @property
    def dimension(self) -> int:
        return max(self.dims.values(), default=-1)

    def image(self, g: int, c: int) -> int:
        return self._act[g][c][0]

    def sign(self, g: int, c: int) -> int:
        return self._act[g][c][1]

    def action_of(self, g: int) -> dict:
        return dict(self._act[g])

    def faces(self, c: int) -> tuple:
        """Cells listed in the attaching data of ``c``.

        A face whose incidences cancel (the vertex of a one-vertex loop) still
        counts, since the cell is attached to it.
        """
        return tuple(sorted({f for f, _ in self.raw_boundary[c]}))

    @cached_property
    def closures(self) -> dict:
        """Closed cell: the cell together with all its iterated faces."""
        out = {}
        for c in sorted(self.ids, key=lambda x: (self.dims[x], x)):
            acc = {c}
            for f in self.faces(c):
                acc |= out.get(f, {f})
            out[c] = frozenset(acc)
        return out

    def closure(self, cells: Iterable[int]) -> frozenset:
        acc = set()
        for c in cells:
            acc |= self.closures[c]
        return frozenset(acc)

    def stabilizer(self, c: int) -> Subgroup:
        G = self.group
        return Subgroup(G, tuple(g for g in range(G.order) if self._act[g][c][0] == c))

    def orbit(self, c: int) -> tuple:
        return tuple(sorted({self._act[g][c][0] for g in range(self.group.order)}))

    def orbits(self, H: Optional[Subgroup] = None) -> list:
        pool = range(self.group.order) if H is None else H.elements
        seen = set()
        out = []
        for c in self.ids:
            if c in seen:
                continue
            orb = tuple(sorted({self._act[g][c][0] for g in pool}))
            seen.update(orb)
            out.append(orb)
        return out

    @property
    def whole(self) -> "Subcomplex":
        return Subcomplex(self, frozenset(self.ids))

    def checked(self) -> "GCWComplex":
        report = validate(self)
        if not report.ok:
            first = report.violations[0]
            raise InvalidComplex(f"{len(report.violations)} violation(s), first: {first.message}", report.violations)
        return self


def _items(a):
    if isinstance(a, Mapping):
        return a.items()
    return ((c, (im, s)) for c, im, s in a)


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """A face-closed set of cells of ``parent``."""

    parent: GCWComplex = field(repr=False)
    cells: frozenset

    @cached_property
    def ids(self) -> tuple:
        return tuple(sorted(self.cells))

    def __eq__(self, other):
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.parent is other.parent and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __len__(self):
        return len(self.cells)

    def __contains__(self, c):
        return c in self.cells

    def __repr__(self):
        return f"Subcomplex({list(self.ids)})"

    @property
    def key(self) -> int:
        """Component id convention: the smallest cell id."""
        return self.ids[0]

    def is_face_closed(self) -> bool:
        return all(f in self.cells for c in self.cells for f in self.parent.faces(c))

    def union(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.cells | other.cells)

    def intersection(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.cells & other.cells)


Cells = Union[GCWComplex, Subcomplex]


def as_subcomplex(S: Cells) -> Subcomplex:
    return S.whole if isinstance(S, GCWComplex) else S


def subcomplex(X: GCWComplex, cells: Iterable[int], close: bool = True) -> Subcomplex:
    cells = frozenset(int(c) for c in cells)
    missing = cells - set(X.ids)
    if missing:
        raise InvalidComplex(f"unknown cells {sorted(missing)}")
    if close:
        cells = X.closure(cells)
    S = Subcomplex(X, cells)
    if not S.is_face_closed():
        raise InvalidComplex("cell set is not closed under faces")
    return S


# validation -------------------------------------------------------------------


def validate(X: GCWComplex) -> ValidationReport:
    """Check every structural invariant; never raises on a bad complex."""
    out = []
    dims = X.dims
    for c in X.ids:
        if dims[c] < 0:
            out.append(Violation("negative_dimension", f"cell {c} has dimension {dims[c]}", cell=c))
        for f, k in X.raw_boundary[c]:
            if f not in dims:
                out.append(Violation("unknown_face", f"cell {c} has unknown face {f}", cell=c))
            elif k and dims[f] != dims[c] - 1:
                out.append(Violation("face_dimension", f"face {f} of cell {c} has dimension {dims[f]}", cell=c))
    if out:
        return ValidationReport(tuple(out))
    # ∂∘∂ = 0
    for c in X.ids:
        acc = defaultdict(int)
        for f, k in X.boundary[c].items():
            for ff, kk in X.boundary[f].items():
                acc[ff] += k * kk
        bad = [ff for ff, v in acc.items() if v]
        if bad:
            out.append(Violation("boundary_squared", f"∂∂({c}) is nonzero on cells {sorted(bad)}", cell=c))
    G = X.group
    for g in range(G.order):
        images = [X.image(g, c) for c in X.ids]
        if sorted(images) != list(X.ids):
            out.append(Violation("not_a_permutation", f"element {g} does not permute the cells", element=g))
            continue
        for c in X.ids:
            im, s = X._act[g][c]
            if s not in (1, -1):
                out.append(Violation("bad_sign", f"element {g} has sign {s} on cell {c}", cell=c, element=g))
            if dims[im] != dims[c]:
                out.append(Violation("dimension_change", f"element {g} moves cell {c} to a different dimension", cell=c, element=g))
            if im == c and s != 1:
                out.append(Violation("not_admissible", f"element {g} fixes cell {c} with sign -1", cell=c, element=g))
    if any(v.kind in ("not_a_permutation", "dimension_change") for v in out):
        return ValidationReport(tuple(out))
    for c in X.ids:
        im, s = X._act[0][c]
        if im != c or s != 1:
            out.append(Violation("identity_acts", f"identity moves cell {c}", cell=c, element=0))
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mul[g][h]
            for c in X.ids:
                im1, s1 = X._act[h][c]
                im2, s2 = X._act[g][im1]
                if X._act[gh][c] != (im2, s1 * s2):
                    out.append(Violation(
                        "not_a_homomorphism",
                        f"action of {g}*{h} disagrees with composite on cell {c}",
                        cell=c, element=gh,
                    ))
                    break
    # g∂ = ∂g on chains
    for g in range(G.order):
        for c in X.ids:
            im, s = X._act[g][c]
            lhs = defaultdict(int)
            for f, k in X.boundary[im].items():
                lhs[f] += s * k
            rhs = defaultdict(int)
            for f, k in X.boundary[c].items():
                fi, fs = X._act[g][f]
                rhs[fi] += k * fs
            if {f: v for f, v in lhs.items() if v} != {f: v for f, v in rhs.items() if v}:
                out.append(Violation("action_boundary", f"element {g} does not commute with ∂ on cell {c}", cell=c, element=g))
    return ValidationReport(tuple(out))


def is_regular(S: Cells) -> bool:
    """Combinatorial shadow of regularity: incidences are ±1 and no face repeats."""
    S = as_subcomplex(S)
    X = S.parent
    for c in S.cells:
        seen = set()
        for f, k in X.raw_boundary[c]:
            if k not in (1, -1) or f in seen:
                return False
            seen.add(f)
    return True


def closed_cell_euler(X: GCWComplex, c: int) -> int:
    return sum((-1) ** X.dims[x] for x in X.closures[c])


# fixed sets, components, Euler characteristics ----------------------------------


def _sub(X: GCWComplex, H) -> Subgroup:
    if isinstance(H, Subgroup):
        return H
    return X.group.subgroup(H)


def fixed_subcomplex(X: Cells, H) -> Subcomplex:
    """Cells whose stabilizer contains ``H``."""
    S = as_subcomplex(X)
    P = S.parent
    H = _sub(P, H)
    cells = frozenset(c for c in S.cells if all(P._act[h][c][0] == c for h in H.elements))
    return Subcomplex(P, cells)


def components(S: Cells) -> list:
    """Connected components, ordered by smallest cell id."""
    S = as_subcomplex(S)
    X = S.parent
    parent = {c: c for c in S.cells}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in S.cells:
        for f in X.faces(c):
            if f in parent:
                a, b = find(c), find(f)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups = defaultdict(set)
    for c in S.cells:
        groups[find(c)].add(c)
    comps = [Subcomplex(X, frozenset(cs)) for cs in groups.values()]
    return sorted(comps, key=lambda s: s.ids[0])


def is_connected(S: Cells) -> bool:
    return len(components(S)) == 1


def euler_characteristic(S: Cells) -> int:
    S = as_subcomplex(S)
    return sum((-1) ** S.parent.dims[c] for c in S.cells)


def delta_invariant(X: GCWComplex, H) -> int:
    """Alternating count of orbits of cells whose stabilizer is conjugate to ``H``."""
    H = _sub(X, H)
    total = 0
    for orb in X.orbits():
        stab = X.stabilizer(orb[0])
        if conjugate_subgroups(stab, H):
            total += (-1) ** X.dims[orb[0]]
    return total


# chain level ----------------------------------------------------------------------


def chain_complex(S: Cells) -> ChainComplex:
    """Cellular chain complex; generators in each degree sorted by cell id."""
    S = as_subcomplex(S)
    X = S.parent
    top = max((X.dims[c] for c in S.cells), default=-1)
    basis = [tuple(sorted(c for c in S.cells if X.dims[c] == d)) for d in range(top + 1)]
    pos = [{c: i for i, c in enumerate(b)} for b in basis]
    mats = [()]
    for d in range(1, top + 1):
        M = [[0] * len(basis[d]) for _ in basis[d - 1]]
        for j, c in enumerate(basis[d]):
            for f, k in X.boundary[c].items():
                if f not in pos[d - 1]:
                    raise InvalidComplex(f"cell set is not closed under faces at {c}")
                M[pos[d - 1][f]][j] += k
        mats.append(tuple(tuple(r) for r in M))
    C = ChainComplex(tuple(len(b) for b in basis), tuple(mats), tuple(basis))
    if not C.is_complex():
        raise InvalidComplex("boundary does not square to zero")
    return C


def quotient_complex(X: Cells, H) -> GCWComplex:
    """Orbit complex ``S/H`` with trivial action.

    Each orbit is represented by its smallest cell id.  A face ``f`` lying in
    the orbit of ``r`` enters the quotient boundary as ``sign_h(r) * [r]``
    where ``h(r) == f``; admissibility makes this independent of ``h``.
    """
    S = as_subcomplex(X)
    P = S.parent
    H = _sub(P, H)
    rep = {}
    rel_sign = {}
    for c in sorted(S.cells):
        if c in rep:
            continue
        for h in H.elements:
            im, s = P._act[h][c]
            if im not in S.cells:
                raise InvalidComplex(f"subgroup does not preserve the subcomplex (cell {c})")
            if im not in rep:
                rep[im] = c
                rel_sign[im] = s
    cells = [(c, P.dims[c]) for c in sorted(set(rep.values()))]
    boundary = {}
    for c, _ in cells:
        acc = defaultdict(int)
        for f, k in P.boundary[c].items():
            acc[rep[f]] += k * rel_sign[f]
        boundary[c] = [(f, k) for f, k in sorted(acc.items()) if k]
    return GCWComplex(cells, boundary, name=None)


def subgroup_classes(G: FiniteGroup, subgroups: Iterable[Subgroup]) -> list:
    """Partition subgroups into conjugacy classes (first-seen order)."""
    reps = []
    for H in subgroups:
        if not any(conjugate_subgroups(H, K) for K in reps):
            reps.append(H)
    return reps
