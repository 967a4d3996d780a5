"""Extensions ``1 -> π -> Γ -> G -> 1``, their splittings, and covers.

A finite regular cover stands in for a universal cover: ``Γ`` acts on the
cover, ``π`` acts freely, and the base is the orbit complex with the induced
``G``-action.  Components of the base fixed set are labelled by the
π-conjugacy class of the cell stabilizer of a lift.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .complexes import GCWComplex, Subcomplex, components, fixed_subcomplex, validate
from .errors import (
    InconsistentStabilizer,
    InvalidComplex,
    InvalidInput,
    NotAComplement,
    NotNormal,
)
from .groups import FiniteGroup, GroupHom, Subgroup, complements, quotient


@dataclass(frozen=True, eq=False)
class ExtensionData:
    total: FiniteGroup
    kernel: Subgroup
    quotient: FiniteGroup
    projection: GroupHom

    @classmethod
    def build(cls, total: FiniteGroup, kernel, quotient_group: Optional[FiniteGroup] = None, image_of=None):
        """Extension with the given kernel; the projection defaults to ``Γ -> Γ/π``."""
        pi = kernel if isinstance(kernel, Subgroup) else total.subgroup(kernel)
        if not pi.is_normal_in():
            raise NotNormal("the kernel is not normal in the total group")
        if quotient_group is None or image_of is None:
            Q, proj = quotient(total, pi)
            if quotient_group is not None:
                raise InvalidInput("a quotient group needs an explicit map onto it")
            quotient_group = Q
        else:
            proj = GroupHom(total, quotient_group, tuple(int(x) for x in image_of))
        if not proj.is_surjective():
            raise InvalidInput("the projection is not onto the quotient group")
        if proj.kernel != pi:
            raise InvalidInput("the projection's kernel differs from the given kernel")
        return cls(total, pi, quotient_group, proj)

    def lifts(self, g: int) -> tuple:
        return tuple(x for x in range(self.total.order) if self.projection(x) == g)


@dataclass(frozen=True)
class SplittingClass:
    """One π-conjugacy class of complements; ``members`` is the whole orbit."""

    id: int
    members: tuple

    @property
    def representative(self) -> Subgroup:
        return self.members[0]

    def __contains__(self, S) -> bool:
        return any(S == M for M in self.members)


def _pi_orbit(S: Subgroup, pi: Subgroup) -> tuple:
    seen = []
    for a in pi.elements:
        T = S.conjugate(a)
        if not any(T == U for U in seen):
            seen.append(T)
    return tuple(sorted(seen, key=lambda H: H.elements))


def splitting_classes(E: ExtensionData) -> list:
    """Complements of ``π`` grouped into π-conjugacy classes; empty when none split."""
    comps = complements(E.total, E.kernel)
    out = []
    placed = set()
    for S in comps:
        if S.elements in placed:
            continue
        orbit = _pi_orbit(S, E.kernel)
        placed.update(T.elements for T in orbit)
        out.append(SplittingClass(len(out), orbit))
    return out


def class_of(classes, S: Subgroup) -> Optional[SplittingClass]:
    return next((K for K in classes if S in K), None)


class CoverModel:
    """A Γ-complex whose kernel ``π`` acts freely, together with its base."""

    def __init__(self, cover: GCWComplex, extension: ExtensionData):
        if cover.group is not extension.total:
            if not cover.group.same_table(extension.total):
                raise InvalidInput("the cover's group is not the extension's total group")
            extension = ExtensionData.build(
                cover.group, extension.kernel.elements, extension.quotient, extension.projection.image_of
            )
        self.cover = cover
        self.extension = extension
        pi = extension.kernel
        for p in pi.elements:
            if p == 0:
                continue
            fixed = [c for c in cover.ids if cover.image(p, c) == c]
            if fixed:
                raise InvalidComplex(f"kernel element {p} fixes cell {fixed[0]}")

    @cached_property
    def rep_of(self) -> dict:
        """Cover cell -> (base cell id, sign relating it to the orbit representative)."""
        X, pi = self.cover, self.extension.kernel
        out = {}
        for c in X.ids:
            if c in out:
                continue
            for p in pi.elements:
                im, s = X._act[p][c]
                out[im] = (c, s)
        return out

    @cached_property
    def base(self) -> GCWComplex:
        X, E = self.cover, self.extension
        rep = self.rep_of
        reps = sorted({r for r, _ in rep.values()})
        cells = [(r, X.dims[r]) for r in reps]
        boundary = {}
        for r in reps:
            acc = {}
            for f, k in X.raw_boundary[r]:
                fr, fs = rep[f]
                acc[fr] = acc.get(fr, 0) + k * fs
            boundary[r] = sorted(acc.items())
        action = {}
        for g in range(E.quotient.order):
            gamma = E.lifts(g)[0]
            act = {}
            for r in reps:
                im, s = X._act[gamma][r]
                ir, isg = rep[im]
                act[r] = (ir, s * isg)
            action[g] = act
        B = GCWComplex(cells, boundary, action, E.quotient, name="base")
        report = validate(B)
        if not report.ok:
            raise InvalidComplex("the induced action on the base is not admissible", report.violations)
        return B

    def preimage(self, S: Subcomplex) -> Subcomplex:
        cells = frozenset(c for c, (r, _) in self.rep_of.items() if r in S.cells)
        return Subcomplex(self.cover, cells)

    def lifts_of(self, S: Subcomplex) -> list:
        return components(self.preimage(S))

    def fixed_components(self) -> list:
        B = self.base
        return components(fixed_subcomplex(B, B.group.whole))


def _constant_stabilizer(X: GCWComplex, cells, within: Optional[Subgroup] = None) -> Subgroup:
    stab = None
    for c in sorted(cells):
        S = X.stabilizer(c)
        if within is not None:
            S = S.intersection(within)
        if stab is None:
            stab = S
        elif S != stab:
            raise InconsistentStabilizer(f"cell stabilizers differ across the lift (at cell {c})")
    return stab


@dataclass(frozen=True)
class ComponentSplitting:
    component: int
    lift: tuple
    stabilizer: Subgroup
    class_id: int


def component_splittings(M: CoverModel, lift_index: int = 0) -> list:
    """The splitting class attached to each component of the base fixed set.

    ``lift_index`` picks which component of the preimage is read; the answer
    should not depend on it.
    """
    E = M.extension
    classes = splitting_classes(E)
    out = []
    for C in M.fixed_components():
        lifts = M.lifts_of(C)
        L = lifts[lift_index % len(lifts)]
        S = _constant_stabilizer(M.cover, L.cells)
        K = class_of(classes, S)
        if K is None:
            raise NotAComplement(f"the stabilizer over component {C.key} is not a complement of the kernel")
        out.append(ComponentSplitting(C.key, L.ids, S, K.id))
    return out


def is_weakly_g_connected(assignments) -> bool:
    """Different components carry different splitting classes (relative to the given cover)."""
    ids = [a.class_id if isinstance(a, ComponentSplitting) else int(a) for a in assignments]
    return len(ids) == len(set(ids))


@dataclass(frozen=True)
class PairSplitting:
    component: int
    container: int
    pair: tuple
    class_id: int


def pair_splitting_classes(M: CoverModel, P, lift_index: int = 0) -> list:
    """Classes of compatible pairs ``(Γ_Ĉ, Γ_D̂)`` under simultaneous π-conjugation.

    ``D`` is the component of the base ``P``-fixed set containing ``C``, ``D̂``
    the component of its preimage containing the chosen lift ``Ĉ``, and
    ``Γ_D̂`` the part of the cell stabilizers of ``D̂`` lying over ``P``.
    """
    E = M.extension
    B = M.base
    P = P if isinstance(P, Subgroup) else B.group.subgroup(P)
    if not P.is_normal_in():
        raise NotNormal("P is not normal in G")
    over_P = E.projection.preimage(P)
    Ds = components(fixed_subcomplex(B, P))
    base_pairs = []
    for cs in component_splittings(M, lift_index):
        D = next(D for D in Ds if cs.lift and M.rep_of[cs.lift[0]][0] in D.cells)
        Dhat = next(L for L in M.lifts_of(D) if cs.lift[0] in L.cells)
        T = _constant_stabilizer(M.cover, Dhat.cells, within=over_P)
        if T.order * E.kernel.order != over_P.order or T.members & E.kernel.members != {0}:
            raise NotAComplement(f"the stabilizer over the P-fixed component {D.key} is not a complement")
        base_pairs.append((cs.component, D.key, (cs.stabilizer, T)))
    out = []
    reps = []
    for comp, dkey, (S, T) in base_pairs:
        cid = None
        for i, (S0, T0) in enumerate(reps):
            if any(S.conjugate(a) == S0 and T.conjugate(a) == T0 for a in E.kernel.elements):
                cid = i
                break
        if cid is None:
            cid = len(reps)
            reps.append((S, T))
        out.append(PairSplitting(comp, dkey, (S, T), cid))
    return out
