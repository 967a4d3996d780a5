"""Hattori-Stallings ranks over conjugacy classes and the trace congruences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .complexes import GCWComplex, euler_characteristic
from .errors import ComponentMismatch, GeneratorConditionFails, HypothesisFails
from .groups import (
    FiniteGroup,
    Subgroup,
    class_index,
    conjugacy_classes,
    is_cyclic,
    is_prime_power,
)
from .oliver import _coset_cyclic
from .splittings import CoverModel, component_splittings, pair_splitting_classes, splitting_classes


@dataclass(frozen=True, eq=False)
class ConjClassVector:
    """Exact rational coefficients, one per conjugacy class of ``group``.

    Classes are ordered as :func:`conjugacy_classes` orders them (by smallest
    element), so the class of the identity comes first.
    """

    group: FiniteGroup
    coefficients: tuple

    @classmethod
    def zero(cls, G: FiniteGroup) -> "ConjClassVector":
        return cls(G, (Fraction(0),) * len(conjugacy_classes(G)))

    def _check(self, other):
        if not (self.group is other.group or self.group.same_table(other.group)):
            raise ValueError("vectors over different groups")

    def __add__(self, other):
        self._check(other)
        return ConjClassVector(self.group, tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._check(other)
        return ConjClassVector(self.group, tuple(x - y for x, y in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return ConjClassVector(self.group, tuple(-x for x in self.coefficients))

    def scale(self, k) -> "ConjClassVector":
        return ConjClassVector(self.group, tuple(k * x for x in self.coefficients))

    def __eq__(self, other):
        if not isinstance(other, ConjClassVector):
            return NotImplemented
        return self.group.same_table(other.group) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def coefficient_of(self, g: int) -> Fraction:
        return self.coefficients[class_index(self.group)[g]]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coefficients)

    def as_dict(self) -> dict:
        """Class representative (smallest element) -> coefficient as a string."""
        return {str(K[0]): str(x) for K, x in zip(conjugacy_classes(self.group), self.coefficients)}


def rank_of_orbit_module(G: FiniteGroup, H: Subgroup) -> ConjClassVector:
    """``rank R[G/H] = (1/|H|) Σ_{h∈H} h`` collected by conjugacy class."""
    idx = class_index(G)
    counts = [0] * len(conjugacy_classes(G))
    for h in H.elements:
        counts[idx[h]] += 1
    return ConjClassVector(G, tuple(Fraction(k, H.order) for k in counts))


def equivariant_euler_rank(X: GCWComplex) -> ConjClassVector:
    total = ConjClassVector.zero(X.group)
    for orb in X.orbits():
        c = orb[0]
        term = rank_of_orbit_module(X.group, X.stabilizer(c))
        total = total + (term if X.dims[c] % 2 == 0 else -term)
    return total


@dataclass(frozen=True)
class RankComparison:
    equal: bool
    difference: ConjClassVector


def check_rank_equality(X: GCWComplex, Y: GCWComplex) -> RankComparison:
    diff = equivariant_euler_rank(X) - equivariant_euler_rank(Y)
    return RankComparison(diff.is_zero(), diff)


def _fixed_values(fixed_euler: Mapping, keys) -> dict:
    given = {int(k): (0 if v is None else int(v)) for k, v in fixed_euler.items()}
    if set(given) != set(keys):
        raise ComponentMismatch(f"expected component ids {sorted(keys)}, got {sorted(given)}")
    return given


@dataclass(frozen=True)
class CyclicCheck:
    """Outcome of the summed Euler equality over components whose class contains ``⟨γ⟩``.

    This is a necessary condition for a pseudo-equivalence (one that is at
    least rational) onto the modelled cover's base.
    """

    gamma: int
    components: tuple
    source_sum: int
    target_sum: int
    coefficient: Fraction
    expected_coefficient: Fraction

    @property
    def holds(self) -> bool:
        return self.source_sum == self.target_sum

    @property
    def difference(self) -> int:
        return self.source_sum - self.target_sum

    @property
    def coefficient_matches(self) -> bool:
        return self.coefficient == self.expected_coefficient

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "components": list(self.components),
            "source_sum": self.source_sum,
            "target_sum": self.target_sum,
            "difference": self.difference,
            "holds": self.holds,
            "coefficient": str(self.coefficient),
            "expected_coefficient": str(self.expected_coefficient),
            "coefficient_matches": self.coefficient_matches,
        }


def cyclic_trace_check(M: CoverModel, gamma: int, fixed_euler_X: Mapping) -> CyclicCheck:
    """Compare ``Σ χ(F_C)`` and ``Σ χ(C)`` over components with ``⟨γ⟩ ∈ Γ_C``.

    Also evaluates the coefficient of ``(γ)`` in the equivariant Euler rank of
    the cover against ``(1/|G|) Σ χ(C)``, the identity behind the check.
    """
    E = M.extension
    G = E.quotient
    if not is_cyclic(G.whole):
        raise HypothesisFails("the quotient group is not cyclic")
    Gam = E.total
    if not 0 <= gamma < Gam.order:
        raise GeneratorConditionFails(f"{gamma} is not an element of the total group")
    g = E.projection(gamma)
    if G.element_order(g) != G.order:
        raise GeneratorConditionFails(f"element {gamma} maps to {g}, which does not generate the quotient")
    cyc = Gam.generated([gamma])
    classes = splitting_classes(E)
    assigned = component_splittings(M)
    comps = {C.key: C for C in M.fixed_components()}
    values = _fixed_values(fixed_euler_X, comps)
    inside = tuple(
        a.component for a in assigned if any(cyc == S for S in classes[a.class_id].members)
    )
    src = sum(values[k] for k in inside)
    tgt = sum(euler_characteristic(comps[k]) for k in inside)
    coef = equivariant_euler_rank(M.cover).coefficient_of(gamma)
    return CyclicCheck(gamma, inside, src, tgt, coef, Fraction(tgt, G.order))


@dataclass(frozen=True)
class CompwiseGroup:
    container: int
    class_id: int
    components: tuple
    source_sum: int
    target_sum: int

    @property
    def holds(self) -> bool:
        return self.source_sum == self.target_sum

    def as_dict(self) -> dict:
        return {
            "container": self.container,
            "class_id": self.class_id,
            "components": list(self.components),
            "source_sum": self.source_sum,
            "target_sum": self.target_sum,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class CompwiseCheck:
    groups: tuple

    @property
    def holds(self) -> bool:
        return all(g.holds for g in self.groups)

    @property
    def failures(self) -> tuple:
        return tuple(g for g in self.groups if not g.holds)


def check_compwise_hypotheses(G: FiniteGroup, P: Subgroup) -> Optional[int]:
    """Validate ``P ⊲ G`` a p-group with ``G/P`` cyclic of order prime to ``p``; return ``p``."""
    if not P.is_normal_in():
        raise HypothesisFails("P is not normal in G")
    p = is_prime_power(P.order)
    if P.order != 1 and p is None:
        raise HypothesisFails(f"|P| = {P.order} is not a prime power")
    if not _coset_cyclic(G, P, G.whole):
        raise HypothesisFails("G/P is not cyclic")
    if p is not None and (G.order // P.order) % p == 0:
        raise HypothesisFails(f"|G/P| = {G.order // P.order} is divisible by p = {p}")
    return p


def compwise_trace_check(M: CoverModel, P, fixed_euler_X: Mapping) -> CompwiseCheck:
    """Summed Euler equality per (component ``D₀`` of ``Y^P``, pair class)."""
    P = P if isinstance(P, Subgroup) else M.base.group.subgroup(P)
    check_compwise_hypotheses(M.base.group, P)
    comps = {C.key: C for C in M.fixed_components()}
    values = _fixed_values(fixed_euler_X, comps)
    buckets = {}
    for ps in pair_splitting_classes(M, P):
        buckets.setdefault((ps.container, ps.class_id), []).append(ps.component)
    groups = []
    for (dkey, cid), keys in sorted(buckets.items()):
        keys = tuple(sorted(keys))
        groups.append(CompwiseGroup(
            dkey, cid, keys,
            sum(values[k] for k in keys),
            sum(euler_characteristic(comps[k]) for k in keys),
        ))
    return CompwiseCheck(tuple(groups))


# names used by the published operation list
theorem_cyclic_check = cyclic_trace_check
theorem_compwise_check = compwise_trace_check

__all__ = [
    "ConjClassVector",
    "rank_of_orbit_module",
    "equivariant_euler_rank",
    "RankComparison",
    "check_rank_equality",
    "CyclicCheck",
    "cyclic_trace_check",
    "theorem_cyclic_check",
    "CompwiseGroup",
    "CompwiseCheck",
    "check_compwise_hypotheses",
    "compwise_trace_check",
    "theorem_compwise_check",
]
