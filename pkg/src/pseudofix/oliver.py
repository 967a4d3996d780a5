"""Oliver number classification and the degree-zero coefficient solver."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import IndicesNotCoprime, InconsistentOverride, PrimePowerOrder
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    is_prime_power_or_trivial,
    normalizer,
    order_kind,
    OrderKind,
    prime_factors,
    sylow_subgroups,
)


class OliverTag(enum.Enum):
    ZERO = "Zero"
    ONE = "One"
    NONTRIVIAL_UNKNOWN = "NontrivialUnknown"


@dataclass(frozen=True)
class OliverClass:
    """Where ``n_G`` sits: 0, 1, or somewhere else we cannot pin down.

    ``witness`` is ``(P,)`` for ZERO, ``(P, H)`` for NONTRIVIAL_UNKNOWN and
    ``None`` for ONE.
    """

    tag: OliverTag
    witness: Optional[tuple] = None

    @property
    def m_G(self) -> Optional[int]:
        # largest square-free factor of n_G; only known in the decided cases
        return {OliverTag.ZERO: 0, OliverTag.ONE: 1}.get(self.tag)

    @property
    def n_G(self) -> Optional[int]:
        return {OliverTag.ZERO: 0, OliverTag.ONE: 1}.get(self.tag)


def _coset_cyclic(G: FiniteGroup, P: Subgroup, H: Subgroup) -> bool:
    """Is ``H/P`` cyclic?  (``P`` normal in ``H`` assumed.)"""
    m = H.order // P.order
    if m == 1:
        return True
    for h in H.elements:
        k, x = 1, h
        while x not in P.members:
            x = G.mul[x][h]
            k += 1
        if k == m:
            return True
    return False


def zero_witness(G: FiniteGroup) -> Optional[Subgroup]:
    """Smallest normal ``P`` of prime power (or trivial) order with ``G/P`` cyclic."""
    for P in all_subgroups(G):
        if not is_prime_power_or_trivial(P.order) or not P.is_normal_in():
            continue
        if _coset_cyclic(G, P, G.whole):
            return P
    return None


def chain_witness(G: FiniteGroup) -> Optional[tuple]:
    """First chain ``P ⊲ H ⊲ G`` with ``|P|``, ``|G/H|`` prime power or trivial and ``H/P`` cyclic."""
    subs = all_subgroups(G)
    normal = [H for H in subs if H.is_normal_in()]
    for P in subs:
        if not is_prime_power_or_trivial(P.order):
            continue
        for H in normal:
            if H.order % P.order or not P.members <= H.members:
                continue
            if not is_prime_power_or_trivial(G.order // H.order):
                continue
            if not P.is_normal_in(H):
                continue
            if _coset_cyclic(G, P, H):
                return P, H
    return None


def classify(G: FiniteGroup) -> OliverClass:
    """Decide whether ``n_G`` is 0, 1, or something else.

    ZERO takes precedence over the chain test, since every ZERO group also
    has the chain ``P ⊲ G ⊲ G``.
    """
    if order_kind(G.order)[0] is not OrderKind.COMPOSITE:
        raise PrimePowerOrder(f"order {G.order} is a prime power or 1")
    P = zero_witness(G)
    if P is not None:
        return OliverClass(OliverTag.ZERO, (P,))
    chain = chain_witness(G)
    if chain is None:
        return OliverClass(OliverTag.ONE)
    return OliverClass(OliverTag.NONTRIVIAL_UNKNOWN, chain)


def sylow_normalizer_indices(G: FiniteGroup) -> list:
    """``[(p, |G : N_G(P)|)]`` for each prime ``p`` dividing ``|G|``."""
    out = []
    for p in prime_factors(G.order):
        P = sylow_subgroups(G, p)[0]
        out.append((p, G.order // normalizer(G, P).order))
    return out


def extended_gcd(a: int, b: int) -> tuple:
    """``(g, x, y)`` with ``g = gcd(a, b) = x*a + y*b``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def degree_zero_coefficients(indices: Sequence[int]) -> list:
    """Integers ``a_i`` with ``1 + sum(a_i * m_i) == 0``.

    Folds the extended gcd from the left and stops as soon as the running gcd
    is 1, so trailing indices get coefficient 0.
    """
    ms = [int(m) for m in indices]
    if not ms:
        raise IndicesNotCoprime("empty index list")
    if any(m <= 0 for m in ms):
        raise IndicesNotCoprime("indices must be positive")
    g, coeffs = ms[0], [1]
    for m in ms[1:]:
        if g == 1:
            coeffs.append(0)
            continue
        g, x, y = extended_gcd(g, m)
        coeffs = [c * x for c in coeffs] + [y]
    if g != 1:
        raise IndicesNotCoprime(f"gcd of {ms} is {g}")
    return [-c for c in coeffs]


def effective_modulus(cls: OliverClass, override: Optional[int] = None) -> Optional[int]:
    """The modulus to test Euler characteristics against; None means unknown."""
    if override is not None and override < 0:
        raise InconsistentOverride("modulus override must be nonnegative")
    if cls.tag is OliverTag.NONTRIVIAL_UNKNOWN:
        return override
    decided = cls.n_G
    if override is not None and override != decided:
        raise InconsistentOverride(f"override {override} contradicts n_G = {decided} ({cls.tag.value})")
    return decided
