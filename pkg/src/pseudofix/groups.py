"""Finite groups given by multiplication tables.

Elements are the integers ``0 .. order-1`` and ``0`` is always the identity.
Subgroups are sorted tuples of element indices tied to their parent group.
Everything here is exhaustive: the groups that matter for fixed point
questions at desk scale are tiny, and brute force stays trustworthy.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NotAGroup,
    NotAHomomorphism,
    NotASubgroup,
    NotNormal,
    OrderCapExceeded,
    PrimeDoesNotDivideOrder,
)

ORDER_CAP = 10080
SUBGROUP_CAP = 400
# full O(n^3) associativity scan below this order, Light's test above
FULL_SCAN_LIMIT = 512


class FiniteGroup:
    """A finite group stored as a total multiplication table.

    Use :meth:`from_multiplication_table` or
    :meth:`from_permutation_generators` rather than calling the constructor,
    which trusts its input.
    """

    def __init__(self, mul, inverse, labels=None, name=None):
        self.mul = tuple(tuple(row) for row in mul)
        self.inverse = tuple(inverse)
        self.labels = None if labels is None else tuple(labels)
        self.name = name

    # construction -------------------------------------------------------

    @classmethod
    def from_multiplication_table(cls, table: Sequence[Sequence[int]], *, name=None) -> "FiniteGroup":
        n = len(table)
        if n == 0:
            raise NotAGroup("empty table")
        if n > ORDER_CAP:
            raise OrderCapExceeded(f"table of order {n} exceeds cap {ORDER_CAP}")
        for i, row in enumerate(table):
            if len(row) != n:
                raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
            for j, x in enumerate(row):
                if not isinstance(x, (int, np.integer)) or isinstance(x, bool) or not 0 <= x < n:
                    raise NotAGroup(f"entry ({i}, {j}) = {x!r} out of range")
        m = np.asarray(table, dtype=np.int64)
        ident = np.arange(n)
        if not (np.array_equal(m[0], ident) and np.array_equal(m[:, 0], ident)):
            raise NotAGroup("element 0 is not a two-sided identity")
        inverse = []
        for g in range(n):
            hits = np.flatnonzero(m[g] == 0)
            if len(hits) != 1 or m[hits[0], g] != 0:
                raise NotAGroup(f"element {g} has no two-sided inverse")
            inverse.append(int(hits[0]))
        bad = _associativity_violation(m)
        if bad is not None:
            a, b, c = bad
            raise NotAGroup(f"associativity fails for ({a}, {b}, {c})", triple=bad)
        return cls(m.tolist(), inverse, name=name)

    @classmethod
    def from_permutation_generators(
        cls, degree: int, generators: Iterable[Sequence[int]], *, cap: int = ORDER_CAP, name=None
    ) -> "FiniteGroup":
        """Close a set of permutations of ``range(degree)`` under composition.

        Elements are ordered breadth first by word length in the generators,
        lexicographically within each layer.  The product ``a * b`` applies
        ``b`` first, i.e. ``(a * b)[i] == a[b[i]]``.
        """
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise NotAGroup(f"{list(g)} is not a permutation of range({degree})")
            gens.append(g)
        identity = tuple(range(degree))
        seen = {identity}
        order = [identity]
        layer = [identity]
        while layer:
            nxt = set()
            for p in layer:
                for s in gens:
                    q = tuple(p[s[i]] for i in range(degree))
                    if q not in seen:
                        nxt.add(q)
            if len(seen) + len(nxt) > cap:
                raise OrderCapExceeded(f"group order exceeds cap {cap}")
            layer = sorted(nxt)
            seen.update(layer)
            order.extend(layer)
        index = {p: i for i, p in enumerate(order)}
        perms = np.asarray(order, dtype=np.int64).reshape(len(order), degree)
        mul = []
        for a in range(len(order)):
            # row a: a[b[i]] for every b
            prods = perms[a][perms] if degree else perms
            mul.append([index[tuple(r)] for r in prods.tolist()])
        inverse = [0] * len(order)
        for a, row in enumerate(mul):
            inverse[a] = row.index(0)
        return cls(mul, inverse, labels=order, name=name)

    # basic arithmetic -----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self):
        return len(self.mul)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{tag} of order {self.order}>"

    @cached_property
    def table(self) -> np.ndarray:
        return np.asarray(self.mul, dtype=np.int64)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inverse[g]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        result = 0
        while k:
            if k & 1:
                result = self.mul[result][g]
            g = self.mul[g][g]
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> tuple:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.mul[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    def same_table(self, other: "FiniteGroup") -> bool:
        return self is other or self.mul == other.mul

    # subgroups --------------------------------------------------------------

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        """Wrap an explicit element list, checking closure."""
        elems = tuple(sorted(set(int(x) for x in elements)))
        if not elems or elems[0] != 0:
            raise NotASubgroup("subgroup must contain the identity")
        if elems[-1] >= self.order:
            raise NotASubgroup(f"element {elems[-1]} out of range")
        members = set(elems)
        for a in elems:
            if self.inverse[a] not in members:
                raise NotASubgroup(f"not closed under inverse at {a}")
            row = self.mul[a]
            for b in elems:
                if row[b] not in members:
                    raise NotASubgroup(f"not closed under product at ({a}, {b})")
        return Subgroup(self, elems)

    def generated(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(_closure(self, list(gens)))))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))


def _associativity_violation(m: np.ndarray):
    n = m.shape[0]
    if n <= FULL_SCAN_LIMIT:
        candidates = range(n)
    else:
        candidates = _generating_set(m)
    # (a*b)*c == a*(b*c) for all a, c and b ranging over candidates
    for b in candidates:
        left = m[m[:, b], :]          # (a*b)*c
        right = m[:, m[b, :]]         # a*(b*c)
        diff = np.argwhere(left != right)
        if len(diff):
            a, c = diff[0]
            return int(a), int(b), int(c)
    return None


def _generating_set(m: np.ndarray) -> list:
    # Light's test: the middle elements passing the check form a submagma,
    # so checking a generating set suffices.
    n = m.shape[0]
    gens: list = []
    covered = {0}
    for g in range(n):
        if g in covered:
            continue
        gens.append(g)
        queue = deque(covered | {g})
        covered.add(g)
        while queue:
            x = queue.popleft()
            for s in gens:
                y = int(m[x, s])
                if y not in covered:
                    covered.add(y)
                    queue.append(y)
        if len(covered) == n:
            break
    return gens


def _closure(G: FiniteGroup, gens: list) -> set:
    members = {0}
    queue = deque([0])
    gens = [g for g in set(gens) if g != 0]
    while queue:
        x = queue.popleft()
        row = G.mul[x]
        for s in gens:
            y = row[s]
            if y not in members:
                members.add(y)
                queue.append(y)
    return members


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``group``; ``elements`` is sorted and starts with 0."""

    group: FiniteGroup = field(repr=False)
    elements: tuple

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.members

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    def conjugate(self, g: int) -> "Subgroup":
        G = self.group
        return Subgroup(G, tuple(sorted(G.conj(g, x) for x in self.elements)))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, tuple(sorted(self.members & other.members)))

    def is_normal_in(self, ambient: "Subgroup | None" = None) -> bool:
        G = self.group
        pool = G.whole.elements if ambient is None else ambient.elements
        return all(self.conjugate(g) == self for g in pool)


def _bitmask(elements) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def _as_subgroup(G: FiniteGroup, H) -> Subgroup:
    if isinstance(H, Subgroup):
        if H.group is not G and not H.group.same_table(G):
            raise NotASubgroup("subgroup belongs to a different group")
        return H if H.group is G else Subgroup(G, H.elements)
    return G.subgroup(H)


def all_subgroups(G: FiniteGroup, *, cap=None) -> list:
    """Every subgroup of ``G`` exactly once, sorted by (order, elements).

    Layer by layer: start from the cyclic subgroups and keep joining a known
    subgroup with one more cyclic subgroup until nothing new appears.
    """
    if cap is None:
        cap = SUBGROUP_CAP
    if G.order > cap:
        raise OrderCapExceeded(f"subgroup enumeration capped at order {cap}, got {G.order}")
    return list(_all_subgroups_cached(G))


def _all_subgroups_cached(G: FiniteGroup) -> tuple:
    cached = getattr(G, "_subgroups", None)
    if cached is not None:
        return cached
    cyclic = {}
    for g in range(G.order):
        elems = frozenset(_closure(G, [g]))
        cyclic.setdefault(_bitmask(elems), (g, elems))
    found = {mask: elems for mask, (_, elems) in cyclic.items()}
    cyc_items = sorted(cyclic.items())
    layer = list(found.items())
    while layer:
        nxt = {}
        for mask, elems in layer:
            for cmask, (g, _) in cyc_items:
                if cmask & ~mask == 0:
                    continue
                joined = frozenset(_closure(G, list(_generators_hint(G, elems)) + [g]))
                jm = _bitmask(joined)
                if jm not in found and jm not in nxt:
                    nxt[jm] = joined
        found.update(nxt)
        layer = list(nxt.items())
    subs = sorted((Subgroup(G, tuple(sorted(e))) for e in found.values()), key=lambda s: (s.order, s.elements))
    result = tuple(subs)
    G._subgroups = result
    return result


def _generators_hint(G: FiniteGroup, elems) -> list:
    # a small generating set of an already known subgroup
    gens: list = []
    span = {0}
    for x in sorted(elems):
        if x not in span:
            gens.append(x)
            span = _closure(G, gens)
            if len(span) == len(elems):
                break
    return gens


def conjugacy_classes(G: FiniteGroup) -> list:
    """Conjugacy classes as sorted tuples, ordered by smallest element."""
    cached = getattr(G, "_classes", None)
    if cached is not None:
        return list(cached)
    seen = set()
    classes = []
    for x in range(G.order):
        if x in seen:
            continue
        cls = sorted({G.conj(g, x) for g in range(G.order)})
        seen.update(cls)
        classes.append(tuple(cls))
    G._classes = tuple(classes)
    return classes


def class_index(G: FiniteGroup) -> tuple:
    """Map element -> index of its conjugacy class."""
    out = [0] * G.order
    for i, cls in enumerate(conjugacy_classes(G)):
        for x in cls:
            out[x] = i
    return tuple(out)


def prime_factors(n: int) -> list:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class OrderKind(enum.Enum):
    TRIVIAL = "trivial"
    PRIME_POWER = "prime_power"
    COMPOSITE = "composite"


def order_kind(n: int) -> tuple:
    """Tri-state reading of a positive integer: ``(kind, prime or None)``.

    Order 1 is reported as TRIVIAL rather than as a prime power; callers that
    accept "prime power or trivial" test for both.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return OrderKind.TRIVIAL, None
    ps = prime_factors(n)
    if len(ps) == 1:
        return OrderKind.PRIME_POWER, ps[0]
    return OrderKind.COMPOSITE, None


def is_prime_power(n: int):
    """Return ``p`` when ``n == p**k`` with ``k >= 1``, else None (also for n == 1)."""
    kind, p = order_kind(n)
    return p if kind is OrderKind.PRIME_POWER else None


def is_prime_power_or_trivial(n: int) -> bool:
    return order_kind(n)[0] is not OrderKind.COMPOSITE


def is_cyclic(H) -> bool:
    G = H.group
    return any(G.element_order(h) == H.order for h in H.elements)


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow_subgroups(G: FiniteGroup, p: int, *, cap=None) -> list:
    if p < 2 or prime_factors(p) != [p]:
        raise ValueError(f"{p} is not prime")
    if G.order % p:
        raise PrimeDoesNotDivideOrder(f"{p} does not divide {G.order}")
    q = p_part(G.order, p)
    return [H for H in all_subgroups(G, cap=cap) if H.order == q]


def normalizer(G: FiniteGroup, H) -> Subgroup:
    H = _as_subgroup(G, H)
    return Subgroup(G, tuple(g for g in range(G.order) if H.conjugate(g) == H))


def is_normal(G: FiniteGroup, N) -> bool:
    return _as_subgroup(G, N).is_normal_in()


def conjugate_subgroups(H: Subgroup, K: Subgroup, within=None) -> bool:
    """True when ``g H g^-1 == K`` for some ``g`` in ``within`` (default: all of G)."""
    if H.order != K.order:
        return False
    pool = H.group.whole.elements if within is None else within
    return any(H.conjugate(g) == K for g in pool)


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image_of: tuple

    def __post_init__(self):
        if len(self.image_of) != self.source.order:
            raise NotAHomomorphism("map length differs from source order")
        if any(not 0 <= y < self.target.order for y in self.image_of):
            raise NotAHomomorphism("map entry out of range")
        f = self.image_of
        S, T = self.source, self.target
        for a in range(S.order):
            row = S.mul[a]
            for b in range(S.order):
                if f[row[b]] != T.mul[f[a]][f[b]]:
                    raise NotAHomomorphism(f"f({a}*{b}) != f({a})*f({b})")

    def __call__(self, g: int) -> int:
        return self.image_of[g]

    @cached_property
    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(g for g, y in enumerate(self.image_of) if y == 0))

    @cached_property
    def image(self) -> Subgroup:
        return Subgroup(self.target, tuple(sorted(set(self.image_of))))

    def is_surjective(self) -> bool:
        return self.image.order == self.target.order

    def image_of_subgroup(self, H: Subgroup) -> Subgroup:
        return Subgroup(self.target, tuple(sorted({self.image_of[h] for h in H.elements})))

    def preimage(self, K) -> Subgroup:
        members = set(K.elements if isinstance(K, Subgroup) else K)
        return Subgroup(self.source, tuple(g for g, y in enumerate(self.image_of) if y in members))


def quotient(G: FiniteGroup, N) -> tuple:
    """Coset group ``G/N`` with cosets ordered by smallest representative."""
    N = _as_subgroup(G, N)
    if not N.is_normal_in():
        raise NotNormal("subgroup is not normal")
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for n in N.elements:
            coset_of[G.mul[g][n]] = idx
    k = len(reps)
    mul = [[coset_of[G.mul[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    inverse = [coset_of[G.inverse[r]] for r in reps]
    Q = FiniteGroup(mul, inverse, name=None)
    return Q, GroupHom(G, Q, tuple(coset_of))


def complements(G: FiniteGroup, N, *, cap=None) -> list:
    """Subgroups ``S`` with ``S ∩ N = 1`` and ``|S| |N| = |G|``."""
    N = _as_subgroup(G, N)
    if not N.is_normal_in():
        raise NotNormal("subgroup is not normal")
    target = G.order // N.order
    return [S for S in all_subgroups(G, cap=cap) if S.order == target and S.members & N.members == {0}]


def relabel(G: FiniteGroup, perm: Sequence[int]) -> FiniteGroup:
    """Isomorphic copy of ``G`` where old element ``x`` becomes ``perm[x]``.

    ``perm`` must fix 0 so the identity stays at index 0.
    """
    n = G.order
    if sorted(perm) != list(range(n)) or perm[0] != 0:
        raise ValueError("perm must be a permutation of range(order) fixing 0")
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    mul = [[perm[G.mul[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    inverse = [perm[G.inverse[inv[a]]] for a in range(n)]
    return FiniteGroup(mul, inverse, name=G.name)


def direct_product(G: FiniteGroup, H: FiniteGroup, name=None) -> FiniteGroup:
    """``G x H`` with ``(g, h)`` stored at index ``g * |H| + h``."""
    m = H.order
    n = G.order * m
    mul = [[0] * n for _ in range(n)]
    for a in range(n):
        ga, ha = divmod(a, m)
        for b in range(n):
            gb, hb = divmod(b, m)
            mul[a][b] = G.mul[ga][gb] * m + H.mul[ha][hb]
    inverse = [G.inverse[a // m] * m + H.inverse[a % m] for a in range(n)]
    return FiniteGroup(mul, inverse, name=name)


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
