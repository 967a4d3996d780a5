"""Independent reference computations used by the test suite.

Nothing here calls into the package's algorithms beyond reading multiplication
tables and boundary matrices, so agreement is real evidence.
"""

from __future__ import annotations

import itertools
import random
from functools import reduce
from math import gcd

import sympy


# groups -------------------------------------------------------------------------


def closure(mul, gens):
    elems = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul[x][g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def subgroup_lattice(mul):
    """Every subgroup is the join of its cyclic subgroups; close the cyclic ones under joins."""
    n = len(mul)
    subs = {closure(mul, [g]) for g in range(n)}
    changed = True
    while changed:
        changed = False
        for A, B in itertools.combinations(list(subs), 2):
            J = closure(mul, sorted(A | B))
            if J not in subs:
                subs.add(J)
                changed = True
    return subs


def inverse_table(mul):
    n = len(mul)
    return [next(j for j in range(n) if mul[i][j] == 0) for i in range(n)]


def is_normal(mul, H):
    inv = inverse_table(mul)
    return all(mul[mul[g][h]][inv[g]] in H for g in range(len(mul)) for h in H)


def quotient_is_cyclic(mul, P, H):
    """Is ``H/P`` cyclic, by looking for a coset whose powers reach every coset."""
    cosets = {frozenset(mul[h][p] for p in P) for h in H}
    m = len(cosets)
    for h in H:
        seen, x = set(), h
        for _ in range(m):
            seen.add(frozenset(mul[x][p] for p in P))
            x = mul[x][h]
        if len(seen) == m:
            return True
    return False


def prime_power(n):
    if n == 1:
        return True
    f = sympy.factorint(n)
    return len(f) == 1


def oliver_tag(mul):
    """Exhaustive version of the three-way classification."""
    subs = subgroup_lattice(mul)
    G = frozenset(range(len(mul)))
    for P in subs:
        if prime_power(len(P)) and is_normal(mul, P) and quotient_is_cyclic(mul, P, G):
            return "Zero"
    for P in subs:
        if not prime_power(len(P)):
            continue
        for H in subs:
            if not P <= H or not prime_power(len(mul) // len(H)):
                continue
            if not is_normal(mul, H):
                continue
            inv = inverse_table(mul)
            if all(mul[mul[h][p]][inv[h]] in P for h in H for p in P) and quotient_is_cyclic(mul, P, H):
                return "NontrivialUnknown"
    return "One"


def normalizer_order(mul, H):
    inv = inverse_table(mul)
    return sum(1 for g in range(len(mul)) if {mul[mul[g][h]][inv[g]] for h in H} == set(H))


def sylow_indices(mul):
    n = len(mul)
    subs = subgroup_lattice(mul)
    out = []
    for p in sorted(sympy.factorint(n)):
        pk = p ** sympy.factorint(n)[p]
        P = next(S for S in subs if len(S) == pk)
        out.append((p, n // normalizer_order(mul, P)))
    return out


def conjugacy_classes(mul):
    inv = inverse_table(mul)
    seen, out = set(), []
    for x in range(len(mul)):
        if x in seen:
            continue
        K = {mul[mul[g][x]][inv[g]] for g in range(len(mul))}
        seen |= K
        out.append(K)
    return out


def random_relabel(mul, rng):
    """The same group with elements renamed by a random permutation fixing 0."""
    n = len(mul)
    rest = list(range(1, n))
    rng.shuffle(rest)
    perm = [0] + rest
    back = {perm[i]: i for i in range(n)}
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            table[perm[a]][perm[b]] = perm[mul[a][b]]
    return table, perm, back


# integer linear algebra ---------------------------------------------------------------------


def invariant_factors(A):
    """Invariant factors from determinantal divisors ``d_k = gcd of k x k minors``."""
    M = sympy.Matrix(A)
    r, c = M.shape
    ds = [1]
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                g = gcd(g, int(M.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        ds.append(g)
    return [ds[k] // ds[k - 1] for k in range(1, len(ds))]


def _mat(rows, cols, entries):
    if rows == 0 or cols == 0:
        return sympy.zeros(rows, cols)
    return sympy.Matrix(entries)


def rational_betti(ranks, boundaries):
    """``b_d = dim C_d - rank ∂_d - rank ∂_{d+1}`` over Q with sympy."""
    top = len(ranks) - 1

    def rk(d):
        if d < 1 or d > top:
            return 0
        return _mat(ranks[d - 1], ranks[d], boundaries[d]).rank()

    return [ranks[d] - rk(d) - rk(d + 1) for d in range(top + 1)]


def wang_betti(ranks, boundaries, h):
    """Rational Betti numbers of the mapping torus of ``h`` from the Wang sequence.

    ``b_d(T) = dim coker(1 - h_*) on H_d + dim ker(1 - h_*) on H_{d-1}``, where
    the rank of the map induced on ``H_d`` is read off as
    ``rank[(1 - h) Z_d | B_d] - rank B_d``.
    """
    top = len(ranks) - 1

    def bd(d):
        if d < 1 or d > top:
            return None
        return _mat(ranks[d - 1], ranks[d], boundaries[d])

    def induced_rank(d):
        n = ranks[d] if 0 <= d <= top else 0
        if n == 0:
            return 0, 0
        D = bd(d)
        Z = sympy.eye(n) if D is None else sympy.Matrix.hstack(*D.nullspace()) if D.nullspace() else sympy.zeros(n, 0)
        Bm = bd(d + 1)
        B = sympy.zeros(n, 0) if Bm is None else Bm
        hm = _mat(n, n, h[d]) if d < len(h) else sympy.zeros(n, n)
        T = (sympy.eye(n) - hm) * Z
        rB = B.rank() if B.shape[1] else 0
        dimH = Z.shape[1] - rB
        both = sympy.Matrix.hstack(T, B) if B.shape[1] else T
        r = (both.rank() if both.shape[1] else 0) - rB
        return dimH, r

    out = []
    for d in range(top + 2):
        hd, rd = induced_rank(d) if d <= top else (0, 0)
        hp, rp = induced_rank(d - 1) if d >= 1 else (0, 0)
        out.append((hd - rd) + (hp - rp))
    return out


def trim(seq):
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return seq


# cellular maps ------------------------------------------------------------------------------


def direct_closed_preimage_euler(Y, carrier, dims):
    """``χ(f⁻¹(σ̄))`` by counting source cells whose carrier lies in the closed cell."""
    return {
        s: sum((-1) ** dims[c] for c, t in carrier.items() if t in Y.closures[s])
        for s in Y.ids
    }


def random_map_onto(Y, rng: random.Random, block: int, noise: int):
    """A face-compatible cellular map into ``Y``.

    The source starts as a copy of ``Y`` and grows by gadgets of Euler
    characteristic 0 (a point with a loop, or a point with two loops and a
    disk on one of them), each inside one open cell of ``Y``.  Then ``noise``
    times, ``block`` extra points land in a random open cell.
    Returns ``(cells, boundary, carrier)``.
    """
    cells = [(c, Y.dims[c]) for c in Y.ids]
    boundary = {c: list(Y.raw_boundary[c]) for c in Y.ids if Y.raw_boundary[c]}
    carrier = {c: c for c in Y.ids}
    nxt = max(Y.ids) + 1

    def gadget(kind, where):
        nonlocal nxt
        v = nxt
        cells.append((v, 0))
        carrier[v] = where
        nxt += 1
        if kind == "point":
            return
        e = nxt
        cells.append((e, 1))
        boundary[e] = [(v, 1), (v, -1)]
        carrier[e] = where
        nxt += 1
        if kind == "disk":
            # a second loop and a disk on the first keep the gadget at χ = 0
            e2, f = nxt, nxt + 1
            cells.extend([(e2, 1), (f, 2)])
            boundary[e2] = [(v, 1), (v, -1)]
            boundary[f] = [(e, 1), (e, -1)]
            carrier[e2] = carrier[f] = where
            nxt += 2

    for _ in range(rng.randint(0, 6)):
        gadget(rng.choice(["loop", "loop", "disk"]), rng.choice(Y.ids))
    for _ in range(noise):
        where = rng.choice(Y.ids)
        for _ in range(block):
            gadget("point", where)
    return cells, boundary, carrier


def random_profile_values(Y, rng: random.Random, lo=-4, hi=4):
    return {c: rng.randint(lo, hi) for c in Y.ids}


def gcd_list(xs):
    return reduce(gcd, xs, 0)


def congruent(a, b, n):
    return a == b if n == 0 else (a - b) % n == 0
