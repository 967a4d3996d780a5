"""Integer chain complexes, Smith normal form, and homology over Z and F_p.

All arithmetic uses Python integers, so nothing overflows and nothing is
rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence


def zeros(rows: int, cols: int) -> list:
    return [[0] * cols for _ in range(rows)]


def matmul(A, B, inner: Optional[int] = None) -> list:
    rows = len(A)
    if inner is None:
        inner = len(B)
    cols = len(B[0]) if B else 0
    out = zeros(rows, cols)
    for i in range(rows):
        Ai = A[i]
        Oi = out[i]
        for k in range(inner):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(cols):
                    if Bk[j]:
                        Oi[j] += a * Bk[j]
    return out


def is_zero(A) -> bool:
    return all(x == 0 for row in A for x in row)


def smith_diagonal(A: Sequence[Sequence[int]]) -> list:
    """Nonzero elementary divisors of an integer matrix, in divisibility order.

    Naive pivoting on the smallest entry; fine for the few hundred columns a
    desk-scale cell complex produces.
    """
    M = [list(r) for r in A]
    m = len(M)
    n = len(M[0]) if m else 0
    divisors = []
    t = 0
    while t < m and t < n:
        pivot = _min_nonzero(M, t, t, m, n)
        if pivot is None:
            break
        i, j = pivot
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // p
                    if q:
                        Mi, Mt = M[i], M[t]
                        for k in range(t, n):
                            Mi[k] -= q * Mt[k]
                    if M[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // p
                    if q:
                        for row in M[t:]:
                            row[j] -= q * row[t]
                    if M[t][j]:
                        clean = False
            if not clean:
                # a smaller remainder sits in row t or column t; pivot on it
                best = None
                for i in range(t, m):
                    x = M[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, n):
                    x = M[t][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), t, j)
                _, i, j = best
                M[t], M[i] = M[i], M[t]
                for row in M:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            Mt, Mb = M[t], M[bad]
            for k in range(t, n):
                Mt[k] += Mb[k]
        divisors.append(abs(M[t][t]))
        t += 1
    return divisors


def _min_nonzero(M, r0, c0, m, n):
    best = None
    for i in range(r0, m):
        row = M[i]
        for j in range(c0, n):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else (best[1], best[2])


def rank_mod_p(A: Sequence[Sequence[int]], p: int) -> int:
    M = [[x % p for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, m) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], p - 2, p)
        R = M[rank]
        for k in range(c, n):
            R[k] = R[k] * inv % p
        for r in range(m):
            if r != rank and M[r][c]:
                f = M[r][c]
                Mr = M[r]
                for k in range(c, n):
                    Mr[k] = (Mr[k] - f * R[k]) % p
        rank += 1
        if rank == m:
            break
    return rank


def rank_q(A) -> int:
    return len(smith_diagonal(A))


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex ``C_top -> ... -> C_0``.

    ``boundaries[d]`` is the matrix of ``∂_d : C_d -> C_{d-1}`` with
    ``ranks[d-1]`` rows and ``ranks[d]`` columns; ``boundaries[0]`` is the
    empty ``0 x ranks[0]`` matrix.  ``basis`` optionally names the generators.
    """

    ranks: tuple
    boundaries: tuple
    basis: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.boundaries) != len(self.ranks):
            raise ValueError("need one boundary matrix per degree")
        for d, mat in enumerate(self.boundaries):
            rows = self.ranks[d - 1] if d > 0 else 0
            if len(mat) != rows or any(len(r) != self.ranks[d] for r in mat):
                raise ValueError(f"boundary matrix in degree {d} has the wrong shape")

    @classmethod
    def from_matrices(cls, ranks, boundaries, basis=None) -> "ChainComplex":
        ranks = tuple(int(r) for r in ranks)
        mats = [tuple(tuple(int(x) for x in row) for row in m) for m in boundaries]
        if len(mats) == len(ranks) - 1:
            mats = [()] + mats
        return cls(ranks, tuple(mats), basis)

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def d(self, k: int):
        """``∂_k`` as a list of rows; zero matrices outside the stored range."""
        if 0 < k < len(self.ranks):
            return [list(r) for r in self.boundaries[k]]
        rows = self.ranks[k - 1] if 0 < k <= len(self.ranks) else 0
        cols = self.ranks[k] if 0 <= k < len(self.ranks) else 0
        return zeros(rows, cols)

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def is_complex(self) -> bool:
        for k in range(2, len(self.ranks)):
            if self.rank(k - 2) and self.rank(k) and not is_zero(matmul(self.d(k - 1), self.d(k))):
                return False
        return True

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple = ()

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * (1 if self.betti == 1 else 0)
        if self.betti > 1:
            parts = [f"Z^{self.betti}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def homology_integral(C: ChainComplex) -> list:
    """``H_d(C; Z)`` for ``d = 0 .. top`` as (betti, torsion divisors)."""
    divs = [smith_diagonal(C.d(k)) for k in range(C.top + 2)]
    out = []
    for k in range(C.top + 1):
        betti = C.rank(k) - len(divs[k]) - len(divs[k + 1])
        out.append(HomologyGroup(betti, tuple(x for x in divs[k + 1] if x > 1)))
    return out


def homology_mod_p(C: ChainComplex, p: int) -> tuple:
    """Betti numbers over ``F_p`` for ``d = 0 .. top``."""
    ranks = [rank_mod_p(C.d(k), p) for k in range(C.top + 2)]
    return tuple(C.rank(k) - ranks[k] - ranks[k + 1] for k in range(C.top + 1))


def betti_rational(C: ChainComplex) -> tuple:
    return tuple(h.betti for h in homology_integral(C))


def is_acyclic(C: ChainComplex) -> bool:
    return all(h.is_zero() for h in homology_integral(C))


def trim(betti: Sequence[int]) -> tuple:
    """Drop trailing zeros so complexes of different top degree compare."""
    out = list(betti)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)
