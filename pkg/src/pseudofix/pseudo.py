"""Chain-level pseudo-equivalence, Smith conditions, mapping tori and the verdict."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .complexes import GCWComplex, chain_complex, fixed_subcomplex
from .errors import ComponentMismatch, InconsistentContext, InvalidInput
from .euler import DeficitVector, congruent
from .groups import all_subgroups, is_prime_power
from .homology import ChainComplex, homology_mod_p, is_acyclic, is_zero, matmul, trim, zeros


@dataclass(frozen=True)
class ChainMap:
    """``maps[d]`` is the matrix of ``f_d : C_d -> D_d`` (rows indexed by ``D_d``)."""

    source: ChainComplex
    target: ChainComplex
    maps: tuple

    def __post_init__(self):
        top = max(self.source.top, self.target.top)
        mats = []
        for d in range(top + 1):
            rows, cols = self.target.rank(d), self.source.rank(d)
            m = self.maps[d] if d < len(self.maps) else None
            if m is None or (rows == 0 or cols == 0):
                m = zeros(rows, cols)
            if len(m) != rows or any(len(r) != cols for r in m):
                raise InvalidInput(f"chain map matrix in degree {d} has the wrong shape")
            mats.append(tuple(tuple(int(x) for x in r) for r in m))
        object.__setattr__(self, "maps", tuple(mats))

    def f(self, d: int):
        if 0 <= d < len(self.maps):
            return [list(r) for r in self.maps[d]]
        return zeros(self.target.rank(d), self.source.rank(d))

    def is_chain_map(self) -> bool:
        for d in range(1, len(self.maps)):
            lhs = matmul(self.target.d(d), self.f(d), self.target.rank(d))
            rhs = matmul(self.f(d - 1), self.source.d(d), self.source.rank(d - 1))
            if lhs != rhs and not (is_zero(lhs) and is_zero(rhs)):
                return False
        return True


def identity_map(C: ChainComplex) -> ChainMap:
    mats = [[[int(i == j) for j in range(r)] for i in range(r)] for r in C.ranks]
    return ChainMap(C, C, tuple(mats))


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g ∘ f``."""
    top = max(len(f.maps), len(g.maps))
    mats = [matmul(g.f(d), f.f(d), f.target.rank(d)) for d in range(top)]
    return ChainMap(f.source, g.target, tuple(mats))


def _block(rows_split, cols_split, blocks):
    """Assemble a 2x2 block matrix; ``blocks[i][j]`` may be None for zero."""
    r0, r1 = rows_split
    c0, c1 = cols_split
    out = zeros(r0 + r1, c0 + c1)
    for bi, roff, rn in ((0, 0, r0), (1, r0, r1)):
        for bj, coff, cn in ((0, 0, c0), (1, c0, c1)):
            B = blocks[bi][bj]
            if B is None:
                continue
            for i in range(rn):
                for j in range(cn):
                    out[roff + i][coff + j] = B[i][j]
    return out


def _neg(A):
    return [[-x for x in row] for row in A]


def mapping_cone(f: ChainMap) -> ChainComplex:
    """``cone_d = C_{d-1} ⊕ D_d`` with ``∂(x, y) = (-∂x, f(x) + ∂y)``."""
    C, D = f.source, f.target
    top = max(C.top + 1, D.top)
    ranks = [C.rank(d - 1) + D.rank(d) for d in range(top + 1)]
    mats = [()]
    for d in range(1, top + 1):
        M = _block(
            (C.rank(d - 2), D.rank(d - 1)),
            (C.rank(d - 1), D.rank(d)),
            [[_neg(C.d(d - 1)), None], [f.f(d - 1), D.d(d)]],
        )
        mats.append(tuple(tuple(r) for r in M))
    return ChainComplex(tuple(ranks), tuple(mats))


def is_homology_equivalence(f: ChainMap) -> bool:
    """Integral homology isomorphism, tested by acyclicity of the mapping cone."""
    if not f.is_chain_map():
        raise InvalidInput("not a chain map")
    return is_acyclic(mapping_cone(f))


def mapping_torus(C: ChainComplex, h: ChainMap) -> ChainComplex:
    """``T_d = C_d ⊕ C_{d-1}`` with ``∂(x, y) = (∂x + (h - 1)y, -∂y)``."""
    if not h.is_chain_map():
        raise InvalidInput("not a chain map")
    top = C.top + 1
    ranks = [C.rank(d) + C.rank(d - 1) for d in range(top + 1)]
    mats = [()]
    for d in range(1, top + 1):
        hm = h.f(d - 1)
        n = C.rank(d - 1)
        twist = [[hm[i][j] - (i == j) for j in range(n)] for i in range(n)]
        M = _block(
            (C.rank(d - 1), C.rank(d - 2)),
            (C.rank(d), C.rank(d - 1)),
            [[C.d(d), twist], [None, _neg(C.d(d - 1))]],
        )
        mats.append(tuple(tuple(r) for r in M))
    T = ChainComplex(tuple(ranks), tuple(mats))
    if not T.is_complex():
        raise AssertionError("mapping torus boundary does not square to zero")
    return T


# Smith theory -------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithEntry:
    subgroup: tuple
    prime: int
    betti_source: tuple
    betti_target: tuple

    @property
    def holds(self) -> bool:
        return self.betti_source == self.betti_target

    def as_dict(self) -> dict:
        return {
            "subgroup": list(self.subgroup),
            "prime": self.prime,
            "betti_source": list(self.betti_source),
            "betti_target": list(self.betti_target),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class SmithReport:
    entries: tuple

    @property
    def holds(self) -> bool:
        return all(e.holds for e in self.entries)

    @property
    def failures(self) -> tuple:
        return tuple(e for e in self.entries if not e.holds)


def _fixed_betti(X: GCWComplex, P, p: int) -> tuple:
    S = fixed_subcomplex(X, P)
    if not S.cells:
        return ()
    return trim(homology_mod_p(chain_complex(S), p))


def smith_conditions(X: GCWComplex, Y: GCWComplex) -> SmithReport:
    """Compare ``H_*(X^P; F_p)`` with ``H_*(Y^P; F_p)`` for every nontrivial p-subgroup ``P``."""
    if not X.group.same_table(Y.group):
        raise InvalidInput("the two complexes carry different groups")
    entries = []
    for P in all_subgroups(X.group):
        p = is_prime_power(P.order)
        if p is None:
            continue
        PY = Y.group.subgroup(P.elements)
        entries.append(SmithEntry(P.elements, p, _fixed_betti(X, P, p), _fixed_betti(Y, PY, p)))
    return SmithReport(tuple(entries))


# the verdict ---------------------------------------------------------------------------------


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


class Conclusion(enum.Enum):
    SUFFICIENT_PASS = "SufficientPass"
    NECESSARY_FAIL = "NecessaryFail"
    DEFINITIVE_EXACT = "DefinitiveExact"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class TraceReport:
    name: str
    holds: bool
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class VerdictContext:
    """What is known beyond the deficits.

    ``decided_zero`` marks groups whose Oliver class is Zero; ``cyclic`` marks
    cyclic groups.  ``weakly_connected`` is relative to the supplied cover.
    """

    cyclic: bool = False
    decided_zero: bool = False
    weakly_connected: Optional[bool] = None
    components: Optional[tuple] = None
    trace: tuple = ()
    smith: Optional[SmithReport] = None


@dataclass(frozen=True)
class ObstructionVerdict:
    modulus: Optional[int]
    global_congruence: Status
    local_congruences: tuple
    smith: Optional[SmithReport]
    trace: tuple
    conclusion: Conclusion
    reason: Optional[str] = None
    passed: Optional[bool] = None

    @property
    def exit_code(self) -> int:
        if self.conclusion is Conclusion.INDETERMINATE:
            return 2
        if self.conclusion is Conclusion.NECESSARY_FAIL:
            return 1
        if self.conclusion is Conclusion.DEFINITIVE_EXACT:
            return 0 if self.passed else 1
        return 0

    def as_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "global_congruence": self.global_congruence.value,
            "local_congruences": [{"component": c, "status": s.value} for c, s in self.local_congruences],
            "smith": None if self.smith is None else [e.as_dict() for e in self.smith.entries],
            "trace": [{"name": t.name, "holds": t.holds, "detail": t.detail} for t in self.trace],
            "conclusion": self.conclusion.value,
            "reason": self.reason,
            "passed": self.passed,
            "exit_code": self.exit_code,
        }


def _status(ok: Optional[bool]) -> Status:
    if ok is None:
        return Status.INDETERMINATE
    return Status.PASS if ok else Status.FAIL


def verdict(deficits: DeficitVector, modulus: Optional[int], context: Optional[VerdictContext] = None) -> ObstructionVerdict:
    """Combine the sub-reports by the precedence global > Smith > exact > trace > local > unknown.

    ``modulus`` is ``n_G`` (0 for exact equality) or None when unknown.
    """
    ctx = context or VerdictContext()
    if modulus is not None and modulus < 0:
        raise InvalidInput("modulus must be nonnegative")
    if ctx.components is not None and tuple(ctx.components) != deficits.components:
        raise ComponentMismatch(f"deficits are indexed by {deficits.components}, context by {tuple(ctx.components)}")
    if ctx.cyclic or ctx.decided_zero:
        if modulus is None:
            modulus = 0
        elif modulus != 0:
            raise InconsistentContext(f"cyclic or Zero-class groups have n_G = 0, not {modulus}")

    if modulus is None:
        glob = Status.INDETERMINATE
        local = tuple((c, Status.INDETERMINATE) for c in deficits.components)
    else:
        glob = _status(congruent(deficits.total, 0, modulus))
        local = tuple((c, _status(congruent(x, 0, modulus))) for c, x in zip(deficits.components, deficits.entries))

    def done(conclusion, reason=None, passed=None):
        return ObstructionVerdict(modulus, glob, local, ctx.smith, tuple(ctx.trace), conclusion, reason, passed)

    if not deficits.components:
        return done(Conclusion.INDETERMINATE, "empty fixed set is outside the pipeline")
    if glob is Status.FAIL:
        return done(Conclusion.NECESSARY_FAIL, "global")
    if ctx.smith is not None and not ctx.smith.holds:
        return done(Conclusion.NECESSARY_FAIL, "smith")
    if ctx.weakly_connected and (ctx.cyclic or ctx.decided_zero):
        # the grouped trace sums are singletons here, so they are part of the exact test
        ok = all(s is Status.PASS for _, s in local) and all(t.holds for t in ctx.trace)
        return done(Conclusion.DEFINITIVE_EXACT, "componentwise", ok)
    if any(not t.holds for t in ctx.trace):
        return done(Conclusion.NECESSARY_FAIL, "trace")
    if local and all(s is Status.PASS for _, s in local):
        return done(Conclusion.SUFFICIENT_PASS, "local")
    return done(Conclusion.INDETERMINATE, "position in N_Y unknown")


def deficits_from_sequence(components: Sequence[int], entries: Sequence[int]) -> DeficitVector:
    return DeficitVector(tuple(components), tuple(entries))
