"""Command line front end.

Every command prints one JSON report with sorted keys.  Exit codes: 0 pass,
1 fail, 2 indeterminate, 3 and above for bad input or refused hypotheses.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from dataclasses import dataclass

from . import catalog, groups
from . import formats as fmt
from .complexes import (
    chain_complex,
    components,
    delta_invariant,
    euler_characteristic,
    fixed_subcomplex,
    is_regular,
    validate,
)
from .errors import (
    ComponentMismatch,
    InconsistentContext,
    InvalidComplex,
    InvalidInput,
    PrimePowerOrder,
    PseudofixError,
)
from .euler import rebalance_profile
from .groups import conjugacy_classes, is_cyclic, prime_factors
from .homology import homology_integral, homology_mod_p, trim
from .oliver import OliverTag, classify, degree_zero_coefficients, effective_modulus, sylow_normalizer_indices
from .pseudo import TraceReport, VerdictContext, smith_conditions, verdict
from .splittings import component_splittings, is_weakly_g_connected
from .trace import equivariant_euler_rank, compwise_trace_check, cyclic_trace_check

EXIT_ERROR = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


@dataclass(frozen=True)
class RunConfig:
    args: argparse.Namespace
    compact: bool
    order_cap: int
    subgroup_cap: int


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # shared flags may appear before or after the verb, so none of them has a parser default
    common.add_argument("--compact", action="store_true", default=argparse.SUPPRESS, help="single-line JSON output")
    common.add_argument("--order-cap", type=_positive, default=argparse.SUPPRESS)
    common.add_argument("--subgroup-cap", type=_positive, default=argparse.SUPPRESS)

    p = _Parser(prog="pseudofix", parents=[common], description="Fixed-point obstruction checks for finite group actions.")
    p.add_argument("--schema", nargs="?", const="all", metavar="REPORT", help="print the JSON schema of a report and exit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="Oliver class of a group")
    c.add_argument("group")
    c = sub.add_parser("degree-zero", parents=[common], help="Bezout coefficients over Sylow normalizer indices")
    c.add_argument("group")

    cx = sub.add_parser("complex", parents=[common], help="inspect a G-complex").add_subparsers(dest="action", parser_class=_Parser)
    c = cx.add_parser("fixed", parents=[common])
    c.add_argument("complex")
    c.add_argument("--subgroup", help="comma separated element indices (default: the whole group)")
    c = cx.add_parser("homology", parents=[common])
    c.add_argument("complex")
    c.add_argument("--subgroup", help="take homology of this subgroup's fixed set")
    c.add_argument("--primes", default=None, help="comma separated primes for mod-p Betti numbers")
    c = cx.add_parser("validate", parents=[common])
    c.add_argument("complex")

    c = sub.add_parser("rebalance", parents=[common], help="cone moves fixing an Euler profile")
    c.add_argument("--profile", required=True)
    c.add_argument("--modulus", type=_nonnegative, required=True)
    c.add_argument("--anchor", type=int)

    ck = sub.add_parser("check", parents=[common], help="obstruction checks").add_subparsers(dest="action", parser_class=_Parser)
    c = ck.add_parser("smith", parents=[common])
    c.add_argument("source")
    c.add_argument("target")
    c = ck.add_parser("verdict", parents=[common])
    c.add_argument("--deficits", required=True)
    c.add_argument("--group")
    c.add_argument("--n-g", dest="n_g", type=_nonnegative)
    c.add_argument("--cover")
    c.add_argument("--extension")
    c.add_argument("--p-subgroup", dest="p_subgroup")
    c = ck.add_parser("cyclic", parents=[common])
    c.add_argument("--cover", required=True)
    c.add_argument("--extension")
    c.add_argument("--gamma", type=int)
    c.add_argument("--fixed", required=True)
    c = ck.add_parser("compwise", parents=[common])
    c.add_argument("--cover", required=True)
    c.add_argument("--extension")
    c.add_argument("--p-subgroup", dest="p_subgroup", required=True)
    c.add_argument("--fixed", required=True)

    tr = sub.add_parser("trace", parents=[common], help="Hattori-Stallings ranks").add_subparsers(dest="action", parser_class=_Parser)
    c = tr.add_parser("rank", parents=[common])
    c.add_argument("--cover", required=True)

    ca = sub.add_parser("catalog", parents=[common], help="built-in groups and complexes").add_subparsers(dest="action", parser_class=_Parser)
    ca.add_parser("list", parents=[common])
    c = ca.add_parser("export", parents=[common])
    c.add_argument("name")
    return p


# commands ------------------------------------------------------------------------------


def _cmd_classify(cfg):
    G = fmt.parse_group(cfg.args.group)
    cls = classify(G)
    witness = None
    if cls.witness:
        witness = {"P": list(cls.witness[0].elements)}
        if len(cls.witness) > 1:
            witness["H"] = list(cls.witness[1].elements)
    body = {"group_order": G.order, "tag": cls.tag.value, "witness": witness, "m_G": cls.m_G, "n_G": cls.n_G}
    return "classify", body, 0


def _cmd_degree_zero(cfg):
    G = fmt.parse_group(cfg.args.group)
    idx = sylow_normalizer_indices(G)
    coeffs = degree_zero_coefficients([m for _, m in idx])
    check = 1 + sum(a * m for a, (_, m) in zip(coeffs, idx))
    return "degree-zero", {"indices": [list(t) for t in idx], "coefficients": coeffs, "check": check}, 0


def _complex_subgroup(X, text):
    return fmt.parse_subgroup(X.group, text)


def _cmd_complex_fixed(cfg):
    X = fmt.parse_complex(cfg.args.complex)
    _require_valid(X)
    H = _complex_subgroup(X, cfg.args.subgroup)
    S = fixed_subcomplex(X, H)
    comps = [{"id": C.key, "cells": list(C.ids), "euler": euler_characteristic(C)} for C in components(S)]
    body = {
        "subgroup": list(H.elements),
        "cells": list(S.ids),
        "euler": euler_characteristic(S),
        "components": comps,
        "delta": delta_invariant(X, H),
    }
    return "complex.fixed", body, 0


def _cmd_complex_homology(cfg):
    X = fmt.parse_complex(cfg.args.complex)
    _require_valid(X)
    H = None
    S = X.whole
    if cfg.args.subgroup is not None:
        H = _complex_subgroup(X, cfg.args.subgroup)
        S = fixed_subcomplex(X, H)
    if cfg.args.primes is None:
        primes = sorted({2} | set(prime_factors(X.group.order)))
    else:
        primes = sorted({int(q) for q in cfg.args.primes.split(",") if q.strip()})
        if any(groups.is_prime_power(q) != q for q in primes):
            raise InvalidInput("--primes takes primes only")
    C = chain_complex(S)
    integral = [{"betti": h.betti, "torsion": list(h.torsion)} for h in homology_integral(C)] if S.cells else []
    mod_p = {str(q): (list(trim(homology_mod_p(C, q))) if S.cells else []) for q in primes}
    body = {
        "subgroup": None if H is None else list(H.elements),
        "integral": integral,
        "mod_p": mod_p,
        "euler": euler_characteristic(S),
    }
    return "complex.homology", body, 0


def _cmd_complex_validate(cfg):
    X = fmt.parse_complex(cfg.args.complex)
    report = validate(X)
    violations = [
        {"kind": v.kind, "message": v.message, "cell": v.cell, "element": v.element} for v in report.violations
    ]
    body = {"ok": report.ok, "regular": report.ok and is_regular(X.whole), "violations": violations}
    return "complex.validate", body, 0 if report.ok else 1


def _require_valid(X):
    report = validate(X)
    if not report.ok:
        raise InvalidComplex(report.violations[0].message, report.violations)


def _cmd_rebalance(cfg):
    P = fmt.parse_profile(cfg.args.profile)
    _require_valid(P.target)
    moves, final = rebalance_profile(P, cfg.args.modulus, anchor=cfg.args.anchor)
    body = {
        "modulus": cfg.args.modulus,
        "chi_source": P.total(),
        "chi_target": euler_characteristic(P.target.whole),
        "moves": [m.as_dict() for m in moves],
        "final": {str(c): v for c, v in sorted(final.values.items())},
    }
    return "rebalance", body, 0


def _cmd_check_smith(cfg):
    X = fmt.parse_complex(cfg.args.source)
    Y = fmt.parse_complex(cfg.args.target, group=X.group)
    _require_valid(X)
    _require_valid(Y)
    rep = smith_conditions(X, Y)
    return "check.smith", {"holds": rep.holds, "entries": [e.as_dict() for e in rep.entries]}, 0 if rep.holds else 1


def _generator_lifts(M):
    E = M.extension
    G = E.quotient
    return [x for x in range(E.total.order) if G.element_order(E.projection(x)) == G.order]


def _cyclic_reports(M, fixed, gamma=None):
    gammas = [gamma] if gamma is not None else _generator_lifts(M)
    out, seen = [], set()
    for g in gammas:
        chk = cyclic_trace_check(M, g, fixed)
        if gamma is None and chk.components in seen:
            continue
        seen.add(chk.components)
        out.append(chk)
    return out


def _cmd_check_verdict(cfg):
    a = cfg.args
    D = fmt.parse_deficits(a.deficits)
    G = fmt.parse_group(a.group) if a.group else None
    M = fmt.parse_cover(a.cover, a.extension) if a.cover else None
    if M is not None:
        if G is None:
            G = M.base.group
        elif not G.same_table(M.base.group):
            raise InconsistentContext("the group differs from the cover's quotient group")
    modulus, zero = a.n_g, False
    cyclic = False
    if G is not None:
        cyclic = is_cyclic(G.whole)
        try:
            cls = classify(G)
            modulus = effective_modulus(cls, a.n_g)
            zero = cls.tag is OliverTag.ZERO
        except PrimePowerOrder:
            zero = True
            if a.n_g not in (None, 0):
                raise InconsistentContext(f"groups of prime-power order have n_G = 0, not {a.n_g}") from None
            modulus = 0
    weak = None
    comps = None
    trace = []
    if M is not None:
        comps = tuple(C.key for C in M.fixed_components())
        if tuple(D.components) != comps:
            raise ComponentMismatch(f"deficits are indexed by {D.components}, the cover's fixed set by {comps}")
        weak = is_weakly_g_connected(component_splittings(M))
        chis = {C.key: euler_characteristic(C) for C in M.fixed_components()}
        fixed = {k: x + chis[k] for k, x in zip(D.components, D.entries)}
        if cyclic and G.order > 1:
            for chk in _cyclic_reports(M, fixed):
                trace.append(TraceReport("cyclic", chk.holds, chk.as_dict()))
        if a.p_subgroup is not None:
            P = fmt.parse_subgroup(G, a.p_subgroup)
            res = compwise_trace_check(M, P, fixed)
            for grp in res.groups:
                trace.append(TraceReport("compwise", grp.holds, grp.as_dict()))
    elif a.p_subgroup is not None:
        raise InvalidInput("--p-subgroup needs --cover")
    ctx = VerdictContext(cyclic=cyclic, decided_zero=zero, weakly_connected=weak, components=comps, trace=tuple(trace))
    v = verdict(D, modulus, ctx)
    body = v.as_dict()
    body["weakly_connected"] = weak
    return "check.verdict", body, v.exit_code


def _cmd_trace_rank(cfg):
    X = fmt.parse_complex(cfg.args.cover)
    _require_valid(X)
    r = equivariant_euler_rank(X)
    classes = [
        {"representative": K[0], "size": len(K), "coefficient": str(x)}
        for K, x in zip(conjugacy_classes(X.group), r.coefficients)
    ]
    return "trace.rank", {"group_order": X.group.order, "classes": classes}, 0


def _cmd_check_cyclic(cfg):
    a = cfg.args
    M = fmt.parse_cover(a.cover, a.extension)
    fixed = fmt.parse_fixed_euler(a.fixed)
    checks = _cyclic_reports(M, fixed, a.gamma)
    holds = all(c.holds for c in checks)
    return "check.cyclic", {"holds": holds, "checks": [c.as_dict() for c in checks]}, 0 if holds else 1


def _cmd_check_compwise(cfg):
    a = cfg.args
    M = fmt.parse_cover(a.cover, a.extension)
    P = fmt.parse_subgroup(M.base.group, a.p_subgroup)
    res = compwise_trace_check(M, P, fmt.parse_fixed_euler(a.fixed))
    body = {
        "holds": res.holds,
        "p_subgroup": list(P.elements),
        "groups": [g.as_dict() for g in res.groups],
        "failures": [g.as_dict() for g in res.failures],
    }
    return "check.compwise", body, 0 if res.holds else 1


def _bundled():
    root = resources.files("pseudofix").joinpath("data")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _cmd_catalog_list(cfg):
    body = {"groups": sorted(catalog.GROUPS), "complexes": sorted(catalog.COMPLEXES), "bundled": _bundled()}
    return "catalog.list", body, 0


def _cmd_catalog_export(cfg):
    name = cfg.args.name
    if name in catalog.GROUPS:
        return "catalog.export", {"name": name, "kind": "group", "document": fmt.group_to_json(catalog.group(name))}, 0
    if name in catalog.COMPLEXES:
        doc = fmt.complex_to_json(catalog.complex_(name))
        return "catalog.export", {"name": name, "kind": "complex", "document": doc}, 0
    raise InvalidInput(f"no catalog entry named {name!r}")


COMMANDS = {
    ("classify", None): _cmd_classify,
    ("degree-zero", None): _cmd_degree_zero,
    ("complex", "fixed"): _cmd_complex_fixed,
    ("complex", "homology"): _cmd_complex_homology,
    ("complex", "validate"): _cmd_complex_validate,
    ("rebalance", None): _cmd_rebalance,
    ("check", "smith"): _cmd_check_smith,
    ("check", "verdict"): _cmd_check_verdict,
    ("check", "cyclic"): _cmd_check_cyclic,
    ("check", "compwise"): _cmd_check_compwise,
    ("trace", "rank"): _cmd_trace_rank,
    ("catalog", "list"): _cmd_catalog_list,
    ("catalog", "export"): _cmd_catalog_export,
}


def _emit(report, compact, out):
    out.write(fmt.dumps(report, compact) + "\n")


def run(argv=None, out=None) -> int:
    """Parse ``argv``, run one command, write its report to ``out``; return the exit code."""
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    compact = "--compact" in argv
    saved = (groups.ORDER_CAP, groups.SUBGROUP_CAP)
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(
            args,
            getattr(args, "compact", False),
            getattr(args, "order_cap", groups.ORDER_CAP),
            getattr(args, "subgroup_cap", groups.SUBGROUP_CAP),
        )
        if args.schema is not None:
            if args.schema == "all":
                _emit(fmt.SCHEMAS, compact, out)
            elif args.schema in fmt.SCHEMAS:
                _emit(fmt.SCHEMAS[args.schema], compact, out)
            else:
                raise InvalidInput(f"no schema named {args.schema!r}")
            return 0
        key = (args.command, getattr(args, "action", None))
        if key not in COMMANDS:
            raise InvalidInput("missing command; try --help")
        groups.ORDER_CAP, groups.SUBGROUP_CAP = cfg.order_cap, cfg.subgroup_cap
        name, body, code = COMMANDS[key](cfg)
        _emit(fmt.envelope(name, body), cfg.compact, out)
        return code
    except PseudofixError as exc:
        _emit(fmt.error_report(exc), compact, out)
        return EXIT_ERROR
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        _emit(fmt.error_report(InvalidInput(f"malformed input: {exc}")), compact, out)
        return EXIT_ERROR
    finally:
        groups.ORDER_CAP, groups.SUBGROUP_CAP = saved


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
