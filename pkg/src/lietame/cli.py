"""lietame command line: atlas computations, verification suites, JSON or tables."""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .errors import ConsistencyError, InputError, LietameError
from .exactalg import MultiPoly, max_dim_guard
from .liealg import (
    check_jacobi,
    discriminant,
    hc_euler_shift,
    is_invariant,
    pi_square_check,
    realize,
)
from .orbits import Partition, enumerate_orbits, transversal_weights
from .report import Report, emit
from .rootsys import (
    build_root_system,
    closed_symmetric_subsets,
    subsystem_type,
    weyl_degrees,
    weyl_group,
)
from .strata import enumerate_strata, stratum_bfunction, tameness_report
from .weylalg import euler_power_identity, membership_threshold, multinomial_slice_sum

SUITES = ("lemma31", "lemma32", "threshold", "jacobi", "pi2", "weights")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _stratum_row(s):
    return {
        "stratum": s.label,
        "P_type": s.qP_type,
        "m": s.m,
        "k": s.k,
        "orbit": s.orbit.label() if s.orbit else None,
        "codim": s.codim_in_g,
        "weights": list(s.weights.m),
        "weight_total": s.weights.total,
        "conic": s.conic,
    }


def _bfun_payload(b):
    return {
        "b": str(b),
        "roots": list(b.roots),
        "total_weight": b.total_weight,
        "kind": b.kind,
        "tame": b.tame,
        "margin": b.margin,
        "coefficients": b.coefficients(),
        "filtration": b.filtration_note,
    }


def cmd_degrees(a):
    rs = build_root_system(a.type)
    degs = weyl_degrees(rs, a.max_weyl_order)
    return {
        "degrees": degs,
        "n": rs.n,
        "rank": rs.rank,
        "sum": sum(degs),
        "half_n_plus_l": Fraction(rs.n + rs.rank, 2),
        "product": math.prod(degs),
        "weyl_order": weyl_group(rs, a.max_weyl_order).order,
    }


def cmd_roots(a):
    rs = build_root_system(a.type)
    return {
        "rank": rs.rank,
        "n": rs.n,
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
        "weyl_order": weyl_group(rs, a.max_weyl_order).order,
        "positive_roots": [
            {"index": i, "root": list(rs.roots[i]), "height": sum(rs.roots[i])} for i in rs.positive
        ],
    }


def cmd_subsets(a):
    rs = build_root_system(a.type)
    rows = []
    for P in closed_symmetric_subsets(rs, max_order=a.max_weyl_order):
        label, m, k = subsystem_type(rs, P)
        rows.append({"type": label, "size": len(P), "m": m, "k": k, "members": list(P.sorted_members)})
    return {"subsets": rows}


def cmd_orbits(a):
    rows = []
    for o in enumerate_orbits(a.type):
        m, total = transversal_weights(o)
        rows.append(
            {
                "partition": o.label(),
                "codim": o.codim,
                "dim_orbit": o.dim_orbit,
                "sl2_weights": list(o.sl2_weights),
                "slice_weight_total": total,
            }
        )
    return {"orbits": rows}


def cmd_strata(a):
    return {"strata": [_stratum_row(s) for s in enumerate_strata(a.type, max_order=a.max_weyl_order)]}


def _select(strata, p_class, orbit):
    if p_class is None:
        raise InputError("bfun needs --p-class (a q_P type label, or 'open')")
    if p_class in ("open", "0"):
        return next(s for s in strata if s.is_open)
    cands = [s for s in strata if s.qP_type == p_class]
    if orbit is not None:
        want = "|".join(str(Partition.parse(p)) for p in orbit.split("|"))
        cands = [s for s in cands if s.orbit.label() == want]
    if len(cands) != 1:
        options = ", ".join(s.label for s in strata if not s.is_open)
        if not cands:
            raise InputError(f"no stratum matches; available: {options}")
        raise InputError(f"selection is ambiguous; give --orbit. Matches: {', '.join(s.label for s in cands)}")
    return cands[0]


def cmd_bfun(a):
    strata = enumerate_strata(a.type, max_order=a.max_weyl_order)
    s = _select(strata, a.p_class, a.orbit)
    out = {"stratum": _stratum_row(s)}
    out.update(_bfun_payload(stratum_bfunction(s, a.upper_root)))
    return out


def cmd_tame(a):
    rep = tameness_report(a.type, a.upper_root, max_order=a.max_weyl_order)
    rows = [
        {
            "stratum": r.stratum.label,
            "codim": r.stratum.codim_in_g,
            "b": str(r.b),
            "weight_total": r.b.total_weight,
            "margin": r.margin,
            "tame": r.tame,
            "conic": r.conic,
        }
        for r in rep.rows
    ]
    return {"strata": rows, "verdict": "tame" if rep.verdict else "not tame"}


def _suite_slice_sums(a):
    cases, failures = 0, []
    for n in range(1, a.max_n + 1):
        for size in range(a.max_N + 1):
            for beta in _compositions_all(size, n):
                for N in range(size + 1):
                    cases += 1
                    try:
                        multinomial_slice_sum(beta, N)
                    except ConsistencyError as e:
                        failures.append({"beta": list(beta), "N": N, "error": str(e)})
    return cases, failures


def _compositions_all(size, n):
    for bars in itertools.combinations(range(size + n - 1), n - 1):
        prev, out = -1, []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(size + n - 2 - prev)
        yield tuple(out)


def _suite_euler_power(a):
    cases, failures = 0, []
    for n in range(1, a.max_n + 1):
        for N in range(1, a.max_N + 1):
            cases += 1
            diff = euler_power_identity(n, N, max_n=a.max_n, max_power=a.max_N)
            if diff:
                failures.append({"n": n, "N": N, "nonzero_terms": len(diff.terms)})
    return cases, failures


def _suite_threshold(a):
    cases, failures = 0, []
    for n in range(2, max(2, a.max_n) + 1):
        names = tuple(f"xi{i + 1}" for i in range(n))
        for exps in itertools.product(range(1, a.max_N + 1), repeat=n):
            cases += 1
            p = [MultiPoly.monomial(names, tuple(e if j == i else 0 for j in range(n))) for i, e in enumerate(exps)]
            got = membership_threshold(p)
            if got != sum(exps) - n:
                failures.append({"exponents": list(exps), "threshold": got, "expected": sum(exps) - n})
    return cases, failures


def _suite_jacobi(a):
    L = realize(a.type)
    check_jacobi(L)
    return L.n ** 3, []


def _suite_pi2(a):
    L = realize(a.type)
    pi, ratio = pi_square_check(L, build_root_system(a.type), discriminant(L, a.max_dim))
    return 1, []


def _suite_weights(a):
    types = [a.type] if a.type else ["A1", "A2", "A3", "B2", "C2"]
    cases, failures = 0, []
    for t in types:
        for o in enumerate_orbits(t):
            cases += 1
            if sum(x + 1 for x in o.sl2_weights) != o.dim_algebra:
                failures.append({"orbit": str(o), "check": "sum(lambda+1) = dim g"})
            _, total = transversal_weights(o)
            if total != Fraction(o.dim_algebra + o.codim, 2):
                failures.append({"orbit": str(o), "check": "total weight (n+r)/2"})
    return cases, failures


def cmd_verify(a):
    if a.suite in ("jacobi", "pi2") and not a.type:
        a.type = "A2"
    fn = {
        "lemma31": _suite_slice_sums,
        "lemma32": _suite_euler_power,
        "threshold": _suite_threshold,
        "jacobi": _suite_jacobi,
        "pi2": _suite_pi2,
        "weights": _suite_weights,
    }[a.suite]
    cases, failures = fn(a)
    return {"suite": a.suite, "cases": cases, "failures": failures, "passed": not failures}


def cmd_delta(a):
    L = realize(a.type)
    d = discriminant(L, a.max_dim)
    pi, ratio = pi_square_check(L, build_root_system(a.type), d)
    return {
        "n": L.n,
        "rank": L.rank,
        "degree": d.degree,
        "delta": str(d.poly),
        "tau_annihilates": is_invariant(L, d.poly),
        "pi": str(pi),
        "ratio_to_pi_squared": ratio,
        "hc_euler_shift": hc_euler_shift(L, d),
    }


COMMANDS = {
    "degrees": cmd_degrees,
    "roots": cmd_roots,
    "subsets": cmd_subsets,
    "orbits": cmd_orbits,
    "strata": cmd_strata,
    "bfun": cmd_bfun,
    "tame": cmd_tame,
    "verify": cmd_verify,
    "delta": cmd_delta,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", help="type label such as A2, B3, A1xA1")
    common.add_argument("--json", action="store_true", help="shorthand for --format json")
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--max-weyl-order", type=int, default=None, help="Weyl group enumeration guard (default 100000)")
    common.add_argument("--max-dim", type=int, default=None, help="charpoly size guard (default 16, env LIETAME_MAX_DIM)")

    p = _Parser(prog="lietame", description=__doc__)
    p.add_argument("--version", action="version", version=f"lietame {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("bfun", "tame"):
            sp.add_argument("--upper-root", type=int, default=0, help="module parameter N (default 0)")
        if name == "bfun":
            sp.add_argument("--p-class", help="q_P type label of the stratum, or 'open'")
            sp.add_argument("--orbit", help="partition(s) of the orbit, e.g. 2,1 or 2|1,1")
        if name == "verify":
            sp.add_argument(
                "--suite",
                choices=SUITES,
                required=True,
                help="lemma31: multinomial slice sums; lemma32: Euler power identity; threshold: "
                "graded membership threshold; jacobi; pi2: Delta on the Cartan vs pi^2; weights: sl2 bookkeeping",
            )
            sp.add_argument("--max-n", type=int, default=3)
            sp.add_argument("--max-N", dest="max_N", type=int, default=3)
    return p


def _inputs(a) -> dict:
    skip = {"command", "json", "format"}
    return {k: v for k, v in sorted(vars(a).items()) if k not in skip and v is not None}


def dispatch(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout.buffer
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise InputError("a subcommand is required: " + ", ".join(COMMANDS))
        if args.command != "verify" and not args.type:
            raise InputError(f"{args.command} needs --type")
        if args.max_dim is not None:
            max_dim_guard(args.max_dim)
        fmt = "json" if args.json else args.format
        results = COMMANDS[args.command](args)
        report = Report(args.command, _inputs(args), results)
        stdout.write(emit(report, fmt))
        stdout.flush()
        if results.get("passed") is False:
            _emit_error(stderr, ConsistencyError(f"suite {args.suite} reported failures"))
            return ConsistencyError.exit_code
        return 0
    except LietameError as e:
        _emit_error(stderr, e)
        return e.exit_code
    except RecursionError as e:
        _emit_error(stderr, e, kind="resource", code=4)
        return 4


def _emit_error(stream, e, kind=None, code=None):
    payload = {
        "error": {
            "kind": kind or getattr(e, "kind", "error"),
            "type": type(e).__name__,
            "message": str(e),
            "exit_code": code or getattr(e, "exit_code", 1),
        }
    }
    stream.write(json.dumps(payload) + "\n")
    stream.flush()


def main(argv=None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
