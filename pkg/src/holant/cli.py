"""Command-line interface.

Exit codes: 0 success; 1 parse/usage error; 2 region or runtime-condition
violation; 3 unsupported weights / signature not in F0; 4 size gate exceeded.
Reports carry the resolved inputs and the seed, so a report replays to the
identical result.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import FAMILIES, region_bounds, verify_kp
from .errors import (
    ConditionViolated,
    DegenerateDistribution,
    GateExceeded,
    HolantError,
    InvalidFugacity,
    NotInF0,
    ParseError,
    RegionViolation,
    UnsupportedWeights,
)
from .expansion import approx_polynomial_report, approx_problem_report
from .graph import MultiGraph
from .linsys import (
    linsys_region,
    parse_matrix_file,
    parse_pm_file,
    pm_polynomial_graph,
    pm_polynomial_hypergraph,
    weighted_count,
)
from .mcmc import derive_seed, fpras_estimate, mixing_time, sample_assignments
from .oracle import brute_holant
from .signatures import assignment_from_json, uniform_assignment


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; reserve 2 for regions
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    t = text.strip().replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise ParseError(f"bad complex literal {text!r}") from exc


def parse_z(text: str):
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError("empty fugacity vector")
    return tuple(parse_complex(p) for p in parts)


def _load_graph(path: str) -> MultiGraph:
    return MultiGraph.from_text(Path(path).read_text())


def _load_assignment(G: MultiGraph, sig: str):
    if Path(sig).is_file():
        return assignment_from_json(G, Path(sig).read_text())
    if sig == "matching":
        return uniform_assignment(G, "matching")
    if sig.startswith("even-parity:"):
        return uniform_assignment(G, "even-parity", parse_complex(sig.split(":", 1)[1]))
    raise ParseError(
        f"--sig must be 'matching', 'even-parity:<w>' or a JSON file, got {sig!r}"
    )


def _resolve_z(args, kappa: int):
    if getattr(args, "z", None):
        z = parse_z(args.z)
        if len(z) != kappa + 1:
            raise InvalidFugacity(f"need {kappa + 1} fugacities, got {len(z)}")
        return z
    return tuple([1.0 + 0j] * (kappa + 1))


def _resolve_seed(args, *parts) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return derive_seed(*parts)


def _c(v: complex):
    v = complex(v)
    return [v.real, v.imag]


def _emit(args, report: dict) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if getattr(args, "format", "text") == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_text(report)


def _print_text(report: dict, indent: str = "") -> None:
    for key, value in report.items():
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _print_text(value, indent + "  ")
        else:
            print(f"{indent}{key}: {value}")


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_approx(args) -> int:
    G = _load_graph(args.graph)
    assign = _load_assignment(G, args.sig)
    if args.z:
        z = _resolve_z(args, assign.kappa)
        rep = approx_polynomial_report(
            G, assign, z, args.eps, method=args.method, force=args.force,
            order=args.order,
        )
    else:
        z = tuple([1.0 + 0j] * (assign.kappa + 1))
        rep = approx_problem_report(
            G, assign, args.eps, method=args.method, force=args.force,
            order=args.order,
        )
    _emit(args, {
        "command": "approx",
        "inputs": {
            "graph": args.graph, "sig": args.sig,
            "z": [_c(t) for t in z], "eps": args.eps,
            "force": args.force, "order": args.order, "method": args.method,
        },
        "diagnostics": {
            "theorem": rep.theorem,
            "q": rep.q,
            "truncation_order": rep.order,
            "method": rep.method,
            "pool_size": rep.pool_size,
            "region_bound": rep.region_bound,
            "prefactor": _c(rep.prefactor),
        },
        "result": {"value": _c(rep.value)},
    })
    return 0


def _cmd_sample(args) -> int:
    G = _load_graph(args.graph)
    assign = _load_assignment(G, args.sig)
    z = _resolve_z(args, assign.kappa)
    seed = _resolve_seed(args, G.to_text(), args.sig, args.z or "1", args.eps)
    sigmas = sample_assignments(
        G, assign, z, args.eps, seed, trials=args.trials, jobs=args.jobs
    )
    _emit(args, {
        "command": "sample",
        "inputs": {
            "graph": args.graph, "sig": args.sig,
            "z": [_c(t) for t in z], "eps": args.eps, "trials": args.trials,
        },
        "seed": seed,
        "diagnostics": {"mixing_steps": mixing_time(G, args.eps)},
        "result": {"assignments": [list(s) for s in sigmas]},
    })
    return 0


def _cmd_count_mcmc(args) -> int:
    G = _load_graph(args.graph)
    assign = _load_assignment(G, args.sig)
    z = _resolve_z(args, assign.kappa)
    seed = _resolve_seed(args, G.to_text(), args.sig, args.z or "1", args.eps)
    rep = fpras_estimate(G, assign, z, args.eps, seed, reps=args.reps, jobs=args.jobs)
    _emit(args, {
        "command": "count-mcmc",
        "inputs": {
            "graph": args.graph, "sig": args.sig,
            "z": [_c(t) for t in z], "eps": args.eps, "reps": args.reps,
        },
        "seed": seed,
        "diagnostics": {
            "stages": rep.stages,
            "samples_per_stage": rep.samples_per_stage,
            "chain_steps": rep.chain_steps,
            "certificate": rep.certificate,
            "estimates": rep.estimates,
        },
        "result": {"value": rep.value},
    })
    return 0


def _cmd_oracle(args) -> int:
    G = _load_graph(args.graph)
    assign = _load_assignment(G, args.sig)
    z = _resolve_z(args, assign.kappa)
    res = brute_holant(G, assign, z, keep_table=args.table)
    report = {
        "command": "oracle",
        "inputs": {"graph": args.graph, "sig": args.sig, "z": [_c(t) for t in z]},
        "result": {"value": _c(res.value), "terms": res.terms},
    }
    if args.table:
        report["result"]["table"] = {
            ",".join(map(str, sigma)): _c(w) for sigma, w in res.table.items()
        }
    _emit(args, report)
    return 0


def _cmd_bounds(args) -> int:
    wanted = FAMILIES if args.family == "all" else (args.family,)
    params = {
        "delta": args.delta, "kappa": args.kappa, "r1": args.r1,
        "r": args.r, "c": args.c, "k": args.k,
    }
    needed = {
        "boolean": ("delta", "r1"),
        "matching": ("delta",),
        "holant-poly": ("delta", "kappa", "r1"),
        "holant-problem": ("delta", "kappa"),
        "mcmc-poly": ("delta", "kappa", "r1"),
        "mcmc-problem": ("delta", "kappa"),
        "linsys": ("r", "c", "kappa"),
        "hyper-pm": ("delta", "k"),
        "graph-pm": ("delta",),
    }
    table = {}
    for family in wanted:
        keys = needed[family]
        if any(params[k] is None for k in keys):
            if args.family != "all":
                missing = [k for k in keys if params[k] is None]
                raise ParseError(f"family {family!r} needs --{' --'.join(missing)}")
            continue
        try:
            rep = region_bounds(family, **{k: params[k] for k in keys})
        except ValueError as exc:
            if args.family != "all":
                raise
            table[family] = {"skipped": str(exc)}
            continue
        table[family] = dict(rep.values, bound=rep.bound)
    if not table:
        raise ParseError("no family applicable to the given parameters")
    _emit(args, {
        "command": "bounds",
        "inputs": {k: v for k, v in params.items() if v is not None},
        "result": table,
    })
    return 0


def _cmd_verify_kp(args) -> int:
    G = _load_graph(args.graph)
    assign = _load_assignment(G, args.sig)
    z = _resolve_z(args, assign.kappa)
    rep = verify_kp(G, assign, z, alpha=args.alpha, size=args.size)
    _emit(args, {
        "command": "verify-kp",
        "inputs": {
            "graph": args.graph, "sig": args.sig, "z": [_c(t) for t in z],
            "alpha": args.alpha, "size": args.size,
        },
        "result": {
            "certified": rep.certified,
            "worst_margin": rep.worst_margin,
            "polymer_count": rep.polymer_count,
        },
    })
    return 0


def _cmd_linsys(args) -> int:
    system = parse_matrix_file(Path(args.matrix).read_text())
    rep = weighted_count(system)
    result = {
        "value": _c(rep.value),
        "polymer_count": rep.polymer_count,
        "family_count": rep.family_count,
        "dropped_columns": rep.dropped_columns,
    }
    r = system.row_support()
    if r >= 2:
        region = linsys_region(system)
        result["region"] = dict(region.values, bound=region.bound)
    else:
        result["region"] = {"skipped": f"row support r = {r} < 2"}
    _emit(args, {
        "command": "linsys",
        "inputs": {"matrix": args.matrix},
        "result": result,
    })
    return 0


def _cmd_pm(args) -> int:
    instance, matching, kind = parse_pm_file(Path(args.instance).read_text())
    z = parse_complex(args.zc)
    if kind == "graph":
        mode = args.mode
        out = pm_polynomial_graph(instance, matching, z, mode=mode)
    else:
        mode = "exact" if args.mode == "polymer" else args.mode
        out = pm_polynomial_hypergraph(instance, matching, z, mode=mode)
    if args.mode == "bound" or (kind == "hyper" and mode == "bound"):
        result = dict(out.values, bound=out.bound)
    else:
        result = {"value": _c(out)}
    _emit(args, {
        "command": "pm",
        "inputs": {"instance": args.instance, "z": _c(z), "mode": args.mode,
                   "kind": kind},
        "result": result,
    })
    return 0


# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, with_seed: bool = False):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="also write the JSON report to this path")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes; 1 is the bitwise-reference mode")
    if with_seed:
        p.add_argument("--seed", type=int, default=None,
                       help="RNG seed (default: derived from the instance)")


def build_parser() -> _Parser:
    parser = _Parser(prog="holant", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="deterministic eps-approximation")
    p.add_argument("--graph", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--z", help="fugacities z0,z1,...; omit for the all-ones problem")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--method", choices=("auto", "clusters", "series"), default="auto")
    p.add_argument("--force", action="store_true",
                   help="run outside the certified region (no guarantee)")
    p.add_argument("--order", type=int, default=None,
                   help="override the truncation order")
    _add_common(p)
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("sample", help="eps-approximate Gibbs samples")
    p.add_argument("--graph", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--z")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--trials", type=int, default=1)
    _add_common(p, with_seed=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("count-mcmc", help="randomised (annealed) counting")
    p.add_argument("--graph", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--z")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--reps", type=int, default=3)
    _add_common(p, with_seed=True)
    p.set_defaults(func=_cmd_count_mcmc)

    p = sub.add_parser("oracle", help="exact brute-force reference value")
    p.add_argument("--graph", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--z")
    p.add_argument("--table", action="store_true",
                   help="include per-assignment weights in the report")
    _add_common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bounds", help="print region bounds for parameters")
    p.add_argument("--family", default="all", choices=FAMILIES + ("all",))
    p.add_argument("--delta", type=int)
    p.add_argument("--kappa", type=int)
    p.add_argument("--r1", type=float)
    p.add_argument("--r", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--k", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify-kp", help="check the convergence certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--z")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--size", choices=("edges", "vertices"), default="edges")
    _add_common(p)
    p.set_defaults(func=_cmd_verify_kp)

    p = sub.add_parser("linsys", help="weighted solution count of A x = 0")
    p.add_argument("--matrix", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_linsys)

    p = sub.add_parser("pm", help="perfect-matching polynomial")
    p.add_argument("--instance", required=True)
    p.add_argument("--zc", required=True, help="complex evaluation point")
    p.add_argument("--mode", choices=("polymer", "exact", "bound"),
                   default="polymer")
    _add_common(p)
    p.set_defaults(func=_cmd_pm)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (RegionViolation, ConditionViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotInF0, UnsupportedWeights, DegenerateDistribution) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GateExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ParseError, InvalidFugacity, HolantError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
