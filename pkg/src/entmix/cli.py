"""Command-line front end: every analysis as a subcommand emitting CSV or JSON.

Exit codes: 0 success, 2 parameter validation error, 3 numeric failure,
4 statistical self-test failure.  All output is deterministic given the
flags (plus the seed for ``simulate``); numeric fields carry 12 significant
digits.  ENTMIX_THREADS overrides the worker count for grid scans.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .entanglement import (
    concurrence_xstate,
    eisert_lower_bound,
    entanglement_of_formation,
    ef_max_asymptotic,
    optimize_prep,
    survival_threshold,
    survival_threshold_bisect,
)
from .mixing import fidelity, mapped_state, mapped_xstate
from .nonlocality import (
    chsh_boundary,
    chsh_boundary_bisect,
    horodecki_m,
    lhvt_decompose,
    region_scan,
)
from .simulate import SIGMA_THRESHOLD, DeliveryModel, simulate_pair_state
from .states import PrepParams

_FIG2_CURVES = ("max", "asymptotic", "bell", "a0.1")
_FIG2_COLUMNS = {
    "max": "EF_max_numeric",
    "asymptotic": "EF_asymptotic",
    "bell": "EF_bell",
    "a0.1": "EF_a0.1",
}


@dataclass
class RunConfig:
    """Echo of one CLI invocation: subcommand, validated parameters, output sink."""

    command: str
    params: dict
    out: str | None = None
    fmt: str = "json"

    def as_dict(self) -> dict:
        return {"command": self.command, **self.params}


def _fmt_num(x) -> str:
    return format(float(x), ".12g")


def _round12(obj):
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if not np.isfinite(x) else float(_fmt_num(x))
    return obj


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_json(config: RunConfig, payload: dict) -> None:
    doc = {"version": __version__, "config": config.as_dict()}
    doc.update(payload)
    _write(json.dumps(_round12(doc), indent=2) + "\n", config.out)


def _emit_csv(config: RunConfig, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(row) for row in rows]
    _write("\n".join(lines) + "\n", config.out)


def _cmd_state(args) -> int:
    p = PrepParams(a=args.a, s=args.s)
    config = RunConfig("state", {"a": args.a, "s": args.s}, args.out)
    rho = mapped_state(p)
    x = mapped_xstate(p)
    c = concurrence_xstate(p)
    witness = lhvt_decompose(p)
    _emit_json(
        config,
        {
            "matrix": {"real": rho.real.tolist(), "imag": rho.imag.tolist()},
            "xstate": {"d": list(x.d), "t": x.t},
            "concurrence": c,
            "entanglement_of_formation": entanglement_of_formation(c),
            "fidelity": fidelity(p),
            "horodecki_m": horodecki_m(rho),
            "lhvt": {
                "c": witness.c,
                "sep_diag": list(witness.sep_diag),
                "feasible": witness.feasible,
                "violated_constraints": list(witness.violated_constraints),
                "boundary_degenerate": witness.boundary_degenerate,
            },
        },
    )
    return 0


def _cmd_fig2(args) -> int:
    if not (0.0 < args.s_step < 1.0):
        raise ValueError(f"--s-step must be in (0, 1), got {args.s_step}")
    n = int(round(1.0 / args.s_step))
    if abs(n * args.s_step - 1.0) > 1e-9:
        raise ValueError(f"--s-step must divide 1 evenly, got {args.s_step}")
    curves = [c.strip() for c in args.curves.split(",") if c.strip()]
    unknown = [c for c in curves if c not in _FIG2_CURVES]
    if unknown or not curves:
        raise ValueError(f"--curves must be a subset of {_FIG2_CURVES}, got {args.curves!r}")
    curves = [c for c in _FIG2_CURVES if c in curves]
    config = RunConfig(
        "fig2", {"s_step": args.s_step, "curves": curves}, args.out, fmt="csv"
    )
    s_vals = np.linspace(args.s_step, 1.0, n)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    header = ["S"] + [_FIG2_COLUMNS[c] for c in curves]
    rows = []
    for s in s_vals:
        row = [_fmt_num(s)]
        for curve in curves:
            if curve == "max":
                val = optimize_prep(float(s)).ef_max
            elif curve == "asymptotic":
                val = ef_max_asymptotic(float(s))
            elif curve == "bell":
                val = entanglement_of_formation(concurrence_xstate(PrepParams(inv_sqrt2, float(s))))
            else:
                val = entanglement_of_formation(concurrence_xstate(PrepParams(0.1, float(s))))
            row.append(_fmt_num(val))
        rows.append(row)
    _emit_csv(config, header, rows)
    return 0


def _cmd_fig3(args) -> int:
    workers = int(os.environ.get("ENTMIX_THREADS", "1"))
    config = RunConfig(
        "fig3", {"a_points": args.a_points, "s_points": args.s_points}, args.out, fmt="csv"
    )
    grid = region_scan(args.a_points, args.s_points, workers=workers)
    header = ["a", "S", "EF", "entangled", "chsh", "lhvt"]
    rows = []
    for i, a in enumerate(grid.a):
        for j, s in enumerate(grid.s):
            rows.append(
                [
                    _fmt_num(a),
                    _fmt_num(s),
                    _fmt_num(grid.ef[i, j]),
                    str(int(grid.entangled[i, j])),
                    str(int(grid.chsh[i, j])),
                    str(int(grid.lhvt[i, j])),
                ]
            )
    _emit_csv(config, header, rows)
    return 0


def _cmd_simulate(args) -> int:
    if args.model == "bernoulli":
        if args.s is None:
            raise ValueError("bernoulli model requires --s")
        model = DeliveryModel(kind="bernoulli", s=args.s)
        params = {"model": "bernoulli", "s": args.s}
    else:
        if args.n is None:
            raise ValueError("permutation model requires --n")
        model = DeliveryModel(kind="permutation", n=args.n)
        params = {"model": "permutation", "n": args.n}
    params.update({"a": args.a, "trials": args.trials, "seed": args.seed,
                   "self_test": args.self_test})
    config = RunConfig("simulate", params, args.out)
    report = simulate_pair_state(model, a=args.a, trials=args.trials, seed=args.seed)
    _emit_json(config, {"report": report.to_dict(),
                        "sigma_threshold": SIGMA_THRESHOLD})
    if args.self_test and not report.max_sigma <= SIGMA_THRESHOLD:
        print(
            f"self-test failed: max_sigma = {report.max_sigma:.3f} > {SIGMA_THRESHOLD}",
            file=sys.stderr,
        )
        return 4
    return 0


def _cmd_bounds(args) -> int:
    if not (args.survival or args.chsh or args.eisert):
        raise ValueError("request at least one of --survival, --chsh, --eisert")
    if (args.survival or args.chsh) and args.a is None:
        raise ValueError("--survival/--chsh require --a")
    if args.eisert and args.n is None:
        raise ValueError("--eisert requires --n")
    params = {}
    payload = {}
    if args.survival:
        params["a"] = args.a
        analytic = survival_threshold(args.a)
        payload["survival"] = {
            "a": args.a,
            "threshold": analytic,
            "method": "analytic",
            "bisection_delta": abs(analytic - survival_threshold_bisect(args.a)),
        }
    if args.chsh:
        params["a"] = args.a
        analytic = chsh_boundary(args.a)
        payload["chsh"] = {
            "a": args.a,
            "threshold": analytic,
            "method": "analytic",
            "bisection_delta": abs(analytic - chsh_boundary_bisect(args.a)),
        }
    if args.eisert:
        params["n"] = args.n
        opt = optimize_prep(1.0 / args.n)
        payload["eisert"] = {
            "n": args.n,
            "s": 1.0 / args.n,
            "ef_max": opt.ef_max,
            "lower_bound": eisert_lower_bound(args.n),
        }
    config = RunConfig("bounds", params, args.out)
    _emit_json(config, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entmix",
        description="Entanglement delivered through an unreliable pairing channel: "
        "states, optima, nonlocality regions and Monte Carlo checks.",
    )
    parser.add_argument("--version", action="version", version=f"entmix {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="mapped state and all derived quantities")
    p_state.add_argument("--a", type=float, required=True, help="preparation amplitude")
    p_state.add_argument("--s", type=float, required=True, help="delivery success probability")
    p_state.add_argument("--out", default=None, help="output file (default: stdout)")
    p_state.set_defaults(func=_cmd_state)

    p_fig2 = sub.add_parser("fig2", help="E_F-vs-S curve data (CSV)")
    p_fig2.add_argument("--s-step", type=float, default=0.005, dest="s_step")
    p_fig2.add_argument("--curves", default=",".join(_FIG2_CURVES),
                        help="comma list from: max,asymptotic,bell,a0.1")
    p_fig2.add_argument("--out", default=None)
    p_fig2.set_defaults(func=_cmd_fig2)

    p_fig3 = sub.add_parser("fig3", help="(a, S) region classification data (CSV)")
    p_fig3.add_argument("--a-points", type=int, default=200, dest="a_points")
    p_fig3.add_argument("--s-points", type=int, default=200, dest="s_points")
    p_fig3.add_argument("--out", default=None)
    p_fig3.set_defaults(func=_cmd_fig3)

    p_sim = sub.add_parser("simulate", help="Monte Carlo delivery run vs prediction (JSON)")
    p_sim.add_argument("--model", choices=("bernoulli", "permutation"), required=True)
    p_sim.add_argument("--s", type=float, default=None, help="bernoulli success probability")
    p_sim.add_argument("--n", type=int, default=None, help="permutation customer pairs")
    p_sim.add_argument("--a", type=float, required=True)
    p_sim.add_argument("--trials", type=int, default=1_000_000)
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--self-test", action="store_true", dest="self_test",
                       help=f"exit 4 if any cell deviates by more than {SIGMA_THRESHOLD} sigma")
    p_sim.add_argument("--out", default=None)
    p_sim.set_defaults(func=_cmd_simulate)

    p_bounds = sub.add_parser("bounds", help="survival / CHSH / distillability thresholds (JSON)")
    p_bounds.add_argument("--survival", action="store_true")
    p_bounds.add_argument("--chsh", action="store_true")
    p_bounds.add_argument("--eisert", action="store_true")
    p_bounds.add_argument("--a", type=float, default=None)
    p_bounds.add_argument("--n", type=int, default=None)
    p_bounds.add_argument("--out", default=None)
    p_bounds.set_defaults(func=_cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
