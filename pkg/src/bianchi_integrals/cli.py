"""Command-line surface: catalog, find, verify, simulate, lemma, report.

Outputs are byte-stable: canonical orderings everywhere and no timestamps.
Exit codes: 0 success/pass, 1 usage error, 2 expectation mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import dynamics, engine
from .coefficients import parse_rational
from .multipoly import MultiPoly
from .vectorfields import (
    MODEL_TAGS,
    BianchiModel,
    build_bianchi,
    hamiltonian_integral,
    lie_derivative,
    polynomial_integrals,
    verify_weighted_power_integral,
)

DEFAULT_K_SAMPLES = "0,1/2,2/3,9/10"
DEFAULT_X0 = {"IX": "1,1,1,1,2,3"}
DEFAULT_X0_GENERIC = "1,2,3,1,2,4"

# Theorem statement labels used in the consolidated report.
STATEMENT_OF_MODEL = {
    "I": "(a) completely integrable",
    "II": "(b) polynomial first integral x5-x6, and no additional one",
    "VI0": "(c) no polynomial first integrals",
    "VII0": "(c) no polynomial first integrals",
    "VIII": "(d) no polynomial first integrals",
    "IX": "(d) no polynomial first integrals",
}


class CliParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _parse_k(text: str) -> Optional[Fraction]:
    if text == "symbolic":
        return None
    try:
        k = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return k


def _model(tag: str, k) -> BianchiModel:
    return BianchiModel.from_tag(tag, k)


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------


def cmd_catalog(args) -> int:
    models = []
    for tag in MODEL_TAGS:
        model = _model(tag, args.k)
        X = build_bianchi(model)
        models.append(
            {
                "model": tag,
                "n": list(model.n),
                "k": model.k_text(),
                "components": [c.to_text() for c in X.components],
            }
        )
    if args.format == "text":
        lines = []
        for entry in models:
            lines.append("Bianchi %s  (n=%s, k=%s)" % (entry["model"], entry["n"], entry["k"]))
            for i, comp in enumerate(entry["components"]):
                lines.append("  dx%d/dt = %s" % (i + 1, comp))
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit({"models": models}, args.out)
    return 0


def cmd_find(args) -> int:
    model = _model(args.model, args.k)
    report = engine.degree_sweep(model, args.max_degree)
    _emit(report.to_dict(), args.out)
    return 0 if report.passed else 2


def cmd_verify(args) -> int:
    model = _model(args.model, args.k)
    X = build_bianchi(model)
    checks = []
    ok_all = True
    passed, witness = verify_weighted_power_integral(X, hamiltonian_integral(model))
    checks.append(
        {
            "integral": "(x1*x2*x3)^((k-1)/2) * F",
            "kind": "weighted-power",
            "pass": passed,
            "witness": witness.to_text(),
        }
    )
    ok_all &= passed
    for p in polynomial_integrals(model.tag):
        image = lie_derivative(X, p)
        passed = image.is_zero()
        checks.append(
            {
                "integral": p.to_text(),
                "kind": "polynomial",
                "pass": passed,
                "witness": image.to_text(),
            }
        )
        ok_all &= passed
    _emit(
        {"model": model.tag, "k": model.k_text(), "checks": checks, "pass": bool(ok_all)},
        args.out,
    )
    return 0 if ok_all else 2


def cmd_simulate(args) -> int:
    model = _model(args.model, args.k)
    if model.symbolic:
        sys.stderr.write("error: simulate needs a fixed rational k\n")
        return 1
    x0_text = args.x0 or DEFAULT_X0.get(args.model, DEFAULT_X0_GENERIC)
    x0 = [float(Fraction(v)) for v in x0_text.split(",")]
    if len(x0) != 6:
        sys.stderr.write("error: --x0 needs six comma-separated values\n")
        return 1
    cfg = dynamics.IntegratorConfig(t_end=args.t_end, rel_tol=args.tol, abs_tol=args.tol)
    traj = dynamics.integrate(model, x0, cfg)
    report = dynamics.drift_report(traj, dynamics.standard_invariants(model))
    payload = {
        "model": model.tag,
        "k": model.k_text(),
        "x0": x0_text,
        "t_end": args.t_end,
        "tol": args.tol,
        "drift": report.to_dict(),
    }
    if args.out:
        with open(args.out, "w") as fh:
            dynamics.write_trajectory_csv(traj, fh)
        sidecar = args.out[:-4] if args.out.endswith(".csv") else args.out
        with open(sidecar + ".drift.json", "w") as fh:
            fh.write(json.dumps(payload, indent=2) + "\n")
    else:
        dynamics.write_trajectory_csv(traj, sys.stdout)
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_lemma(args) -> int:
    if args.which == "estrella":
        parts = [parse_rational(v) for v in args.a.split(",")]
        if len(parts) != 3:
            sys.stderr.write("error: --a needs three comma-separated rationals\n")
            return 1
        a1, a2, a3 = parts
        basis = engine.lemma_estrella_solve(a1, a2, a3, args.k, args.degree)
        hypothesis = (a1 - a2) ** 2 + (a1 - a3) ** 2 != 0
        passed = (basis.dimension == 0) if hypothesis else True
        payload = {
            "lemma": "estrella",
            "a": [str(v) for v in (a1, a2, a3)],
            "k": str(args.k),
            "degree": args.degree,
            "hypothesis_holds": hypothesis,
            "dimension": basis.dimension,
            "basis": [p.to_text(engine.TAIL_VAR_NAMES) for p in basis.polynomials],
            "pass": passed,
        }
    elif args.which == "dificil":
        if args.n < 2:
            sys.stderr.write("error: --n must be >= 2\n")
            return 1
        sol = engine.lemma_dificil_solve(args.k, args.n)
        passed = sol.conforms
        payload = {
            "lemma": "dificil",
            "k": str(args.k),
            "n": args.n,
            "solution": sol.to_dict(),
            "pass": passed,
        }
    else:  # sn
        if args.n < 2:
            sys.stderr.write("error: --n must be >= 2\n")
            return 1
        passed = engine.sn_recursion_check(args.n)
        payload = {"lemma": "sn", "n": args.n, "identity_holds": passed, "pass": passed}
    _emit(payload, args.out)
    return 0 if passed else 2


def cmd_report(args) -> int:
    k_samples = [parse_rational(v) for v in args.k_samples.split(",")]
    cells = []
    ok_all = True
    for tag in MODEL_TAGS:
        for k in list(k_samples) + [None]:
            model = _model(tag, k)
            sweep = engine.degree_sweep(model, args.max_degree)
            X = build_bianchi(model)
            hx_ok, _ = verify_weighted_power_integral(X, hamiltonian_integral(model))
            cell = {
                "model": tag,
                "statement": STATEMENT_OF_MODEL[tag],
                "k": model.k_text(),
                "mode": sweep.mode,
                "dimensions": sweep.dimensions,
                "energy_integral_identity": hx_ok,
                "scope": (
                    "proved in the source for all degrees; "
                    "machine-verified up to degree %d" % args.max_degree
                ),
                "pass": sweep.passed and hx_ok,
            }
            if tag in ("I", "II") and k is not None:
                rank = _statement_rank(model)
                cell["independence"] = rank.to_dict()
                cell["pass"] = cell["pass"] and rank.rank == _expected_rank(tag)
            cells.append(cell)
            ok_all &= cell["pass"]
    payload = {
        "m_max": args.max_degree,
        "k_samples": [str(k) for k in k_samples],
        "cells": cells,
        "pass": bool(ok_all),
    }
    _emit(payload, args.out)
    return 0 if ok_all else 2


def _expected_rank(tag: str) -> int:
    return 5 if tag == "I" else 2


def _statement_rank(model: BianchiModel) -> engine.RankResult:
    k = float(model.k)
    x = [MultiPoly.variable(6, i) for i in range(6)]
    if model.tag == "I":
        fields = [
            x[3] - x[4],
            x[3] - x[5],
            dynamics.energy_invariant(model.n, k),
            dynamics.transcendental_invariant_12(k),
            dynamics.transcendental_invariant_23(k),
        ]
    else:
        fields = [
            dynamics.energy_invariant(model.n, k),
            x[4] - x[5],
        ]
    return engine.independence_rank(fields, k=model.k)


# -- entry point ---------------------------------------------------------------


def build_parser() -> CliParser:
    parser = CliParser(prog="bianchi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")

    p = sub.add_parser("catalog", help="dump the six systems in canonical text")
    p.add_argument("--k", type=_parse_k, default=Fraction(1, 2))
    add_common(p)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("find", help="degree sweep for polynomial first integrals")
    p.add_argument("--model", required=True, choices=MODEL_TAGS)
    p.add_argument("--k", type=_parse_k, default=Fraction(1, 2))
    p.add_argument("--max-degree", type=int, default=4)
    add_common(p)
    p.set_defaults(fn=cmd_find)

    p = sub.add_parser("verify", help="exact verification of the known integrals")
    p.add_argument("--model", required=True, choices=MODEL_TAGS)
    p.add_argument("--k", type=_parse_k, default=None,
                   help='rational text or "symbolic" (default: symbolic)')
    add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("simulate", help="integrate an orbit and monitor drift")
    p.add_argument("--model", required=True, choices=MODEL_TAGS)
    p.add_argument("--k", type=_parse_k, default=Fraction(1, 2))
    p.add_argument("--x0", default=None, help="six comma-separated rationals")
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-12)
    add_common(p)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("lemma", help="PDE lemma analyzers")
    p.add_argument("which", choices=["estrella", "dificil", "sn"])
    p.add_argument("--a", default="1,0,0", help="comma-separated rationals")
    p.add_argument("--k", type=_parse_k, default=Fraction(1, 2))
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--n", type=int, default=3)
    add_common(p)
    p.set_defaults(fn=cmd_lemma)

    p = sub.add_parser("report", help="consolidated classification report")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--k-samples", default=DEFAULT_K_SAMPLES)
    add_common(p)
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
