"""ejalab command line.

Exit codes: 0 success, 1 infeasible or failed-axiom verdict, 2 usage or
parse error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .composite import (COMPLEX_KRON, MODEL_KINDS, REAL_KRON, check_dimension_counts,
                        lt_feasible, real_counterexample_model, tensor_construct,
                        verify_axioms)
from .defaults import DEFAULT_SAMPLES, DEFAULT_TOL, default_seed
from .element_file import element_to_json, load_element
from .errors import InfeasibleError, NumericError, UsageError
from .jordan import (AlgebraDescriptor, Matrix, RealLine, Spin, center_and_summands,
                     jordan_product, spectral_decompose)
from .scalars import ScalarKind
from .spec_text import parse_spec

REPORT_SCHEMA = "ejalab-report/1"

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}")
    if not value > 0 or not np.isfinite(value):
        raise argparse.ArgumentTypeError("tolerance must be a positive finite number")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _kind(factor) -> str:
    if isinstance(factor, RealLine):
        return "real_line"
    if isinstance(factor, Spin):
        return "spin"
    return f"{factor.scalar.name.lower()}_matrix"


# -- commands ----------------------------------------------------------------
# Each returns (result dict, text lines, exit code).

def cmd_classify(alg: AlgebraDescriptor, args):
    rows = [{"factor": f.text(), "type": _kind(f), "n": f.dim, "k": f.rank}
            for f in alg.factors]
    center = center_and_summands(alg, args.tol, args.seed)
    found = sorted(s.text() for s in center.summands)
    expected = sorted(f.text() for f in alg.factors)
    result = {
        "algebra": alg.text(), "factors": rows,
        "total_n": alg.dim, "total_k": alg.rank, "simple": len(alg.factors) == 1,
        "center_dim": center.center_dim, "summands_recovered": found,
        "summands_match": found == expected,
    }
    lines = [f"algebra: {alg.text()}", _table(
        ["factor", "type", "n", "k"],
        [[r["factor"], r["type"], r["n"], r["k"]] for r in rows]
        + [["total", "", alg.dim, alg.rank]])]
    lines.append(f"center dimension (computed): {center.center_dim}")
    lines.append(f"summands (computed): {' (+) '.join(found)}")
    if found != expected:
        raise NumericError("computed center decomposition disagrees with the descriptor")
    return result, lines, EXIT_OK


def cmd_lt(alg: AlgebraDescriptor, args):
    report = lt_feasible(alg)
    lines = [f"algebra: {report.algebra}", f"verdict: {report.verdict}", _table(
        ["factor", "n", "k", "feasible", "reason"],
        [[v.factor, v.n, v.k, "yes" if v.feasible else "no", v.reason]
         for v in report.factors])]
    for v in report.factors:
        if v.witness is not None:
            w = v.witness
            header = ["required"] + list(w["candidates"])
            values = [w["dimension_required"]] + list(w["candidates"].values())
            lines.append(f"witness for {v.factor} (rank {w['rank_required']}):")
            lines.append(_table(header, [values], sep=" | "))
    for c in report.caveats:
        lines.append(f"caveat: {c}")
    return report.to_dict(), lines, EXIT_OK if report.feasible else EXIT_VERDICT


def cmd_tensor(alg: AlgebraDescriptor, args):
    model = tensor_construct(alg, args.tol)
    report = check_dimension_counts(model, args.seed, args.tol)
    mark = {True: "ok", False: "FAIL"}
    lines = [
        f"model: {model.kind}",
        f"base: {report.base}",
        f"target: {report.target}",
        f"n: {report.n_target} = {report.n_base}² {mark[report.n_ok]}"
        if report.n_ok else f"n: {report.n_target} != {report.n_base}² FAIL",
        f"k: {report.k_target} = {report.k_base}² {mark[report.k_ok]}"
        if report.k_ok else f"k: {report.k_target} != {report.k_base}² FAIL",
        f"basis image rank: {report.basis_image_rank} / {report.n_base ** 2} "
        f"{mark[report.basis_ok]}",
        f"frame images minimal: {report.frame_images_minimal} / {report.k_base ** 2}",
        f"frame images sum to identity: residual {report.frame_images_sum_residual:.3e}",
    ]
    if not report.applicable:
        lines.append("note: the dimension count applies to matrix factors and spin(3); "
                     "this base has another spin factor, so no verdict is drawn")
    lines.extend(f"note: {n}" for n in model.notes)
    result = {"model": model.kind, "dimension_counts": report.to_dict(), "notes": list(model.notes)}
    failed = report.applicable and not report.passed
    return result, lines, EXIT_VERDICT if failed else EXIT_OK


def _real_model_size(alg: AlgebraDescriptor) -> int:
    if len(alg.factors) == 1:
        f = alg.factors[0]
        if isinstance(f, Spin) and f.n == 2:
            return 2
        if isinstance(f, Matrix) and f.scalar is ScalarKind.REAL:
            return f.k
    raise UsageError("the real-kron model needs a single H(k,R) factor with k >= 2")


def cmd_verify(alg: AlgebraDescriptor, args):
    if args.model == REAL_KRON:
        model = real_counterexample_model(_real_model_size(alg), args.tol)
    else:
        model = tensor_construct(alg, args.tol)
    report = verify_axioms(model, args.samples, args.seed, args.tol, args.threads)
    rows = []
    for name, c in report.checks.items():
        detail = ""
        if name == "C5":
            detail = f"rank {c.detail['span_rank']}/{c.detail['target_dim']}"
        elif "failures" in c.detail:
            detail = f"failures {c.detail['failures']}"
        rows.append([name, "pass" if c.passed else "FAIL", c.checked,
                     f"{c.residual:.3e}", detail])
    lines = [f"model: {report.model}", f"base: {report.base}", f"target: {report.target}",
             _table(["check", "result", "cases", "max residual", "detail"], rows)]
    c5 = report.checks["C5"]
    if not c5.passed:
        lines.append(f"C5: FAIL rank {c5.detail['span_rank']}/{c5.detail['target_dim']}")
    lines.extend(f"note: {n}" for n in report.notes)
    lines.append("verdict: " + ("all axioms hold" if report.all_passed else "axiom failure"))
    return report.to_dict(), lines, EXIT_OK if report.all_passed else EXIT_VERDICT


def cmd_spectral(alg: AlgebraDescriptor, args):
    a = load_element(alg, args.element_file)
    dec = spectral_decompose(a, args.tol, args.seed)
    frame = dec.idempotents
    orth = 0.0
    for i in range(len(frame)):
        for j in range(i + 1, len(frame)):
            orth = max(orth, jordan_product(frame[i], frame[j]).norm())
    total = alg.zero()
    for q in frame:
        total = total + q
    sum_res = (total - alg.identity()).norm()
    result = {
        "algebra": alg.text(),
        "eigenvalues": [float(x) for x in dec.eigenvalues],
        "frame": [element_to_json(q)["factors"] for q in frame],
        "frame_size": len(frame), "rank": alg.rank,
        "reconstruction_residual": dec.reconstruction_residual,
        "orthogonality_residual": orth, "sum_residual": sum_res,
    }
    lines = [f"algebra: {alg.text()}", _table(
        ["j", "eigenvalue", "factor", "idempotent"],
        [[j, f"{lam:.12g}", _support(q), _compact(q)] for j, (lam, q) in enumerate(dec.pairs)])]
    lines.append(f"reconstruction residual: {dec.reconstruction_residual:.3e}")
    lines.append(f"orthogonality residual: {orth:.3e}")
    lines.append(f"sum-to-identity residual: {sum_res:.3e}")
    return result, lines, EXIT_OK


def _support(q) -> str:
    norms = [float(np.linalg.norm(p)) for p in q.parts]
    return q.algebra.factors[int(np.argmax(norms))].text()


def _compact(q) -> str:
    """The nonzero component of a frame member, rounded for display."""
    norms = [float(np.linalg.norm(p)) for p in q.parts]
    part = element_to_json(q)["factors"][int(np.argmax(norms))]

    def fmt(x):
        if isinstance(x, list):
            return "[" + ", ".join(fmt(y) for y in x) + "]"
        return "0" if abs(x) < 1e-12 else f"{x:.6g}"
    return fmt(part)


COMMANDS = {
    "classify": (cmd_classify, "per-factor type, dimension and rank"),
    "lt": (cmd_lt, "decide whether a locally tomographic composite can exist"),
    "tensor": (cmd_tensor, "build the complex Kronecker model and count dimensions"),
    "verify": (cmd_verify, "check the composite axioms on a tensor model"),
    "spectral": (cmd_spectral, "spectral decomposition of an element read from JSON"),
}


# -- output ------------------------------------------------------------------

def _table(header, rows, sep="  ") -> str:
    cells = [[str(x) for x in header]] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    out = []
    for n, r in enumerate(cells):
        out.append(sep.join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if n == 0 and sep == "  ":
            out.append(sep.join("-" * w for w in widths))
    return "\n".join(out)


def _echo(args) -> dict:
    echo = {"name": args.command, "spec": args.spec, "tol": args.tol, "seed": args.seed,
            "samples": args.samples}
    if args.command == "verify":
        echo["model"] = args.model
    if args.command == "spectral":
        echo["element_file"] = args.element_file
    return echo


def render_report(args, result, exit_code, error=None) -> str:
    doc = {
        "schema": REPORT_SCHEMA,
        "tool": {"name": "ejalab", "version": __version__},
        "command": _echo(args),
        "seed": args.seed,
        "tolerance": args.tol,
        "exit_code": exit_code,
        "result": result,
    }
    if error is not None:
        doc["error"] = error
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                        help="numerical tolerance (default 1e-9)")
    common.add_argument("--seed", type=_seed, default=None,
                        help="RNG seed, decimal or 0x hex (default EJALAB_SEED or 0x454A4131)")
    common.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES,
                        help="sample count for verify (default 200)")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker threads for verification sweeps")
    common.add_argument("--json", action="store_true", help="print a JSON report")

    parser = _Parser(prog="ejalab",
                     description="Euclidean Jordan algebras, their logics and composites.")
    parser.add_argument("--version", action="version", version=f"ejalab {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.add_argument("spec", help='algebra, e.g. "H(3,C) (+) spin(4) (+) R"')
        if name == "verify":
            p.add_argument("--model", choices=MODEL_KINDS, default=COMPLEX_KRON)
        if name == "spectral":
            p.add_argument("element_file", help="JSON element file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    if args.seed is None:
        try:
            args.seed = default_seed()
        except ValueError:
            print("error: EJALAB_SEED is not an integer", file=sys.stderr)
            return EXIT_USAGE

    run = COMMANDS[args.command][0]
    try:
        alg = parse_spec(args.spec)
        result, lines, code = run(alg, args)
        error = None
    except UsageError as exc:
        result, lines, code, error = None, [], EXIT_USAGE, ("usage", exc)
    except InfeasibleError as exc:
        result, lines, code, error = None, [], EXIT_VERDICT, ("infeasible", exc)
    except NumericError as exc:
        result, lines, code, error = None, [], EXIT_NUMERIC, ("numeric", exc)

    if error is not None:
        print(f"error: {error[1]}", file=sys.stderr)
    if args.json:
        err = None if error is None else {"kind": error[0], "message": str(error[1])}
        print(render_report(args, result, code, err))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
