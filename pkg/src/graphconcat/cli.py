"""Command-line front end.

Exit codes: 0 success, 1 verification or cross-check failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

import numpy as np

from graphconcat import recipes
from graphconcat.algebra import FieldError, row_space_equal
from graphconcat.codes import ClassicalCode, CodeError, CwsCode, code_graph
from graphconcat.concat import (
    ConcatError,
    check_concatenation_structure,
    concat_classical,
    concat_codes,
    gcqc,
    theorem1_copy_major,
)
from graphconcat.distance import (
    DEFAULT_BUDGET,
    DistanceBudgetError,
    DistanceReport,
    kl_distance,
    logical_weight_upper_bound,
    stabilizer_distance_coset,
    undetectable_weight_search,
    witness_to_label,
)
from graphconcat.graph import GlcMove, GraphError, LabeledGraph, export_dot, glc
from graphconcat.oracle import (
    check_codeword_independence,
    code_space,
    concat_encoder_distance,
    graph_code_encoder_distance,
)
from graphconcat.simulator import PROJECTOR_TOL, SimulationError
from graphconcat.specio import (
    CodeSpec,
    SpecError,
    code_from_doc,
    code_to_doc,
    gcqc_from_doc,
    gcqc_to_doc,
    graph_from_doc,
    graph_to_doc,
    read_json,
    write_json,
)
from graphconcat.stabilizer import StabilizerError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

INPUT_ERRORS = (SpecError, CodeError, FieldError, GraphError, ConcatError, StabilizerError, OSError, json.JSONDecodeError)


class VerificationFailure(Exception):
    """A cross-check or verification did not pass."""


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_code(path: str) -> CodeSpec:
    return code_from_doc(read_json(path))


def _emit(doc: dict, path: str | None) -> None:
    text = write_json(doc, path)
    if path is None:
        _out(text)


def _write_dot(g: LabeledGraph, path: str, roles: Sequence[str] | None = None, labels: Sequence[str] | None = None) -> None:
    Path(path).write_text(export_dot(g, roles, labels), encoding="utf-8")


# -- concat ------------------------------------------------------------------------


def cmd_concat(args: argparse.Namespace) -> int:
    inner = _load_code(args.inner).code
    outer = _load_code(args.outer).code
    if args.method == "theorem1":
        graph = theorem1_copy_major(inner, outer)
        classical = concat_classical(inner.classical, outer.classical, outer.block_size)
        spec = CodeSpec(CwsCode(graph, classical))
    else:
        result = concat_codes(inner, outer)
        if args.method == "both":
            closed = theorem1_copy_major(inner, outer)
            if closed != result.code.graph:
                raise VerificationFailure("GLC path and closed form disagree")
        spec = CodeSpec(result.code, result.retained_input_graph if args.keep_inputs else None)
    _emit(code_to_doc(spec), args.output)
    if args.dot:
        g = spec.with_inputs.graph if spec.with_inputs is not None else spec.code.graph
        roles = spec.with_inputs.roles if spec.with_inputs is not None else None
        _write_dot(g, args.dot, roles)
    return EXIT_OK


# -- gcqc --------------------------------------------------------------------------


def cmd_gcqc(args: argparse.Namespace) -> int:
    inner, outers = gcqc_from_doc(read_json(args.spec))
    result = gcqc(inner.code, inner.chain, outers)  # type: ignore[arg-type]
    if args.verify:
        dist = concat_encoder_distance(result.code, inner.code, outers, inner.chain)
        if dist > PROJECTOR_TOL:
            raise VerificationFailure(f"encoder image differs from the code space (distance {dist:.3g})")
        sys.stderr.write(f"simulator check passed (projector distance {dist:.2e})\n")
    spec = CodeSpec(result.code, result.retained_input_graph if args.keep_inputs else None)
    _emit(code_to_doc(spec), args.output)
    if args.dot:
        _write_dot(result.encoding.graph, args.dot, result.encoding.roles)  # type: ignore[union-attr]
    return EXIT_OK


# -- distance ----------------------------------------------------------------------


def _report_line(report: DistanceReport, p: int) -> str:
    line = str(report)
    if report.witness is not None:
        line += f"  (witness {witness_to_label(report.witness, p)})"
    return line


def cmd_distance(args: argparse.Namespace) -> int:
    spec = _load_code(args.code)
    code = spec.code
    method = args.method
    if method == "kl":
        d = kl_distance(code_space(code), code.p)
        _out(f"d = {d}  (Knill-Laflamme)")
        return EXIT_OK
    if not code.classical.is_linear:
        raise SpecError("stabilizer distance methods need a linear classical code; use --method kl")
    mats = code.matrices()
    if method == "coset":
        report = stabilizer_distance_coset(mats, budget=args.budget, threads=args.threads)
        _out(_report_line(report, code.p))
    elif method == "weight_search":
        if args.max_weight is None:
            raise SpecError("--max-weight is required for weight_search")
        report = undetectable_weight_search(mats, args.max_weight, budget=args.budget)
        _out(_report_line(report, code.p))
    elif method == "logical_bound":
        if not (args.inner and args.outer):
            raise SpecError("--inner and --outer are required for logical_bound")
        inner = _load_code(args.inner).code.matrices()
        outer = _load_code(args.outer).code.matrices()
        report = logical_weight_upper_bound(inner, outer, mats, budget=args.budget)
        _out(_report_line(report, code.p))
    else:
        raise SpecError(f"unknown method {method!r}")
    return EXIT_OK


# -- verify ------------------------------------------------------------------------


def _verify_gcqc(doc: dict, level: str) -> int:
    try:
        inner, outers = gcqc_from_doc(doc)
        result = gcqc(inner.code, inner.chain, outers)  # type: ignore[arg-type]
    except SpecError:
        raise
    except (CodeError, FieldError, GraphError, ConcatError, StabilizerError) as exc:
        raise VerificationFailure(f"invalid GCQC spec: {exc}") from exc
    if level == "oracle":
        dist = concat_encoder_distance(result.code, inner.code, outers, inner.chain)
        if dist > PROJECTOR_TOL:
            raise VerificationFailure(f"simulated encoder image differs from the code space (distance {dist:.3g})")
        _out(f"ok: oracle check passed (projector distance {dist:.2e})")
    else:
        _out(f"ok: GCQC spec builds a code with n={result.code.n}, K={result.code.K}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    doc = read_json(args.code)
    if isinstance(doc, dict) and "inner" in doc and "outers" in doc:
        return _verify_gcqc(doc, args.level)
    try:
        spec = code_from_doc(doc)
    except (SpecError, OSError, json.JSONDecodeError):
        raise
    except (CodeError, FieldError, GraphError, ConcatError, StabilizerError) as exc:
        # the document parsed but describes an invalid object
        raise VerificationFailure(f"invalid code: {exc}") from exc
    code = spec.code
    try:
        if code.classical.is_linear:
            code.matrices().check()
        if spec.chain is not None:
            gen = code.classical.generators
            if gen is None or not row_space_equal(spec.chain.levels[0], gen):
                raise VerificationFailure("chain top level does not match the classical code")
    except (StabilizerError, CodeError) as exc:
        raise VerificationFailure(str(exc)) from exc
    if args.level == "oracle":
        if args.inner or args.outer:
            if not (args.inner and args.outer):
                raise SpecError("--inner and --outer go together")
            inner = _load_code(args.inner).code
            outer = _load_code(args.outer).code
            dist = concat_encoder_distance(code, inner, [outer])
        elif code.classical.is_linear:
            dist = graph_code_encoder_distance(code)
        else:
            check_codeword_independence(code)
            dist = 0.0
        if dist > PROJECTOR_TOL:
            raise VerificationFailure(f"simulated encoder image differs from the code space (distance {dist:.3g})")
        _out(f"ok: oracle check passed (projector distance {dist:.2e})")
    else:
        _out("ok: structural checks passed")
    return EXIT_OK


# -- glc ---------------------------------------------------------------------------


def parse_support(text: str, n: int, p: int) -> tuple[int, ...]:
    """"j:a,k:b" -> support vector with v_j = a, v_k = b; a bare "j" means label 1."""
    v = [0] * n
    if text.strip():
        for item in text.split(","):
            j, _, a = item.strip().partition(":")
            try:
                idx, val = int(j), int(a) if a else 1
            except ValueError:
                raise SpecError(f"bad support entry {item!r}") from None
            if not 0 <= idx < n:
                raise SpecError(f"support vertex {idx} out of range")
            v[idx] = val % p
    return tuple(v)


def cmd_glc(args: argparse.Namespace) -> int:
    doc = read_json(args.graph)
    p = int(doc.get("p", 2))
    g = graph_from_doc(doc["graph"] if "graph" in doc else doc, p)
    move = GlcMove(args.vertex, parse_support(args.support, g.n, p))
    h = glc(g, move)
    _emit({"p": p, "graph": graph_to_doc(h)}, args.output)
    if args.dot:
        _write_dot(h, args.dot)
    return EXIT_OK


# -- dot ---------------------------------------------------------------------------


def cmd_dot(args: argparse.Namespace) -> int:
    spec = _load_code(args.code)
    if spec.with_inputs is not None:
        g, roles = spec.with_inputs.graph, spec.with_inputs.roles
    else:
        g, roles = spec.code.graph, None
    text = export_dot(g, roles, spec.labels)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        _out(text)
    return EXIT_OK


# -- recipes -----------------------------------------------------------------------


def _with_inputs(code: CwsCode) -> CodeSpec:
    return CodeSpec(code, code_graph(code))


RECIPES: dict[str, Callable[[], dict]] = {
    "triangle": lambda: code_to_doc(_with_inputs(recipes.triangle_code())),
    "fig4-inner": lambda: code_to_doc(_with_inputs(recipes.two_qubit_inner_code())),
    "pentagon": lambda: code_to_doc(_with_inputs(recipes.pentagon_code())),
    "steane": lambda: code_to_doc(_with_inputs(recipes.steane_cube_code())),
    "code422": lambda: code_to_doc(_with_inputs(recipes.star_422_code())),
    "fig10-outer": lambda: code_to_doc(recipes.fig10_outer()),
    "fig11": lambda: gcqc_to_doc(
        CodeSpec(recipes.star_422_code(), chain=recipes.fig11_chain()), recipes.fig11_outers()
    ),
}


def cmd_recipe(args: argparse.Namespace) -> int:
    if args.name == "list":
        _out("\n".join(sorted(RECIPES)))
        return EXIT_OK
    if args.name not in RECIPES:
        raise SpecError(f"unknown recipe {args.name!r}; choose from {', '.join(sorted(RECIPES))}")
    _emit(RECIPES[args.name](), args.output)
    return EXIT_OK


# -- randomized dual-path check ----------------------------------------------------


def random_graph(n: int, p: int, rng: np.random.Generator, density: float = 0.5) -> LabeledGraph:
    upper = np.triu(rng.integers(1, p, size=(n, n)) * (rng.random((n, n)) < density), 1)
    return LabeledGraph(upper + upper.T, p)


def random_inner_outer(rng: np.random.Generator, p: int) -> tuple[CwsCode, CwsCode]:
    n = int(rng.integers(1, 7))
    n_out = int(rng.integers(1, 6))
    row = rng.integers(0, p, size=n)
    row[0] = 1
    inner = CwsCode(random_graph(n, p, rng), ClassicalCode(p, n, generators=row.reshape(1, -1)))
    k_out = int(rng.integers(1, n_out + 1))
    gen = np.hstack([np.eye(k_out, dtype=np.int64), rng.integers(0, p, size=(k_out, n_out - k_out))])
    outer = CwsCode(random_graph(n_out, p, rng), ClassicalCode(p, n_out, generators=gen))
    return inner, outer


def cmd_crosscheck(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    failures = 0
    for trial in range(args.trials):
        p = int(rng.choice([2, 3, 5]))
        inner, outer = random_inner_outer(rng, p)
        result = concat_codes(inner, outer)
        if result.code.graph != theorem1_copy_major(inner, outer):
            failures += 1
            sys.stderr.write(f"trial {trial}: paths disagree (p={p})\n")
            continue
        if inner.n > 0:
            check_concatenation_structure(result.code.graph, inner.graph, inner.classical.generators.array[0], outer.graph)  # type: ignore[union-attr]
    _out(f"{args.trials - failures}/{args.trials} instances agree")
    if failures:
        raise VerificationFailure(f"{failures} instances disagree")
    return EXIT_OK


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphconcat", description="Graph concatenation of CWS codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("concat", help="concatenate an inner and an outer code")
    p.add_argument("inner")
    p.add_argument("outer")
    p.add_argument("--method", choices=["glc", "theorem1", "both"], default="glc")
    p.add_argument("-o", "--output")
    p.add_argument("--dot", help="write the resulting graph as DOT")
    p.add_argument("--keep-inputs", action="store_true", help="keep the input vertices (linear outer codes)")
    p.set_defaults(func=cmd_concat)

    p = sub.add_parser("gcqc", help="build a generalized concatenated code")
    p.add_argument("spec")
    p.add_argument("-o", "--output")
    p.add_argument("--verify", action="store_true", help="compare against the simulated encoder")
    p.add_argument("--dot", help="write the encoding graph as DOT")
    p.add_argument("--keep-inputs", action="store_true")
    p.set_defaults(func=cmd_gcqc)

    p = sub.add_parser("distance", help="compute or bound the minimum distance")
    p.add_argument("code")
    p.add_argument("--method", choices=["coset", "weight_search", "logical_bound", "kl"], default="coset")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--inner", help="inner code spec (logical_bound)")
    p.add_argument("--outer", help="outer code spec (logical_bound)")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("verify", help="check a code spec")
    p.add_argument("code")
    p.add_argument("--level", choices=["fast", "oracle"], default="fast")
    p.add_argument("--inner", help="inner code spec: check against the concatenated encoder")
    p.add_argument("--outer", help="outer code spec: check against the concatenated encoder")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("glc", help="apply a generalized local complementation")
    p.add_argument("graph")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--support", default="", help='labels as "j:a,k:b"')
    p.add_argument("-o", "--output")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_glc)

    p = sub.add_parser("dot", help="export a code graph as DOT")
    p.add_argument("code")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("recipe", help="write a spec for one of the worked examples")
    p.add_argument("name", help='recipe name, or "list"')
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_recipe)

    p = sub.add_parser("crosscheck", help="random GLC vs closed-form comparison")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except VerificationFailure as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_FAIL
    except (DistanceBudgetError, SimulationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
