"""Command line front end.

Reads StateSpec JSON files, dispatches to the analysis pipelines or the
decompositions, and emits text or JSON reports.  Exit codes: 0 success,
1 internal numeric failure, 2 parse/schema error, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import criteria as crit
from . import decomp, report
from .criteria import DensityMatrix
from .fock import (
    FormalDensity,
    Statistics,
    assemble_matrix,
    exchange_col_modes,
    pair_state_terms,
    partial_transpose_terms,
    phc_terms,
)

KINDS = ("boson_pair", "fermion_pair", "distinguishable_pure", "density_matrix")
_SPEC_FIELDS = {
    "kind",
    "coefficients",
    "coefficient_matrix",
    "matrix",
    "dims",
    "normalized",
}


class StateSpecError(Exception):
    """Malformed or inconsistent input file; maps to exit code 2."""


@dataclass
class StateSpec:
    kind: str
    coefficients: np.ndarray | None = None
    coefficient_matrix: np.ndarray | None = None
    matrix: np.ndarray | None = None
    dims: tuple[int, int] | None = None
    normalized: bool | None = None


def _parse_complex(value, field: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise StateSpecError(f"{field}: complex values must be [re, im] number pairs")
    z = complex(float(value[0]), float(value[1]))
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise StateSpecError(f"{field}: values must be finite")
    return z


def _parse_vector(value, field: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise StateSpecError(f"{field}: expected a nonempty array")
    return np.array([_parse_complex(v, field) for v in value], dtype=complex)


def _parse_matrix(value, field: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise StateSpecError(f"{field}: expected a nonempty array of rows")
    rows = []
    for row in value:
        if not isinstance(row, list) or not row:
            raise StateSpecError(f"{field}: each row must be a nonempty array")
        rows.append([_parse_complex(v, field) for v in row])
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise StateSpecError(f"{field}: rows must have equal length")
    return np.array(rows, dtype=complex)


def parse_state_spec(data) -> StateSpec:
    """Validate the JSON object shape; raises StateSpecError on schema issues
    and ValueError on physical-invariant violations."""
    if not isinstance(data, dict):
        raise StateSpecError("top level: expected an object")
    unknown = set(data) - _SPEC_FIELDS
    if unknown:
        raise StateSpecError(f"unknown field {sorted(unknown)[0]!r}")
    kind = data.get("kind")
    if kind not in KINDS:
        raise StateSpecError(f"kind: expected one of {', '.join(KINDS)}, got {kind!r}")

    payload = [f for f in ("coefficients", "coefficient_matrix", "matrix") if f in data]
    if len(payload) != 1:
        raise StateSpecError(
            "exactly one of coefficients, coefficient_matrix, matrix is required"
        )

    spec = StateSpec(kind=kind)
    if "coefficients" in data:
        spec.coefficients = _parse_vector(data["coefficients"], "coefficients")
    if "coefficient_matrix" in data:
        spec.coefficient_matrix = _parse_matrix(
            data["coefficient_matrix"], "coefficient_matrix"
        )
    if "matrix" in data:
        spec.matrix = _parse_matrix(data["matrix"], "matrix")
    if "normalized" in data:
        if not isinstance(data["normalized"], bool):
            raise StateSpecError("normalized: expected a boolean")
        spec.normalized = data["normalized"]
    if "dims" in data:
        dims = data["dims"]
        if (
            not isinstance(dims, list)
            or len(dims) != 2
            or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)
        ):
            raise StateSpecError("dims: expected [dim_a, dim_b] positive integers")
        spec.dims = (dims[0], dims[1])

    _check_kind_consistency(spec)
    return spec


def _check_kind_consistency(spec: StateSpec) -> None:
    if spec.kind == "density_matrix":
        if spec.matrix is None:
            raise StateSpecError("density_matrix kind requires the matrix field")
        if spec.dims is None:
            raise StateSpecError("density_matrix kind requires dims")
        if spec.matrix.shape[0] != spec.matrix.shape[1]:
            raise StateSpecError("matrix: must be square")
        if spec.dims[0] * spec.dims[1] != spec.matrix.shape[0]:
            raise StateSpecError(
                f"dims: product {spec.dims[0] * spec.dims[1]} does not match "
                f"matrix size {spec.matrix.shape[0]}"
            )
        return
    if spec.matrix is not None:
        raise StateSpecError(f"matrix field requires kind density_matrix, got {spec.kind}")

    c = spec.coefficient_matrix
    if spec.kind == "boson_pair":
        if spec.coefficients is not None and np.abs(spec.coefficients.imag).max() > 0:
            raise ValueError("boson coefficients must be real")
        if c is not None:
            if c.shape[0] != c.shape[1]:
                raise StateSpecError("coefficient_matrix: must be square for boson_pair")
            if np.abs(c - c.T).max() > 1e-10 * max(1.0, float(np.abs(c).max())):
                raise ValueError("boson coefficient_matrix must be symmetric")
    elif spec.kind == "fermion_pair":
        if c is not None:
            if c.shape[0] != c.shape[1]:
                raise StateSpecError("coefficient_matrix: must be square for fermion_pair")
            if np.abs(c + c.T).max() > 1e-10 * max(1.0, float(np.abs(c).max())):
                raise ValueError("fermion coefficient_matrix must be antisymmetric")
    elif spec.kind == "distinguishable_pure":
        if spec.coefficients is not None and np.abs(spec.coefficients.imag).max() > 0:
            raise ValueError("distinguishable coefficients must be real")

    if spec.dims is not None:
        n = len(spec.coefficients) if spec.coefficients is not None else c.shape[0]
        if spec.dims != (n, n):
            raise StateSpecError(f"dims: expected [{n}, {n}] for this state")
    if spec.normalized:
        if spec.coefficients is not None:
            norm_sq = float(np.sum(np.abs(spec.coefficients) ** 2))
        else:
            norm_sq = float(np.sum(np.abs(c) ** 2))
        if abs(norm_sq - 1.0) > 1e-9:
            raise ValueError(
                f"state flagged normalized but squared norm is {norm_sq!r}"
            )


def serialize_state_spec(spec: StateSpec) -> dict:
    doc: dict = {"kind": spec.kind}
    if spec.coefficients is not None:
        doc["coefficients"] = [report.complex_pair(v) for v in spec.coefficients]
    if spec.coefficient_matrix is not None:
        doc["coefficient_matrix"] = report.matrix_rows(spec.coefficient_matrix)
    if spec.matrix is not None:
        doc["matrix"] = report.matrix_rows(spec.matrix)
    if spec.dims is not None:
        doc["dims"] = [spec.dims[0], spec.dims[1]]
    if spec.normalized is not None:
        doc["normalized"] = spec.normalized
    return doc


def load_state_spec(path: str) -> StateSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StateSpecError(f"{path}: {exc}") from exc
    try:
        data = json.loads(
            text,
            parse_constant=lambda name: (_ for _ in ()).throw(
                StateSpecError(f"{path}: non-finite constant {name!r} not allowed")
            ),
        )
    except json.JSONDecodeError as exc:
        raise StateSpecError(f"{path}: invalid JSON ({exc})") from exc
    return parse_state_spec(data)


def _decompose_spec(spec: StateSpec):
    """Decomposition matching the kind; requires coefficient_matrix."""
    if spec.coefficient_matrix is None:
        raise StateSpecError("decompose requires the coefficient_matrix field")
    if spec.kind == "boson_pair":
        return decomp.takagi_decompose(spec.coefficient_matrix)
    if spec.kind == "fermion_pair":
        return decomp.slater_decompose(spec.coefficient_matrix)
    if spec.kind == "distinguishable_pure":
        return decomp.schmidt_decompose(spec.coefficient_matrix)
    raise StateSpecError(f"kind {spec.kind} has no coefficient decomposition")


def _pipeline_coefficients(form) -> np.ndarray:
    """Nonzero canonical coefficients, magnitude descending."""
    if isinstance(form, decomp.SchmidtForm):
        return form.coefficients[: form.rank]
    if isinstance(form, decomp.TakagiForm):
        d = form.coefficients
        rank = int(np.count_nonzero(d > decomp.rank_tolerance(d)))
        return d[:rank]
    return form.coefficients[: form.rank]


def analyze_spec(
    spec: StateSpec,
    criteria_names: tuple[str, ...] = crit.MATRIX_CRITERIA,
    tol: float | None = None,
) -> crit.AnalysisReport:
    if spec.kind == "density_matrix":
        rho = DensityMatrix(
            spec.matrix, spec.dims[0], spec.dims[1], bool(spec.normalized)
        )
        names = tuple(n for n in criteria_names if n != "phc")
        return crit.density_matrix_report(rho, names, tol)

    decomposition = None
    if spec.coefficients is not None:
        coeffs = spec.coefficients
    else:
        decomposition = _decompose_spec(spec)
        coeffs = _pipeline_coefficients(decomposition)
    if spec.kind == "boson_pair":
        result = crit.boson_pipeline(coeffs.real, criteria_names, tol)
    elif spec.kind == "fermion_pair":
        result = crit.fermion_pipeline(coeffs, criteria_names, tol)
    else:
        result = crit.distinguishable_pipeline(coeffs.real, criteria_names, tol)
    result.decomposition = decomposition
    return result


def transform_spec(spec: StateSpec, operation: str) -> np.ndarray:
    if spec.kind == "density_matrix":
        if operation == "pt":
            return crit.partial_transpose_matrix(spec.matrix, *spec.dims)
        if operation == "realign":
            return crit.realign_matrix(spec.matrix, *spec.dims)
        raise ValueError(f"operation {operation!r} needs a term-level state kind")

    statistics = {
        "boson_pair": Statistics.BOSON,
        "fermion_pair": Statistics.FERMION,
        "distinguishable_pure": Statistics.DISTINGUISHABLE,
    }[spec.kind]
    if spec.coefficients is not None:
        coeffs = spec.coefficients
    else:
        coeffs = _pipeline_coefficients(_decompose_spec(spec))
    n = len(coeffs)
    fd = FormalDensity(statistics, n, pair_state_terms(coeffs))
    if operation == "pt":
        return assemble_matrix(partial_transpose_terms(fd))
    if operation == "phc":
        return assemble_matrix(phc_terms(fd))
    if operation == "symmetrize":
        return assemble_matrix(exchange_col_modes(fd))
    if operation == "realign":
        return crit.realign_matrix(assemble_matrix(fd), n, n)
    raise StateSpecError(f"unknown operation {operation!r}")


def _criteria_arg(value: str) -> tuple[str, ...]:
    names = tuple(v.strip() for v in value.split(",") if v.strip())
    for name in names:
        if name not in crit.MATRIX_CRITERIA:
            raise argparse.ArgumentTypeError(
                f"unknown criterion {name!r} (choose from {', '.join(crit.MATRIX_CRITERIA)})"
            )
    if not names:
        raise argparse.ArgumentTypeError("empty criteria list")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepkit",
        description="Separability analysis for small bipartite quantum states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--output", metavar="PATH", help="write output to PATH instead of stdout")
        p.add_argument(
            "--format",
            choices=("text", "json"),
            default=None,
            help="output format (default: text on a terminal, json otherwise)",
        )

    p_an = sub.add_parser("analyze", help="run the separability analysis for a state")
    p_an.add_argument("inputs", nargs="+", metavar="FILE")
    p_an.add_argument(
        "--criteria",
        type=_criteria_arg,
        default=crit.MATRIX_CRITERIA,
        help="comma-separated subset of ppt,det,realign,phc (default: all applicable)",
    )
    p_an.add_argument("--tol", type=float, default=None, help="override criterion tolerances")
    p_an.add_argument(
        "--emit-matrices", action="store_true", help="include derived matrices in the report"
    )
    p_an.add_argument("--quiet", action="store_true", help="verdict-only output")
    output_flags(p_an)

    p_de = sub.add_parser("decompose", help="Schmidt/Takagi/Slater decomposition")
    p_de.add_argument("inputs", nargs="+", metavar="FILE")
    output_flags(p_de)

    p_tr = sub.add_parser("transform", help="apply one operator transform")
    p_tr.add_argument(
        "operation", choices=("pt", "phc", "symmetrize", "realign"), metavar="OPERATION"
    )
    p_tr.add_argument("input", metavar="FILE")
    p_tr.add_argument("--output", metavar="PATH")
    return parser


def _resolve_format(fmt: str | None) -> str:
    if fmt is not None:
        return fmt
    return "text" if sys.stdout.isatty() else "json"


def _run(args: argparse.Namespace) -> str:
    if args.command == "analyze":
        fmt = _resolve_format(args.format)
        chunks = []
        for path in args.inputs:
            spec = load_state_spec(path)
            result = analyze_spec(spec, args.criteria, args.tol)
            doc = report.analysis_document(
                result, serialize_state_spec(spec), args.emit_matrices
            )
            if fmt == "json":
                chunks.append(report.render_json(doc))
            else:
                chunks.append(report.render_text(doc, quiet=args.quiet))
        return "".join(chunks)

    if args.command == "decompose":
        fmt = _resolve_format(args.format)
        chunks = []
        for path in args.inputs:
            spec = load_state_spec(path)
            form = _decompose_spec(spec)
            doc = {
                "schema": report.SCHEMA_VERSION,
                "kind": spec.kind,
                "input": serialize_state_spec(spec),
                "decomposition": report.decomposition_document(form),
            }
            if fmt == "json":
                chunks.append(report.render_json(doc))
            else:
                chunks.append(report.render_text(doc))
        return "".join(chunks)

    spec = load_state_spec(args.input)
    matrix = transform_spec(spec, args.operation)
    return report.render_json(report.matrix_rows(matrix))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _run(args)
    except StateSpecError as exc:
        print(f"sepkit: error: {exc}", file=sys.stderr)
        return 2
    except np.linalg.LinAlgError as exc:
        print(f"sepkit: numeric failure: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"sepkit: numeric failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"sepkit: invariant violation: {exc}", file=sys.stderr)
        return 3
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
