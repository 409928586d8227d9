"""Report documents and their serializations.

JSON output is rendered by a small emitter rather than ``json.dumps`` so that
every float is written the same way on every run: 17 significant digits,
lowercase scientific notation.  Identical inputs therefore produce
byte-identical reports, which the golden-file tests rely on.
"""

from __future__ import annotations

import numpy as np

from .criteria import AnalysisReport
from .decomp import SchmidtForm, SlaterForm, TakagiForm, rank_tolerance

SCHEMA_VERSION = 1


def format_float(x: float) -> str:
    return f"{float(x):.16e}"


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_rows(m: np.ndarray) -> list:
    return [[complex_pair(v) for v in row] for row in np.asarray(m, dtype=complex)]


def render_json(value) -> str:
    """Deterministic JSON with fixed float formatting; dict order preserved."""
    out: list[str] = []
    _emit(value, out, 0)
    out.append("\n")
    return "".join(out)


def _emit(value, out: list[str], depth: int) -> None:
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(format_float(value))
    elif isinstance(value, (complex, np.complexfloating)):
        _emit(complex_pair(value), out, depth)
    elif isinstance(value, str):
        out.append(_escape(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(value.items()):
            out.append(f"{inner}{_escape(str(k))}: ")
            _emit(v, out, depth + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple, np.ndarray)):
        items = list(value)
        if not items:
            out.append("[]")
            return
        flat = all(
            isinstance(v, (int, float, complex, np.integer, np.floating, np.complexfloating))
            and not isinstance(v, bool)
            for v in items
        )
        if flat:
            out.append("[")
            for i, v in enumerate(items):
                _emit(v, out, depth)
                if i < len(items) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, v in enumerate(items):
            out.append(inner)
            _emit(v, out, depth + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(value)!r}")


def _escape(s: str) -> str:
    import json

    return json.dumps(s, ensure_ascii=True)


def decomposition_document(form) -> dict | None:
    if form is None:
        return None
    if isinstance(form, SchmidtForm):
        return {
            "type": "schmidt",
            "coefficients": [complex_pair(v) for v in form.coefficients],
            "rank": form.rank,
        }
    if isinstance(form, TakagiForm):
        d = form.coefficients
        rank = int(np.count_nonzero(d > rank_tolerance(d)))
        return {
            "type": "takagi",
            "coefficients": [complex_pair(v) for v in d],
            "rank": rank,
        }
    if isinstance(form, SlaterForm):
        return {
            "type": "slater",
            "coefficients": [complex_pair(v) for v in form.coefficients],
            "rank": form.rank,
        }
    raise TypeError(f"unknown decomposition {type(form)!r}")


def analysis_document(
    report: AnalysisReport, input_echo: dict, emit_matrices: bool = False
) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": report.kind,
        "description": report.description,
        "input": input_echo,
        "traces": {k: float(v) for k, v in report.traces.items()},
        "verdicts": [
            {
                "criterion": v.criterion,
                "verdict": v.verdict,
                "conclusive": v.conclusive,
                "witness": float(v.witness),
                "note": v.note,
            }
            for v in report.verdicts
        ],
        "determinants": {k: complex_pair(v) for k, v in report.determinants.items()},
        "eigenvalues": {
            k: [float(x) for x in v] for k, v in report.eigenvalues.items()
        },
        "residuals": {k: float(v) for k, v in report.residuals.items()},
        "decomposition": decomposition_document(report.decomposition),
        "notes": list(report.notes),
    }
    if emit_matrices:
        doc["matrices"] = {k: matrix_rows(v) for k, v in report.matrices.items()}
    return doc


def render_text(doc: dict, quiet: bool = False) -> str:
    lines: list[str] = []
    verdicts = doc.get("verdicts", [])
    if quiet:
        for v in verdicts:
            lines.append(f"{v['criterion']}: {v['verdict']}")
        return "\n".join(lines) + "\n"

    lines.append(f"kind: {doc['kind']}")
    if "description" in doc:
        lines.append(f"description: {doc['description']}")
    for name, value in doc.get("traces", {}).items():
        lines.append(f"trace[{name}]: {format_float(value)}")
    if verdicts:
        lines.append("")
        lines.append(f"{'criterion':<20}{'verdict':<14}{'conclusive':<12}witness")
        for v in verdicts:
            lines.append(
                f"{v['criterion']:<20}{v['verdict']:<14}"
                f"{'yes' if v['conclusive'] else 'no':<12}{format_float(v['witness'])}"
            )
    if doc.get("determinants"):
        lines.append("")
        lines.append("determinants:")
        for name, (re, im) in doc["determinants"].items():
            lines.append(f"  {name:<28}{_text_complex(re, im)}")
    if doc.get("eigenvalues"):
        lines.append("")
        lines.append("eigenvalues:")
        for name, vals in doc["eigenvalues"].items():
            body = ", ".join(format_float(v) for v in vals)
            lines.append(f"  {name:<28}[{body}]")
    if doc.get("residuals"):
        lines.append("")
        lines.append("residuals:")
        for name, value in doc["residuals"].items():
            lines.append(f"  {name:<28}{format_float(value)}")
    decomposition = doc.get("decomposition")
    if decomposition:
        lines.append("")
        lines.append(f"decomposition: {decomposition['type']} (rank {decomposition['rank']})")
        for re, im in decomposition["coefficients"]:
            lines.append(f"  {_text_complex(re, im)}")
    for note in doc.get("notes", []):
        lines.append("")
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _text_complex(re: float, im: float) -> str:
    if im == 0.0:
        return format_float(re)
    return f"{format_float(re)} {'+' if im >= 0 else '-'} {format_float(abs(im))}i"
