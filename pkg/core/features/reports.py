"""
Report rendering for the command line.

Every subcommand builds a plain ``dict`` report.  ``to_json`` serialises it
as a single sorted JSON document; ``render_table`` prints the same content
as an aligned two-column table for people.
"""
from __future__ import annotations

import json
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from core.algebra import DimVector
from core.config import FIELD_NOTE, SCHEMA_VERSION
from core.homology import VertexMaps
from core.modrep import RepModule, module_to_dict

_META_KEYS = ("schema_version", "command", "status", "p", "seed", "budgets", "field_note")

# rendered separately by render_checks
_SEPARATE_KEYS = ("checks",)

_STATUS_MARK = {"ok": "✅", "negative": "❌", "exhausted": "⚠️ ", "error": "❌"}


# ---------------------------------------------------------------------------
#  Value conversion
# ---------------------------------------------------------------------------

def dim_list(d: DimVector) -> List[int]:
    return list(d.entries)


def module_brief(m: RepModule) -> Dict[str, Any]:
    return {"name": m.name, "dim": dim_list(m.dim), "p": m.p, "fingerprint": m.fingerprint}


def module_doc(m: RepModule) -> Dict[str, Any]:
    """Full module document in the on-disk schema."""
    return module_to_dict(m)


def maps_doc(m: RepModule, f: VertexMaps) -> Dict[str, List[List[int]]]:
    """Vertex-indexed maps keyed by vertex id, in the module matrix schema."""
    return {v: f[i].tolist() for i, v in enumerate(m.quiver.vertices)}


def envelope(command: str, status: str, p: int, seed: int,
             budgets: Dict[str, int], **fields: Any) -> Dict[str, Any]:
    """Wrap command results with the fields every report carries."""
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "status": status,
        "p": p,
        "seed": seed,
        "budgets": dict(budgets),
        "field_note": FIELD_NOTE,
    }
    report.update(fields)
    return report


def error_report(command: str, message: str, flag: Optional[str] = None) -> Dict[str, Any]:
    """Envelope for a command that stopped on an error; ``p`` and ``seed`` may be unknown."""
    report: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "status": "error",
        "error": message,
    }
    if flag:
        report["flag"] = flag
    return report


def to_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
#  Human-readable table
# ---------------------------------------------------------------------------

def _flatten(prefix: str, value: Any) -> Iterator[Tuple[str, str]]:
    if isinstance(value, dict) and value and not _is_matrix_map(value):
        for key in sorted(value):
            yield from _flatten(f"{prefix}.{key}" if prefix else str(key), value[key])
    elif isinstance(value, bool):
        yield prefix, "yes" if value else "no"
    elif value is None:
        yield prefix, "-"
    elif isinstance(value, float):
        yield prefix, f"{value:.3f}"
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for k, item in enumerate(value):
            yield from _flatten(f"{prefix}[{k}]", item)
    else:
        yield prefix, _compact(value)


def _is_matrix_map(value: dict) -> bool:
    return all(isinstance(v, list) for v in value.values())


def _compact(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(_compact(v) for v in value) + ")"
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render_table(report: Dict[str, Any], width: int = 60) -> str:
    """Aligned key/value rows under a one-line header."""
    status = report.get("status", "ok")
    header = (f"{_STATUS_MARK.get(status, '')} semibrick {report.get('command', '')}"
              f"  (p={report.get('p')}, seed={report.get('seed')})")
    rows: List[Tuple[str, str]] = []
    for key in sorted(k for k in report if k not in _META_KEYS and k not in _SEPARATE_KEYS):
        rows.extend(_flatten(key, report[key]))
    budgets = report.get("budgets") or {}
    if budgets:
        rows.append(("budgets", ", ".join(f"{k}={budgets[k]}" for k in sorted(budgets))))
    rows.append(("note", report.get("field_note", FIELD_NOTE)))
    pad = max((len(k) for k, _ in rows), default=0)
    lines = [header, "─" * width]
    lines += [f"  {k.ljust(pad)}  {v}" for k, v in rows]
    return "\n".join(lines)


def render_checks(checks: Sequence[Dict[str, Any]]) -> str:
    """One line per self-test check."""
    lines = []
    for c in checks:
        mark = "✅" if c["passed"] else "❌"
        lines.append(f"{mark} {c['name']:<34} {c['module']:<14} {_compact(c.get('detail', {}))}")
    return "\n".join(lines)
