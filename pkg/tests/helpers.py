#!/usr/bin/env python3
"""
Test helpers for semibrick-lab tests.
"""

import sys
from pathlib import Path

# Ensure project root is on sys.path
_project_root = str(Path(__file__).resolve().parent.parent)
if _project_root not in sys.path:
    sys.path.insert(0, _project_root)

from core.algebra import Quiver, load_quiver, parse_quiver  # noqa: E402
from core.config import MODULE_DIR, QUIVER_DIR  # noqa: E402
from core.modrep import FieldSpec, RepModule, make_module, read_module  # noqa: E402

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F7 = FieldSpec(7)

CYCLE_TEXT = "vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n"


def quiver(name: str) -> Quiver:
    """A bundled quiver by short name: a1, a2, k2, k3, loop."""
    return load_quiver(QUIVER_DIR / f"{name}.q")


def module(name: str) -> RepModule:
    """A bundled module by file stem, e.g. ``r1`` or ``a2_s1``."""
    return read_module(MODULE_DIR / f"{name}.json")


def cyclic_quiver() -> Quiver:
    return parse_quiver(CYCLE_TEXT, "cycle2")


def kronecker(lam: int, field: FieldSpec = None, arrows: int = 2) -> RepModule:
    """R_lambda on the 2-Kronecker quiver (a = 1, b = lambda), or (1,1,lambda) on K3."""
    q = quiver("k2" if arrows == 2 else "k3")
    mats = {"a": [[1]], "b": [[lam]]} if arrows == 2 else {"a": [[1]], "b": [[1]], "c": [[lam]]}
    return make_module(q, (1, 1), mats, field, name=f"R{lam}")


def build(q: Quiver, dim, field: FieldSpec = None, name: str = "", **mats) -> RepModule:
    """Module from keyword arrow matrices; unspecified arrows act by zero."""
    return make_module(q, dim, mats, field, name=name)


def write_json(tmp_path: Path, name: str, text: str) -> Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path
