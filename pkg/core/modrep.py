"""
Points of rep(Q, d): one matrix per arrow over a prime field.

``mats[a]`` has shape ``d[target] x d[source]``; columns index the source
space so a module map acts by left multiplication.  Modules are immutable:
matrices are reduced mod p and frozen on construction.
"""
from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np
from sympy import isprime

from core.algebra import DimVector, Quiver, load_quiver
from core.config import DEFAULT_PRIME, MAX_PRIME, QUIVER_DIR, QUIVER_SUFFIX
from core.errors import (
    FieldError, ModuleFormatError, ModuleMismatchError, QuiverBrickError, ScopeError,
)
from core.linalg import (
    block_diag, complement_basis, identity, inv_mod_mat, is_invertible, matmul_mod,
    mod_p, rank_mod, solve_mod, zeros,
)
from core.randomness import derive_seed, uniform_matrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSpec:
    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if not isinstance(self.p, (int, np.integer)) or self.p < 2 or not isprime(int(self.p)):
            raise FieldError(f"p={self.p} is not prime")
        if self.p > MAX_PRIME:
            raise FieldError(f"p={self.p} exceeds the supported maximum {MAX_PRIME}")

    def __str__(self) -> str:
        return f"F_{self.p}"


@dataclass(frozen=True, eq=False)
class RepModule:
    """A representation ``(phi_a)`` of *quiver* with dimension vector *dim*."""
    quiver: Quiver
    field: FieldSpec
    dim: DimVector
    mats: Mapping[str, np.ndarray]
    name: str = ""

    def __post_init__(self) -> None:
        q, p = self.quiver, self.field.p
        if len(self.dim) != q.n:
            raise ModuleMismatchError(
                f"dimension vector {self.dim} does not fit quiver with {q.n} vertices")
        extra = set(self.mats) - {a.name for a in q.arrows}
        if extra:
            raise ModuleMismatchError(f"matrix for unknown arrow {sorted(extra)[0]!r}")
        frozen: Dict[str, np.ndarray] = {}
        for a in q.arrows:
            shape = (self.dim[q.tgt(a)], self.dim[q.src(a)])
            raw = self.mats.get(a.name)
            if raw is None:
                mat = zeros(*shape)
            else:
                arr = np.asarray(raw, dtype=np.int64)
                if arr.size == 0 and 0 in shape:
                    arr = arr.reshape(shape)
                mat = mod_p(arr, p)
            if mat.shape != shape:
                raise ModuleMismatchError(
                    f"arrow {a.name!r}: matrix shape {mat.shape}, expected {shape}")
            mat.setflags(write=False)
            frozen[a.name] = mat
        object.__setattr__(self, "mats", frozen)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def total_dim(self) -> int:
        return self.dim.total

    def mat(self, arrow: str) -> np.ndarray:
        return self.mats[arrow]

    @cached_property
    def fingerprint(self) -> str:
        """Stable digest of (quiver, p, dim, matrices)."""
        h = hashlib.blake2b(digest_size=16)
        h.update(json.dumps(self.quiver.to_dict(), sort_keys=True).encode("utf-8"))
        h.update(f"|{self.p}|{self.dim.entries}|".encode("ascii"))
        for a in self.quiver.arrows:
            h.update(a.name.encode("utf-8"))
            h.update(np.ascontiguousarray(self.mats[a.name]).tobytes())
        return h.hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RepModule):
            return NotImplemented
        return (self.quiver == other.quiver and self.p == other.p
                and self.dim == other.dim
                and all(np.array_equal(self.mats[k], other.mats[k]) for k in self.mats))

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<RepModule{label} dim={self.dim} over {self.field}>"

    def renamed(self, name: str) -> "RepModule":
        return RepModule(self.quiver, self.field, self.dim, self.mats, name)


def same_setting(*modules: RepModule) -> None:
    """Raise ModuleMismatchError unless all modules share quiver and field."""
    first = modules[0]
    for m in modules[1:]:
        if m.quiver != first.quiver:
            raise ModuleMismatchError(
                f"modules live over different quivers ({first.quiver.name!r} vs {m.quiver.name!r})")
        if m.p != first.p:
            raise ModuleMismatchError(f"modules live over different fields (p={first.p} vs p={m.p})")


def path_matrix(m: RepModule, path: Sequence[str]) -> np.ndarray:
    """Matrix of the path "a then b then ...": ``phi_last @ ... @ phi_first``."""
    q = m.quiver
    first = q.arrow(path[0])
    out = identity(m.dim[q.src(first)])
    for aid in path:
        out = matmul_mod(m.mats[aid], out, m.p)
    return out


def check_relations(m: RepModule) -> bool:
    q, p = m.quiver, m.p
    for rel in q.relations:
        total = None
        for coeff, path in rel.terms:
            term = (int(coeff) % p) * path_matrix(m, path) % p
            total = term if total is None else (total + term) % p
        if total is not None and np.any(total):
            return False
    return True


def make_module(q: Quiver, dim, mats: Mapping[str, object], field: Optional[FieldSpec] = None,
                name: str = "") -> RepModule:
    """Build a module and enforce the quiver's relations."""
    m = RepModule(q, field or FieldSpec(), q.dim_vector(dim), dict(mats), name)
    if not check_relations(m):
        raise ModuleMismatchError(f"module violates the relations of quiver {q.name!r}")
    return m


# ---------------------------------------------------------------------------
#  Constructions
# ---------------------------------------------------------------------------

def random_module(q: Quiver, d, seed: int, field: Optional[FieldSpec] = None,
                  name: str = "") -> RepModule:
    """Uniform point of rep(Q, d); arrow k draws from stream ``(seed, k)``."""
    if q.relations:
        raise ScopeError("sampling requires path algebra")
    field = field or FieldSpec()
    d = q.dim_vector(d)
    mats = {
        a.name: uniform_matrix(seed, k, (d[q.tgt(a)], d[q.src(a)]), field.p)
        for k, a in enumerate(q.arrows)
    }
    return RepModule(q, field, d, mats, name)


def zero_module(q: Quiver, field: Optional[FieldSpec] = None) -> RepModule:
    return RepModule(q, field or FieldSpec(), DimVector((0,) * q.n), {}, "0")


def simple_module(q: Quiver, vertex: Union[str, int], field: Optional[FieldSpec] = None) -> RepModule:
    """Simple S_i.  On a loop at *vertex* the loop acts by zero."""
    i = vertex if isinstance(vertex, int) else q.index(vertex)
    entries = tuple(1 if j == i else 0 for j in range(q.n))
    return RepModule(q, field or FieldSpec(), DimVector(entries), {}, f"S{q.vertices[i]}")


def direct_sum(m: RepModule, n: RepModule) -> RepModule:
    same_setting(m, n)
    mats = {a: block_diag([m.mats[a], n.mats[a]]) for a in m.mats}
    return RepModule(m.quiver, m.field, m.dim + n.dim, mats,
                     f"{m.name or 'M'}+{n.name or 'N'}")


def direct_sum_all(modules: Sequence[RepModule]) -> RepModule:
    if not modules:
        raise ModuleMismatchError("direct sum of no modules")
    out = modules[0]
    for m in modules[1:]:
        out = direct_sum(out, m)
    return out


def basis_change(m: RepModule, gs: Sequence[np.ndarray]) -> RepModule:
    """``g . M = (g_t phi_a g_s^-1)``; raises ValueError if some g_i is singular."""
    q, p = m.quiver, m.p
    ginv = [inv_mod_mat(g, p) for g in gs]
    mats = {
        a.name: matmul_mod(matmul_mod(gs[q.tgt(a)], m.mats[a.name], p), ginv[q.src(a)], p)
        for a in q.arrows
    }
    return RepModule(q, m.field, m.dim, mats, m.name)


def random_invertible(seed: int, label, n: int, p: int) -> np.ndarray:
    attempt = 0
    while True:
        g = uniform_matrix(derive_seed(seed, "gl", label, attempt), 0, (n, n), p)
        if is_invertible(g, p):
            return g
        attempt += 1


def random_gl(m: RepModule, seed: int) -> List[np.ndarray]:
    return [random_invertible(seed, i, m.dim[i], m.p) for i in range(m.quiver.n)]


def random_basis_change(m: RepModule, seed: int) -> RepModule:
    """A point of the same GL(d)-orbit; singular draws are resampled."""
    return basis_change(m, random_gl(m, seed))


# ---------------------------------------------------------------------------
#  Sub- and quotient modules
# ---------------------------------------------------------------------------

def _check_subspaces(m: RepModule, subspaces: Sequence[np.ndarray]) -> List[np.ndarray]:
    if len(subspaces) != m.quiver.n:
        raise ModuleMismatchError("need one subspace basis per vertex")
    out = []
    for i, U in enumerate(subspaces):
        U = mod_p(np.asarray(U, dtype=np.int64), m.p)
        if U.ndim != 2 or U.shape[0] != m.dim[i]:
            raise ModuleMismatchError(
                f"subspace basis at vertex {m.quiver.vertices[i]} must have {m.dim[i]} rows")
        if rank_mod(U, m.p) != U.shape[1]:
            raise ModuleMismatchError(f"subspace basis at vertex {m.quiver.vertices[i]} is not independent")
        out.append(U)
    return out


def submodule(m: RepModule, subspaces: Sequence[np.ndarray]) -> RepModule:
    """Restriction of *m* to an arrow-stable tuple of subspaces (basis columns)."""
    q, p = m.quiver, m.p
    us = _check_subspaces(m, subspaces)
    mats = {}
    for a in q.arrows:
        image = matmul_mod(m.mats[a.name], us[q.src(a)], p)
        try:
            mats[a.name] = solve_mod(us[q.tgt(a)], image, p)
        except ValueError:
            raise ModuleMismatchError(f"subspaces are not stable under arrow {a.name!r}") from None
    dim = DimVector(tuple(U.shape[1] for U in us))
    return RepModule(q, m.field, dim, mats, f"sub({m.name})" if m.name else "")


def quotient_maps(us: Sequence[np.ndarray], p: int):
    """Per vertex: projection rows ``pi`` and section ``sigma`` onto a complement."""
    pis, sigmas = [], []
    for U in us:
        E = complement_basis(U, p)
        T = np.concatenate([U, E], axis=1)
        Tinv = inv_mod_mat(T, p)
        pis.append(Tinv[U.shape[1]:, :])
        sigmas.append(E)
    return pis, sigmas


def quotient_module(m: RepModule, subspaces: Sequence[np.ndarray]) -> RepModule:
    """``M / L`` for an arrow-stable tuple; arrows act by ``pi_t phi sigma_s``."""
    q, p = m.quiver, m.p
    us = _check_subspaces(m, subspaces)
    # stability check doubles as validation
    submodule(m, us)
    pis, sigmas = quotient_maps(us, p)
    mats = {
        a.name: matmul_mod(pis[q.tgt(a)], matmul_mod(m.mats[a.name], sigmas[q.src(a)], p), p)
        for a in q.arrows
    }
    dim = DimVector(tuple(E.shape[1] for E in sigmas))
    return RepModule(q, m.field, dim, mats, f"{m.name}/L" if m.name else "")


# ---------------------------------------------------------------------------
#  Serialisation
# ---------------------------------------------------------------------------

def module_to_dict(m: RepModule, inline_quiver: bool = False) -> dict:
    q = m.quiver
    return {
        "quiver": q.to_dict() if inline_quiver or not q.name else q.name,
        "p": int(m.p),
        "dim": m.dim.as_dict(q),
        "mats": {a: m.mats[a].tolist() for a in m.mats},
        **({"name": m.name} if m.name else {}),
    }


def _resolve_quiver(ref, quiver: Optional[Quiver], where: str) -> Quiver:
    if isinstance(ref, Mapping):
        inline = Quiver.from_dict(ref)
        if quiver is not None and inline != quiver:
            raise ModuleMismatchError(f"{where}: inline quiver differs from {quiver.name!r}")
        return inline
    if not isinstance(ref, str):
        raise ModuleFormatError("'quiver' must be a name or an inline quiver", where)
    if quiver is not None:
        if quiver.name and ref != quiver.name:
            raise ModuleMismatchError(f"{where}: module is over {ref!r}, not {quiver.name!r}")
        return quiver
    bundled = QUIVER_DIR / f"{ref}{QUIVER_SUFFIX}"
    if not bundled.exists():
        raise ModuleFormatError(f"unknown quiver {ref!r}; pass --quiver", where)
    return load_quiver(bundled)


def module_from_dict(data: Mapping, quiver: Optional[Quiver] = None, where: str = "") -> RepModule:
    try:
        q = _resolve_quiver(data["quiver"], quiver, where)
        p = int(data["p"])
        dim_raw = data["dim"]
        mats_raw = data.get("mats", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise ModuleFormatError(f"malformed module document ({exc})", where) from None
    field = FieldSpec(p)
    try:
        dim = q.dim_vector(dim_raw)
    except (QuiverBrickError, ValueError) as exc:
        raise ModuleFormatError(str(exc), where) from None
    mats = {}
    for aid, rows in mats_raw.items():
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= p):
            raise ModuleFormatError(f"arrow {aid!r}: entries must lie in [0, {p})", where)
        mats[aid] = arr
    try:
        return make_module(q, dim, mats, field, name=str(data.get("name", "")))
    except ModuleMismatchError as exc:
        raise ModuleFormatError(str(exc), where) from None


def read_module(path: Union[str, Path], quiver: Optional[Quiver] = None) -> RepModule:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModuleFormatError(f"invalid JSON at line {exc.lineno}", str(path)) from None
    m = module_from_dict(data, quiver, where=str(path))
    return m if m.name else m.renamed(path.stem)


def write_module(m: RepModule, path: Union[str, Path], inline_quiver: bool = False) -> None:
    Path(path).write_text(json.dumps(module_to_dict(m, inline_quiver), indent=2) + "\n",
                          encoding="utf-8")


def read_members(paths: Iterable[Union[str, Path]], quiver: Optional[Quiver] = None) -> List[RepModule]:
    """Semibrick members: module files, or files holding ``{"members": [...]}``."""
    members: List[RepModule] = []
    for path in paths:
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ModuleFormatError(f"invalid JSON at line {exc.lineno}", str(path)) from None
        if isinstance(data, Mapping) and "members" in data:
            docs = data["members"]
            if not isinstance(docs, list) or not docs:
                raise ModuleFormatError("\"members\" must be a non-empty list", str(path))
            for k, doc in enumerate(docs):
                m = module_from_dict(doc, quiver, where=f"{path}[{k}]")
                members.append(m if m.name else m.renamed(f"{path.stem}[{k}]"))
        else:
            m = module_from_dict(data, quiver, where=str(path))
            members.append(m if m.name else m.renamed(path.stem))
    return members
