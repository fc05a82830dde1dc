"""
Quivers, relations, dimension vectors and the Grothendieck-group maps.

A path ``a b`` reads "a then b"; realised on matrices it is ``phi_b @ phi_a``.
Vertex order is declaration order and every vertex-indexed tuple
(``DimVector.entries``, ``ThetaVector.coeffs``) follows it.

``iota`` sends a class in K0(proj) to its dimension vector in K0(mod);
for acyclic path algebras it is unitriangular in topological order and
``iota_inverse`` solves it exactly by back-substitution.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import QuiverSyntaxError, ScopeError
from core.randomness import derive_seed, stream

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
#  Quiver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths; terms are ``(coeff, arrow ids)``."""
    terms: Tuple[Tuple[int, Tuple[str, ...]], ...]

    def __str__(self) -> str:
        parts = []
        for k, (c, path) in enumerate(self.terms):
            sign = "-" if c < 0 else ("+" if k else "")
            coeff = f"{abs(c)}*" if abs(c) != 1 else ""
            parts.append(f"{sign} {coeff}{' '.join(path)}".strip())
        return " ".join(parts)


def relation_problem(arrows: Mapping[str, Arrow], rel: Relation) -> Optional[str]:
    """Describe why *rel* is not well formed, or return None."""
    if not rel.terms:
        return "empty relation"
    if all(c == 0 for c, _ in rel.terms):
        return "relation has no nonzero coefficient"
    ends = set()
    for _, path in rel.terms:
        if len(path) < 2:
            return "relation path shorter than 2"
        for aid in path:
            if aid not in arrows:
                return f"unknown arrow {aid!r} in relation"
        for first, second in zip(path, path[1:]):
            if arrows[first].target != arrows[second].source:
                return f"relation path {' '.join(path)!r} does not compose at {first} {second}"
        ends.add((arrows[path[0]].source, arrows[path[-1]].target))
    if len(ends) > 1:
        return "relation paths do not share source and target"
    return None


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with optional relations.  ``acyclic`` is computed."""
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()
    relations: Tuple[Relation, ...] = ()
    name: str = ""
    acyclic: bool = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverSyntaxError("duplicate vertex id")
        seen = set()
        for a in self.arrows:
            if a.name in seen:
                raise QuiverSyntaxError(f"duplicate arrow id {a.name!r}")
            seen.add(a.name)
            for v in (a.source, a.target):
                if v not in self.vertices:
                    raise QuiverSyntaxError(f"undeclared vertex {v!r} in arrow {a.name!r}")
        by_name = {a.name: a for a in self.arrows}
        for rel in self.relations:
            problem = relation_problem(by_name, rel)
            if problem:
                raise QuiverSyntaxError(problem)
        object.__setattr__(self, "acyclic", self.topological_order() is not None)

    # -- lookup ------------------------------------------------------------

    @cached_property
    def _vertex_index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _arrow_index(self) -> Dict[str, int]:
        return {a.name: k for k, a in enumerate(self.arrows)}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self._vertex_index[vertex]
        except KeyError:
            raise QuiverSyntaxError(f"unknown vertex {vertex!r}") from None

    def arrow(self, name: str) -> Arrow:
        return self.arrows[self.arrow_index(name)]

    def arrow_index(self, name: str) -> int:
        try:
            return self._arrow_index[name]
        except KeyError:
            raise QuiverSyntaxError(f"unknown arrow {name!r}") from None

    def src(self, a: Arrow) -> int:
        return self._vertex_index[a.source]

    def tgt(self, a: Arrow) -> int:
        return self._vertex_index[a.target]

    @property
    def is_path_algebra(self) -> bool:
        return not self.relations

    def topological_order(self) -> Optional[List[int]]:
        """Kahn's algorithm, ties broken by declaration order; None if cyclic."""
        indeg = [0] * self.n
        for a in self.arrows:
            indeg[self.tgt(a)] += 1
        ready = [i for i in range(self.n) if indeg[i] == 0]
        order: List[int] = []
        while ready:
            v = min(ready)
            ready.remove(v)
            order.append(v)
            for a in self.arrows:
                if self.src(a) == v:
                    w = self.tgt(a)
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        ready.append(w)
        return order if len(order) == self.n else None

    def require_path_algebra(self, what: str, acyclic: bool = True) -> None:
        if self.relations:
            raise ScopeError(f"{what} requires path algebra")
        if acyclic and not self.acyclic:
            raise ScopeError(f"{what} requires an acyclic quiver")

    # -- vectors -----------------------------------------------------------

    def dim_vector(self, values: Union[Sequence[int], Mapping[str, int], "DimVector"]) -> "DimVector":
        if isinstance(values, DimVector):
            entries = values.entries
        elif isinstance(values, Mapping):
            unknown = set(values) - set(self.vertices)
            if unknown:
                raise QuiverSyntaxError(f"unknown vertex {sorted(unknown)[0]!r} in dimension vector")
            entries = tuple(int(values.get(v, 0)) for v in self.vertices)
        else:
            entries = tuple(int(x) for x in values)
        if len(entries) != self.n:
            raise QuiverSyntaxError(
                f"dimension vector has {len(entries)} entries, quiver has {self.n} vertices")
        return DimVector(entries)

    def theta_vector(self, values: Union[Sequence[int], Mapping[str, int]]) -> "ThetaVector":
        if isinstance(values, Mapping):
            coeffs = tuple(int(values.get(v, 0)) for v in self.vertices)
        else:
            coeffs = tuple(int(x) for x in values)
        if len(coeffs) != self.n:
            raise QuiverSyntaxError(
                f"theta vector has {len(coeffs)} entries, quiver has {self.n} vertices")
        return ThetaVector(coeffs)

    # -- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.arrows],
            "relations": [[[c, list(path)] for c, path in r.terms] for r in self.relations],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Quiver":
        return cls(
            vertices=tuple(str(v) for v in data["vertices"]),
            arrows=tuple(Arrow(str(a), str(s), str(t)) for a, s, t in data.get("arrows", [])),
            relations=tuple(
                Relation(tuple((int(c), tuple(path)) for c, path in rel))
                for rel in data.get("relations", [])),
            name=str(data.get("name", "")),
        )

    def to_text(self) -> str:
        lines = [f"vertices: {' '.join(self.vertices)}"]
        lines += [f"arrow {a.name}: {a.source} -> {a.target}" for a in self.arrows]
        lines += [f"relation: {r}" for r in self.relations]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
#  Vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DimVector:
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.entries):
            raise ValueError(f"dimension vector entries must be nonnegative: {self.entries}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __add__(self, other: "DimVector") -> "DimVector":
        return DimVector(tuple(a + b for a, b in zip(self.entries, other.entries, strict=True)))

    def scale(self, l: int) -> "DimVector":
        return DimVector(tuple(l * a for a in self.entries))

    @property
    def total(self) -> int:
        return sum(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def as_dict(self, q: Quiver) -> Dict[str, int]:
        return dict(zip(q.vertices, self.entries))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class ThetaVector:
    """Element of K0(proj) in the basis of indecomposable projectives."""
    coeffs: Tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "ThetaVector") -> "ThetaVector":
        return ThetaVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __neg__(self) -> "ThetaVector":
        return ThetaVector(tuple(-a for a in self.coeffs))

    def scale(self, l: int) -> "ThetaVector":
        return ThetaVector(tuple(l * a for a in self.coeffs))

    def positive_part(self) -> Tuple[int, ...]:
        return tuple(max(a, 0) for a in self.coeffs)

    def negative_part(self) -> Tuple[int, ...]:
        return tuple(max(-a, 0) for a in self.coeffs)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coeffs)) + ")"


# ---------------------------------------------------------------------------
#  Parsing
# ---------------------------------------------------------------------------

def parse_quiver(text: str, name: str = "") -> Quiver:
    """Parse the quiver file grammar; see :mod:`core.languages.quiverlang`."""
    from core.languages.quiverlang import parse_quiver as _parse  # noqa: C0415
    return _parse(text, name=name)


def load_quiver(path: Union[str, Path]) -> Quiver:
    path = Path(path)
    log.debug("loading quiver %s", path)
    return parse_quiver(path.read_text(encoding="utf-8"), name=path.stem)


# ---------------------------------------------------------------------------
#  Grothendieck groups
# ---------------------------------------------------------------------------

def _path_counts(q: Quiver, start: int, order: Sequence[int]) -> List[int]:
    counts = [0] * q.n
    counts[start] = 1
    for v in order:
        if counts[v] == 0:
            continue
        for a in q.arrows:
            if q.src(a) == v:
                counts[q.tgt(a)] += counts[v]
    return counts


def projective_dim_vectors(q: Quiver) -> List[DimVector]:
    """``dimv P_i`` for every vertex: entry j counts the paths i -> j."""
    q.require_path_algebra("projective dimension vectors")
    order = q.topological_order()
    return [DimVector(tuple(_path_counts(q, i, order))) for i in range(q.n)]


def iota(q: Quiver, theta: ThetaVector) -> Tuple[int, ...]:
    """Class ``sum theta_i dimv P_i`` in K0(mod); entries may be negative."""
    projs = projective_dim_vectors(q)
    return tuple(sum(t * P[j] for t, P in zip(theta.coeffs, projs)) for j in range(q.n))


def iota_inverse(q: Quiver, d: Union[DimVector, Sequence[int]]) -> ThetaVector:
    """Exact integer solution of ``iota(theta) = d``."""
    projs = projective_dim_vectors(q)
    order = q.topological_order()
    target = list(d)
    theta = [0] * q.n
    # dimv P_i has entry 1 at i and is supported on successors of i, so in
    # topological order only theta_j is unknown when vertex j is reached.
    for j in order:
        theta[j] = target[j] - sum(theta[i] * projs[i][j] for i in range(q.n) if i != j)
    return ThetaVector(tuple(theta))


def euler_pairing(q: Quiver, theta: ThetaVector, d: Union[DimVector, Sequence[int]]) -> int:
    """Bilinear pairing with ``<[P_i], dimv S_j> = delta_ij``."""
    return sum(t * x for t, x in zip(theta.coeffs, d, strict=True))


def euler_form_mod(q: Quiver, d, e) -> int:
    """``sum_i d_i e_i - sum_arrows d_s e_t`` (the Euler form of the path algebra)."""
    d, e = list(d), list(e)
    value = sum(x * y for x, y in zip(d, e, strict=True))
    for a in q.arrows:
        value -= d[q.src(a)] * e[q.tgt(a)]
    return value


def euler_quadratic(q: Quiver, d) -> int:
    return euler_form_mod(q, d, d)


def root_type(q: Quiver, d) -> str:
    """``real`` (q = 1), ``tame`` (q = 0), ``wild`` (q < 0) or ``not-schur`` (q > 1)."""
    qd = euler_quadratic(q, d)
    if qd > 1:
        return "not-schur"
    return "real" if qd == 1 else ("tame" if qd == 0 else "wild")


# ---------------------------------------------------------------------------
#  Random quivers
# ---------------------------------------------------------------------------

def random_acyclic_quiver(n_vertices: int, n_arrows: int, seed: int, name: str = "") -> Quiver:
    """Arrows always run from a lower to a higher vertex index."""
    if n_vertices < 1:
        raise ValueError("n_vertices must be ≥ 1")
    if n_vertices == 1:
        n_arrows = 0
    rng = stream(derive_seed(seed, "quiver", n_vertices, n_arrows), 0)
    vertices = tuple(str(i + 1) for i in range(n_vertices))
    arrows = []
    for k in range(n_arrows):
        i, j = sorted(int(x) for x in rng.choice(n_vertices, size=2, replace=False))
        arrows.append(Arrow(f"a{k + 1}", vertices[i], vertices[j]))
    return Quiver(vertices, tuple(arrows), name=name or f"rand{n_vertices}x{n_arrows}")


def random_dim_vector(q: Quiver, max_entry: int, seed: int, min_total: int = 1) -> DimVector:
    """Entries uniform in ``[0, max_entry]``, resampled until the total is ≥ min_total."""
    rng = stream(derive_seed(seed, "dimv", q.name), 0)
    while True:
        d = DimVector(tuple(int(x) for x in rng.integers(0, max_entry + 1, size=q.n)))
        if d.total >= min_total:
            return d
