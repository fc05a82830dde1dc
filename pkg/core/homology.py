"""
Exact Hom and Ext over F_p.

``Hom(M, N)`` is the kernel of the intertwiner map

    Phi: (f_i)_i  |->  (f_t phi^M_a - phi^N_a f_s)_a

with every ``f_i`` flattened row-major.  For a path algebra the cokernel of
``Phi`` is ``Ext^1(M, N)``, so ``hom - ext`` equals the Euler form.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from core.algebra import Quiver
from core.config import DEFAULT_ISO_COMBINATIONS
from core.errors import NotABrickError, NotASemibrickError, ScopeError, require_positive
from core.linalg import is_invertible, matmul_mod, mod_p, nullspace_mod, rank_mod, zeros
from core.modrep import FieldSpec, RepModule, random_module, same_setting
from core.optimizations.hom_cache import HOM_CACHE
from core.optimizations.trial_runner import TrialRunner
from core.randomness import derive_seed, uniform_vector

log = logging.getLogger(__name__)

VertexMaps = Tuple[np.ndarray, ...]


# ---------------------------------------------------------------------------
#  Intertwiner map
# ---------------------------------------------------------------------------

def _offsets(m: RepModule, n: RepModule) -> List[int]:
    offs = [0]
    for i in range(m.quiver.n):
        offs.append(offs[-1] + n.dim[i] * m.dim[i])
    return offs


def intertwiner_matrix(m: RepModule, n: RepModule) -> np.ndarray:
    """Matrix of Phi; columns are the unknowns of all ``f_i`` (c_i x d_i)."""
    same_setting(m, n)
    q, p = m.quiver, m.p
    d, c = m.dim, n.dim
    offs = _offsets(m, n)
    blocks = []
    for a in q.arrows:
        s, t = q.src(a), q.tgt(a)
        block = zeros(c[t] * d[s], offs[-1])
        # vec(f_t phi^M) = kron(I, phi^M^T) vec(f_t)
        block[:, offs[t]:offs[t + 1]] += np.kron(np.eye(c[t], dtype=np.int64), m.mats[a.name].T)
        # vec(phi^N f_s) = kron(phi^N, I) vec(f_s)
        block[:, offs[s]:offs[s + 1]] -= np.kron(n.mats[a.name], np.eye(d[s], dtype=np.int64))
        blocks.append(mod_p(block, p))
    if not blocks:
        return zeros(0, offs[-1])
    return np.concatenate(blocks, axis=0)


def is_intertwiner(m: RepModule, n: RepModule, f: Sequence[np.ndarray]) -> bool:
    q, p = m.quiver, m.p
    for a in q.arrows:
        s, t = q.src(a), q.tgt(a)
        lhs = matmul_mod(f[t], m.mats[a.name], p)
        rhs = matmul_mod(n.mats[a.name], f[s], p)
        if not np.array_equal(lhs, rhs):
            return False
    return True


@dataclass(frozen=True, eq=False)
class HomSpace:
    source: RepModule
    target: RepModule
    basis: Tuple[VertexMaps, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combination(self, coeffs: Sequence[int]) -> VertexMaps:
        p = self.source.p
        out = [zeros(self.target.dim[i], self.source.dim[i]) for i in range(self.source.quiver.n)]
        for c, f in zip(coeffs, self.basis):
            c = int(c) % p
            if c:
                out = [(o + c * fi) % p for o, fi in zip(out, f)]
        return tuple(out)

    def random_element(self, seed: int, index: int = 0) -> VertexMaps:
        return self.combination(uniform_vector(seed, index, self.dim, self.source.p))


def hom_space(m: RepModule, n: RepModule) -> HomSpace:
    """Basis of Hom(m, n), re-verified against the intertwiner equations."""
    Phi = intertwiner_matrix(m, n)
    K = nullspace_mod(Phi, m.p)
    offs = _offsets(m, n)
    basis = []
    for k in range(K.shape[1]):
        col = K[:, k]
        f = tuple(col[offs[i]:offs[i + 1]].reshape(n.dim[i], m.dim[i]).copy()
                  for i in range(m.quiver.n))
        if not is_intertwiner(m, n, f):
            raise ArithmeticError("hom_space basis element fails the intertwiner equations")
        basis.append(f)
    return HomSpace(m, n, tuple(basis))


def hom_dim(m: RepModule, n: RepModule) -> int:
    same_setting(m, n)
    return HOM_CACHE.dimension(
        "hom", m, n, lambda: _unknowns(m, n) - rank_mod(intertwiner_matrix(m, n), m.p))


def _unknowns(m: RepModule, n: RepModule) -> int:
    return sum(m.dim[i] * n.dim[i] for i in range(m.quiver.n))


def ext1_dim(m: RepModule, n: RepModule) -> int:
    """dim coker Phi; path algebras only."""
    q = m.quiver
    if q.relations or not q.acyclic:
        raise ScopeError("Ext¹ implemented for path algebras only")
    same_setting(m, n)

    def compute() -> int:
        Phi = intertwiner_matrix(m, n)
        return Phi.shape[0] - rank_mod(Phi, m.p)

    return HOM_CACHE.dimension("ext1", m, n, compute)


def end_dim(m: RepModule) -> int:
    return hom_dim(m, m)


# ---------------------------------------------------------------------------
#  Bricks and semibricks
# ---------------------------------------------------------------------------

def is_brick(m: RepModule) -> bool:
    return end_dim(m) == 1


@dataclass(frozen=True, eq=False)
class Semibrick:
    """Members plus the matrix of pairwise hom dimensions."""
    members: Tuple[RepModule, ...]
    certificate: Tuple[Tuple[int, ...], ...]
    ok: bool = field(default=True, init=False)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def quiver(self) -> Quiver:
        if not self.members:
            raise NotASemibrickError("the empty semibrick has no quiver")
        return self.members[0].quiver


@dataclass(frozen=True, eq=False)
class SemibrickWitness:
    """First violating ordered pair; ``i == j`` means member i is not a brick."""
    i: int
    j: int
    hom: int
    source: RepModule
    target: RepModule
    ok: bool = field(default=False, init=False)

    def describe(self) -> str:
        if self.i == self.j:
            return f"member {self.i} ({self.source.name}) is not a brick: End has dimension {self.hom}"
        return (f"Hom({self.source.name or self.i}, {self.target.name or self.j}) "
                f"has dimension {self.hom}")


def is_semibrick(members: Sequence[RepModule]) -> Union[Semibrick, SemibrickWitness]:
    members = tuple(members)
    if members:
        same_setting(*members)
    for i, b in enumerate(members):
        e = end_dim(b)
        if e != 1:
            return SemibrickWitness(i, i, e, b, b)
    table = [[0] * len(members) for _ in members]
    for i, x in enumerate(members):
        for j, y in enumerate(members):
            h = hom_dim(x, y)
            table[i][j] = h
            if i != j and h:
                return SemibrickWitness(i, j, h, x, y)
    return Semibrick(members, tuple(tuple(row) for row in table))


def require_semibrick(members: Sequence[RepModule]) -> Semibrick:
    result = is_semibrick(members)
    if not result.ok:
        raise NotASemibrickError(result.describe(), (result.i, result.j, result.hom))
    return result


# ---------------------------------------------------------------------------
#  Isomorphism, openness, orbits
# ---------------------------------------------------------------------------

def find_isomorphism(m: RepModule, n: RepModule, seed: int = 0,
                     combinations: int = DEFAULT_ISO_COMBINATIONS) -> Optional[VertexMaps]:
    """An invertible intertwiner m -> n from random Hom combinations, or None."""
    same_setting(m, n)
    if m.dim != n.dim:
        return None
    if m.dim.is_zero():
        return tuple(zeros(0, 0) for _ in m.dim)
    H = hom_space(m, n)
    if H.dim == 0:
        return None
    for k in range(combinations):
        f = H.random_element(derive_seed(seed, "iso", k))
        if all(is_invertible(fi, m.p) for fi in f):
            return f
    return None


def is_isomorphic(m: RepModule, n: RepModule, seed: int = 0,
                  combinations: int = DEFAULT_ISO_COMBINATIONS) -> bool:
    """One-sided: True is certified by an explicit isomorphism."""
    return find_isomorphism(m, n, seed, combinations) is not None


def is_open_brick(b: RepModule) -> bool:
    q = b.quiver
    if q.relations or not q.acyclic:
        raise ScopeError("open-brick detection requires path algebra")
    if not is_brick(b):
        raise NotABrickError(f"{b.name or 'module'} is not a brick (End has dimension {end_dim(b)})")
    return ext1_dim(b, b) == 0


def orbit_dim(m: RepModule) -> int:
    """``dim GL(d) - dim End(m)``."""
    return sum(x * x for x in m.dim) - end_dim(m)


# ---------------------------------------------------------------------------
#  Generic values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenericValue:
    minimum: int
    fraction: float
    samples: int
    values: Tuple[int, ...]


def generic_hom_dim(q: Quiver, d, e, samples: int, seed: int,
                    field: Optional[FieldSpec] = None, workers: int = 1) -> GenericValue:
    """Minimum of hom_dim over random pairs, with the share of samples attaining it."""
    q.require_path_algebra("generic_hom_dim", acyclic=False)
    require_positive("samples", samples)
    field = field or FieldSpec()

    def one(k: int) -> int:
        M = random_module(q, d, derive_seed(seed, "generic-hom", k, "M"), field)
        N = random_module(q, e, derive_seed(seed, "generic-hom", k, "N"), field)
        return hom_dim(M, N)

    values = tuple(TrialRunner(workers).map(one, samples))
    low = min(values)
    frac = sum(1 for v in values if v == low) / samples
    log.info("generic hom %s x %s: min=%d attained by %.2f", d, e, low, frac)
    return GenericValue(low, frac, samples, values)


@dataclass(frozen=True)
class PerpFractions:
    hom_to_b_zero: float
    hom_from_b_zero: float
    samples: int


def generic_perp_fractions(b: RepModule, samples: int, seed: int, workers: int = 1) -> PerpFractions:
    """Shares of random X of dimension dimv b with Hom(X, b)=0 and with Hom(b, X)=0."""
    q = b.quiver
    q.require_path_algebra("generic_perp_fractions", acyclic=False)
    require_positive("samples", samples)

    def one(k: int) -> Tuple[bool, bool]:
        X = random_module(q, b.dim, derive_seed(seed, "perp", k), b.field)
        return hom_dim(X, b) == 0, hom_dim(b, X) == 0

    flags = TrialRunner(workers).map(one, samples)
    return PerpFractions(sum(f[0] for f in flags) / samples,
                         sum(f[1] for f in flags) / samples, samples)
