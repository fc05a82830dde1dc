"""
Projective modules, presentation spaces and the F-bar-theta oracle.

For ``theta = [P0] - [P1]`` (positive part builds P0, negative part P1) the
presentation space is ``Hom(P1, P0)``; a presentation ``f`` is sampled as a
random combination of a Hom basis, so every sample is a module map.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.algebra import DimVector, Quiver, ThetaVector, euler_pairing, iota_inverse
from core.config import EXHAUSTIVE_POINT_LIMIT, FBAR_MAX_TOTAL_DIM
from core.errors import OracleInfeasibleError, require_positive
from core.homology import VertexMaps, ext1_dim, hom_dim, hom_space, is_brick
from core.linalg import column_basis, matmul_mod, rank_mod, zeros
from core.modrep import FieldSpec, RepModule, direct_sum_all, quotient_module, zero_module
from core.optimizations.trial_runner import TrialRunner
from core.randomness import derive_seed

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
#  Projectives
# ---------------------------------------------------------------------------

def paths_from(q: Quiver, i: int) -> List[List[Tuple[str, ...]]]:
    """Paths starting at vertex i, grouped by end vertex, in discovery order."""
    q.require_path_algebra("projective modules")
    paths: List[List[Tuple[str, ...]]] = [[] for _ in range(q.n)]
    paths[i].append(())
    for v in q.topological_order():
        for path in list(paths[v]):
            for a in q.arrows:
                if q.src(a) == v:
                    paths[q.tgt(a)].append(path + (a.name,))
    return paths


def projective_module(q: Quiver, vertex: Union[str, int], field: Optional[FieldSpec] = None) -> RepModule:
    """P_i with the path basis; an arrow acts by appending itself."""
    i = vertex if isinstance(vertex, int) else q.index(vertex)
    paths = paths_from(q, i)
    index = [{path: k for k, path in enumerate(ps)} for ps in paths]
    mats = {}
    for a in q.arrows:
        s, t = q.src(a), q.tgt(a)
        mat = zeros(len(paths[t]), len(paths[s]))
        for k, path in enumerate(paths[s]):
            mat[index[t][path + (a.name,)], k] = 1
        mats[a.name] = mat
    dim = DimVector(tuple(len(ps) for ps in paths))
    return RepModule(q, field or FieldSpec(), dim, mats, f"P{q.vertices[i]}")


def projective_sum(q: Quiver, counts: Sequence[int], field: Optional[FieldSpec] = None) -> RepModule:
    """``(+)_i P_i^counts[i]``; the zero module when every count is 0."""
    field = field or FieldSpec()
    parts = [projective_module(q, i, field) for i, c in enumerate(counts) for _ in range(c)]
    return direct_sum_all(parts) if parts else zero_module(q, field)


# ---------------------------------------------------------------------------
#  Presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Presentation:
    """A module map ``f: P1 -> P0``."""
    theta: ThetaVector
    P0: RepModule
    P1: RepModule
    f: VertexMaps
    hom_space_dim: int = 0

    @property
    def quiver(self) -> Quiver:
        return self.P0.quiver


def sample_presentation(q: Quiver, theta: ThetaVector, seed: int,
                        field: Optional[FieldSpec] = None) -> Presentation:
    q.require_path_algebra("presentations")
    field = field or FieldSpec()
    P0 = projective_sum(q, theta.positive_part(), field)
    P1 = projective_sum(q, theta.negative_part(), field)
    H = hom_space(P1, P0)
    f = H.random_element(seed)
    return Presentation(theta, P0.renamed("P0"), P1.renamed("P1"), f, H.dim)


def is_injective(pres: Presentation) -> bool:
    p = pres.P0.p
    return all(rank_mod(fi, p) == pres.P1.dim[i] for i, fi in enumerate(pres.f))


def cokernel(pres: Presentation) -> RepModule:
    """``P0 / im f`` with the induced arrow maps."""
    images = [column_basis(fi, pres.P0.p) for fi in pres.f]
    return quotient_module(pres.P0, images).renamed("Coker f")


def theta_value(q: Quiver, theta: ThetaVector, m: RepModule) -> int:
    return euler_pairing(q, theta, m.dim)


@dataclass(frozen=True)
class ThetaIdentity:
    """``theta(M)`` against ``hom(Coker f, M) - ext(Coker f, M)``."""
    theta_value: int
    hom: int
    ext: int
    injective: bool

    @property
    def holds(self) -> Optional[bool]:
        # the general case needs the projective summand P of the complex
        if not self.injective:
            return None
        return self.theta_value == self.hom - self.ext


def theta_identity(pres: Presentation, m: RepModule) -> ThetaIdentity:
    C = cokernel(pres)
    return ThetaIdentity(theta_value(pres.quiver, pres.theta, m),
                         hom_dim(C, m), ext1_dim(C, m), is_injective(pres))


# ---------------------------------------------------------------------------
#  Submodule enumeration
# ---------------------------------------------------------------------------

def subspaces(n: int, p: int, k: Optional[int] = None) -> Iterator[np.ndarray]:
    """Every subspace of F_p^n once, as basis columns from its RREF, by dimension.

    With ``k`` only the subspaces of dimension k are produced.
    """
    for rank in (range(n + 1) if k is None else (k,)):
        for pivots in itertools.combinations(range(n), rank):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n)
                    if c not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                R = zeros(rank, n)
                for r, pc in enumerate(pivots):
                    R[r, pc] = 1
                for (r, c), v in zip(free, values):
                    R[r, c] = v
                yield R.T.copy()


def _gaussian_binomial_total(n: int, p: int) -> int:
    total = 0
    for k in range(n + 1):
        num = den = 1
        for j in range(k):
            num *= p ** (n - j) - 1
            den *= p ** (j + 1) - 1
        total += num // den
    return total


def submodule_count_bound(m: RepModule) -> int:
    """Number of subspace tuples before any pruning."""
    out = 1
    for x in m.dim:
        out *= _gaussian_binomial_total(x, m.p)
    return out


def _arrow_stable(m: RepModule, a, us: Sequence[np.ndarray]) -> bool:
    q, p = m.quiver, m.p
    s, t = q.src(a), q.tgt(a)
    image = matmul_mod(m.mats[a.name], us[s], p)
    if not np.any(image):
        return True
    return rank_mod(np.concatenate([us[t], image], axis=1), p) == us[t].shape[1]


def _grow_tuples(m: RepModule, shape: Tuple[int, ...], closing, chosen: List[np.ndarray]):
    v = len(chosen)
    if v == len(shape):
        yield tuple(chosen)
        return
    for U in subspaces(m.dim[v], m.p, shape[v]):
        chosen.append(U)
        if all(_arrow_stable(m, a, chosen) for a in closing[v]):
            yield from _grow_tuples(m, shape, closing, chosen)
        chosen.pop()


def stable_subspace_tuples(m: RepModule) -> Iterator[Tuple[np.ndarray, ...]]:
    """Arrow-stable subspace tuples ordered by dimension vector.

    Vertices are filled in order and a partial tuple is dropped as soon as an
    arrow between two filled vertices leaves it.
    """
    q = m.quiver
    # arrows decidable once vertex v is filled
    closing = [[a for a in q.arrows if max(q.src(a), q.tgt(a)) == v] for v in range(q.n)]
    shapes = sorted(itertools.product(*(range(x + 1) for x in m.dim)), key=lambda e: (sum(e), e))
    for shape in shapes:
        yield from _grow_tuples(m, shape, closing, [])


# ---------------------------------------------------------------------------
#  F-bar-theta oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FbarVerdict:
    member: bool
    rule: str
    values: Tuple[int, ...] = ()
    violating: Optional[DimVector] = None


def exhaustive_feasible(m: RepModule) -> bool:
    if m.total_dim > FBAR_MAX_TOTAL_DIM:
        return False
    return submodule_count_bound(m) <= EXHAUSTIVE_POINT_LIMIT


def brick_fast_path_applies(m: RepModule, theta: ThetaVector) -> bool:
    q = m.quiver
    if q.relations or not q.acyclic or m.dim.is_zero():
        return False
    return (is_brick(m) and iota_inverse(q, m.dim) == theta and ext1_dim(m, m) >= 1)


def fbar_theta_check(m: RepModule, theta: ThetaVector, mode: str = "auto") -> FbarVerdict:
    """Is every submodule L of m of ``theta(L) <= 0``?

    ``mode`` is ``auto`` (exhaustive when feasible, else the brick rule),
    ``exhaustive`` or ``brick``.
    """
    q = m.quiver
    if mode in ("auto", "exhaustive") and exhaustive_feasible(m):
        values = []
        for us in stable_subspace_tuples(m):
            dim = DimVector(tuple(U.shape[1] for U in us))
            value = euler_pairing(q, theta, dim)
            values.append(value)
            if value > 0:
                return FbarVerdict(False, "exhaustive", tuple(values), dim)
        return FbarVerdict(True, "exhaustive", tuple(values))
    if mode in ("auto", "brick") and brick_fast_path_applies(m, theta):
        return FbarVerdict(True, "brick")
    raise OracleInfeasibleError(
        f"oracle infeasible: dim {m.dim} over F_{m.p} exceeds the exhaustive bounds "
        f"(total dim ≤ {FBAR_MAX_TOTAL_DIM}, at most {EXHAUSTIVE_POINT_LIMIT} subspace tuples) "
        "and the brick rule does not apply")


def in_fbar_theta_oracle(m: RepModule, theta: ThetaVector) -> bool:
    return fbar_theta_check(m, theta).member


# ---------------------------------------------------------------------------
#  Generic perpendicular presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FeiResult:
    found: bool
    l: Optional[int]
    trial: Optional[int]
    presentation: Optional[Presentation]
    cokernel: Optional[RepModule]
    hypothesis: str
    attempts: Dict[int, int] = field(default_factory=dict)
    injective_counts: Dict[int, int] = field(default_factory=dict)


def fbar_hypothesis(m: RepModule, theta: ThetaVector) -> str:
    """``verified``, ``violated`` or ``assumed`` (oracle infeasible)."""
    try:
        return "verified" if fbar_theta_check(m, theta).member else "violated"
    except OracleInfeasibleError:
        return "assumed"


def fei_generic_perp_search(q: Quiver, theta: ThetaVector, m: RepModule, l_max: int,
                            trials: int, seed: int, workers: int = 1) -> FeiResult:
    """Smallest l with a sampled injective f in Hom(l theta) and Hom(Coker f, m) = 0."""
    q.require_path_algebra("fei_generic_perp_search")
    require_positive("trials", trials)
    require_positive("l_max", l_max)
    hypothesis = fbar_hypothesis(m, theta)
    if hypothesis == "violated":
        log.warning("module %s is not in F-bar-theta for theta=%s; search may not succeed",
                    m.name, theta)
    runner = TrialRunner(workers)
    attempts: Dict[int, int] = {}
    injective: Dict[int, int] = {}
    for l in range(1, l_max + 1):
        theta_l = theta.scale(l)
        inj_hits = [0] * trials

        def one(t: int):
            pres = sample_presentation(q, theta_l, derive_seed(seed, "fei", l, t), m.field)
            if not is_injective(pres):
                return None
            inj_hits[t] = 1
            C = cokernel(pres)
            return (pres, C) if hom_dim(C, m) == 0 else None

        outcome = runner.first_success(one, trials)
        attempts[l] = outcome.attempted
        injective[l] = sum(inj_hits[:outcome.attempted])
        if outcome.found:
            pres, C = outcome.result
            log.info("fei search: l=%d succeeded at trial %d", l, outcome.index)
            return FeiResult(True, l, outcome.index, pres, C, hypothesis, attempts, injective)
        log.debug("fei search: l=%d exhausted after %d trials", l, trials)
    return FeiResult(False, None, None, None, None, hypothesis, attempts, injective)
