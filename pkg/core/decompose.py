"""
Krull-Schmidt decomposition of sampled modules and the canonical
decomposition of dimension vectors.

A module is split by Fitting's lemma: for a random endomorphism ``phi``
whose characteristic polynomial factors as ``g^e * h`` with ``gcd(g, h) = 1``,
``M = ker g(phi)^e  (+)  im g(phi)^e`` and both pieces are submodules.  A
piece is declared indecomposable when End has dimension 1 (exact) or after
``trials`` consecutive endomorphisms whose characteristic polynomial is a
power of a single irreducible (one-sided, randomised).
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_mul, gf_pow

from core.algebra import DimVector, Quiver, euler_quadratic, root_type
from core.config import (
    DEFAULT_PRIME, DEFAULT_SAMPLES, DEFAULT_SPLIT_TRIALS, DEFAULT_TRIALS,
    EXHAUSTIVE_POINT_LIMIT,
)
from core.errors import OracleInfeasibleError, require_positive
from core.homology import (
    ext1_dim, find_isomorphism, hom_space, intertwiner_matrix, is_brick, is_isomorphic,
    orbit_dim,
)
from core.linalg import (
    block_diag, charpoly_mod, column_basis, identity, inv_mod_mat, matmul_mod,
    nullspace_mod, poly_eval_matrix, rank_mod,
)
from core.modrep import FieldSpec, RepModule, random_module, submodule
from core.optimizations.trial_runner import TrialRunner
from core.randomness import derive_seed

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
#  Decomposition of a module
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndecCertificate:
    """Why a block is believed indecomposable."""
    end_dim: int
    exact: bool
    non_splitting_trials: int


@dataclass(frozen=True, eq=False)
class Decomposition:
    """``basis[i]`` has the blocks' bases as consecutive column groups."""
    module: RepModule
    blocks: Tuple[RepModule, ...]
    certificates: Tuple[IndecCertificate, ...]
    basis: Tuple[np.ndarray, ...]
    summands: Tuple[Tuple[RepModule, int], ...]

    def dim_multiset(self) -> Tuple[DimVector, ...]:
        return tuple(sorted((b.dim for b in self.blocks), key=lambda v: v.entries))


def _charpoly(phi: Sequence[np.ndarray], p: int) -> List[int]:
    chi = [1]
    for block in phi:
        if block.shape[0]:
            chi = gf_mul(chi, ZZ.map(charpoly_mod(block, p)), p, ZZ)
    return [int(c) for c in chi]


def _fitting_split(m: RepModule, seed: int, trials: int):
    """Return ``(kernel bases, image bases)`` or a certificate if no split was found."""
    p = m.p
    End = hom_space(m, m)
    if End.dim <= 1:
        return None, IndecCertificate(End.dim, True, 0)
    for k in range(trials):
        phi = End.random_element(derive_seed(seed, "split", k))
        _, factors = gf_factor(ZZ.map(_charpoly(phi, p)), p, ZZ)
        if len(factors) < 2:
            continue
        g, e = factors[0]
        ge = [int(c) for c in gf_pow(g, e, p, ZZ)]
        psi = [poly_eval_matrix(ge, block, p) for block in phi]
        kernels = [nullspace_mod(x, p) for x in psi]
        images = [column_basis(x, p) for x in psi]
        log.debug("split %s after %d endomorphisms", m.dim, k + 1)
        return (kernels, images), None
    return None, IndecCertificate(End.dim, False, trials)


def _decompose(m: RepModule, seed: int, trials: int):
    if m.dim.is_zero():
        return [], [], [identity(0) for _ in m.dim]
    split, cert = _fitting_split(m, seed, trials)
    if split is None:
        return [m], [cert], [identity(x) for x in m.dim]
    kernels, images = split
    blocks, certs, bases = [], [], [[] for _ in m.dim]
    for tag, us in (("ker", kernels), ("im", images)):
        part = submodule(m, us)
        sub_blocks, sub_certs, sub_basis = _decompose(part, derive_seed(seed, tag), trials)
        blocks += sub_blocks
        certs += sub_certs
        for i, U in enumerate(us):
            bases[i].append(matmul_mod(U, sub_basis[i], m.p))
    return blocks, certs, [np.concatenate(cols, axis=1) for cols in bases]


def _group(blocks: Sequence[RepModule], seed: int) -> Tuple[Tuple[RepModule, int], ...]:
    reps: List[List] = []
    for k, b in enumerate(blocks):
        for entry in reps:
            if entry[0].dim == b.dim and find_isomorphism(entry[0], b, derive_seed(seed, "group", k)) is not None:
                entry[1] += 1
                break
        else:
            reps.append([b, 1])
    return tuple((r, c) for r, c in reps)


def decompose_indec(m: RepModule, seed: int = 0, trials: int = DEFAULT_SPLIT_TRIALS) -> Decomposition:
    """Split *m* into indecomposable blocks; summands are grouped up to isomorphism."""
    require_positive("trials", trials)
    blocks, certs, basis = _decompose(m, seed, trials)
    named = [b.renamed(f"{m.name or 'M'}[{k}]") for k, b in enumerate(blocks)]
    return Decomposition(m, tuple(named), tuple(certs), tuple(basis), _group(named, seed))


def verify_decomposition(m: RepModule, dec: Decomposition) -> bool:
    """Exact check that the basis conjugates *m* into the block-diagonal sum."""
    q, p = m.quiver, m.p
    total = [sum(b.dim[i] for b in dec.blocks) for i in range(q.n)]
    if tuple(total) != m.dim.entries:
        return False
    try:
        inverses = [inv_mod_mat(T, p) for T in dec.basis]
    except ValueError:
        return False
    for a in q.arrows:
        conj = matmul_mod(inverses[q.tgt(a)], matmul_mod(m.mats[a.name], dec.basis[q.src(a)], p), p)
        expected = block_diag([b.mats[a.name] for b in dec.blocks]) if dec.blocks else conj
        if not np.array_equal(conj, expected):
            return False
    return True


# ---------------------------------------------------------------------------
#  Canonical decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalDecomposition:
    summands: Tuple[DimVector, ...]
    votes: Dict[Tuple[Tuple[int, ...], ...], int]
    samples: int
    p: int
    escalated: bool = False

    @property
    def agreement(self) -> float:
        key = tuple(v.entries for v in self.summands)
        return self.votes.get(key, 0) / self.samples

    @property
    def disagreement(self) -> bool:
        return len(self.votes) > 1


def _vote(q: Quiver, d: DimVector, seed: int, samples: int, field: FieldSpec, workers: int):
    def one(k: int):
        M = random_module(q, d, derive_seed(seed, "candecomp", k), field)
        dec = decompose_indec(M, derive_seed(seed, "candecomp-split", k))
        return tuple(v.entries for v in dec.dim_multiset())

    return Counter(TrialRunner(workers).map(one, samples))


def canonical_decomposition(q: Quiver, d, seed: int = 0, samples: int = DEFAULT_SAMPLES,
                            field: Optional[FieldSpec] = None, workers: int = 1) -> CanonicalDecomposition:
    """Majority vote over the summand multisets of ``samples`` random modules."""
    q.require_path_algebra("canonical_decomposition")
    require_positive("samples", samples)
    field = field or FieldSpec()
    d = q.dim_vector(d)
    votes = _vote(q, d, seed, samples, field, workers)
    escalated = False
    if len(votes) > 1 and field.p < DEFAULT_PRIME:
        log.warning("canonical decomposition of %s disagrees over F_%d; retrying over F_%d",
                    d, field.p, DEFAULT_PRIME)
        field = FieldSpec(DEFAULT_PRIME)
        votes = _vote(q, d, seed, samples, field, workers)
        escalated = True
    # ties go to the smallest multiset
    best = min(votes, key=lambda key: (-votes[key], key))
    return CanonicalDecomposition(tuple(DimVector(v) for v in best), dict(votes),
                                  samples, field.p, escalated)


# ---------------------------------------------------------------------------
#  Schur roots
# ---------------------------------------------------------------------------

VERDICTS = ("real", "tame", "wild", "probably-not-schur")


@dataclass(frozen=True)
class ExhaustiveResult:
    found: bool
    p: int
    points: int
    example: Optional[RepModule] = None


def exhaustive_brick_search(q: Quiver, d, p: int, limit: int = EXHAUSTIVE_POINT_LIMIT) -> ExhaustiveResult:
    """Visit every point of rep(Q, d) over F_p and report whether a brick occurs."""
    q.require_path_algebra("exhaustive_brick_search", acyclic=False)
    d = q.dim_vector(d)
    field = FieldSpec(p)
    shapes = [(d[q.tgt(a)], d[q.src(a)]) for a in q.arrows]
    n_entries = sum(r * c for r, c in shapes)
    points = p ** n_entries
    if points > limit:
        raise OracleInfeasibleError(f"rep(Q,{d}) over F_{p} has {points} points (limit {limit})")
    if d.is_zero():
        return ExhaustiveResult(False, p, 1)
    unknowns = sum(x * x for x in d)
    for values in itertools.product(range(p), repeat=n_entries):
        mats, pos = {}, 0
        for a, (r, c) in zip(q.arrows, shapes):
            mats[a.name] = np.array(values[pos:pos + r * c], dtype=np.int64).reshape(r, c)
            pos += r * c
        M = RepModule(q, field, d, mats)
        # bypass the shared cache: these modules are throwaway
        if unknowns - rank_mod(intertwiner_matrix(M, M), p) == 1:
            return ExhaustiveResult(True, p, points, M)
    return ExhaustiveResult(False, p, points)


@dataclass(frozen=True)
class SchurClassification:
    verdict: str
    q_value: int
    trials: int
    first_brick_trial: Optional[int]
    doubled: Optional[CanonicalDecomposition] = None
    expected_doubled: Tuple[DimVector, ...] = ()
    mismatches: Tuple[str, ...] = ()
    exhaustive: Tuple[ExhaustiveResult, ...] = ()

    @property
    def is_schur(self) -> bool:
        return self.verdict != "probably-not-schur"


def find_brick(q: Quiver, d, seed: int, trials: int, field: Optional[FieldSpec] = None,
               workers: int = 1):
    """First brick among ``trials`` random modules of dimension d."""
    field = field or FieldSpec()

    def one(t: int):
        X = random_module(q, d, derive_seed(seed, "schur", t), field)
        return X if is_brick(X) else None

    return TrialRunner(workers).first_success(one, trials)


def classify_schur_root(q: Quiver, d, seed: int = 0, trials: int = DEFAULT_TRIALS,
                        samples: int = DEFAULT_SAMPLES, field: Optional[FieldSpec] = None,
                        exhaustive_primes: Sequence[int] = (), workers: int = 1) -> SchurClassification:
    """real / tame / wild by the sign of q(d) once a brick is sampled."""
    q.require_path_algebra("classify_schur_root")
    require_positive("trials", trials)
    d = q.dim_vector(d)
    qd = euler_quadratic(q, d)
    outcome = find_brick(q, d, seed, trials, field, workers) if not d.is_zero() else None
    if outcome is None or not outcome.found:
        checks = tuple(exhaustive_brick_search(q, d, p) for p in exhaustive_primes)
        mismatches = tuple(f"exhaustive search over F_{c.p} found a brick" for c in checks if c.found)
        return SchurClassification("probably-not-schur", qd, trials, None,
                                   mismatches=mismatches, exhaustive=checks)
    if qd > 1:
        raise ArithmeticError(f"brick of dimension {d} found with q(d)={qd} > 1")
    verdict = root_type(q, d)
    doubled = canonical_decomposition(q, d.scale(2), derive_seed(seed, "doubled"), samples, field, workers)
    expected = (d, d) if verdict in ("real", "tame") else (d.scale(2),)
    mismatches = ()
    if doubled.summands != tuple(sorted(expected, key=lambda v: v.entries)):
        mismatches = (f"canonical decomposition of 2d is "
                      f"{' + '.join(map(str, doubled.summands))}, expected "
                      f"{' + '.join(map(str, expected))}",)
        log.warning("classify %s: %s", d, mismatches[0])
    log.info("classify %s: %s (q=%d, first brick at trial %d)", d, verdict, qd, outcome.index)
    return SchurClassification(verdict, qd, trials, outcome.index, doubled, expected, mismatches)


# ---------------------------------------------------------------------------
#  Brick component evidence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BrickComponentReport:
    verdict: str
    samples: int
    brick_count: int
    orbit_codim_one: bool
    pairwise_isomorphic: Optional[bool]
    ext1_self: Optional[int]


def brick_component_report(q: Quiver, d, samples: int, seed: int = 0,
                           field: Optional[FieldSpec] = None) -> BrickComponentReport:
    q.require_path_algebra("brick_component_report")
    require_positive("samples", samples)
    field = field or FieldSpec()
    d = q.dim_vector(d)
    gl = sum(x * x for x in d)
    bricks = []
    for k in range(samples):
        X = random_module(q, d, derive_seed(seed, "component", k), field)
        if not d.is_zero() and is_brick(X):
            bricks.append(X)
    if not bricks:
        return BrickComponentReport("no bricks sampled", samples, 0, False, None, None)
    codim_one = all(orbit_dim(b) == gl - 1 for b in bricks)
    iso = all(is_isomorphic(bricks[0], b, derive_seed(seed, "component-iso", k))
              for k, b in enumerate(bricks[1:]))
    ext = ext1_dim(bricks[0], bricks[0])
    if not iso:
        verdict = "infinitely many non-open bricks"
    elif ext == 0:
        verdict = "unique open brick"
    else:
        verdict = "inconclusive"
    return BrickComponentReport(verdict, samples, len(bricks), codim_one, iso, ext)
