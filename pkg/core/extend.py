"""
Constructive semibrick extension, growth and maximality probing.

Given a semibrick S over an acyclic path algebra and a member B, the engine
looks for a brick B' of dimension ``l * dimv B`` with ``Hom(B', X) = 0`` and
``Hom(X, B') = 0`` for every member X.  Candidates are random modules; the
success reported is the smallest ``(l, trial)`` so results do not depend on
how trials are scheduled.  Exhaustion is inconclusive, never a disproof.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from core.algebra import DimVector, euler_quadratic, iota_inverse, root_type
from core.config import DEFAULT_L_MAX, DEFAULT_TRIALS, VIOLATION_FLAG
from core.errors import MemberIndexError, require_positive
from core.homology import (
    Semibrick, ext1_dim, hom_dim, intertwiner_matrix, is_brick, is_open_brick,
    require_semibrick,
)
from core.linalg import rank_mod
from core.modrep import RepModule, random_module
from core.optimizations.trial_runner import TrialRunner
from core.presentations import FeiResult, fei_generic_perp_search
from core.randomness import derive_seed

log = logging.getLogger(__name__)

HYPOTHESIS_UNMET = "theorem hypothesis unmet; extension not guaranteed"


@dataclass(frozen=True, eq=False)
class ExtensionCertificate:
    found_module: RepModule
    l: int
    seed: int
    trial: int
    member: int
    base_dim: DimVector
    checks: Dict[str, object]
    notes: Tuple[str, ...] = ()
    root_type: str = ""
    found: bool = field(default=True, init=False)


@dataclass(frozen=True)
class ExhaustedReport:
    l_max: int
    trials: int
    seed: int
    member: int
    per_l: Dict[int, Dict[str, int]]
    notes: Tuple[str, ...] = ()
    root_type: str = ""
    found: bool = field(default=False, init=False)


def _as_semibrick(s: Union[Semibrick, Sequence[RepModule]]) -> Semibrick:
    return s if isinstance(s, Semibrick) else require_semibrick(s)


def _orthogonal(X: RepModule, members: Sequence[RepModule]) -> bool:
    return all(hom_dim(X, Y) == 0 and hom_dim(Y, X) == 0 for Y in members)


def extend_semibrick(s: Union[Semibrick, Sequence[RepModule]], b: int,
                     l_max: int = DEFAULT_L_MAX, trials: int = DEFAULT_TRIALS, seed: int = 0,
                     workers: int = 1) -> Union[ExtensionCertificate, ExhaustedReport]:
    """Search l = 1 .. l_max (only l = 1 when dimv B is tame) for a brick of
    dimension l * dimv B orthogonal to S."""
    s = _as_semibrick(s)
    q = s.quiver
    q.require_path_algebra("extend_semibrick")
    require_positive("trials", trials)
    require_positive("l_max", l_max)
    if not 0 <= b < len(s):
        raise MemberIndexError(f"member index {b} out of range for a semibrick of size {len(s)}")
    B = s.members[b]
    d = B.dim
    notes: List[str] = []
    if ext1_dim(B, B) == 0:
        log.warning("member %d (%s) is exceptional: %s", b, B.name, HYPOTHESIS_UNMET)
        notes.append(HYPOTHESIS_UNMET)
    kind = root_type(q, d)
    # a tame d is extended at l = 1 or not at all
    l_top = 1 if kind == "tame" else l_max
    log.debug("extend: dimv B=%s is %s, q(d)=%d, l <= %d", d, kind, euler_quadratic(q, d), l_top)

    runner = TrialRunner(workers)
    per_l: Dict[int, Dict[str, int]] = {}
    for l in range(1, l_top + 1):
        bricks = [0] * trials

        def one(t: int) -> Optional[RepModule]:
            X = random_module(q, d.scale(l), derive_seed(seed, "extend", l, t), B.field)
            if not is_brick(X):
                return None
            bricks[t] = 1
            return X if _orthogonal(X, s.members) else None

        outcome = runner.first_success(one, trials)
        per_l[l] = {"attempts": outcome.attempted, "bricks": sum(bricks[:outcome.attempted])}
        if outcome.found:
            X = outcome.result.renamed(f"B'(l={l},t={outcome.index})")
            log.info("extend: found brick of dim %s at l=%d trial %d", X.dim, l, outcome.index)
            return ExtensionCertificate(X, l, seed, outcome.index, b, d,
                                        certificate_checks(s.members, X), tuple(notes), kind)
    log.info("extend: exhausted l_max=%d trials=%d", l_max, trials)
    return ExhaustedReport(l_max, trials, seed, b, per_l, tuple(notes), kind)


def certificate_checks(members: Sequence[RepModule], X: RepModule) -> Dict[str, object]:
    return {
        "end_dim": hom_dim(X, X),
        "hom_to_members": [hom_dim(X, Y) for Y in members],
        "hom_from_members": [hom_dim(Y, X) for Y in members],
    }


def _fresh_hom_dim(m: RepModule, n: RepModule) -> int:
    unknowns = sum(m.dim[i] * n.dim[i] for i in range(m.quiver.n))
    return unknowns - rank_mod(intertwiner_matrix(m, n), m.p)


def verify_certificate(s: Union[Semibrick, Sequence[RepModule]], cert: ExtensionCertificate) -> bool:
    """Recompute every condition from scratch, bypassing the Hom cache."""
    members = s.members if isinstance(s, Semibrick) else tuple(s)
    X = cert.found_module
    if X.dim != members[cert.member].dim.scale(cert.l):
        return False
    if _fresh_hom_dim(X, X) != 1:
        return False
    return all(_fresh_hom_dim(X, Y) == 0 and _fresh_hom_dim(Y, X) == 0 for Y in members)


# ---------------------------------------------------------------------------
#  Growth
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GrowthResult:
    semibrick: Semibrick
    partial: bool
    certificates: Tuple[ExtensionCertificate, ...]
    exhausted: Optional[ExhaustedReport] = None


def grow_semibrick(s: Union[Semibrick, Sequence[RepModule]], b: int, target_size: int,
                   l_max: int = DEFAULT_L_MAX, trials: int = DEFAULT_TRIALS, seed: int = 0,
                   workers: int = 1) -> GrowthResult:
    """Apply extend_semibrick repeatedly, always against the whole current set."""
    s = _as_semibrick(s)
    current = s
    certs: List[ExtensionCertificate] = []
    rnd = 0
    while len(current) < target_size:
        result = extend_semibrick(current, b, l_max, trials, derive_seed(seed, "grow", rnd), workers)
        rnd += 1
        if not result.found:
            log.info("grow: stopped at size %d of %d", len(current), target_size)
            return GrowthResult(current, True, tuple(certs), result)
        certs.append(result)
        current = require_semibrick(current.members + (result.found_module,))
    return GrowthResult(current, False, tuple(certs))


# ---------------------------------------------------------------------------
#  Maximality
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProbeReport:
    verdict: str
    extensions: Tuple[Tuple[DimVector, int, RepModule], ...]
    open_members: Tuple[bool, ...]
    trials: int
    pool: Tuple[DimVector, ...]

    @property
    def flag(self) -> Optional[str]:
        return VIOLATION_FLAG if self.verdict == VIOLATION_FLAG else None


def maximality_probe(s: Union[Semibrick, Sequence[RepModule]], dim_pool: Sequence,
                     trials: int = DEFAULT_TRIALS, seed: int = 0) -> ProbeReport:
    """Look for bricks in ``dim_pool`` that could join S."""
    s = _as_semibrick(s)
    q = s.quiver
    q.require_path_algebra("maximality_probe")
    require_positive("trials", trials)
    require_positive("dim_pool size", len(dim_pool))
    pool = tuple(q.dim_vector(d) for d in dim_pool)
    field_ = s.members[0].field
    found = []
    for k, d in enumerate(pool):
        if d.is_zero():
            continue
        for t in range(trials):
            X = random_module(q, d, derive_seed(seed, "probe", k, t), field_)
            if is_brick(X) and _orthogonal(X, s.members):
                found.append((d, t, X))
                break
    open_members = tuple(is_open_brick(m) for m in s.members)
    if found:
        verdict = "not-maximal"
    elif all(open_members):
        verdict = "maximal-within-budget"
    else:
        verdict = VIOLATION_FLAG
        log.warning("probe: no extension found but some member is not open (%s)", VIOLATION_FLAG)
    return ProbeReport(verdict, tuple(found), open_members, trials, pool)


# ---------------------------------------------------------------------------
#  Perpendicular witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PerpWitnesses:
    left: FeiResult
    right_l: Optional[int]
    right_module: Optional[RepModule]

    @property
    def left_l(self) -> Optional[int]:
        return self.left.l

    @property
    def product(self) -> Optional[int]:
        if self.left.l is None or self.right_l is None:
            return None
        return self.left.l * self.right_l


def perp_witnesses(b: RepModule, l_max: int = DEFAULT_L_MAX, trials: int = DEFAULT_TRIALS,
                   seed: int = 0, workers: int = 1) -> PerpWitnesses:
    """X1 with Hom(X1, B) = 0 from a presentation, X2 with Hom(B, X2) = 0 by sampling."""
    q = b.quiver
    q.require_path_algebra("perp_witnesses")
    require_positive("trials", trials)
    require_positive("l_max", l_max)
    theta = iota_inverse(q, b.dim)
    left = fei_generic_perp_search(q, theta, b, l_max, trials, derive_seed(seed, "perp-left"), workers)
    runner = TrialRunner(workers)
    for l in range(1, l_max + 1):
        def one(t: int) -> Optional[RepModule]:
            X = random_module(q, b.dim.scale(l), derive_seed(seed, "perp-right", l, t), b.field)
            return X if hom_dim(b, X) == 0 else None

        outcome = runner.first_success(one, trials)
        if outcome.found:
            return PerpWitnesses(left, l, outcome.result)
    return PerpWitnesses(left, None, None)
