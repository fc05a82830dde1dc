"""
Executable invariant suite.

Each check is a function ``(seed, workers) -> (passed, detail)`` registered
with :func:`check`.  ``run_selftest`` runs them in registration order and
returns a report whose content depends only on the seed, so two runs with
the same seed serialise to identical JSON.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from core.algebra import (
    Quiver, euler_form_mod, euler_pairing, euler_quadratic, iota, iota_inverse, load_quiver,
    parse_quiver, random_acyclic_quiver, random_dim_vector,
)
from core.config import MODULE_DIR, MODULE_SUFFIX, QUIVER_DIR, QUIVER_SUFFIX, VIOLATION_FLAG
from core.decompose import (
    brick_component_report, canonical_decomposition, classify_schur_root, decompose_indec,
    find_brick, verify_decomposition,
)
from core.extend import (
    extend_semibrick, grow_semibrick, maximality_probe, verify_certificate,
)
from core.homology import (
    ext1_dim, generic_hom_dim, generic_perp_fractions, hom_dim, hom_space, is_brick,
    is_intertwiner, is_isomorphic, is_semibrick, orbit_dim,
)
from core.modrep import (
    FieldSpec, RepModule, check_relations, direct_sum, direct_sum_all, module_from_dict,
    module_to_dict, random_basis_change, random_module, read_module,
)
from core.presentations import (
    cokernel, fbar_theta_check, is_injective, sample_presentation, theta_identity,
)
from core.randomness import derive_seed, stream

log = logging.getLogger(__name__)

CheckFn = Callable[[int, int], Tuple[bool, Dict[str, Any]]]

REGISTRY: List[Tuple[str, str, CheckFn]] = []


def check(name: str, module: str) -> Callable[[CheckFn], CheckFn]:
    """Register a self-test check under *name* for library *module*."""
    def decorator(fn: CheckFn) -> CheckFn:
        REGISTRY.append((name, module, fn))
        return fn
    return decorator


@dataclass(frozen=True)
class CheckResult:
    name: str
    module: str
    passed: bool
    detail: Dict[str, Any]


# ---------------------------------------------------------------------------
#  Fixtures
# ---------------------------------------------------------------------------

def bundled_quiver(name: str) -> Quiver:
    return load_quiver(QUIVER_DIR / f"{name}{QUIVER_SUFFIX}")


def bundled_module(name: str) -> RepModule:
    return read_module(MODULE_DIR / f"{name}{MODULE_SUFFIX}")


def _quiver_pool(seed: int, count: int, max_vertices: int = 5, max_arrows: int = 7) -> List[Quiver]:
    pool = []
    for k in range(count):
        rng = stream(derive_seed(seed, "selftest-quiver", k), 0)
        n = int(rng.integers(1, max_vertices + 1))
        arrows = int(rng.integers(0, max_arrows + 1))
        pool.append(random_acyclic_quiver(n, arrows, derive_seed(seed, "q", k), name=f"rand{k}"))
    return pool


# ---------------------------------------------------------------------------
#  core-algebra
# ---------------------------------------------------------------------------

@check("iota-roundtrip", "algebra")
def _iota_roundtrip(seed: int, workers: int):
    failures = 0
    for k, q in enumerate(_quiver_pool(seed, 10)):
        for j in range(20):
            d = random_dim_vector(q, 4, derive_seed(seed, "iota", k, j), min_total=0)
            if iota(q, iota_inverse(q, d)) != d.entries:
                failures += 1
    return failures == 0, {"cases": 200, "failures": failures}


@check("euler-pairing-consistency", "algebra")
def _euler_consistency(seed: int, workers: int):
    failures = 0
    for k, q in enumerate(_quiver_pool(seed, 10)):
        for j in range(20):
            d = random_dim_vector(q, 4, derive_seed(seed, "euler-d", k, j), min_total=0)
            e = random_dim_vector(q, 4, derive_seed(seed, "euler-e", k, j), min_total=0)
            if euler_form_mod(q, d, e) != euler_pairing(q, iota_inverse(q, d), e):
                failures += 1
    return failures == 0, {"cases": 200, "failures": failures}


@check("euler-bilinearity", "algebra")
def _euler_bilinearity(seed: int, workers: int):
    failures = 0
    for k, q in enumerate(_quiver_pool(seed, 10)):
        for j in range(20):
            a, b, c = (random_dim_vector(q, 4, derive_seed(seed, "bilinear", k, j, i), min_total=0)
                       for i in range(3))
            ta, tb = iota_inverse(q, a), iota_inverse(q, b)
            ok = (
                euler_pairing(q, ta + tb, c) == euler_pairing(q, ta, c) + euler_pairing(q, tb, c)
                and euler_pairing(q, ta, b + c) == euler_pairing(q, ta, b) + euler_pairing(q, ta, c)
                and euler_form_mod(q, a + b, c) == euler_form_mod(q, a, c) + euler_form_mod(q, b, c)
                and euler_form_mod(q, a, b + c) == euler_form_mod(q, a, b) + euler_form_mod(q, a, c)
                and euler_form_mod(q, a, b) + euler_form_mod(q, b, a)
                == euler_quadratic(q, a + b) - euler_quadratic(q, a) - euler_quadratic(q, b)
            )
            failures += not ok
    return failures == 0, {"cases": 200, "failures": failures}


@check("topological-order-iff-acyclic", "algebra")
def _topological_order(seed: int, workers: int):
    quivers = _quiver_pool(seed, 10) + [
        bundled_quiver(n) for n in ("a1", "a2", "k2", "k3", "loop")
    ] + [parse_quiver("vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n", "cycle2")]
    bad = [q.name for q in quivers if (q.topological_order() is not None) != q.acyclic]
    return not bad, {"quivers": len(quivers), "mismatched": bad}


@check("quiver-text-roundtrip", "algebra")
def _quiver_text(seed: int, workers: int):
    quivers = [bundled_quiver(n) for n in ("a1", "a2", "k2", "k3", "loop")] + _quiver_pool(seed, 5)
    bad = [q.name for q in quivers if parse_quiver(q.to_text(), q.name) != q]
    return not bad, {"quivers": len(quivers), "mismatched": bad}


# ---------------------------------------------------------------------------
#  modrep
# ---------------------------------------------------------------------------

@check("sampling-determinism", "modrep")
def _sampling_determinism(seed: int, workers: int):
    failures = 0
    for k, q in enumerate(_quiver_pool(seed, 10)):
        d = random_dim_vector(q, 3, derive_seed(seed, "det", k))
        a = random_module(q, d, derive_seed(seed, "det-m", k))
        b = random_module(q, d, derive_seed(seed, "det-m", k))
        if a != b:
            failures += 1
        if random_basis_change(a, k) != random_basis_change(b, k):
            failures += 1
    return failures == 0, {"cases": 10, "failures": failures}


@check("orbit-invariance", "modrep")
def _orbit_invariance(seed: int, workers: int):
    failures = 0
    quivers = _quiver_pool(seed, 10, max_vertices=4, max_arrows=5)
    for k in range(100):
        q = quivers[k % len(quivers)]
        d = random_dim_vector(q, 3, derive_seed(seed, "orbit-d", k))
        e = random_dim_vector(q, 3, derive_seed(seed, "orbit-e", k))
        M = random_module(q, d, derive_seed(seed, "orbit-M", k))
        N = random_module(q, e, derive_seed(seed, "orbit-N", k))
        gM = random_basis_change(M, derive_seed(seed, "orbit-g", k))
        hN = random_basis_change(N, derive_seed(seed, "orbit-h", k))
        same = (hom_dim(M, N) == hom_dim(gM, hN)
                and ext1_dim(M, N) == ext1_dim(gM, hN)
                and is_brick(M) == is_brick(gM))
        failures += not same
    return failures == 0, {"cases": 100, "failures": failures}


@check("module-json-roundtrip", "modrep")
def _module_roundtrip(seed: int, workers: int):
    failures = 0
    for k, q in enumerate(_quiver_pool(seed, 10)):
        M = random_module(q, random_dim_vector(q, 3, derive_seed(seed, "json", k)),
                          derive_seed(seed, "json-m", k))
        if module_from_dict(module_to_dict(M), q) != M:
            failures += 1
    return failures == 0, {"cases": 10, "failures": failures}


@check("relations-enforced", "modrep")
def _relations(seed: int, workers: int):
    nilpotent = bundled_module("loop_n")
    q = nilpotent.quiver
    bad = RepModule(q, nilpotent.field, nilpotent.dim, {"a": [[0, 1], [1, 0]]})
    return check_relations(nilpotent) and not check_relations(bad), {
        "satisfies": check_relations(nilpotent), "violates": not check_relations(bad)}


# ---------------------------------------------------------------------------
#  homology
# ---------------------------------------------------------------------------

@check("euler-identity", "homology")
def _euler_identity(seed: int, workers: int):
    failures = 0
    quivers = _quiver_pool(seed, 10)
    for k in range(200):
        q = quivers[k % len(quivers)]
        d = random_dim_vector(q, 4, derive_seed(seed, "ei-d", k), min_total=0)
        e = random_dim_vector(q, 4, derive_seed(seed, "ei-e", k), min_total=0)
        M = random_module(q, d, derive_seed(seed, "ei-M", k))
        N = random_module(q, e, derive_seed(seed, "ei-N", k))
        if hom_dim(M, N) - ext1_dim(M, N) != euler_form_mod(q, d, e):
            failures += 1
    return failures == 0, {"cases": 200, "failures": failures}


@check("hom-additivity", "homology")
def _hom_additivity(seed: int, workers: int):
    failures = 0
    quivers = _quiver_pool(seed, 10, max_vertices=4, max_arrows=5)
    for k in range(100):
        q = quivers[k % len(quivers)]
        M1, M2, N = (random_module(q, random_dim_vector(q, 3, derive_seed(seed, "add-d", k, t)),
                                   derive_seed(seed, "add", k, t)) for t in range(3))
        if hom_dim(direct_sum(M1, M2), N) != hom_dim(M1, N) + hom_dim(M2, N):
            failures += 1
    return failures == 0, {"cases": 100, "failures": failures}


@check("hom-basis-intertwines", "homology")
def _hom_basis(seed: int, workers: int):
    failures = 0
    quivers = _quiver_pool(seed, 10, max_vertices=4, max_arrows=5)
    for k in range(30):
        q = quivers[k % len(quivers)]
        M = random_module(q, random_dim_vector(q, 3, derive_seed(seed, "hb-d", k)), derive_seed(seed, "hb-M", k))
        H = hom_space(M, M)
        failures += sum(not is_intertwiner(M, M, f) for f in H.basis)
        failures += H.dim != hom_dim(M, M)
    return failures == 0, {"cases": 30, "failures": failures}


_BUNDLED_DIMS = {
    "a1": [(1,)],
    "a2": [(1, 0), (0, 1), (1, 1)],
    "k2": [(1, 1), (1, 2)],
    "k3": [(1, 1)],
}


@check("generic-semicontinuity", "homology")
def _semicontinuity(seed: int, workers: int):
    worst = 1.0
    pairs = 0
    for name, dims in _BUNDLED_DIMS.items():
        q = bundled_quiver(name)
        for k, (d, e) in enumerate(itertools.product(dims, repeat=2)):
            g = generic_hom_dim(q, d, e, 100, derive_seed(seed, "semi", name, k), workers=workers)
            worst = min(worst, g.fraction)
            pairs += 1
    return worst >= 0.9, {"pairs": pairs, "worst_fraction": worst}


@check("brick-iff-orbit-codim-one", "homology")
def _brick_codim(seed: int, workers: int):
    failures = 0
    for k, q in enumerate(_quiver_pool(seed, 10, max_vertices=4, max_arrows=5)):
        for j in range(5):
            d = random_dim_vector(q, 3, derive_seed(seed, "codim-d", k, j))
            M = random_module(q, d, derive_seed(seed, "codim", k, j))
            if is_brick(M) != (orbit_dim(M) == sum(x * x for x in d) - 1):
                failures += 1
    return failures == 0, {"cases": 50, "failures": failures}


@check("perp-fractions", "homology")
def _perp_fractions(seed: int, workers: int):
    open_b = generic_perp_fractions(bundled_module("a2_p1"), 20, derive_seed(seed, "perp-open"), workers)
    wild_b = generic_perp_fractions(bundled_module("r1"), 20, derive_seed(seed, "perp-r1"), workers)
    ok = (open_b.hom_to_b_zero == 0 and open_b.hom_from_b_zero == 0
          and wild_b.hom_to_b_zero >= 0.9 and wild_b.hom_from_b_zero >= 0.9)
    return ok, {"open": [open_b.hom_to_b_zero, open_b.hom_from_b_zero],
                "non_open": [wild_b.hom_to_b_zero, wild_b.hom_from_b_zero]}


# ---------------------------------------------------------------------------
#  decompose
# ---------------------------------------------------------------------------

_BRICK_DIMS = {"k2": [(1, 1), (1, 2), (2, 1)], "k3": [(1, 1), (1, 2), (2, 1), (2, 2)]}


def _random_brick(q: Quiver, d, seed: int) -> RepModule:
    outcome = find_brick(q, d, seed, 40)
    if not outcome.found:
        raise ArithmeticError(f"no brick of dimension {d} in 40 trials")
    return outcome.result


@check("decomposition-soundness", "decompose")
def _decomposition(seed: int, workers: int):
    failures = unverified = 0
    for k in range(50):
        name = "k2" if k % 2 == 0 else "k3"
        q = bundled_quiver(name)
        rng = stream(derive_seed(seed, "dec", k), 0)
        dims = _BRICK_DIMS[name]
        count = 2 + int(rng.integers(0, 2))
        picks = [dims[int(i)] for i in rng.choice(len(dims), size=count, replace=False)]
        bricks = [_random_brick(q, d, derive_seed(seed, "dec-b", k, j)) for j, d in enumerate(picks)]
        M = random_basis_change(direct_sum_all(bricks), derive_seed(seed, "dec-g", k))
        dec = decompose_indec(M, derive_seed(seed, "dec-split", k))
        expected = tuple(sorted((b.dim for b in bricks), key=lambda v: v.entries))
        failures += dec.dim_multiset() != expected
        unverified += not verify_decomposition(M, dec)
        total = [sum(c * s.dim[i] for s, c in dec.summands) for i in range(q.n)]
        failures += tuple(total) != M.dim.entries
    return failures == 0 and unverified == 0, {
        "cases": 50, "failures": failures, "unverified": unverified}


@check("decomposition-idempotence", "decompose")
def _idempotence(seed: int, workers: int):
    failures = cases = 0
    q = bundled_quiver("k2")
    k = 0
    while cases < 50:
        d = random_dim_vector(q, 3, derive_seed(seed, "idem-d", k))
        M = random_module(q, d, derive_seed(seed, "idem", k))
        for j, block in enumerate(decompose_indec(M, derive_seed(seed, "idem-split", k)).blocks):
            again = decompose_indec(block, derive_seed(seed, "idem-again", k, j))
            failures += len(again.blocks) != 1 or again.blocks[0] != block
            cases += 1
        k += 1
    return failures == 0, {"cases": cases, "failures": failures}


@check("canonical-decomposition-scaling", "decompose")
def _canonical_scaling(seed: int, workers: int):
    cases = []
    failures = 0
    for name, d in (("k2", (1, 1)), ("k2", (1, 2)), ("k3", (1, 1))):
        q = bundled_quiver(name)
        cls = classify_schur_root(q, d, derive_seed(seed, "scale-cls", name, d), samples=3, workers=workers)
        for l in (2, 3):
            dv = q.dim_vector(d)
            got = canonical_decomposition(q, dv.scale(l), derive_seed(seed, "scale", name, d, l),
                                          samples=3, workers=workers).summands
            want = (dv,) * l if cls.q_value in (0, 1) else (dv.scale(l),)
            failures += got != want
            cases.append(f"{name}{list(d)}x{l}")
    return failures == 0, {"cases": cases, "failures": failures}


@check("kronecker-regression", "decompose")
def _kronecker(seed: int, workers: int):
    k2, k3 = bundled_quiver("k2"), bundled_quiver("k3")
    verdicts = {
        "k2(1,2)": classify_schur_root(k2, (1, 2), seed, samples=3, workers=workers).verdict,
        "k2(1,1)": classify_schur_root(k2, (1, 1), seed, samples=3, workers=workers).verdict,
        "k3(1,1)": classify_schur_root(k3, (1, 1), seed, samples=3, workers=workers).verdict,
    }
    not_schur = classify_schur_root(k2, (2, 2), seed, trials=40, samples=3,
                                    exhaustive_primes=(2, 3), workers=workers)
    verdicts["k2(2,2)"] = not_schur.verdict
    candecomp = {
        "k2(2,2)": [list(v.entries) for v in canonical_decomposition(k2, (2, 2), seed, 3).summands],
        "k3(2,2)": [list(v.entries) for v in canonical_decomposition(k3, (2, 2), seed, 3).summands],
    }
    ok = (verdicts == {"k2(1,2)": "real", "k2(1,1)": "tame", "k3(1,1)": "wild",
                       "k2(2,2)": "probably-not-schur"}
          and not not_schur.mismatches
          and all(not c.found for c in not_schur.exhaustive)
          and candecomp == {"k2(2,2)": [[1, 1], [1, 1]], "k3(2,2)": [[2, 2]]})
    return ok, {"verdicts": verdicts, "canonical": candecomp}


@check("real-root-uniqueness", "decompose")
def _real_root(seed: int, workers: int):
    q = bundled_quiver("k2")
    bricks = [_random_brick(q, (1, 2), derive_seed(seed, "real", k)) for k in range(20)]
    iso = sum(is_isomorphic(bricks[0], b, derive_seed(seed, "real-iso", k)) for k, b in enumerate(bricks))
    return iso == len(bricks), {"samples": len(bricks), "isomorphic": iso}


@check("brick-component-report", "decompose")
def _component(seed: int, workers: int):
    k2 = brick_component_report(bundled_quiver("k2"), (1, 1), 10, seed).verdict
    a2 = brick_component_report(bundled_quiver("a2"), (1, 1), 10, seed).verdict
    ok = k2 == "infinitely many non-open bricks" and a2 == "unique open brick"
    return ok, {"k2(1,1)": k2, "a2(1,1)": a2}


# ---------------------------------------------------------------------------
#  presentations
# ---------------------------------------------------------------------------

@check("theta-identity", "presentations")
def _theta_identity(seed: int, workers: int):
    failures = injective = 0
    quivers = _quiver_pool(seed, 10, max_vertices=4, max_arrows=4)
    for k in range(100):
        q = quivers[k % len(quivers)]
        rng = stream(derive_seed(seed, "theta", k), 0)
        theta = q.theta_vector([int(x) for x in rng.integers(-2, 3, size=q.n)])
        pres = sample_presentation(q, theta, derive_seed(seed, "theta-f", k))
        if not is_injective(pres):
            continue
        injective += 1
        if cokernel(pres).dim.entries != iota(q, theta):
            failures += 1
        for j in range(5):
            M = random_module(q, random_dim_vector(q, 3, derive_seed(seed, "theta-d", k, j), min_total=0),
                              derive_seed(seed, "theta-M", k, j))
            failures += not theta_identity(pres, M).holds
    return failures == 0, {"cases": 100, "injective": injective, "failures": failures}


@check("minimal-presentation", "presentations")
def _minimal_presentation(seed: int, workers: int):
    failures = injective = 0
    quivers = _quiver_pool(seed, 10, max_vertices=4, max_arrows=4)
    for k in range(50):
        q = quivers[k % len(quivers)]
        d = random_dim_vector(q, 3, derive_seed(seed, "minpres", k))
        pres = sample_presentation(q, iota_inverse(q, d), derive_seed(seed, "minpres-f", k))
        if is_injective(pres):
            injective += 1
            failures += cokernel(pres).dim != d
    return failures == 0 and injective > 0, {"cases": 50, "injective": injective, "failures": failures}


@check("fbar-oracle-agreement", "presentations")
def _fbar_agreement(seed: int, workers: int):
    compared = disagreements = 0
    for name, p in (("k2", 2), ("k2", 3), ("k3", 2), ("k3", 3)):
        q = bundled_quiver(name)
        for d in ((1, 1), (1, 2), (2, 1)):
            for k in range(6):
                M = random_module(q, d, derive_seed(seed, "fbar", name, p, d, k), FieldSpec(p))
                if not is_brick(M) or ext1_dim(M, M) == 0:
                    continue
                theta = iota_inverse(q, M.dim)
                exhaustive = fbar_theta_check(M, theta, mode="exhaustive")
                fast = fbar_theta_check(M, theta, mode="brick")
                compared += 1
                disagreements += exhaustive.member != fast.member
    return disagreements == 0 and compared > 0, {"compared": compared, "disagreements": disagreements}


# ---------------------------------------------------------------------------
#  extend
# ---------------------------------------------------------------------------

@check("certificate-soundness", "extend")
def _certificates(seed: int, workers: int):
    s = [bundled_module("r1")]
    failures = 0
    for k in range(10):
        cert = extend_semibrick(s, 0, seed=derive_seed(seed, "cert", k), workers=workers)
        failures += not cert.found or not verify_certificate(s, cert)
    return failures == 0, {"runs": 10, "failures": failures}


@check("extension-success-rate", "extend")
def _success_rate(seed: int, workers: int):
    rates = {}
    for name in ("r1", "k3_r111"):
        s = [bundled_module(name)]
        hits = sum(
            extend_semibrick(s, 0, l_max=1, trials=40, seed=derive_seed(seed, "rate", name, k),
                             workers=workers).found
            for k in range(100))
        rates[name] = hits
    return all(v >= 99 for v in rates.values()), {"seeds": 100, "successes": rates}


@check("monotone-growth", "extend")
def _growth(seed: int, workers: int):
    s = [bundled_module("r1")]
    grown = grow_semibrick(s, 0, 10, seed=derive_seed(seed, "grow"), workers=workers)
    members = grown.semibrick.members
    prefixes_ok = all(is_semibrick(members[:k]).ok for k in range(1, len(members) + 1))
    certs_ok = all(verify_certificate(members[:k + 1], c) for k, c in enumerate(grown.certificates))
    ok = (not grown.partial and len(members) == 10 and members[0] == s[0]
          and prefixes_ok and certs_ok)
    return ok, {"size": len(members), "prefixes": prefixes_ok, "certificates": certs_ok}


@check("exhausted-report", "extend")
def _exhausted(seed: int, workers: int):
    result = extend_semibrick([bundled_module("a1_s1")], 0, l_max=2, trials=5, seed=seed)
    return not result.found, {"found": result.found}


@check("maximality-monitor", "extend")
def _maximality(seed: int, workers: int):
    a2 = maximality_probe([bundled_module("a2_s1"), bundled_module("a2_s2")],
                          [(1, 0), (0, 1), (1, 1)], trials=200, seed=seed)
    a1 = maximality_probe([bundled_module("a1_s1")], [(1,), (2,), (3,)], trials=200, seed=seed)
    k2 = maximality_probe([bundled_module("r1")], [(1, 1)], trials=200, seed=seed)
    verdicts = {"a2": a2.verdict, "a1": a1.verdict, "k2": k2.verdict}
    ok = (verdicts == {"a2": "maximal-within-budget", "a1": "maximal-within-budget",
                       "k2": "not-maximal"}
          and VIOLATION_FLAG not in verdicts.values())
    return ok, verdicts


@check("parallel-determinism", "extend")
def _parallel(seed: int, workers: int):
    s = [bundled_module("r1")]
    serial = extend_semibrick(s, 0, seed=derive_seed(seed, "par"), workers=1)
    threaded = extend_semibrick(s, 0, seed=derive_seed(seed, "par"), workers=max(2, workers))
    same = (serial.l, serial.trial) == (threaded.l, threaded.trial) and \
        serial.found_module == threaded.found_module
    return same, {"l": serial.l, "trial": serial.trial}


# ---------------------------------------------------------------------------
#  Runner
# ---------------------------------------------------------------------------

def run_selftest(seed: int = 0, workers: int = 1,
                 only: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    """Run registered checks (all, or those named in *only*)."""
    results: List[CheckResult] = []
    for name, module, fn in REGISTRY:
        if only and name not in only and module not in only:
            continue
        log.debug("selftest: %s", name)
        try:
            passed, detail = fn(seed, workers)
        except Exception as exc:  # noqa: BLE001
            log.warning("selftest check %s raised %s", name, exc)
            passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
        results.append(CheckResult(name, module, bool(passed), detail))
        if not passed:
            log.warning("selftest check %s failed: %s", name, detail)
    failed = [r.name for r in results if not r.passed]
    return {
        "checks": [asdict(r) for r in results],
        "total": len(results),
        "passed": len(results) - len(failed),
        "failed": failed,
    }
