#!/usr/bin/env python3
"""
semibrick CLI - command-line interface for semibrick-lab.

Compute Hom/Ext dimensions, check bricks and semibricks, classify Schur
roots, sample presentations and run the semibrick extension engine on
quiver representations over a prime field.  Quiver and module names are
looked up in the current directory first, then among the bundled examples.

Usage examples
--------------
::

    # Is R1 a brick on the Kronecker quiver?
    semibrick brick --quiver k2.q --module r1.json

    # Extend the semibrick {R1} by one brick, reproducibly
    semibrick extend --quiver k2.q --semibrick r1.json --seed 7 --json

    # Real, tame or wild?
    semibrick classify --quiver k3 --dim 1,1

    # Run the invariant suite
    semibrick selftest

Exit codes: 0 success / true, 1 false or negative verdict, 2 usage or input
error, 3 search budget exhausted.
"""

import argparse
import logging
import re
import sys
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from core.algebra import Quiver, euler_form_mod, iota, iota_inverse, load_quiver
from core.config import (
    EXIT_EXHAUSTED, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, MODULE_DIR, MODULE_SUFFIX,
    QUIVER_DIR, QUIVER_SUFFIX, SUBCOMMANDS, VIOLATION_FLAG,
)
from core.decompose import (
    brick_component_report, canonical_decomposition, classify_schur_root, decompose_indec,
    find_brick, verify_decomposition,
)
from core.errors import QuiverBrickError, QuiverSyntaxError
from core.extend import (
    extend_semibrick, grow_semibrick, maximality_probe, perp_witnesses,
)
from core.features import reports
from core.features.selftest import run_selftest
from core.homology import (
    end_dim, ext1_dim, find_isomorphism, generic_hom_dim, generic_perp_fractions, hom_space,
    is_open_brick, is_semibrick,
)
from core.languages.quiverlang import suggest
from core.modrep import FieldSpec, RepModule, read_members, read_module, write_module
from core.presentations import (
    cokernel, fbar_theta_check, fei_generic_perp_search, is_injective, sample_presentation,
    theta_identity, theta_value,
)
from core.settings import RunConfig

# ---------------------------------------------------------------------------
#  Version, kept in sync with pyproject.toml
# ---------------------------------------------------------------------------
__version__ = "1.0.0"

log = logging.getLogger(__name__)


@dataclass
class CommandResult:
    """Exit code plus the report dict; ``json_output`` selects the renderer."""
    code: int
    report: Dict[str, Any] = field(default_factory=dict)
    json_output: bool = False


class UsageError(QuiverBrickError):
    """Missing or inconsistent command-line arguments."""


# ---------------------------------------------------------------------------
#  Helpers
# ---------------------------------------------------------------------------

def _resolve_file(path_str: str, bundled: Path, suffix: str) -> Path:
    """Resolve a file path, searching the bundled examples if not found."""
    p = Path(path_str)
    if p.is_file():
        return p.resolve()

    # Try relative to CWD
    cwd_p = Path.cwd() / path_str
    if cwd_p.is_file():
        return cwd_p.resolve()

    # Try inside the bundled data directory
    bundled_p = bundled / p.name
    if bundled_p.is_file():
        return bundled_p

    # Try with the default extension
    if not path_str.endswith(suffix):
        return _resolve_file(path_str + suffix, bundled, suffix)

    raise FileNotFoundError(2, "file not found", path_str)


def _load_quiver(cfg: RunConfig) -> Optional[Quiver]:
    if cfg.quiver is None:
        return None
    path = _resolve_file(str(cfg.quiver), QUIVER_DIR, QUIVER_SUFFIX)
    try:
        return load_quiver(path)
    except QuiverSyntaxError as exc:
        where = f"{path.name}:{exc.line}" if exc.line else path.name
        raise QuiverSyntaxError(f"{where}: {exc.message}") from None


def _require_quiver(cfg: RunConfig, command: str) -> Quiver:
    q = _load_quiver(cfg)
    if q is None:
        raise UsageError(f"{command} requires --quiver")
    return q


def _module_paths(paths: Sequence[Any]) -> List[Path]:
    return [_resolve_file(str(p), MODULE_DIR, MODULE_SUFFIX) for p in paths]


def _load_modules(cfg: RunConfig, command: str, count: Optional[int] = None) -> List[RepModule]:
    q = _load_quiver(cfg)
    modules = [read_module(p, q) for p in _module_paths(cfg.modules)]
    if count is not None and len(modules) != count:
        raise UsageError(f"{command} takes exactly {count} --module argument(s), got {len(modules)}")
    if not modules:
        raise UsageError(f"{command} requires --module")
    return modules


def _load_members(args: argparse.Namespace, cfg: RunConfig, command: str) -> List[RepModule]:
    paths = list(args.semibrick or []) + [str(p) for p in cfg.modules]
    if not paths:
        raise UsageError(f"{command} requires --semibrick FILE...")
    return read_members(_module_paths(paths), _load_quiver(cfg))


_INT_RE = re.compile(r"-?\d+")


def _parse_ints(text: str, flag: str) -> Tuple[int, ...]:
    values = tuple(int(x) for x in _INT_RE.findall(text or ""))
    if not values:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}")
    return values


def _dim(q: Quiver, text: Optional[str], flag: str = "--dim"):
    if text is None:
        raise UsageError(f"{flag} is required")
    return q.dim_vector(_parse_ints(text, flag))


def _theta(q: Quiver, text: Optional[str]):
    if text is None:
        raise UsageError("--theta is required")
    return q.theta_vector(_parse_ints(text, "--theta"))


def _field(cfg: RunConfig) -> FieldSpec:
    return FieldSpec(cfg.prime)


def _report(command: str, cfg: RunConfig, status: str, p: Optional[int] = None,
            **fields: Any) -> Dict[str, Any]:
    return reports.envelope(command, status, cfg.prime if p is None else p, cfg.seed,
                            cfg.budgets(), **fields)


def _verdict(ok: bool) -> Tuple[int, str]:
    return (EXIT_OK, "ok") if ok else (EXIT_NEGATIVE, "negative")


# ---------------------------------------------------------------------------
#  Sub-commands: single modules and pairs
# ---------------------------------------------------------------------------

def cmd_hom(args, cfg):
    """dim Hom(M, N) with an explicit basis size check."""
    M, N = _load_modules(cfg, "hom", 2)
    H = hom_space(M, N)
    return EXIT_OK, _report("hom", cfg, "ok", M.p, hom_dim=H.dim,
                            source=reports.module_brief(M), target=reports.module_brief(N))


def cmd_ext(args, cfg):
    """dim Ext^1(M, N) on a path algebra."""
    M, N = _load_modules(cfg, "ext", 2)
    ext = ext1_dim(M, N)
    hom = hom_space(M, N).dim
    return EXIT_OK, _report("ext", cfg, "ok", M.p, ext1_dim=ext, hom_dim=hom,
                            euler_form=euler_form_mod(M.quiver, M.dim, N.dim),
                            source=reports.module_brief(M), target=reports.module_brief(N))


def cmd_brick(args, cfg):
    """Is End(M) one-dimensional?"""
    (M,) = _load_modules(cfg, "brick", 1)
    e = end_dim(M)
    code, status = _verdict(e == 1)
    return code, _report("brick", cfg, status, M.p, is_brick=e == 1, end_dim=e,
                         module=reports.module_brief(M))


def cmd_semibrick(args, cfg):
    """Bricks with pairwise vanishing Hom."""
    members = _load_members(args, cfg, "semibrick")
    result = is_semibrick(members)
    code, status = _verdict(result.ok)
    fields: Dict[str, Any] = {"is_semibrick": result.ok, "size": len(members),
                              "members": [reports.module_brief(m) for m in members]}
    if result.ok:
        fields["hom_table"] = [list(row) for row in result.certificate]
    else:
        fields["witness"] = {"i": result.i, "j": result.j, "hom_dim": result.hom,
                             "description": result.describe()}
    return code, _report("semibrick", cfg, status, members[0].p, **fields)


def cmd_iso(args, cfg):
    """Isomorphism certified by an explicit invertible intertwiner."""
    M, N = _load_modules(cfg, "iso", 2)
    f = find_isomorphism(M, N, cfg.seed)
    code, status = _verdict(f is not None)
    fields: Dict[str, Any] = {"isomorphic": f is not None}
    if f is not None:
        fields["isomorphism"] = reports.maps_doc(M, f)
    return code, _report("iso", cfg, status, M.p, **fields)


def cmd_open(args, cfg):
    """Open brick: a brick without self-extensions."""
    (B,) = _load_modules(cfg, "open", 1)
    is_open = is_open_brick(B)
    code, status = _verdict(is_open)
    return code, _report("open", cfg, status, B.p, is_open_brick=is_open,
                         ext1_self=ext1_dim(B, B), module=reports.module_brief(B))


def cmd_decompose(args, cfg):
    """Krull-Schmidt decomposition of one module with a basis-change witness."""
    (M,) = _load_modules(cfg, "decompose", 1)
    dec = decompose_indec(M, cfg.seed)
    blocks = {b.fingerprint: c for b, c in zip(dec.blocks, dec.certificates)}
    summands = []
    for block, mult in dec.summands:
        cert = blocks[block.fingerprint]
        summands.append({"dim": reports.dim_list(block.dim), "multiplicity": mult,
                         "end_dim": cert.end_dim, "exact": cert.exact,
                         "non_splitting_trials": cert.non_splitting_trials})
    return EXIT_OK, _report("decompose", cfg, "ok", M.p, summands=summands,
                            verified=verify_decomposition(M, dec),
                            module=reports.module_brief(M))


# ---------------------------------------------------------------------------
#  Sub-commands: dimension vectors
# ---------------------------------------------------------------------------

def cmd_schur(args, cfg):
    """Does a random module of dimension d come out a brick?"""
    q = _require_quiver(cfg, "schur")
    d = _dim(q, args.dim[0] if args.dim else None)
    outcome = None if d.is_zero() else find_brick(q, d, cfg.seed, cfg.trials, _field(cfg), cfg.workers)
    found = outcome is not None and outcome.found
    code, status = _verdict(found)
    return code, _report("schur", cfg, status, dim=reports.dim_list(d), is_schur=found,
                         first_brick_trial=outcome.index if found else None,
                         attempted=outcome.attempted if outcome else 0)


def cmd_classify(args, cfg):
    """real / tame / wild / probably-not-schur with a doubled-root cross-check."""
    q = _require_quiver(cfg, "classify")
    d = _dim(q, args.dim[0] if args.dim else None)
    cls = classify_schur_root(q, d, cfg.seed, cfg.trials, cfg.samples, _field(cfg),
                              tuple(args.exhaustive or ()), cfg.workers)
    code, status = _verdict(cls.is_schur)
    doubled = None
    if cls.doubled is not None:
        doubled = {"summands": [reports.dim_list(v) for v in cls.doubled.summands],
                   "agreement": cls.doubled.agreement}
    return code, _report(
        "classify", cfg, status, dim=reports.dim_list(d), verdict=cls.verdict,
        q_value=cls.q_value, first_brick_trial=cls.first_brick_trial, doubled=doubled,
        expected_doubled=[reports.dim_list(v) for v in cls.expected_doubled],
        mismatches=list(cls.mismatches),
        exhaustive=[{"p": c.p, "points": c.points, "brick_found": c.found} for c in cls.exhaustive])


def cmd_candecomp(args, cfg):
    """Canonical decomposition by majority vote over sampled modules."""
    q = _require_quiver(cfg, "candecomp")
    d = _dim(q, args.dim[0] if args.dim else None)
    cd = canonical_decomposition(q, d, cfg.seed, cfg.samples, _field(cfg), cfg.workers)
    votes = [{"summands": [list(v) for v in key], "count": n}
             for key, n in sorted(cd.votes.items(), key=lambda kv: (-kv[1], kv[0]))]
    return EXIT_OK, _report("candecomp", cfg, "ok", cd.p, dim=reports.dim_list(d),
                            summands=[reports.dim_list(v) for v in cd.summands],
                            agreement=cd.agreement, votes=votes, escalated=cd.escalated)


def cmd_generic_hom(args, cfg):
    """Minimum of hom_dim over random pairs and how often it is attained."""
    q = _require_quiver(cfg, "generic-hom")
    if not args.dim or len(args.dim) != 2:
        raise UsageError("generic-hom takes two --dim arguments")
    d, e = _dim(q, args.dim[0]), _dim(q, args.dim[1])
    g = generic_hom_dim(q, d, e, cfg.samples, cfg.seed, _field(cfg), cfg.workers)
    return EXIT_OK, _report("generic-hom", cfg, "ok", d=reports.dim_list(d), e=reports.dim_list(e),
                            minimum=g.minimum, fraction=g.fraction, values=list(g.values))


def cmd_component(args, cfg):
    """Open-brick versus infinitely-many-bricks evidence for rep(Q, d)."""
    q = _require_quiver(cfg, "component")
    d = _dim(q, args.dim[0] if args.dim else None)
    r = brick_component_report(q, d, cfg.samples, cfg.seed, _field(cfg))
    code, status = _verdict(r.brick_count > 0)
    return code, _report("component", cfg, status, dim=reports.dim_list(d), verdict=r.verdict,
                         brick_count=r.brick_count, orbit_codim_one=r.orbit_codim_one,
                         pairwise_isomorphic=r.pairwise_isomorphic, ext1_self=r.ext1_self)


# ---------------------------------------------------------------------------
#  Sub-commands: presentations
# ---------------------------------------------------------------------------

def cmd_theta(args, cfg):
    """theta(M) for a weight theta, plus iota(theta)."""
    (M,) = _load_modules(cfg, "theta", 1)
    q = M.quiver
    theta = _theta(q, args.theta) if args.theta else iota_inverse(q, M.dim)
    return EXIT_OK, _report("theta", cfg, "ok", M.p, theta=list(theta.coeffs),
                            iota=list(iota(q, theta)), theta_value=theta_value(q, theta, M),
                            module=reports.module_brief(M))


def cmd_present(args, cfg):
    """Sample a presentation f: P1 -> P0 and report its cokernel."""
    q = _require_quiver(cfg, "present")
    theta = _theta(q, args.theta)
    field_ = _field(cfg)
    pres = sample_presentation(q, theta, cfg.seed, field_)
    C = cokernel(pres)
    fields: Dict[str, Any] = {
        "theta": list(theta.coeffs), "hom_space_dim": pres.hom_space_dim,
        "injective": is_injective(pres), "iota": list(iota(q, theta)),
        "P0": reports.dim_list(pres.P0.dim), "P1": reports.dim_list(pres.P1.dim),
        "f": {v: pres.f[i].tolist() for i, v in enumerate(q.vertices)},
        "cokernel": reports.module_doc(C),
    }
    if cfg.modules:
        checks = []
        for M in _load_modules(cfg, "present"):
            ident = theta_identity(pres, M)
            checks.append({"module": M.name, "theta_value": ident.theta_value, "hom": ident.hom,
                           "ext": ident.ext, "holds": ident.holds})
        fields["identity"] = checks
        if not is_injective(pres):
            fields["note"] = "f not injective; identity unverified in the general case"
    if args.out:
        write_module(C, args.out)
        fields["written"] = str(args.out)
    return EXIT_OK, _report("present", cfg, "ok", field_.p, **fields)


def cmd_fbar(args, cfg):
    """Membership of M in F-bar-theta (every submodule L has theta(L) <= 0)."""
    (M,) = _load_modules(cfg, "fbar", 1)
    theta = _theta(M.quiver, args.theta) if args.theta else iota_inverse(M.quiver, M.dim)
    mode = "exhaustive" if args.exhaustive_only else "auto"
    v = fbar_theta_check(M, theta, mode)
    code, status = _verdict(v.member)
    return code, _report("fbar", cfg, status, M.p, theta=list(theta.coeffs), member=v.member,
                         rule=v.rule, submodules_checked=len(v.values),
                         violating=reports.dim_list(v.violating) if v.violating else None)


def cmd_fei(args, cfg):
    """Smallest l with an injective presentation of l*theta whose cokernel has no maps to M."""
    (M,) = _load_modules(cfg, "fei", 1)
    q = M.quiver
    theta = _theta(q, args.theta) if args.theta else iota_inverse(q, M.dim)
    r = fei_generic_perp_search(q, theta, M, cfg.l_max, cfg.trials, cfg.seed, cfg.workers)
    fields: Dict[str, Any] = {"theta": list(theta.coeffs), "found": r.found, "l": r.l,
                              "trial": r.trial, "hypothesis": r.hypothesis,
                              "attempts": {str(k): v for k, v in r.attempts.items()},
                              "injective": {str(k): v for k, v in r.injective_counts.items()}}
    if r.found:
        fields["cokernel"] = reports.module_doc(r.cokernel)
    return (EXIT_OK if r.found else EXIT_EXHAUSTED), _report(
        "fei", cfg, "ok" if r.found else "exhausted", M.p, **fields)


# ---------------------------------------------------------------------------
#  Sub-commands: semibrick engine
# ---------------------------------------------------------------------------

def _certificate_doc(cert) -> Dict[str, Any]:
    return {"l": cert.l, "seed": cert.seed, "trial": cert.trial, "member": cert.member,
            "module": reports.module_doc(cert.found_module), "checks": cert.checks,
            "root_type": cert.root_type, "notes": list(cert.notes)}


def _exhausted_doc(rep) -> Dict[str, Any]:
    return {"l_max": rep.l_max, "trials": rep.trials, "seed": rep.seed, "member": rep.member,
            "per_l": {str(k): v for k, v in rep.per_l.items()}, "root_type": rep.root_type,
            "notes": list(rep.notes)}


def cmd_extend(args, cfg):
    """Find a brick of dimension l * dimv B orthogonal to the whole semibrick."""
    members = _load_members(args, cfg, "extend")
    result = extend_semibrick(members, args.member, cfg.l_max, cfg.trials, cfg.seed, cfg.workers)
    if result.found:
        if args.out:
            write_module(result.found_module, args.out)
        return EXIT_OK, _report("extend", cfg, "ok", members[0].p, found=True,
                                certificate=_certificate_doc(result))
    return EXIT_EXHAUSTED, _report("extend", cfg, "exhausted", members[0].p, found=False,
                                   exhausted=_exhausted_doc(result))


def cmd_grow(args, cfg):
    """Extend repeatedly until the semibrick reaches --target members."""
    members = _load_members(args, cfg, "grow")
    target = args.target if args.target is not None else len(members) + 1
    g = grow_semibrick(members, args.member, target, cfg.l_max, cfg.trials, cfg.seed, cfg.workers)
    fields: Dict[str, Any] = {
        "size": len(g.semibrick), "target": target, "partial": g.partial,
        "members": [reports.module_brief(m) for m in g.semibrick.members],
        "certificates": [_certificate_doc(c) for c in g.certificates],
    }
    if g.exhausted is not None:
        fields["exhausted"] = _exhausted_doc(g.exhausted)
    code = EXIT_EXHAUSTED if g.partial else EXIT_OK
    return code, _report("grow", cfg, "exhausted" if g.partial else "ok", members[0].p, **fields)


def cmd_probe(args, cfg):
    """Search a pool of dimension vectors for bricks that could join the semibrick."""
    members = _load_members(args, cfg, "probe")
    q = members[0].quiver
    if not args.dim:
        raise UsageError("probe requires at least one --dim")
    pool = [_dim(q, text) for text in args.dim]
    r = maximality_probe(members, pool, cfg.trials, cfg.seed)
    code = EXIT_NEGATIVE if r.flag else EXIT_OK
    return code, _report(
        "probe", cfg, "negative" if r.flag else "ok", members[0].p, verdict=r.verdict, flag=r.flag,
        open_members=list(r.open_members), pool=[reports.dim_list(d) for d in r.pool],
        extensions=[{"dim": reports.dim_list(d), "trial": t, "module": reports.module_doc(X)}
                    for d, t, X in r.extensions])


def cmd_perp(args, cfg):
    """Shares of Hom(X, B) = 0 and Hom(B, X) = 0 plus explicit witnesses."""
    (B,) = _load_modules(cfg, "perp", 1)
    fr = generic_perp_fractions(B, cfg.samples, cfg.seed, cfg.workers)
    w = perp_witnesses(B, cfg.l_max, cfg.trials, cfg.seed, cfg.workers)
    return EXIT_OK, _report("perp", cfg, "ok", B.p, module=reports.module_brief(B),
                            hom_to_b_zero=fr.hom_to_b_zero, hom_from_b_zero=fr.hom_from_b_zero,
                            left_l=w.left_l, right_l=w.right_l, product=w.product)


def cmd_selftest(args, cfg):
    """Run the invariant suite."""
    result = run_selftest(cfg.seed, cfg.workers, args.only)
    ok = not result["failed"]
    code, status = _verdict(ok)
    return code, _report("selftest", cfg, status, **result)


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], Tuple[int, Dict[str, Any]]]] = {
    "hom": cmd_hom, "ext": cmd_ext, "brick": cmd_brick, "semibrick": cmd_semibrick,
    "iso": cmd_iso, "open": cmd_open, "schur": cmd_schur, "classify": cmd_classify,
    "candecomp": cmd_candecomp, "decompose": cmd_decompose, "theta": cmd_theta,
    "present": cmd_present, "fbar": cmd_fbar, "fei": cmd_fei, "extend": cmd_extend,
    "grow": cmd_grow, "probe": cmd_probe, "generic-hom": cmd_generic_hom,
    "component": cmd_component, "perp": cmd_perp, "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
#  Argument parser
# ---------------------------------------------------------------------------

_HELP = {
    "hom": "dim Hom(M, N) for two --module files",
    "ext": "dim Ext^1(M, N) (path algebras)",
    "brick": "is End(M) = K?",
    "semibrick": "verify a semibrick (--semibrick FILE...)",
    "iso": "isomorphism test with an explicit witness",
    "open": "is the brick exceptional (open orbit)?",
    "schur": "sample for a brick of dimension --dim",
    "classify": "real / tame / wild Schur root classification",
    "candecomp": "canonical decomposition of --dim",
    "decompose": "indecomposable summands of --module",
    "theta": "theta(M) and iota(theta)",
    "present": "sample a presentation of --theta and its cokernel",
    "fbar": "F-bar-theta membership oracle",
    "fei": "generic perpendicular presentation search",
    "extend": "extend a semibrick by one brick",
    "grow": "grow a semibrick to --target members",
    "probe": "maximality probe over a --dim pool",
    "generic-hom": "generic hom_dim for two --dim vectors",
    "component": "brick component evidence for --dim",
    "perp": "perpendicular fractions and witnesses for a brick",
    "selftest": "run the invariant suite",
}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", "-q", metavar="FILE", help="quiver file (.q)")
    common.add_argument("--module", "-m", metavar="FILE", action="append",
                        help="module file (.json); repeatable")
    common.add_argument("--semibrick", "-s", metavar="FILE", nargs="+",
                        help="semibrick member files")
    common.add_argument("--dim", "-d", metavar="A,B,...", action="append",
                        help="dimension vector; repeatable")
    common.add_argument("--theta", "-t", metavar="A,B,...", help="weight vector")
    common.add_argument("--prime", "-p", type=int, help="field characteristic (default 2^31-1)")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--trials", type=int, help="trials per search step")
    common.add_argument("--lmax", type=int, help="largest multiple l tried")
    common.add_argument("--samples", type=int, help="samples for generic statistics")
    common.add_argument("--workers", "-j", type=int, help="trial threads")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--debug", action="store_true", help="debug logging on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the CLI argument parser."""
    parser = argparse.ArgumentParser(
        prog="semibrick",
        description="semibrick CLI: exact Hom/Ext, bricks and semibrick extension over F_p.",
        epilog="Examples:\n"
               "  semibrick brick --quiver k2.q --module r1.json\n"
               "  semibrick extend --quiver k2.q --semibrick r1.json --seed 7 --json\n"
               "  semibrick classify --quiver k3 --dim 1,1\n"
               "  semibrick selftest\n",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version", action="version",
        version=f"semibrick CLI v{__version__}",
    )

    common = _common_parser()
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    subs = {name: subparsers.add_parser(name, parents=[common], help=_HELP[name])
            for name in SUBCOMMANDS}

    subs["classify"].add_argument("--exhaustive", "-x", metavar="P", type=int, action="append",
                                  help="cross-check over the tiny prime P; repeatable")
    subs["fbar"].add_argument("--exhaustive-only", action="store_true",
                              help="refuse the brick fast path")
    subs["present"].add_argument("--out", "-o", metavar="FILE", help="write the cokernel module")
    for name in ("extend", "grow"):
        subs[name].add_argument("--member", type=int, default=0,
                                help="index of the member B (default 0)")
    subs["extend"].add_argument("--out", "-o", metavar="FILE", help="write the new brick")
    subs["grow"].add_argument("--target", type=int, help="target semibrick size")
    subs["selftest"].add_argument("--only", nargs="+", metavar="NAME",
                                  help="run only these checks or modules")
    return parser


# ---------------------------------------------------------------------------
#  Entry point
# ---------------------------------------------------------------------------

def _unknown_subcommand(argv: Sequence[str]) -> Optional[str]:
    first = next((a for a in argv if not a.startswith("-")), None)
    if first is None or first in SUBCOMMANDS:
        return None
    hint = suggest(first, SUBCOMMANDS)
    return f"unknown subcommand {first!r}" + (f" (did you mean {hint!r}?)" if hint else "")


def run_command(argv: Sequence[str]) -> CommandResult:
    """Parse *argv*, run the subcommand and return its exit code and report."""
    argv = list(argv)
    problem = _unknown_subcommand(argv)
    if problem:
        first = next(a for a in argv if not a.startswith("-"))
        return CommandResult(EXIT_USAGE, reports.error_report(first, problem), "--json" in argv)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult(exc.code if isinstance(exc.code, int) else EXIT_USAGE)
    if args.command is None:
        parser.print_help()
        return CommandResult(EXIT_OK)

    json_output = bool(args.json)
    failed = partial(reports.error_report, args.command)
    try:
        cfg = RunConfig.from_args(args)
        json_output = cfg.json_output
        code, report = COMMANDS[args.command](args, cfg)
    except FileNotFoundError as exc:
        return CommandResult(EXIT_USAGE, failed(f"{exc.filename}: file not found"), json_output)
    except (QuiverBrickError, ValueError) as exc:
        return CommandResult(EXIT_USAGE, failed(str(exc)), json_output)
    except ArithmeticError as exc:
        log.error("%s: %s", VIOLATION_FLAG, exc)
        return CommandResult(EXIT_NEGATIVE, failed(str(exc), VIOLATION_FLAG), json_output)
    return CommandResult(code, report, json_output)


def main(argv=None) -> int:
    """CLI entry point."""
    argv = sys.argv[1:] if argv is None else list(argv)
    logging.basicConfig(
        level=logging.DEBUG if "--debug" in argv else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    result = run_command(argv)
    if "error" in result.report:
        print(f"semibrick: error: {result.report['error']}", file=sys.stderr)
        # under --json stdout always carries the envelope
        if result.json_output:
            print(reports.to_json(result.report))
    elif result.report:
        if result.json_output:
            print(reports.to_json(result.report))
        else:
            print(reports.render_table(result.report))
            if "checks" in result.report:
                print(reports.render_checks(result.report["checks"]))
    return result.code


if __name__ == "__main__":
    sys.exit(main())
