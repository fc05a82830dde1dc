"""Persisted user defaults and the per-run configuration."""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Tuple

from sympy import isprime

from core.config import (
    DEFAULT_L_MAX, DEFAULT_PRIME, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRIALS,
    DEFAULT_WORKERS, MAX_PRIME,
)
from core.errors import FieldError, require_positive

log = logging.getLogger(__name__)

SETTINGS_FILE = Path(
    os.environ.get("SEMIBRICK_SETTINGS_DIR", str(Path.home()))
) / ".semibrick_settings.json"

MAX_RECENT = 10
MAX_WORKERS = 64

DEFAULTS: dict[str, Any] = {
    "prime": DEFAULT_PRIME,
    "seed": DEFAULT_SEED,
    "trials": DEFAULT_TRIALS,
    "l_max": DEFAULT_L_MAX,
    "samples": DEFAULT_SAMPLES,
    "workers": DEFAULT_WORKERS,
    "json": False,
    "recent_quivers": [],
}

_BUDGETS = ("trials", "l_max", "samples")


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _validate(data: dict[str, Any]) -> dict[str, Any]:
    """Return a sanitised copy of *data*, falling back to defaults."""
    out = dict(DEFAULTS)
    out.update(data)

    # Prime must be a supported prime
    p = out["prime"]
    if not _is_int(p) or p < 2 or p > MAX_PRIME or not isprime(p):
        log.warning("Invalid prime %r, falling back to %d", p, DEFAULTS["prime"])
        out["prime"] = DEFAULTS["prime"]

    if not _is_int(out["seed"]) or out["seed"] < 0:
        log.warning("Invalid seed %r, falling back to %d", out["seed"], DEFAULTS["seed"])
        out["seed"] = DEFAULTS["seed"]

    # Budgets must be positive
    for key in _BUDGETS:
        if not _is_int(out[key]) or out[key] < 1:
            log.warning("Invalid %s %r, falling back to %d", key, out[key], DEFAULTS[key])
            out[key] = DEFAULTS[key]

    if not _is_int(out["workers"]):
        out["workers"] = DEFAULTS["workers"]
    out["workers"] = max(1, min(out["workers"], MAX_WORKERS))

    out["json"] = bool(out.get("json", False))

    rq = out.get("recent_quivers", [])
    if not isinstance(rq, list):
        rq = []
    out["recent_quivers"] = [f for f in rq if isinstance(f, str)][:MAX_RECENT]

    return out


def load_settings() -> dict[str, Any]:
    """Load user settings from disk, validated against known constraints."""
    raw: dict[str, Any] = {}
    try:
        if SETTINGS_FILE.exists():
            with open(SETTINGS_FILE, 'r', encoding='utf-8') as f:
                raw = json.load(f)
        if not isinstance(raw, dict):
            log.warning("Settings file %s does not hold an object; ignoring it", SETTINGS_FILE)
            raw = {}
    except (json.JSONDecodeError, OSError) as exc:
        log.warning("Failed to read settings from %s: %s", SETTINGS_FILE, exc)
        raw = {}
    return _validate(raw)


def save_settings(data: dict[str, Any]) -> None:
    """Persist user settings to disk."""
    try:
        with open(SETTINGS_FILE, 'w', encoding='utf-8') as f:
            json.dump(_validate(data), f, indent=2, sort_keys=True)
    except OSError as exc:
        log.warning("Failed to save settings to %s: %s", SETTINGS_FILE, exc)


def remember_quiver(path: str) -> None:
    """Push *path* onto the recent-quivers list."""
    data = load_settings()
    recent = [path] + [f for f in data["recent_quivers"] if f != path]
    data["recent_quivers"] = recent[:MAX_RECENT]
    save_settings(data)


# ---------------------------------------------------------------------------
#  Run configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    prime: int = DEFAULT_PRIME
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    l_max: int = DEFAULT_L_MAX
    samples: int = DEFAULT_SAMPLES
    workers: int = DEFAULT_WORKERS
    quiver: Optional[Path] = None
    modules: Tuple[Path, ...] = field(default_factory=tuple)
    json_output: bool = False

    def validate(self) -> "RunConfig":
        if self.prime < 2 or not isprime(self.prime):
            raise FieldError(f"--prime {self.prime} is not prime")
        if self.prime > MAX_PRIME:
            raise FieldError(f"--prime {self.prime} exceeds {MAX_PRIME}")
        for key in _BUDGETS + ("workers",):
            require_positive(key, getattr(self, key))
        return self

    @classmethod
    def from_args(cls, args, settings: Optional[dict[str, Any]] = None) -> "RunConfig":
        """CLI flags layered over persisted settings."""
        settings = settings if settings is not None else load_settings()

        def pick(flag: str, key: str):
            value = getattr(args, flag, None)
            return settings[key] if value is None else value

        return cls(
            prime=pick("prime", "prime"),
            seed=pick("seed", "seed"),
            trials=pick("trials", "trials"),
            l_max=pick("lmax", "l_max"),
            samples=pick("samples", "samples"),
            workers=pick("workers", "workers"),
            quiver=Path(args.quiver) if getattr(args, "quiver", None) else None,
            modules=tuple(Path(m) for m in (getattr(args, "module", None) or ())),
            json_output=bool(getattr(args, "json", False) or settings["json"]),
        ).validate()

    def budgets(self) -> dict[str, int]:
        return {"trials": self.trials, "l_max": self.l_max, "samples": self.samples}
