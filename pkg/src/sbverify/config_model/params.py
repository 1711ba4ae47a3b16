"""Model parameters and the flat ``key = value`` parameter file format."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

RHO_PROFILES = ("exp-bump",)


class ParamsError(ValueError):
    """Invalid parameters or a malformed parameter file."""


def default_z() -> tuple[complex, ...]:
    pts = [0.5 * cmath.exp(2j * math.pi * j / 10) for j in range(1, 11)]
    return tuple(pts) + (0j,)


def default_w() -> tuple[complex, ...]:
    return tuple(0.25 * cmath.exp(2j * math.pi * (k - 0.5) / 3) for k in range(1, 4))


@dataclass(frozen=True)
class ModelParams:
    """Points z_1..z_11 (z_11 = 0) and w_1..w_3 in the unit disc, plus the scales.

    ``lam`` and ``eps`` may be left as None; they are then chosen by the
    certification (half the certified maximum for lambda, the largest passing
    power of two for epsilon).
    """

    z: tuple[complex, ...] = field(default_factory=default_z)
    w: tuple[complex, ...] = field(default_factory=default_w)
    lam: float | None = None
    eps: float | None = None
    c: float = 0.5
    rho_profile: str = "exp-bump"

    def __post_init__(self):
        z = tuple(complex(x) for x in self.z)
        w = tuple(complex(x) for x in self.w)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)
        if len(z) != 11:
            raise ParamsError(f"need 11 points z (z11 = 0), got {len(z)}")
        if z[10] != 0:
            raise ParamsError("z11 must be the origin")
        if len(set(z)) != 11:
            raise ParamsError("the points z_j must be distinct")
        if len(w) != 3 or len(set(w)) != 3:
            raise ParamsError("need 3 distinct points w")
        if set(w) & set(z):
            raise ParamsError("the points w_k must differ from every z_j")
        if any(abs(x) >= 1 for x in z + w):
            raise ParamsError("all points must lie in the open unit disc")
        if self.lam is not None and not 0 < self.lam <= 0.25:
            raise ParamsError("lambda must lie in (0, 1/4]")
        if self.eps is not None and not self.eps > 0:
            raise ParamsError("eps must be positive")
        if not self.c > 0:
            raise ParamsError("c must be positive")
        if self.rho_profile not in RHO_PROFILES:
            raise ParamsError(f"unknown rho profile {self.rho_profile!r}")

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)

    def to_json(self) -> dict:
        return {
            "z": [[p.real, p.imag] for p in self.z],
            "w": [[p.real, p.imag] for p in self.w],
            "lambda": self.lam,
            "eps": self.eps,
            "c": self.c,
            "rho_profile": self.rho_profile,
        }


def parse_complex(text: str) -> complex:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise ValueError(f"expected 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def parse_params(text: str, source: str = "<params>") -> ModelParams:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Keys: z1..z11, w1..w3 (complex as ``re,im``), lambda, eps, c, rho_profile.
    Unlisted points keep their defaults.
    """
    z = list(default_z())
    w = list(default_w())
    scalars: dict = {}
    errors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"{source}:{lineno}: expected 'key = value'")
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key.startswith("z") and key[1:].isdigit() and 1 <= int(key[1:]) <= 11:
                z[int(key[1:]) - 1] = parse_complex(value)
            elif key.startswith("w") and key[1:].isdigit() and 1 <= int(key[1:]) <= 3:
                w[int(key[1:]) - 1] = parse_complex(value)
            elif key in ("lambda", "eps", "c"):
                scalars[key] = float(value)
            elif key == "rho_profile":
                scalars[key] = value
            else:
                errors.append(f"{source}:{lineno}: unknown key {key!r}")
        except ValueError as exc:
            errors.append(f"{source}:{lineno}: bad value for {key}: {exc}")
    if errors:
        raise ParamsError("\n".join(errors))
    try:
        return ModelParams(
            z=tuple(z),
            w=tuple(w),
            lam=scalars.get("lambda"),
            eps=scalars.get("eps"),
            c=scalars.get("c", 0.5),
            rho_profile=scalars.get("rho_profile", "exp-bump"),
        )
    except ParamsError as exc:
        raise ParamsError(f"{source}: {exc}") from None


def load_params(path: str | Path) -> ModelParams:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParamsError(f"{path}: {exc.strerror}") from None
    return parse_params(text, str(path))
