"""Deformation profiles and the dimensionless reduction of the couplings.

A profile is the scaled odd map ``k(y)`` on [-1, 1] together with the
momentum bound ``b``; everything downstream (integrals, spectral equation,
eigenfunction) depends on the deformation only through ``k`` and ``b``.
Couplings reduce to two dimensionless numbers::

    alpha = (kappa * m / (pi * hbar^2))^2      delta-prime strength, >= 0
    gamma = lambda * m / (b * pi * hbar)       delta strength

and the bound-state energy recovers from the dimensionless root as
``E = -(eps * b)^2 / (2 m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .errors import (
    ConfigError,
    EvalError,
    NotMonotoneError,
    NotOddError,
    ZeroSlopeAtOriginError,
)
from .exprparse import Expr, parse

__all__ = [
    "DeformationProfile",
    "PhysicalParams",
    "DimensionlessCouplings",
    "BUILTIN_IDS",
    "make_builtin",
    "make_custom",
    "to_dimensionless",
    "energy_from_eps",
    "profile_to_text",
    "profile_from_text",
]

BUILTIN_IDS = ("cutoff", "power32", "kempf")

#: validation grid resolution and tolerances (uniform grid on [-1, 1])
_GRID_POINTS = 1001
_ODD_TOL = 1e-9
_SLOPE_MIN = 1e-12
_SLOPE_H = 1e-6


@dataclass(frozen=True)
class DeformationProfile:
    """Scaled deformation map; immutable, safe to share between workers."""

    name: str
    k: Callable[[float], float]
    b: float = 1.0
    k_slope_origin: float = 1.0
    closed_form_id: Optional[str] = None
    expr_source: Optional[str] = None
    momentum_limit: Optional[float] = None  # metadata only, never used numerically

    def __post_init__(self):
        if not self.b > 0.0:
            raise ConfigError(f"momentum bound must be positive, got {self.b}")
        if not self.k_slope_origin > 0.0:
            raise ZeroSlopeAtOriginError(
                f"k'(0) must be positive, got {self.k_slope_origin}"
            )

    def with_b(self, b: float) -> "DeformationProfile":
        return replace(self, b=b)


@dataclass(frozen=True)
class PhysicalParams:
    """Physical inputs; the momentum bound comes from ``b`` or from ``beta``."""

    hbar: float
    mass: float
    kappa: float
    lam: float
    b: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self):
        if not self.hbar > 0.0:
            raise ConfigError(f"hbar must be positive, got {self.hbar}")
        if not self.mass > 0.0:
            raise ConfigError(f"mass must be positive, got {self.mass}")
        if (self.b is None) == (self.beta is None):
            raise ConfigError("exactly one of b or beta must be supplied")

    def momentum_bound(self, closed_form_id: Optional[str] = None) -> float:
        """Resolve the momentum bound, mapping beta per built-in deformation."""
        if self.b is not None:
            bound = self.b
        else:
            if self.beta is None or self.beta <= 0.0:
                raise ConfigError("beta must be positive")
            if closed_form_id == "power32":
                bound = 1.0 / math.sqrt(self.beta)
            elif closed_form_id == "kempf":
                bound = math.pi / (2.0 * math.sqrt(self.beta))
            else:
                raise ConfigError(
                    "beta parametrization is only defined for power32 and kempf; "
                    "pass the momentum bound b directly"
                )
        if not bound > 0.0:
            raise ConfigError(f"momentum bound must be positive, got {bound}")
        return bound


@dataclass(frozen=True)
class DimensionlessCouplings:
    alpha: float
    gamma: float = 0.0

    def __post_init__(self):
        if not self.alpha >= 0.0:
            raise ConfigError(f"alpha must be nonnegative, got {self.alpha}")


def _k_cutoff(y: float) -> float:
    return float(y)


def _k_power32(y: float) -> float:
    t = (1.0 - y) * (1.0 + y)
    if t <= 0.0:
        return math.copysign(math.inf, y)
    return y / math.sqrt(t)


def _k_kempf(y: float) -> float:
    return (2.0 / math.pi) * math.tan(math.pi * y / 2.0)


_BUILTINS = {
    "cutoff": _k_cutoff,
    "power32": _k_power32,
    "kempf": _k_kempf,
}


def make_builtin(builtin_id: str, b: float = 1.0) -> DeformationProfile:
    """Return one of the three built-in profiles.

    cutoff:  k(y) = y                       (flat deformation, hard bound)
    power32: k(y) = y / sqrt(1 - y^2)
    kempf:   k(y) = (2/pi) tan(pi y / 2)
    """
    if builtin_id not in _BUILTINS:
        raise ConfigError(f"unknown builtin profile {builtin_id!r}; use one of {BUILTIN_IDS}")
    limit = b if builtin_id == "cutoff" else math.inf
    return DeformationProfile(
        name=builtin_id,
        k=_BUILTINS[builtin_id],
        b=b,
        k_slope_origin=1.0,
        closed_form_id=builtin_id,
        momentum_limit=limit,
    )


def _grid_eval(k: Callable[[float], float], ys) -> list[float]:
    values = []
    for y in ys:
        try:
            values.append(k(y))
        except EvalError:
            if abs(y) == 1.0:
                # tolerated: maps like y/sqrt(1-y^2) blow up exactly at the edge
                values.append(math.copysign(math.inf, y))
            else:
                raise
    return values


def _validate_map(k: Callable[[float], float], name: str) -> None:
    half = (_GRID_POINTS - 1) // 2
    ys = [i / half for i in range(-half, half + 1)]
    vals = _grid_eval(k, ys)

    for i in range(_GRID_POINTS):
        a, c = vals[i], vals[_GRID_POINTS - 1 - i]  # k(y) and k(-y)
        if math.isfinite(a) and math.isfinite(c):
            if abs(a + c) > _ODD_TOL:
                raise NotOddError(
                    f"{name}: |k({ys[i]}) + k({-ys[i]})| = {abs(a + c):.3e} > {_ODD_TOL}"
                )
        elif a != -c or math.isnan(a) or math.isnan(c):
            raise NotOddError(f"{name}: non-finite asymmetry at y={ys[i]}")

    interior = [v for y, v in zip(ys, vals) if 0.0 <= y < 1.0]
    for lo, hi in zip(interior, interior[1:]):
        if not hi > lo:
            raise NotMonotoneError(f"{name}: k is not strictly increasing on [0, 1)")


def _central_slope(k: Callable[[float], float], h: float = _SLOPE_H) -> float:
    return (k(h) - k(-h)) / (2.0 * h)


def make_custom(
    expr: Expr,
    b: float = 1.0,
    name: str = "custom",
    k_slope_origin: Optional[float] = None,
) -> DeformationProfile:
    """Wrap a parsed expression as a validated profile.

    Runs the oddness, monotonicity, and origin-slope checks on a 1001-point
    grid; failures raise NotOddError, NotMonotoneError, or
    ZeroSlopeAtOriginError respectively.
    """
    k = expr.__call__
    _validate_map(k, name)
    slope = k_slope_origin if k_slope_origin is not None else _central_slope(k)
    if not slope > _SLOPE_MIN:
        raise ZeroSlopeAtOriginError(
            f"{name}: k'(0) = {slope:.3e} <= {_SLOPE_MIN}; the zero-energy "
            "moment integral would diverge"
        )
    return DeformationProfile(
        name=name,
        k=k,
        b=b,
        k_slope_origin=slope,
        closed_form_id=None,
        expr_source=str(expr),
    )


def to_dimensionless(
    params: PhysicalParams, profile: DeformationProfile
) -> DimensionlessCouplings:
    """Reduce physical couplings to (alpha, gamma) using the profile's b."""
    root = params.kappa * params.mass / (math.pi * params.hbar**2)
    alpha = root * root
    gamma = params.lam * params.mass / (profile.b * math.pi * params.hbar)
    return DimensionlessCouplings(alpha=alpha, gamma=gamma)


def energy_from_eps(eps: float, b: float, params: PhysicalParams) -> float:
    """Bound-state energy E = -(eps b)^2 / (2 m); nonpositive by construction."""
    if eps < 0.0:
        raise ConfigError(f"eps must be nonnegative, got {eps}")
    q = eps * b
    return -(q * q) / (2.0 * params.mass)


def profile_to_text(profile: DeformationProfile) -> str:
    """Serialize a profile as the key=value block the CLI loader accepts."""
    lines = [f"name={profile.name}"]
    if profile.closed_form_id is not None:
        lines.append("kind=builtin")
    else:
        lines.append("kind=custom")
        if profile.expr_source is None:
            raise ConfigError("custom profile has no expression source to serialize")
        lines.append(f"expr={profile.expr_source}")
    lines.append(f"b={profile.b!r}")
    return "\n".join(lines) + "\n"


def profile_from_text(text: str) -> DeformationProfile:
    """Load a profile from its key=value text block."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"profile line {lineno}: expected key=value, got {raw!r}")
        fields[key.strip()] = value.strip()
    kind = fields.get("kind")
    b = float(fields["b"]) if "b" in fields else 1.0
    if kind == "builtin":
        return make_builtin(fields.get("name", ""), b=b)
    if kind == "custom":
        if "expr" not in fields:
            raise ConfigError("custom profile needs an expr= line")
        return make_custom(parse(fields["expr"]), b=b, name=fields.get("name", "custom"))
    raise ConfigError(f"profile kind must be builtin or custom, got {kind!r}")
