"""Analytic I1/I2 formulas for the three built-in deformations.

The cutoff and power32 pairs follow from elementary antiderivatives; the
power32 formulas as written involve sqrt(1 - eps^2) and continue past
eps = 1 through the artanh rewrite.  The kempf I2 needs a real dilogarithm:

    I2(eps) = (pi^2 (1 - c) / 6 + 2 Li2(u)) / (c (1 - c^2))

with c = pi eps / 2 and u = (pi eps - 2) / (pi eps + 2) = -(1 - c)/(1 + c).
Since u stays inside (-1, 1) for every eps > 0 the expression is real with
no branch choices; it reproduces the exact values 4 ln 2 - pi^2 / 6 at
eps -> 0 and pi^2/12 - 1/2 at eps = 2/pi.  Each formula has one removable
point (eps = 1 for power32, eps = 2/pi for kempf) where evaluation falls
back to quadrature inside a narrow window to dodge catastrophic
cancellation.  Every path here is cross-validated against the adaptive
quadrature oracle in the test suite.
"""

from __future__ import annotations

import math

from .deformation import make_builtin
from .errors import DomainError
from .quadrature import DEFAULT_TOL, compute_integrals

__all__ = [
    "dilog",
    "closed_i1",
    "closed_i2",
    "i2_zero_closed",
    "has_closed_forms",
    "REMOVABLE_POINTS",
]

_PI2_6 = math.pi * math.pi / 6.0
_SERIES_EPS = 1e-18
_FALLBACK_WINDOW = 1e-4

#: removable singular points of the printed formulas, per profile id
REMOVABLE_POINTS = {"cutoff": (), "power32": (1.0,), "kempf": (2.0 / math.pi,)}

_PROFILES = {pid: make_builtin(pid) for pid in ("cutoff", "power32", "kempf")}


def dilog(x: float) -> float:
    """Real dilogarithm Li2(x) for x <= 1, accurate to about 1e-15 absolute.

    Power series on [-1/2, 1/2]; the reflection, Landen, and inversion
    identities map (1/2, 1], [-1, -1/2), and (-inf, -1) back into the
    series range.
    """
    if math.isnan(x):
        raise DomainError("dilog argument is NaN")
    if x > 1.0:
        raise DomainError(f"dilog is real only for x <= 1, got {x}")
    if x == 1.0:
        return _PI2_6
    if x < -1.0:
        # inversion: Li2(x) = -pi^2/6 - ln^2(-x)/2 - Li2(1/x)
        lg = math.log(-x)
        return -_PI2_6 - 0.5 * lg * lg - dilog(1.0 / x)
    if x > 0.5:
        # reflection: Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x)
        return _PI2_6 - math.log(x) * math.log1p(-x) - dilog(1.0 - x)
    if x < -0.5:
        # Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2
        lg = math.log1p(-x)
        return -dilog(x / (x - 1.0)) - 0.5 * lg * lg
    return _dilog_series(x)


def _dilog_series(x: float) -> float:
    if x == 0.0:
        return 0.0
    total = 0.0
    term = x
    n = 1
    while abs(term) > _SERIES_EPS:
        total += term / (n * n)
        term *= x
        n += 1
    return total


def has_closed_forms(profile_id: str | None) -> bool:
    return profile_id in _PROFILES


def _near_removable(profile_id: str, eps: float) -> bool:
    return any(abs(eps - p) < _FALLBACK_WINDOW for p in REMOVABLE_POINTS[profile_id])


def _quad_pair(profile_id: str, eps: float):
    return compute_integrals(_PROFILES[profile_id], eps, DEFAULT_TOL)


def _require_positive(eps: float) -> None:
    if not eps > 0.0:
        raise DomainError(f"closed forms need eps > 0, got {eps}")


def closed_i1(profile_id: str, eps: float) -> float:
    """Analytic I1(eps) for a built-in profile."""
    _require_positive(eps)
    if profile_id == "cutoff":
        return 2.0 * math.atan(1.0 / eps) / eps
    if profile_id == "power32":
        if _near_removable(profile_id, eps):
            return _quad_pair(profile_id, eps).i1
        if eps < 1.0:
            t = 1.0 - eps * eps
            return -2.0 / t + 2.0 * math.atan(math.sqrt(t) / eps) / (eps * t**1.5)
        t = eps * eps - 1.0
        w = math.sqrt(t)
        return 2.0 / t - 2.0 * math.atanh(w / eps) / (eps * t * w)
    if profile_id == "kempf":
        return 2.0 * math.pi / (eps * (math.pi * eps + 2.0))
    raise DomainError(f"no closed forms for profile {profile_id!r}")


def closed_i2(profile_id: str, eps: float) -> float:
    """Analytic I2(eps) for a built-in profile."""
    _require_positive(eps)
    if profile_id == "cutoff":
        return 2.0 - 2.0 * eps * math.atan(1.0 / eps)
    if profile_id == "power32":
        if _near_removable(profile_id, eps):
            return _quad_pair(profile_id, eps).i2
        if eps < 1.0:
            t = 1.0 - eps * eps
            lead = 2.0 * (eps * eps + 2.0) / (3.0 * t * t)
            return lead - 2.0 * eps * math.atan(math.sqrt(t) / eps) / t**2.5
        t = eps * eps - 1.0
        w = math.sqrt(t)
        lead = 2.0 * (eps * eps + 2.0) / (3.0 * t * t)
        return lead - 2.0 * eps * math.atanh(w / eps) / (t * t * w)
    if profile_id == "kempf":
        if _near_removable(profile_id, eps):
            return _quad_pair(profile_id, eps).i2
        c = 0.5 * math.pi * eps
        u = (math.pi * eps - 2.0) / (math.pi * eps + 2.0)
        num = math.pi * math.pi * (1.0 - c) / 6.0 + 2.0 * dilog(u)
        return num / (c * (1.0 - c * c))
    raise DomainError(f"no closed forms for profile {profile_id!r}")


_I2_ZERO = {
    "cutoff": 2.0,
    "power32": 4.0 / 3.0,
    "kempf": 4.0 * math.log(2.0) - _PI2_6,
}


def i2_zero_closed(profile_id: str) -> float:
    """Exact eps -> 0 limit of I2 for a built-in profile."""
    try:
        return _I2_ZERO[profile_id]
    except KeyError:
        raise DomainError(f"no closed forms for profile {profile_id!r}") from None
