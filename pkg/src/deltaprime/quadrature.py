"""Adaptive quadrature for the two moment integrals of a deformation profile.

Both integrands are even, so everything integrates over [0, 1] and doubles::

    I1(eps) = int_{-1}^{1} dy / (k(y)^2 + eps^2)
    I2(eps) = int_{-1}^{1} y^2 dy / (k(y)^2 + eps^2)

The integrator is a Gauss-Kronrod 7/15 embedded pair with recursive panel
bisection.  At small eps the integrand is a Lorentzian of width ~eps/k'(0)
peaked at the origin, so the initial panel edges are seeded at {eps, 10 eps}
before adaptation takes over; panels deeper than the cap report a
ToleranceNotReachedWarning instead of returning a silently inaccurate value.
I1(0) diverges whenever k'(0) is finite, so eps = 0 is rejected outright;
the eps -> 0 limit of I2 exists and has its own entry point.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .deformation import DeformationProfile
from .errors import (
    DivergedAtEndpointError,
    DomainError,
    NonFiniteIntegrandError,
    ToleranceNotReachedWarning,
    ZeroSlopeAtOriginError,
)

__all__ = [
    "QuadResult",
    "IntegralPair",
    "DEFAULT_TOL",
    "integrate_even",
    "compute_integrals",
    "compute_i2_zero",
]

DEFAULT_TOL = 1e-10
_MAX_DEPTH = 60

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1]; the Gauss-7 rule reuses
# the odd-indexed Kronrod abscissae.
_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
)
_WGK_CENTER = 0.209482141084728
_WG = (0.129484966168870, 0.279705391489277, 0.381830050505119)
_WG_CENTER = 0.417959183673469


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evaluations: int
    converged: bool


@dataclass(frozen=True)
class IntegralPair:
    eps: float
    i1: float
    i2: float
    err1: float
    err2: float
    evaluations: int


def _kronrod_panel(f: Callable[[float], float], a: float, b: float):
    """Return (kronrod, |kronrod - gauss|, evaluations) for one panel."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(mid)
    if not math.isfinite(fc):
        raise NonFiniteIntegrandError(mid, fc)
    resk = _WGK_CENTER * fc
    resg = _WG_CENTER * fc
    for j, x in enumerate(_XGK):
        dx = half * x
        f1 = f(mid - dx)
        f2 = f(mid + dx)
        if not (math.isfinite(f1) and math.isfinite(f2)):
            bad = mid - dx if not math.isfinite(f1) else mid + dx
            raise NonFiniteIntegrandError(bad, f1 if not math.isfinite(f1) else f2)
        s = f1 + f2
        resk += _WGK[j] * s
        if j % 2 == 1:
            resg += _WG[(j - 1) // 2] * s
    resk *= half
    resg *= half
    return resk, abs(resk - resg), 15


def integrate_even(
    f: Callable[[float], float],
    tol: float = DEFAULT_TOL,
    breakpoints: Iterable[float] = (),
) -> QuadResult:
    """Compute 2 * int_0^1 f(y) dy adaptively.

    ``breakpoints`` seeds extra panel edges inside (0, 1), used to resolve a
    sharp peak before adaptation starts.  The result error is an absolute
    estimate for the doubled integral and is kept below ``tol`` unless the
    depth cap is hit, in which case the best value is returned with
    ``converged=False`` and a ToleranceNotReachedWarning.
    """
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    edges = sorted({0.0, 1.0, *(p for p in breakpoints if 0.0 < p < 1.0)})
    # budget the panel errors against half the tolerance: the final doubling
    # for the even extension doubles the accumulated error as well
    budget = 0.5 * tol

    done: list[tuple[float, float, float]] = []  # (left edge, value, error)
    evaluations = 0
    converged = True
    stack = [(lo, hi, 0) for lo, hi in zip(edges, edges[1:])]
    while stack:
        a, b, depth = stack.pop()
        value, err, n = _kronrod_panel(f, a, b)
        evaluations += n
        if err <= budget * (b - a) or depth >= _MAX_DEPTH:
            if err > budget * (b - a):
                converged = False
            done.append((a, value, err))
        else:
            mid = 0.5 * (a + b)
            stack.append((mid, b, depth + 1))
            stack.append((a, mid, depth + 1))

    done.sort(key=lambda item: item[0])
    total = math.fsum(item[1] for item in done)
    total_err = math.fsum(item[2] for item in done)
    if not converged:
        warnings.warn(
            f"subdivision depth cap {_MAX_DEPTH} hit; error estimate "
            f"{2.0 * total_err:.3e} exceeds tol {tol:.3e}",
            ToleranceNotReachedWarning,
            stacklevel=2,
        )
    return QuadResult(2.0 * total, 2.0 * total_err, evaluations, converged)


def _peak_breakpoints(eps: float) -> Sequence[float]:
    return (eps, min(1.0, 10.0 * eps))


def compute_integrals(
    profile: DeformationProfile, eps: float, tol: float = DEFAULT_TOL
) -> IntegralPair:
    """Evaluate I1(eps) and I2(eps) for a profile by adaptive quadrature."""
    if not eps > 0.0:
        raise DomainError(
            f"eps must be positive (I1 diverges as eps -> 0), got {eps}"
        )
    k = profile.k
    eps2 = eps * eps

    def lorentz(y: float) -> float:
        kv = k(y)
        if math.isnan(kv):
            raise DivergedAtEndpointError(y, kv)
        return 1.0 / (kv * kv + eps2)

    def lorentz_y2(y: float) -> float:
        return y * y * lorentz(y)

    breakpoints = _peak_breakpoints(eps)
    r1 = integrate_even(lorentz, tol, breakpoints)
    r2 = integrate_even(lorentz_y2, tol, breakpoints)
    return IntegralPair(
        eps=eps,
        i1=r1.value,
        i2=r2.value,
        err1=r1.error,
        err2=r2.error,
        evaluations=r1.evaluations + r2.evaluations,
    )


def compute_i2_zero(profile: DeformationProfile, tol: float = DEFAULT_TOL) -> float:
    """Evaluate I2(0) = int_{-1}^{1} y^2 / k(y)^2 dy.

    The integrand has a removable point at the origin, filled by continuity
    with 1/k'(0)^2; where k blows up toward y = 1 the integrand tends to 0
    and the evaluation point is clamped just inside the edge.
    """
    slope = profile.k_slope_origin
    if not slope > 1e-12:
        raise ZeroSlopeAtOriginError(
            f"k'(0) = {slope!r}; I2(0) may diverge for this profile"
        )
    k = profile.k
    origin_value = 1.0 / (slope * slope)

    def squared_ratio(y: float) -> float:
        if y < 1e-8:
            return origin_value
        kv = k(min(y, 1.0 - 1e-15))
        if math.isnan(kv) or kv == 0.0:
            raise DivergedAtEndpointError(y, kv)
        r = y / kv
        return r * r

    return integrate_even(squared_ratio, tol).value
