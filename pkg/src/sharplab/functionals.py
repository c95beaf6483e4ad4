"""Norms and exponential integral functionals on radial profiles.

Radial reduction: for a radial u on R^N and weight |x|^(-beta),

    int_{R^N} F(u) |x|^(-beta) dx = omega_{N-1} int_0^inf F(u(r)) r^(N-1-beta) dr,

and in log-radius rho = log r the measure becomes exp((N-beta) rho) d rho.
All integrals run through the log-domain engine in :mod:`.quadrature`;
segment contributions are combined by log-sum-exp, so functionals of
strongly concentrating profiles never overflow prematurely.

The gradient L^N norm of a grid profile is exact: on a log-linear segment
with slope s (in rho), |u'|^N r^(N-1) = |s|^N / r, so the segment integral
is |s|^N * (rho_hi - rho_lo) with no quadrature error.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .constants import SeriesKind, log_phi, sphere_area
from .profiles import FunctionalParams, ParametricProfile, Piece, RadialProfile
from .quadrature import log_integral

__all__ = [
    "lebesgue_norm",
    "gradient_norm",
    "laplacian_norm",
    "tm_functional",
    "adams_functional",
    "at_objective",
    "ata_objective",
    "levelset_volume",
    "tm_params",
    "adams_params",
]

_FEASIBILITY_TOL = 1e-9


def _cached(profile, key, compute):
    cache = getattr(profile, "_cache", None)
    if cache is None:
        return compute()
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def _grid_pieces(u: RadialProfile):
    """(rho_lo, rho_hi, value callable) per segment, skipping zero segments."""
    rho = u.grid.rho
    vals = u.values
    for i in range(rho.size - 1):
        lo, hi = rho[i], rho[i + 1]
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0 and v1 == 0.0:
            continue
        slope = (v1 - v0) / (hi - lo)

        def value(x, _lo=lo, _v0=v0, _s=slope):
            return _v0 + _s * (np.asarray(x) - _lo)

        yield lo, hi, value, max(abs(v0), abs(v1))


def _parametric_pieces(u: ParametricProfile):
    for p in u.pieces:
        vmax = max(abs(float(np.atleast_1d(p.value(np.array([p.rho_lo + 1e-12 * (1 + abs(p.rho_lo))])))[0])),
                   abs(float(np.atleast_1d(p.value(np.array([p.rho_hi])))[0])))
        yield p.rho_lo, p.rho_hi, p.value, vmax


def _profile_pieces(u):
    if isinstance(u, RadialProfile):
        return list(_grid_pieces(u)), u.grid.rho[0], u.core_value
    if isinstance(u, ParametricProfile):
        return list(_parametric_pieces(u)), u.core_rho, u.core_value
    raise TypeError(f"unsupported profile type {type(u).__name__}")


def lebesgue_norm(u, p: float) -> float:
    """(omega_{N-1} int_0^inf |u|^p r^(N-1) dr)^(1/p) for compactly supported u."""
    if p < 1:
        raise ValueError(f"Lebesgue exponent must satisfy p >= 1, got {p}")

    def compute():
        N = u.N
        pieces, core_rho, core_value = _profile_pieces(u)
        total = -np.inf
        if core_value != 0.0:
            total = p * math.log(abs(core_value)) + N * core_rho - math.log(N)
        for lo, hi, value, vmax in pieces:
            if vmax == 0.0:
                continue

            def log_f(rho, _value=value):
                av = np.abs(np.asarray(_value(rho), dtype=float))
                with np.errstate(divide="ignore"):
                    return p * np.log(av) + N * np.asarray(rho)

            def maj(a, b, _vmax=vmax):
                return p * math.log(_vmax) + N * b

            total = np.logaddexp(total, log_integral(log_f, lo, hi, majorant=maj))
        if total == -np.inf:
            return 0.0
        return math.exp((math.log(sphere_area(N)) + total) / p)

    return _cached(u, ("leb", float(p)), compute)


def gradient_norm(u: RadialProfile) -> float:
    """L^N norm of the gradient, exact for piecewise log-linear profiles."""
    if not isinstance(u, RadialProfile):
        raise TypeError("gradient_norm is defined for grid profiles")

    def compute():
        N = u.N
        s = u.slopes()
        total = float(np.sum(np.abs(s) ** N * np.diff(u.grid.rho)))
        return (sphere_area(N) * total) ** (1.0 / N)

    return _cached(u, ("grad",), compute)


def laplacian_norm(u: ParametricProfile, p: float) -> float:
    """(omega_{N-1} int |Lap u|^p r^(N-1) dr)^(1/p) from closed-form Laplacians.

    Grid profiles are rejected: their kinks carry Dirac masses in u'' that
    smooth-part quadrature would silently drop.
    """
    if isinstance(u, RadialProfile):
        raise TypeError("kinked grid profiles have distributional Laplacians; "
                        "laplacian_norm accepts parametric profiles only")
    if not isinstance(u, ParametricProfile):
        raise TypeError(f"unsupported profile type {type(u).__name__}")
    if p < 1:
        raise ValueError(f"exponent must satisfy p >= 1, got {p}")

    def compute():
        N = u.N
        total = -np.inf
        if u.core_log_lap > -np.inf:
            total = p * u.core_log_lap + N * u.core_rho - math.log(N)
        for piece in u.pieces:
            if piece.log_abs_laplacian is None or piece.lap_log_bound == -np.inf:
                continue

            def log_f(rho, _piece=piece):
                return p * np.asarray(_piece.log_abs_laplacian(rho)) + N * np.asarray(rho)

            def maj(a, b, _piece=piece):
                return p * _piece.lap_log_bound + N * b

            total = np.logaddexp(
                total, log_integral(log_f, piece.rho_lo, piece.rho_hi, majorant=maj))
        if total == -np.inf:
            return 0.0
        return math.exp((math.log(sphere_area(N)) + total) / p)

    return _cached(u, ("lap", float(p)), compute)


def tm_params(N: int, beta: float, alpha: float) -> FunctionalParams:
    return FunctionalParams(N=N, beta=beta, alpha=alpha, order="first")


def adams_params(N: int, beta: float, alpha: float) -> FunctionalParams:
    return FunctionalParams(N=N, beta=beta, alpha=alpha, order="second")


def _exp_functional(u, params: FunctionalParams, kind: SeriesKind, q: float) -> float:
    """omega int phi(alpha (1-beta/N) |u|^q) r^(N-1-beta) dr in the log domain."""
    N, beta = params.N, params.beta
    coef = params.alpha * (1.0 - beta / N)
    w = N - beta
    pieces, core_rho, core_value = _profile_pieces(u)
    total = -np.inf
    if coef > 0.0 and core_value != 0.0:
        t_core = coef * abs(core_value) ** q
        total = log_phi(kind, t_core) + w * core_rho - math.log(w)
    if coef > 0.0:
        for lo, hi, value, vmax in pieces:
            if vmax == 0.0:
                continue

            def log_f(rho, _value=value):
                t = coef * np.abs(np.asarray(_value(rho), dtype=float)) ** q
                out = np.full(t.shape, -np.inf)
                pos = t > 0
                if np.any(pos):
                    out[pos] = log_phi(kind, t[pos])
                return out + w * np.asarray(rho)

            def maj(a, b, _vmax=vmax):
                # log phi(t) <= t, and t - w*rho is convex in rho on a
                # monotone piece, so the endpoint value bounds the piece.
                return coef * _vmax ** q + w * max(a, b)

            total = np.logaddexp(total, log_integral(log_f, lo, hi, majorant=maj))
    if total == -np.inf:
        return 0.0
    log_value = math.log(sphere_area(N)) + total
    if log_value > 709.0:
        return math.inf
    return math.exp(log_value)


def tm_functional(u, params: FunctionalParams) -> float:
    """First-order exponential functional with singular weight.

    omega int phi_N(alpha (1 - beta/N) |u|^(N/(N-1))) r^(N-1-beta) dr.
    Returns inf when the value exceeds double range even via the log path.
    """
    if params.order != "first":
        raise ValueError("tm_functional requires first-order params")
    N = params.N
    if u.N != N:
        raise ValueError(f"profile dimension {u.N} != params dimension {N}")
    key = ("tm", params.beta, params.alpha)
    return _cached(u, key, lambda: _exp_functional(
        u, params, SeriesKind.tm(N), N / (N - 1.0)))


def adams_functional(u: ParametricProfile, params: FunctionalParams) -> float:
    """Second-order exponential functional (exponent N/(N-2), Adams series)."""
    if params.order != "second":
        raise ValueError("adams_functional requires second-order params")
    if isinstance(u, RadialProfile):
        raise TypeError("adams_functional accepts parametric (C^1) profiles only")
    N = params.N
    if u.N != N:
        raise ValueError(f"profile dimension {u.N} != params dimension {N}")
    key = ("adams", params.beta, params.alpha)
    return _cached(u, key, lambda: _exp_functional(
        u, params, SeriesKind.adams2(N), N / (N - 2.0)))


def at_objective(u, alpha: float, beta: float) -> float:
    """Subcritical TM objective: tm_functional / ||u||_N^(N-beta).

    Requires a nonzero profile with ||grad u||_N <= 1 (tolerance 1e-9).
    """
    if u.is_zero():
        raise ValueError("objective undefined for the zero profile")
    g = gradient_norm(u)
    if g > 1.0 + _FEASIBILITY_TOL:
        raise ValueError(f"gradient norm {g} exceeds 1")
    N = u.N
    num = tm_functional(u, tm_params(N, beta, alpha))
    den = lebesgue_norm(u, N) ** (N - beta)
    return num / den


def ata_objective(u: ParametricProfile, alpha: float, beta: float) -> float:
    """Subcritical Adams objective: adams_functional / ||u||_{N/2}^((N/2)(1-beta/N)).

    Requires a nonzero parametric profile with ||Lap u||_{N/2} <= 1.
    """
    if u.is_zero():
        raise ValueError("objective undefined for the zero profile")
    N = u.N
    lap = laplacian_norm(u, N / 2.0)
    if lap > 1.0 + _FEASIBILITY_TOL:
        raise ValueError(f"Laplacian norm {lap} exceeds 1")
    num = adams_functional(u, adams_params(N, beta, alpha))
    den = lebesgue_norm(u, N / 2.0) ** ((N / 2.0) * (1.0 - beta / N))
    return num / den


def levelset_volume(u, threshold: float) -> float:
    """|{x : u(x) > threshold}| from the piecewise-monotone radial structure."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    N = u.N
    omega = sphere_area(N)

    def ball_shell(rho_lo, rho_hi):
        # volume of {rho_lo < log|x| < rho_hi}; rho_lo = -inf means a ball
        hi = math.exp(N * rho_hi)
        lo = 0.0 if rho_lo == -np.inf else math.exp(N * rho_lo)
        return omega * (hi - lo) / N

    if isinstance(u, RadialProfile):
        rho = u.grid.rho
        vals = u.values
        vol = 0.0
        if vals[0] > threshold:
            vol += ball_shell(-np.inf, rho[0])
        for i in range(rho.size - 1):
            v0, v1 = vals[i], vals[i + 1]
            lo, hi = rho[i], rho[i + 1]
            if v0 <= threshold and v1 <= threshold:
                continue
            if v0 > threshold and v1 > threshold:
                vol += ball_shell(lo, hi)
                continue
            # single crossing on a linear segment
            t = (threshold - v0) / (v1 - v0)
            cross = lo + t * (hi - lo)
            if v0 > threshold:
                vol += ball_shell(lo, cross)
            else:
                vol += ball_shell(cross, hi)
        return vol

    if isinstance(u, ParametricProfile):
        # families here are nonincreasing in r: {u > t} is a ball
        if u.core_value <= threshold:
            return 0.0
        rho_star = u.core_rho
        for p in u.pieces:
            v_lo = float(np.atleast_1d(p.value(np.array([p.rho_lo])))[0])
            v_hi = float(np.atleast_1d(p.value(np.array([p.rho_hi])))[0])
            if v_hi > threshold:
                rho_star = p.rho_hi
                continue
            if v_lo <= threshold:
                break
            rho_star = brentq(
                lambda x: float(np.atleast_1d(p.value(np.array([x])))[0]) - threshold,
                p.rho_lo, p.rho_hi, xtol=1e-15, rtol=1e-15)
            break
        return ball_shell(-np.inf, rho_star)

    raise TypeError(f"unsupported profile type {type(u).__name__}")
