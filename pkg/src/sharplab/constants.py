"""Sharp constants and truncated exponential series.

Closed forms for the critical growth constants of the Trudinger-Moser
inequality (alpha_N), of the second-order Adams inequality (beta(N, m)),
and of its fractional-order extension (beta_0(N, gamma)), together with
the tail exponential series

    phi(t) = sum_{j >= j0} t^j / j!

that makes the exponential functionals finite on the relevant Lebesgue
spaces.  Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "sphere_area",
    "alpha_moser",
    "beta_adams",
    "beta0_fractional",
    "SeriesKind",
    "phi",
    "log_phi",
    "phi_small_t_leading",
]

# Largest argument for which exp(t) is a finite double.
_EXP_OVERFLOW = 709.0


def _check_dimension(N, minimum=2):
    if not isinstance(N, (int, np.integer)):
        raise TypeError(f"dimension must be an integer, got {N!r}")
    if N < minimum:
        raise ValueError(f"dimension must be >= {minimum}, got {N}")
    return int(N)


def sphere_area(N: int) -> float:
    """Surface area of the unit sphere in R^N: 2 pi^(N/2) / Gamma(N/2)."""
    N = _check_dimension(N, 2)
    return 2.0 * math.pi ** (N / 2.0) / math.gamma(N / 2.0)


def alpha_moser(N: int) -> float:
    """Sharp exponential constant alpha_N = N (N pi^(N/2) / Gamma(N/2 + 1))^(1/(N-1)).

    Equivalently N * sphere_area(N)^(1/(N-1)); the two forms agree because
    N pi^(N/2)/Gamma(N/2+1) = 2 pi^(N/2)/Gamma(N/2).
    """
    N = _check_dimension(N, 2)
    base = N * math.pi ** (N / 2.0) / math.gamma(N / 2.0 + 1.0)
    return N * base ** (1.0 / (N - 1.0))


def beta_adams(N: int, m: int) -> float:
    """Sharp constant beta(N, m) of the m-th order Adams inequality.

    Odd m uses Gamma((m+1)/2) / Gamma((N-m+1)/2), even m uses
    Gamma(m/2) / Gamma((N-m)/2); both are raised to N/(N-m) and scaled
    by N / sphere_area(N).
    """
    N = _check_dimension(N, 2)
    if not isinstance(m, (int, np.integer)):
        raise TypeError(f"derivative order must be an integer, got {m!r}")
    if not 0 < m < N:
        raise ValueError(f"need 0 < m < N, got m={m}, N={N}")
    if m % 2 == 1:
        bracket = (
            math.pi ** (N / 2.0) * 2.0**m * math.gamma((m + 1) / 2.0)
            / math.gamma((N - m + 1) / 2.0)
        )
    else:
        bracket = (
            math.pi ** (N / 2.0) * 2.0**m * math.gamma(m / 2.0)
            / math.gamma((N - m) / 2.0)
        )
    return N / sphere_area(N) * bracket ** (N / (N - m))


def beta0_fractional(N: int, gamma: float) -> float:
    """Sharp constant beta_0(N, gamma) for fractional order 0 < gamma < N.

    beta_0 = N/omega_{N-1} [pi^(N/2) 2^gamma Gamma(gamma/2) / Gamma((N-gamma)/2)]^(p/(p-1))
    with p = N/gamma.  Agrees with beta_adams(N, m) at even integer gamma = m.
    """
    N = _check_dimension(N, 2)
    gamma = float(gamma)
    if not 0.0 < gamma < N:
        raise ValueError(f"need 0 < gamma < N, got gamma={gamma}, N={N}")
    p = N / gamma
    bracket = (
        math.pi ** (N / 2.0) * 2.0**gamma * math.gamma(gamma / 2.0)
        / math.gamma((N - gamma) / 2.0)
    )
    return N / sphere_area(N) * bracket ** (p / (p - 1.0))


@dataclass(frozen=True)
class SeriesKind:
    """Selects which low-order Taylor terms are removed from exp(t).

    ``start_index`` is the first index kept in the tail series:

    * first-order (TM) regime in dimension N: j0 = N - 1,
    * second-order (Adams) regime:            j0 = min integer >= (N-2)/2, >= 1,
    * fractional order gamma:                 j0 = min integer >= p - 1, p = N/gamma.
    """

    label: str
    start_index: int

    @staticmethod
    def tm(N: int) -> "SeriesKind":
        N = _check_dimension(N, 2)
        return SeriesKind(f"tm(N={N})", N - 1)

    @staticmethod
    def adams2(N: int) -> "SeriesKind":
        N = _check_dimension(N, 3)
        return SeriesKind(f"adams2(N={N})", max(1, math.ceil((N - 2) / 2)))

    @staticmethod
    def fractional(N: int, gamma: float) -> "SeriesKind":
        N = _check_dimension(N, 2)
        if not 0.0 < gamma < N:
            raise ValueError(f"need 0 < gamma < N, got gamma={gamma}")
        p = N / gamma
        j0 = max(1, math.ceil(p - 1.0))
        # ceil(p-1) == p-1 when p is integral; guard float fuzz near integers
        if abs(round(p) - p) < 1e-12:
            j0 = max(1, int(round(p)) - 1)
        return SeriesKind(f"fractional(N={N}, gamma={gamma})", j0)


def _removed_terms_log(start_index: int, t: np.ndarray) -> np.ndarray:
    """log of sum_{j < start_index} t^j / j!, elementwise; -inf where empty."""
    if start_index <= 0:
        return np.full_like(t, -np.inf)
    j = np.arange(start_index, dtype=float)
    with np.errstate(divide="ignore"):
        logt = np.where(t > 0, np.log(np.where(t > 0, t, 1.0)), -np.inf)
    # exponents shape (len(t), start_index)
    expo = np.outer(logt, j) - np.array([math.lgamma(k + 1) for k in range(start_index)])
    expo[t == 0, 0] = 0.0  # t^0/0! = 1 survives at t = 0
    m = np.max(expo, axis=1)
    out = m + np.log(np.sum(np.exp(expo - m[:, None]), axis=1))
    return out


def _phi_direct(start_index: int, t: np.ndarray) -> np.ndarray:
    """Tail series by forward summation; valid for any t below overflow."""
    out = np.zeros_like(t)
    term = np.exp(
        start_index * np.log(np.where(t > 0, t, 1.0)) - math.lgamma(start_index + 1)
    )
    term = np.where(t > 0, term, 0.0)
    out = term.copy()
    j = start_index + 1
    active = term > 0
    while np.any(active) and j < start_index + 120000:
        term = term * t / j
        out += term
        active = term > out * 1e-18
        if not np.any(active):
            break
        j += 1
    return out


def phi(kind: SeriesKind, t):
    """Tail exponential series sum_{j >= start_index} t^j / j! for t >= 0.

    Strictly increasing and convex, phi(0) = 0.  Raises OverflowError once
    t exceeds the double-precision range of exp; callers must switch to
    :func:`log_phi` there.
    """
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    if np.any(t_arr < 0):
        raise ValueError("phi requires t >= 0")
    if np.any(t_arr > _EXP_OVERFLOW):
        raise OverflowError(
            f"phi overflows for t > {_EXP_OVERFLOW}; use log_phi instead"
        )
    j0 = kind.start_index
    # Direct tail summation is cancellation-free at every t; the complement
    # e^t - partial sum is cheaper but only accurate once the tail carries
    # most of the mass, i.e. for t comfortably above the start index.
    t_switch = max(1.0, 2.0 * j0)
    out = np.empty_like(t_arr)
    small = t_arr < t_switch
    if np.any(small):
        out[small] = _phi_direct(j0, t_arr[small])
    if np.any(~small):
        tt = t_arr[~small]
        partial = np.exp(_removed_terms_log(j0, tt))
        out[~small] = np.exp(tt) - partial
    return float(out[0]) if scalar else out


def log_phi(kind: SeriesKind, t):
    """log(phi(kind, t)) for t > 0, stable up to t ~ 1e4 and beyond.

    For large t this is t + log(1 - e^(-t) * removed(t)) evaluated without
    forming e^t, so it never overflows.
    """
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr).astype(float)
    if np.any(t_arr <= 0):
        raise ValueError("log_phi requires t > 0")
    j0 = kind.start_index
    out = np.empty_like(t_arr)
    small = t_arr < 30.0
    if np.any(small):
        out[small] = np.log(phi(kind, t_arr[small]))
    if np.any(~small):
        tt = t_arr[~small]
        log_removed = _removed_terms_log(j0, tt)
        correction = np.exp(log_removed - tt)
        out[~small] = tt + np.log1p(-correction)
    return float(out[0]) if scalar else out


def phi_small_t_leading(kind: SeriesKind):
    """Leading small-argument behavior: phi(t) ~ t^j0 / j0! as t -> 0."""
    j0 = kind.start_index
    return j0, 1.0 / math.gamma(j0 + 1)
