"""Extremizing sequences and lower-bound selection rules.

Three classical families drive every sharpness argument here:

* the Moser sequence: log-linear concentrating profiles with unit gradient
  L^N norm, exactly representable on a two-node grid;
* capped log profiles ("psi_r"): a C^1 smoothing H of min(t, 1) composed
  with normalized log-radius, for the second-order regime;
* quadratic-cap log profiles ("u_k"): a paraboloid cap glued to a log
  branch, with constant Laplacian on the cap.

The lower-bound rules pair the sequence index with the exponential
strength alpha: n ~ 1.5/(1 - alpha/alpha_N) for the first-order family and
log k ~ 1/(1 - alpha/beta(N,2)) for the quadratic-cap family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import alpha_moser, beta_adams, sphere_area
from .functionals import at_objective, ata_objective, laplacian_norm
from .profiles import ParametricProfile, Piece, RadialGrid, RadialProfile

__all__ = [
    "MoserSequenceSpec",
    "moser_profile",
    "smooth_cap",
    "AdamsPsiSpec",
    "adams_psi_profile",
    "AdamsQuadraticSpec",
    "adams_quadratic_profile",
    "adams_matched_cap_profile",
    "at_lower_bound",
    "ata_lower_bound",
]

# Inner truncation depth (in log-radius) for nearly-constant cap pieces;
# the remainder is carried by the analytic core term of the integrators.
_CAP_DEPTH = 40.0


@dataclass(frozen=True)
class MoserSequenceSpec:
    n: float
    N: int
    beta: float = 0.0

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("index n must be positive")
        if not 0.0 <= self.beta < self.N:
            raise ValueError(f"need 0 <= beta < N, got beta={self.beta}")


def moser_profile(spec, N=None, beta=0.0) -> RadialProfile:
    """Concentrating log profile with ||grad u||_N = 1 exactly.

    Plateau (1/omega)^(1/N) (n/(N-beta))^((N-1)/N) on r <= exp(-n/(N-beta)),
    then ((N-beta)/(omega n))^(1/N) log(1/r) down to zero at r = 1.
    A single log-linear segment represents it exactly.
    """
    if not isinstance(spec, MoserSequenceSpec):
        spec = MoserSequenceSpec(float(spec), int(N), float(beta))
    n, N, beta = spec.n, spec.N, spec.beta
    omega = sphere_area(N)
    depth = n / (N - beta)
    plateau = (1.0 / omega) ** (1.0 / N) * (n / (N - beta)) ** ((N - 1.0) / N)
    grid = RadialGrid(np.array([-depth, 0.0]))
    return RadialProfile(grid, np.array([plateau, 0.0]), N)


def _psi(s):
    """C^infinity cap generator: psi(0)=psi'(0)=0, psi(1)=psi'(1)=1."""
    s = np.asarray(s, dtype=float)
    return 2.0 * s**2 - s**3


def _psi_d1(s):
    s = np.asarray(s, dtype=float)
    return 4.0 * s - 3.0 * s**2


def _psi_d2(s):
    s = np.asarray(s, dtype=float)
    return 4.0 - 6.0 * s


_PSI_D1_MAX = 4.0 / 3.0  # max of psi' on [0, 1], attained at s = 2/3
_PSI_D2_MAX = 4.0        # max of |psi''| on [0, 1]


def smooth_cap(t, eps: float):
    """C^1 smoothing H of min(t, 1)_+ with corner width eps.

    H = 0 for t <= 0, eps*psi(t/eps) on (0, eps], t on (eps, 1-eps],
    1 - eps*psi((1-t)/eps) on (1-eps, 1], and 1 for t > 1; one-sided
    derivatives match at all four breakpoints.
    """
    if not 0.0 < eps < 0.5:
        raise ValueError(f"need 0 < eps < 1/2, got {eps}")
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    out = np.empty_like(t_arr)
    out[t_arr <= 0.0] = 0.0
    m = (t_arr > 0.0) & (t_arr <= eps)
    out[m] = eps * _psi(t_arr[m] / eps)
    m = (t_arr > eps) & (t_arr <= 1.0 - eps)
    out[m] = t_arr[m]
    m = (t_arr > 1.0 - eps) & (t_arr <= 1.0)
    out[m] = 1.0 - eps * _psi((1.0 - t_arr[m]) / eps)
    out[t_arr > 1.0] = 1.0
    return float(out[0]) if scalar else out


def _smooth_cap_d1(t, eps):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    m = (t > 0.0) & (t <= eps)
    out[m] = _psi_d1(t[m] / eps)
    m = (t > eps) & (t <= 1.0 - eps)
    out[m] = 1.0
    m = (t > 1.0 - eps) & (t <= 1.0)
    out[m] = _psi_d1((1.0 - t[m]) / eps)
    return out


def _smooth_cap_d2(t, eps):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    m = (t > 0.0) & (t <= eps)
    out[m] = _psi_d2(t[m] / eps) / eps
    m = (t > 1.0 - eps) & (t <= 1.0)
    out[m] = -_psi_d2((1.0 - t[m]) / eps) / eps
    return out


@dataclass(frozen=True)
class AdamsPsiSpec:
    r: float
    eps: float
    N: int

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ValueError(f"need inner radius in (0, 1), got {self.r}")
        if not 0.0 < self.eps < 0.5:
            raise ValueError(f"need 0 < eps < 1/2, got {self.eps}")
        if self.N < 3:
            raise ValueError("Adams regime requires N >= 3")


def adams_psi_profile(spec: AdamsPsiSpec) -> ParametricProfile:
    """Capped log profile u(x) = (log 1/r)^((N-2)/N) H(log(1/|x|)/log(1/r)).

    Constant on the inner ball B_r, C^1 across all branch junctions, with
    the radial Laplacian (A/x^2) [H''(t)/L^2 - (N-2) H'(t)/L] in closed
    form per branch (t = log(1/|x|)/L, L = log(1/r)).
    """
    r, eps, N = spec.r, spec.eps, spec.N
    L = math.log(1.0 / r)
    A = L ** ((N - 2.0) / N)

    def t_of(rho):
        return -np.asarray(rho, dtype=float) / L

    def make_band(rho_lo, rho_hi, d2_bound, d1_bound):
        def value(rho):
            return A * smooth_cap(t_of(rho), eps)

        def log_lap(rho):
            t = t_of(rho)
            bracket = _smooth_cap_d2(t, eps) / L**2 - (N - 2.0) * _smooth_cap_d1(t, eps) / L
            with np.errstate(divide="ignore"):
                mag = np.where(bracket != 0.0, np.abs(bracket), np.nan)
                out = math.log(A) - 2.0 * np.asarray(rho) + np.log(
                    np.where(np.isnan(mag), 1.0, mag))
            return np.where(np.isnan(mag), -np.inf, out)

        bound = math.log(A) - 2.0 * rho_lo + math.log(
            d2_bound / L**2 + (N - 2.0) * d1_bound / L)
        return Piece(rho_lo, rho_hi, value, log_lap, bound)

    pieces = [
        make_band(-L, -(1.0 - eps) * L, _PSI_D2_MAX / eps, _PSI_D1_MAX),
        make_band(-(1.0 - eps) * L, -eps * L, 0.0, 1.0),
        make_band(-eps * L, 0.0, _PSI_D2_MAX / eps, _PSI_D1_MAX),
    ]
    return ParametricProfile(N, pieces, core_rho=-L, core_value=A,
                             core_log_lap=-np.inf,
                             label=f"adams-psi(r={r:g}, eps={eps:g}, N={N})")


@dataclass(frozen=True)
class AdamsQuadraticSpec:
    k: float
    N: int

    def __post_init__(self):
        if not self.k >= 3.0:
            raise ValueError(f"need index k >= 3, got {self.k}")
        if self.N < 3:
            raise ValueError("Adams regime requires N >= 3")

    @property
    def lnk(self) -> float:
        return math.log(self.k)


def _quadratic_cap_family(lnk: float, N: int, cap_height: float,
                          label: str) -> ParametricProfile:
    """Paraboloid cap of given height glued to the standard log branch.

    Log branch: |s| log(1/|x|) on [k^(-1/N), 1], |s| = N beta(N,2)^(2/N-1)
    (ln k)^(-2/N), whose Laplacian L^{N/2} mass is exactly 1.  The cap is
    P0 + h (1 - (r/R)^2) with h = cap_height, continuous at R; the paper's
    choice is h = (ln k)^(-2/N), the slope-matched (C^1) variant uses
    h = |s|/2.
    """
    beta_c = beta_adams(N, 2)
    rho_R = -lnk / N
    P0 = (lnk / beta_c) ** ((N - 2.0) / N)
    slope = N * beta_c ** (2.0 / N - 1.0) * lnk ** (-2.0 / N)
    h = cap_height
    # cap Laplacian: Lap[P0 + h - h (r/R)^2] = -2 N h / R^2, constant
    log_lap_cap = math.log(2.0 * N * h) + (2.0 / N) * lnk

    def cap_value(rho):
        return P0 + h * (1.0 - np.exp(2.0 * (np.asarray(rho) - rho_R)))

    def cap_log_lap(rho):
        return np.full(np.asarray(rho, dtype=float).shape, log_lap_cap)

    def log_value(rho):
        return -slope * np.asarray(rho)

    def log_log_lap(rho):
        return math.log((N - 2.0) * slope) - 2.0 * np.asarray(rho)

    pieces = [
        Piece(rho_R - _CAP_DEPTH, rho_R, cap_value, cap_log_lap, log_lap_cap),
        Piece(rho_R, 0.0, log_value, log_log_lap,
              math.log((N - 2.0) * slope) - 2.0 * rho_R),
    ]
    return ParametricProfile(N, pieces, core_rho=rho_R - _CAP_DEPTH,
                             core_value=P0 + h, core_log_lap=log_lap_cap,
                             label=label)


def adams_quadratic_profile(spec, N=None, *, lnk=None) -> ParametricProfile:
    """The quadratic-cap sequence u_k (cap height (ln k)^(-2/N)).

    Continuous at both junctions as written; C^0 but not C^1 at r = k^(-1/N),
    so its Laplacian is taken branchwise.  ``lnk`` may be passed instead of
    a spec when k itself would overflow.
    """
    if lnk is not None:
        N = int(spec if N is None else N)
        if N < 3:
            raise ValueError("Adams regime requires N >= 3")
        if lnk < math.log(3.0):
            raise ValueError("need log k >= log 3")
    elif isinstance(spec, AdamsQuadraticSpec):
        N, lnk = spec.N, spec.lnk
    else:
        spec = AdamsQuadraticSpec(float(spec), int(N))
        N, lnk = spec.N, spec.lnk
    return _quadratic_cap_family(
        lnk, N, cap_height=lnk ** (-2.0 / N),
        label=f"adams-uk(lnk={lnk:g}, N={N})")


def adams_matched_cap_profile(N: int, lnk: float) -> ParametricProfile:
    """Slope-matched (C^1) variant of the quadratic-cap family.

    Same log branch; the cap height |s|/2 makes u' continuous at
    r = k^(-1/N), which shrinks the cap's Laplacian mass from
    omega (2N)^(N/2)/(N ln k) to omega N^(N-1) beta(N,2)^(1-N/2)/ln k and
    with it the concentration penalty of the family.  Used by the
    divergence probes, where the paper's cap is numerically too lossy.
    """
    if N < 3:
        raise ValueError("Adams regime requires N >= 3")
    beta_c = beta_adams(N, 2)
    slope = N * beta_c ** (2.0 / N - 1.0) * lnk ** (-2.0 / N)
    return _quadratic_cap_family(
        lnk, N, cap_height=slope / 2.0,
        label=f"adams-c1(lnk={lnk:g}, N={N})")


def at_lower_bound(alpha: float, beta: float, N: int):
    """(n_star, bound): certified lower bound for the subcritical TM supremum.

    Picks the sequence index in the middle of the admissible window
    1 <= (1 - alpha/alpha_N) n <= 2 and evaluates the objective there.
    Requires alpha/alpha_N in [1/2, 1).
    """
    a_N = alpha_moser(N)
    ratio = alpha / a_N
    if not 0.5 <= ratio < 1.0:
        raise ValueError(f"need alpha/alpha_N in [1/2, 1), got {ratio}")
    n_star = 1.5 / (1.0 - ratio)
    bound = at_objective(moser_profile(n_star, N, beta), alpha, beta)
    return n_star, bound


def ata_lower_bound(alpha: float, beta: float, N: int):
    """(k_star, bound): certified lower bound for the subcritical Adams supremum.

    log k_star = 1/(1 - alpha/beta(N,2)); the quadratic-cap profile is
    scaled by 1/||Lap u_k||_{N/2} so that the objective's constraint holds
    (the raw profile has Laplacian norm slightly above 1).  k_star is
    returned as a float and may overflow to inf; the profile is built from
    log k_star directly.
    """
    beta_c = beta_adams(N, 2)
    ratio = alpha / beta_c
    if not 0.5 <= ratio < 1.0:
        raise ValueError(f"need alpha/beta(N,2) in [1/2, 1), got {ratio}")
    lnk = 1.0 / (1.0 - ratio)
    u = adams_quadratic_profile(N, lnk=lnk)
    v = u.scaled(1.0 / laplacian_norm(u, N / 2.0))
    bound = ata_objective(v, alpha, beta)
    k_star = math.exp(lnk) if lnk <= 709.0 else math.inf
    return k_star, bound
