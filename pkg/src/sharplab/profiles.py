"""Radial profile representations.

Two carriers are used throughout:

* :class:`RadialProfile` - constant core, piecewise linear in log-radius,
  compactly supported.  Dilation u(x) -> u(lam x) is an exact grid shift
  and the gradient L^N norm is a closed-form sum, which removes all
  discretization error from the scaling identities.

* :class:`ParametricProfile` - closed-form C^1-in-pieces families carrying
  analytic radial derivatives and Laplacians.  Pieces expose values and
  log|Laplacian| as vectorized functions of rho = log r, plus a per-piece
  upper bound of log|Laplacian| so that quadrature pruning stays sound.

Grid profiles have kinks, hence distributional Laplacians; second-order
functionals therefore only accept parametric profiles.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RadialGrid",
    "RadialProfile",
    "FunctionalParams",
    "Piece",
    "ParametricProfile",
    "read_profile",
    "write_profile",
    "profile_to_text",
    "profile_from_text",
]


class RadialGrid:
    """Strictly increasing, finite log-radius nodes rho_0 < ... < rho_M."""

    def __init__(self, rho_nodes):
        rho = np.asarray(rho_nodes, dtype=float)
        if rho.ndim != 1 or rho.size < 2:
            raise ValueError("grid needs at least two nodes")
        if not np.all(np.isfinite(rho)):
            raise ValueError("grid nodes must be finite")
        if not np.all(np.diff(rho) > 0):
            raise ValueError("grid nodes must be strictly increasing")
        self.rho = rho

    @property
    def r_min(self) -> float:
        return math.exp(self.rho[0])

    @property
    def r_max(self) -> float:
        return math.exp(self.rho[-1])

    def __len__(self):
        return self.rho.size


class RadialProfile:
    """u(r): constant u_0 for r <= r_min, log-linear between nodes, 0 beyond r_max.

    The last node value must vanish so that the zero tail is continuous.
    Instances are immutable; transforms return new profiles.
    """

    def __init__(self, grid: RadialGrid, values, N: int):
        if not isinstance(grid, RadialGrid):
            grid = RadialGrid(grid)
        vals = np.asarray(values, dtype=float)
        if vals.shape != grid.rho.shape:
            raise ValueError("values must match grid nodes")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        if vals[-1] != 0.0:
            raise ValueError("profile must vanish at the outer grid node")
        if not isinstance(N, (int, np.integer)) or N < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {N}")
        self.grid = grid
        self.values = vals
        self.N = int(N)
        self.values.setflags(write=False)
        self.grid.rho.setflags(write=False)
        self._cache: dict = {}

    @property
    def core_value(self) -> float:
        return float(self.values[0])

    @property
    def support_rho(self) -> float:
        return float(self.grid.rho[-1])

    def value(self, rho):
        """u as a function of log-radius (vectorized)."""
        rho = np.asarray(rho, dtype=float)
        return np.interp(rho, self.grid.rho, self.values,
                         left=self.values[0], right=0.0)

    def slopes(self) -> np.ndarray:
        """d u / d rho on each segment."""
        return np.diff(self.values) / np.diff(self.grid.rho)

    def is_zero(self) -> bool:
        return bool(np.all(self.values == 0.0))

    def dilated(self, lam: float) -> "RadialProfile":
        """Profile of x -> u(lam x); exact shift of the grid by -log lam."""
        if lam <= 0:
            raise ValueError("dilation factor must be positive")
        return RadialProfile(RadialGrid(self.grid.rho - math.log(lam)),
                             self.values, self.N)

    def scaled(self, c: float) -> "RadialProfile":
        return RadialProfile(self.grid, self.values * c, self.N)

    def with_values(self, values) -> "RadialProfile":
        return RadialProfile(self.grid, values, self.N)

    def refined(self, min_nodes: int) -> "RadialProfile":
        """Same function on a grid with at least ``min_nodes`` nodes.

        New nodes are linear interpolants in rho, so the represented
        function is unchanged.
        """
        rho = self.grid.rho
        while rho.size < min_nodes:
            mids = 0.5 * (rho[:-1] + rho[1:])
            rho = np.sort(np.concatenate([rho, mids]))
        return RadialProfile(RadialGrid(rho), self.value(rho), self.N)


@dataclass(frozen=True)
class FunctionalParams:
    """Dimension, singular weight exponent, exponential strength, and order."""

    N: int
    beta: float
    alpha: float
    order: str = "first"

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.N}")
        if not 0.0 <= self.beta < self.N:
            raise ValueError(f"need 0 <= beta < N, got beta={self.beta}")
        if self.alpha < 0.0:
            raise ValueError(f"need alpha >= 0, got {self.alpha}")
        if self.order not in ("first", "second"):
            raise ValueError(f"order must be 'first' or 'second', got {self.order!r}")
        if self.order == "second" and self.N < 3:
            raise ValueError("second-order functionals require N >= 3")


@dataclass
class Piece:
    """One smooth branch of a parametric profile on [rho_lo, rho_hi].

    ``value`` and ``log_abs_laplacian`` are vectorized in rho.
    ``lap_log_bound`` must upper-bound log|Laplacian| on the piece.
    Values must be monotone in rho within a piece (all families here are),
    which the norm drivers rely on for their pruning majorants.
    """

    rho_lo: float
    rho_hi: float
    value: object
    log_abs_laplacian: object = None
    lap_log_bound: float = -np.inf


class ParametricProfile:
    """Closed-form radial profile assembled from smooth pieces.

    Subclasses (or wrapper transforms) provide ``pieces``, a constant core
    below ``core_rho`` with value ``core_value`` and Laplacian magnitude
    exp(core_log_lap), and zero beyond the last piece.
    """

    def __init__(self, N: int, pieces, core_rho: float, core_value: float,
                 core_log_lap: float = -np.inf, label: str = "parametric"):
        if N < 3:
            raise ValueError("parametric profiles serve the Adams regime, N >= 3")
        self.N = int(N)
        self.pieces = tuple(pieces)
        if not self.pieces:
            raise ValueError("need at least one piece")
        for p, q in zip(self.pieces, self.pieces[1:]):
            if q.rho_lo < p.rho_hi - 1e-12:
                raise ValueError("pieces must be ordered and non-overlapping")
        self.core_rho = float(core_rho)
        self.core_value = float(core_value)
        self.core_log_lap = float(core_log_lap)
        self.label = label
        self._cache: dict = {}

    @property
    def support_rho(self) -> float:
        return self.pieces[-1].rho_hi

    def value(self, rho):
        rho = np.asarray(rho, dtype=float)
        out = np.zeros_like(rho)
        out[rho <= self.core_rho] = self.core_value
        for p in self.pieces:
            m = (rho > p.rho_lo) & (rho <= p.rho_hi)
            if np.any(m):
                out[m] = p.value(rho[m])
        return out

    def is_zero(self) -> bool:
        return self.core_value == 0.0 and all(
            p.value(np.array([0.5 * (p.rho_lo + p.rho_hi)]))[0] == 0.0
            for p in self.pieces
        )

    def scaled(self, c: float) -> "ParametricProfile":
        return TransformedProfile(self, amplitude=c)

    def dilated(self, lam: float) -> "ParametricProfile":
        """Profile of x -> u(lam x)."""
        return TransformedProfile(self, lam=lam)


class TransformedProfile(ParametricProfile):
    """amplitude * u(lam x) for a parametric base profile.

    The Laplacian transforms exactly: Lap[a u(lam x)] = a lam^2 (Lap u)(lam x).
    """

    def __init__(self, base: ParametricProfile, amplitude: float = 1.0,
                 lam: float = 1.0):
        if lam <= 0:
            raise ValueError("dilation factor must be positive")
        if isinstance(base, TransformedProfile):
            amplitude = amplitude * base.amplitude
            lam = lam * base.lam
            base = base.base
        self.base = base
        self.amplitude = float(amplitude)
        self.lam = float(lam)
        shift = math.log(self.lam)
        log_amp_lap = (math.log(abs(self.amplitude)) if self.amplitude != 0.0
                       else -np.inf) + 2.0 * shift

        def make_piece(p: Piece) -> Piece:
            amp = self.amplitude

            def value(rho, _p=p):
                return amp * _p.value(np.asarray(rho) + shift)

            if p.log_abs_laplacian is not None:
                def log_lap(rho, _p=p):
                    return log_amp_lap + _p.log_abs_laplacian(np.asarray(rho) + shift)
            else:
                log_lap = None
            return Piece(p.rho_lo - shift, p.rho_hi - shift, value, log_lap,
                         p.lap_log_bound + log_amp_lap)

        super().__init__(
            base.N,
            [make_piece(p) for p in base.pieces],
            base.core_rho - shift,
            self.amplitude * base.core_value,
            base.core_log_lap + log_amp_lap,
            label=f"{base.label}*",
        )


# ----------------------------------------------------------------------
# Plain-text serialization: "radial-profile v1 N=<int>" + "rho value" rows.
# ----------------------------------------------------------------------

_HEADER = "radial-profile v1 N="


def profile_to_text(profile: RadialProfile) -> str:
    out = io.StringIO()
    out.write(f"radial-profile v1 N={profile.N}\n")
    for rho, val in zip(profile.grid.rho, profile.values):
        out.write(f"{rho!r} {val!r}\n")
    return out.getvalue()


def profile_from_text(text: str) -> RadialProfile:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(_HEADER):
        raise ValueError("missing 'radial-profile v1' header")
    try:
        N = int(lines[0][len(_HEADER):])
    except ValueError as exc:
        raise ValueError(f"bad dimension in header: {lines[0]!r}") from exc
    rhos, vals = [], []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"expected 'rho value' pair, got {ln!r}")
        rhos.append(float(parts[0]))
        vals.append(float(parts[1]))
    rho = np.asarray(rhos)
    if rho.size >= 2 and not np.all(np.diff(rho) > 0):
        raise ValueError("rho column must be strictly increasing")
    return RadialProfile(RadialGrid(rho), np.asarray(vals), N)


def write_profile(profile: RadialProfile, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(profile_to_text(profile))


def read_profile(path) -> RadialProfile:
    with open(path, "r", encoding="ascii") as fh:
        return profile_from_text(fh.read())
