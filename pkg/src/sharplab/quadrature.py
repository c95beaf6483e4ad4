"""Adaptive Gauss-Legendre quadrature in the log domain.

All radial integrals in this package are computed in log-radius coordinates
rho = log r, where the integrands take the form exp(g(rho)) with g spanning
an enormous dynamic range (concentrating profiles put ~1e3..1e24 in the
exponent).  The engine below integrates exp(g) by best-first bisection:

* each piece is probed at 16 Gauss nodes plus its endpoints,
* a piece whose log-range exceeds a threshold is split in half,
* pieces provably negligible against the mass already accumulated are
  dropped, using a caller-supplied upper bound ("majorant") for g,
* the result is returned as log(integral), assembled with log-sum-exp.

Pruning is sound only because the majorant is a true upper bound; probe
values alone can miss boundary layers far narrower than the piece.
"""

from __future__ import annotations

import heapq
import itertools
import math

import numpy as np
from scipy.special import roots_legendre

__all__ = ["log_integral", "GAUSS_ORDER"]

GAUSS_ORDER = 16
_SPLIT_LOG_RANGE = 20.0
_PRUNE_GAP = 50.0
_MAX_PIECES = 4000

_nodes_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(order):
    if order not in _nodes_cache:
        x, w = roots_legendre(order)
        _nodes_cache[order] = (x, w)
    return _nodes_cache[order]


def _piece_log_value(log_f, a, b, order):
    """(log of Gauss estimate of int_a^b exp(log_f), finite log-range)."""
    x, w = _gauss(order)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    g = np.asarray(log_f(mid + half * x), dtype=float)
    finite = np.isfinite(g)
    if not np.any(finite):
        return -np.inf, 0.0
    m = np.max(g[finite])
    s = float(np.sum(w[finite] * np.exp(g[finite] - m)))
    if s <= 0.0:
        return -np.inf, 0.0
    rng = m - np.min(g[finite])
    return m + math.log(s) + math.log(half), rng


def log_integral(log_f, lo, hi, *, majorant=None, order=GAUSS_ORDER,
                 split_log_range=_SPLIT_LOG_RANGE, prune_gap=_PRUNE_GAP):
    """log of integral_lo^hi exp(log_f(rho)) d rho.

    ``log_f`` must accept a numpy array and may return -inf.  ``majorant``
    is an optional callable (a, b) -> upper bound of log_f on [a, b]; when
    provided, pieces with majorant + log(width) far below the running total
    are pruned without further refinement.

    Returns -inf for an identically vanishing integrand.
    """
    if hi <= lo:
        return -np.inf

    def bound(a, b):
        if majorant is None:
            return np.inf
        width = b - a
        if width <= 0:
            return -np.inf
        return majorant(a, b) + math.log(width)

    counter = itertools.count()
    heap = [(-bound(lo, hi), next(counter), lo, hi)]
    accepted: list[float] = []
    total = -np.inf
    pieces = 0
    min_width = max(abs(lo), abs(hi), 1.0) * 1e-13

    while heap and pieces < _MAX_PIECES:
        neg_bd, _, a, b = heapq.heappop(heap)
        if -neg_bd < total - prune_gap:
            break  # best-first: every remaining piece is below the cut
        pieces += 1
        val, rng = _piece_log_value(log_f, a, b, order)
        width = b - a
        if rng > split_log_range and width > min_width:
            m = 0.5 * (a + b)
            heapq.heappush(heap, (-bound(a, m), next(counter), a, m))
            heapq.heappush(heap, (-bound(m, b), next(counter), m, b))
            continue
        if val > -np.inf:
            accepted.append(val)
            total = np.logaddexp(total, val)

    return float(total)
