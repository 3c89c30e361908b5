"""Bessel and frame bound estimation.

Three independent levers:

* a sufficient Bessel bound ``2^(p-1) * b^2 * n^2`` from a spectrum sup
  norm ``b`` of the envelopes,
* a necessary spectrum bound for Bessel systems, reported both as the
  sharp constant ``2*sqrt(N*b0)`` and the weaker ``N + b0``,
* a grid sweep of the stacked sampling operator whose squared extremal
  singular values over ``4N`` estimate the frame bounds.

Grid extrema are lower estimates of essential sup / upper estimates of
essential inf; every report carries its grid size.  The sweep can never
certify a positive lower bound when ``2p < 4N n^2``: the stacked operator
is then wider than tall and has a kernel, so the verdict is
``rank_deficient`` regardless of the envelopes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import RejectedParameters
from .frame import FrameSystem, require_time_domain
from .gamma import stacked_operator
from .signal import fourier_eval_grid

# a_est below this is reported as numerically singular (verdict bessel_only).
SINGULAR_FLOOR = 1e-10


@dataclass
class FrameBoundsReport:
    a_est: float
    b_est: float
    feasible: bool
    grid: int
    x_at_min: float
    x_at_max: float
    verdict: str  # "frame" | "bessel_only" | "rank_deficient"
    sigma_min_curve: list = field(default_factory=list)
    sigma_max_curve: list = field(default_factory=list)
    xs: list = field(default_factory=list)


def thread_count() -> int:
    """Worker cap from NUFRAME_THREADS (0 = auto, unset = 1)."""
    raw = os.environ.get("NUFRAME_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    if value == 0:
        return os.cpu_count() or 1
    return max(1, value)


def feasibility(p: int, n: int, N: int) -> bool:
    """Whether the stacked operator can have full column rank: ``2p >= 4N n^2``."""
    return 2 * p >= 4 * N * n * n


def bessel_sufficient_bound(p: int, n: int, b_sup: float) -> float:
    """Bessel bound ``2^(p-1) * b_sup^2 * n^2`` from an envelope sup norm."""
    if p < 1 or n < 1:
        raise RejectedParameters(f"p and n must be >= 1, got p={p}, n={n}")
    if not b_sup > 0:
        raise RejectedParameters(f"b_sup must be positive, got {b_sup}")
    return float(2 ** (p - 1) * b_sup * b_sup * n * n)


def bessel_necessary_bounds(N: int, b0: float) -> tuple[float, float]:
    """Spectrum bounds any Bessel system with bound ``b0`` must satisfy.

    Returns ``(2*sqrt(N*b0), N + b0)``; the first is the sharp constant,
    the second the conventionally stated (weaker) one.
    """
    if not b0 > 0:
        raise RejectedParameters(f"b0 must be positive, got {b0}")
    return 2.0 * math.sqrt(N * b0), float(N + b0)


def _branch_grid(N: int, m: int) -> np.ndarray:
    """Midpoints of ``m`` intervals per frequency branch, both branches."""
    base = (np.arange(m) + 0.5) / (2.0 * m)
    return np.concatenate([base, base + N / 2.0])


def envelope_sup_norm(sys: FrameSystem, grid: int = 4096) -> float:
    """Grid maximum of the envelope spectrum norms over the frequency domain.

    A lower estimate of the essential sup.  For step spectra the cell
    maximum is exact and the grid is irrelevant.
    """
    if grid < 2:
        raise RejectedParameters(f"grid must be >= 2, got {grid}")
    best = 0.0
    if sys.spectral:
        for env in sys.envelopes:
            norms = np.sqrt(np.sum(env.values.real**2 + env.values.imag**2, axis=(1, 2)))
            best = max(best, float(norms.max()))
        return best
    xs = _branch_grid(sys.lattice.N, grid)
    for env in sys.envelopes:
        vals = fourier_eval_grid(env, xs)
        norms = np.sqrt(np.sum(vals.real**2 + vals.imag**2, axis=(1, 2)))
        best = max(best, float(norms.max()))
    return best


def _extremal_singular_sq(T: np.ndarray, feasible: bool) -> tuple[float, float]:
    """(sigma_min^2, sigma_max^2) of T as a map on its full column space.

    Uses the smaller Gram; eigenvalues are clamped at zero against
    round-off.  When the matrix is wider than tall the smallest singular
    value over the domain is structurally zero.
    """
    rows, cols = T.shape
    if cols <= rows:
        gram = T.conj().T @ T
    else:
        gram = T @ T.conj().T
    evals = np.linalg.eigvalsh(gram)
    smax = float(max(evals[-1], 0.0))
    smin = float(max(evals[0], 0.0)) if feasible else 0.0
    return smin, smax


def frame_bounds_gamma(sys: FrameSystem, grid: int = 1024) -> FrameBoundsReport:
    """Sweep the stacked operator over a midpoint grid of the sampling interval.

    ``a_est = min sigma_min^2 / 4N`` and ``b_est = max sigma_max^2 / 4N``.
    The per-point curves are kept in the report so callers can export them.
    """
    require_time_domain(sys)
    if grid < 8:
        raise RejectedParameters(f"grid must be >= 8, got {grid}")
    N = sys.lattice.N
    feasible = feasibility(sys.p, sys.n, N)
    xs = (np.arange(grid) + 0.5) / (grid * 4.0 * N)

    def at(i: int) -> tuple[float, float]:
        return _extremal_singular_sq(stacked_operator(sys, xs[i]), feasible)

    workers = thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(at, range(grid)))
    else:
        results = [at(i) for i in range(grid)]

    smin = np.array([r[0] for r in results]) / (4.0 * N)
    smax = np.array([r[1] for r in results]) / (4.0 * N)
    i_min = int(np.argmin(smin))
    i_max = int(np.argmax(smax))
    a_est = float(smin[i_min]) if feasible else 0.0
    b_est = float(smax[i_max])
    if not feasible:
        verdict = "rank_deficient"
    elif a_est < SINGULAR_FLOOR:
        verdict = "bessel_only"
    else:
        verdict = "frame"
    return FrameBoundsReport(
        a_est=a_est,
        b_est=b_est,
        feasible=feasible,
        grid=grid,
        x_at_min=float(xs[i_min]),
        x_at_max=float(xs[i_max]),
        verdict=verdict,
        sigma_min_curve=[float(v) for v in smin],
        sigma_max_curve=[float(v) for v in smax],
        xs=[float(v) for v in xs],
    )


def refine_bounds(
    sys: FrameSystem, grid: int, doublings: int
) -> list[FrameBoundsReport]:
    """Reports at grid, 2*grid, ... for a first-difference convergence check."""
    out = []
    m = grid
    for _ in range(doublings + 1):
        out.append(frame_bounds_gamma(sys, m))
        m *= 2
    return out
