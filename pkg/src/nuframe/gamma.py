"""Frequency-side sampling machinery behind the ``gamma`` CLI subcommand.

For a base frequency ``x`` in ``[0, 1/(4N))`` the frequency domain is swept
by ``4N`` sample offsets: ``x + g/(4N)`` over the low branch and
``x + N/2 + g/(4N)`` over the high branch, ``g = 0..2N-1``.  Sampling one
matrix entry of every envelope spectrum at those offsets, together with a
phase-modulated copy of each sample vector, yields a ``4N x 2p`` matrix per
entry ``(m, k)``.  Stacking the conjugate transposes of those matrices over
all entries gives a ``2p x 4N n^2`` operator ``T(x)`` whose extremal
singular values encode frame bounds: the frame sum of any signal equals
``(1/4N) int ||T(x) G(x)||^2 dx`` with ``G(x)`` the stacked sample vector
of the signal's spectrum.  ``sampling_identity_residual`` verifies that
identity numerically; the sweep in :mod:`nuframe.bounds` turns it into
bound estimates.

Envelope and matrix-entry indices are 1-based throughout this module,
matching the row/column convention used in printed matrices.
"""

from __future__ import annotations

import numpy as np

from .errors import FrequencyOutOfRange, ShapeMismatch
from .frame import FrameSystem, frame_sum, require_time_domain
from .lattice import SpectralLattice
from .signal import MatrixSeq, spectrum_value


def _check_x(lattice: SpectralLattice, x: float) -> None:
    if not 0.0 <= x < 1.0 / (4 * lattice.N):
        raise FrequencyOutOfRange(
            f"x = {x} outside the sampling interval [0, {1.0 / (4 * lattice.N)})"
        )


def _check_mk(n: int, m: int, k: int) -> None:
    if not (1 <= m <= n and 1 <= k <= n):
        raise ShapeMismatch(f"entry indices ({m}, {k}) outside 1..{n}")


def sample_offsets(lattice: SpectralLattice, x: float) -> np.ndarray:
    """The 4N sample frequencies for base frequency ``x``, low branch first."""
    N = lattice.N
    g = np.arange(2 * N)
    low = x + g / (4 * N)
    high = x + N / 2 + g / (4 * N)
    return np.concatenate([low, high])


def phase_vector(lattice: SpectralLattice, x: float) -> np.ndarray:
    """Unimodular modulation vector of length 4N.

    The low-branch block holds ``exp(4 pi i r (x + g/(4N)))``; the
    high-branch block repeats it verbatim.  (Evaluating the same formula at
    the high-branch offsets would give the identical values because ``rN``
    is an integer, but the duplicated block is the documented convention.)
    """
    N, r = lattice.N, lattice.r
    g = np.arange(2 * N)
    block = np.exp(4j * np.pi * r * (x + g / (4 * N)))
    return np.concatenate([block, block])


def sample_vector(signal, m: int, k: int, x: float) -> np.ndarray:
    """Entry ``(m, k)`` of the signal's spectrum at the 4N sample offsets."""
    _check_x(signal.lattice, x)
    _check_mk(signal.n, m, k)
    offsets = sample_offsets(signal.lattice, x)
    return np.array(
        [spectrum_value(signal, t)[m - 1, k - 1] for t in offsets],
        dtype=np.complex128,
    )


def _sampled_spectra(sys: FrameSystem, x: float) -> np.ndarray:
    """All envelope spectra at the sample offsets; shape ``(p, 4N, n, n)``."""
    offsets = sample_offsets(sys.lattice, x)
    out = np.empty((sys.p, offsets.size, sys.n, sys.n), dtype=np.complex128)
    for j, env in enumerate(sys.envelopes):
        for t, off in enumerate(offsets):
            out[j, t] = spectrum_value(env, off)
    return out


def envelope_sample_vector(
    sys: FrameSystem, j: int, m: int, k: int, x: float
) -> np.ndarray:
    """Sample vector of envelope ``j`` (1-based)."""
    if not 1 <= j <= sys.p:
        raise ShapeMismatch(f"envelope index {j} outside 1..{sys.p}")
    return sample_vector(sys.envelopes[j - 1], m, k, x)


def sample_matrix(sys: FrameSystem, m: int, k: int, x: float) -> np.ndarray:
    """The ``4N x 2p`` matrix for entry ``(m, k)`` at base frequency ``x``.

    Odd columns are envelope sample vectors; each is followed by its
    Hadamard product with the phase vector.
    """
    _check_x(sys.lattice, x)
    _check_mk(sys.n, m, k)
    spectra = _sampled_spectra(sys, x)
    return _sample_matrix_from(spectra, sys.lattice, m, k, x)


def _sample_matrix_from(
    spectra: np.ndarray, lattice: SpectralLattice, m: int, k: int, x: float
) -> np.ndarray:
    phases = phase_vector(lattice, x)
    rows = spectra.shape[1]
    p = spectra.shape[0]
    out = np.empty((rows, 2 * p), dtype=np.complex128)
    for j in range(p):
        col = spectra[j, :, m - 1, k - 1]
        out[:, 2 * j] = col
        out[:, 2 * j + 1] = phases * col
    return out


def sample_gram(
    sys: FrameSystem, m: int, k: int, m2: int, k2: int, x: float
) -> np.ndarray:
    """Product ``A B^*`` of the (m,k) and (m2,k2) sample matrices, as computed.

    This is a reporting tool: it returns the measured 4N x 4N product and
    asserts nothing about its structure.
    """
    _check_x(sys.lattice, x)
    _check_mk(sys.n, m, k)
    _check_mk(sys.n, m2, k2)
    spectra = _sampled_spectra(sys, x)
    a = _sample_matrix_from(spectra, sys.lattice, m, k, x)
    b = _sample_matrix_from(spectra, sys.lattice, m2, k2, x)
    return a @ b.conj().T


def stacked_operator(sys: FrameSystem, x: float) -> np.ndarray:
    """The ``2p x 4N*n^2`` operator ``T(x)``.

    Column blocks are the conjugate transposes of the per-entry sample
    matrices, ordered by ``(m, k)`` lexicographically with ``m`` outer.
    """
    _check_x(sys.lattice, x)
    spectra = _sampled_spectra(sys, x)
    rows = 4 * sys.lattice.N
    blocks = []
    for m in range(1, sys.n + 1):
        for k in range(1, sys.n + 1):
            gamma = _sample_matrix_from(spectra, sys.lattice, m, k, x)
            blocks.append(gamma.conj().T)
    out = np.concatenate(blocks, axis=1)
    assert out.shape == (2 * sys.p, rows * sys.n**2)
    return out


def signal_sample_stack(f, x: float) -> np.ndarray:
    """Stacked sample vectors of a signal's spectrum, ``(m, k)`` lex order."""
    _check_x(f.lattice, x)
    offsets = sample_offsets(f.lattice, x)
    samples = np.array([spectrum_value(f, t) for t in offsets])  # (4N, n, n)
    parts = [samples[:, m, k] for m in range(f.n) for k in range(f.n)]
    return np.concatenate(parts)


def spectral_overlap(sys: FrameSystem, f, j: int, x: float) -> complex:
    """Two-branch overlap of the signal spectrum with envelope ``j``:

    ``sum_{m,k} F(f)_{m,k}(y) conj(F(env_j)_{m,k}(y))`` summed over the
    points ``y = x`` and ``y = x + N/2``.  Diagnostic building block of the
    sampling identity.
    """
    if not 1 <= j <= sys.p:
        raise ShapeMismatch(f"envelope index {j} outside 1..{sys.p}")
    if not 0.0 <= x < 0.5:
        raise FrequencyOutOfRange(f"x = {x} outside [0, 1/2)")
    env = sys.envelopes[j - 1]
    N = sys.lattice.N
    total = 0j
    for y in (x, x + N / 2.0):
        total += complex(
            np.sum(spectrum_value(f, y) * np.conj(spectrum_value(env, y)))
        )
    return total


def gauss_legendre_nodes(m: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on ``[a, b]``."""
    t, w = np.polynomial.legendre.leggauss(m)
    half = (b - a) / 2.0
    return a + half * (t + 1.0), w * half


def sampling_identity_residual(sys: FrameSystem, f: MatrixSeq, nodes: int = 128) -> float:
    """Relative residual of the sampling identity.

    Compares ``4N * frame_sum(sys, f)`` against the Gauss-Legendre value of
    ``int_0^{1/4N} ||T(x) G(x)||^2 dx`` with ``nodes`` quadrature points,
    normalized by ``max(1, 4N * frame_sum)``.
    """
    require_time_domain(sys)
    lhs = 4 * sys.lattice.N * frame_sum(sys, f)
    xs, ws = gauss_legendre_nodes(nodes, 0.0, 1.0 / (4 * sys.lattice.N))
    integral = 0.0
    for x, w in zip(xs, ws):
        v = stacked_operator(sys, x) @ signal_sample_stack(f, x)
        integral += w * float(np.sum(v.real**2 + v.imag**2))
    return abs(lhs - integral) / max(1.0, lhs)
