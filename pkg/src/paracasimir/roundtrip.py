"""Round-trip kernels and their log-determinants.

One frequency channel of the interaction energy is governed by the
matrix N(q) whose (nu, nu') entry propagates a partial wave from the
parabolic cylinder to the plane, reflects it, brings it back, and
scatters it once more.  The energy integrand is log det(1 - N).

Entries are assembled in a balanced similarity gauge: the cylinder
amplitude F_nu grows like nu! while the translation elements decay like
1/(nu + nu')!, so the raw product over- and underflows long before the
determinant does.  Conjugating by diag(|F_nu / nu!|^(1/2)) splits the
growth evenly between rows and columns, leaving entries of order one
without changing the determinant.  Assembly therefore works throughout
in sign/log form and exponentiates only at the end.

At zero radius only one parity survives per boundary condition (even
orders for Dirichlet, odd for Neumann), and with no tilt the kernel
collapses to Bateman k-functions; `build_kernel` picks the cheapest
valid construction automatically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor
from scipy.special import gammaln

from .specfun import DomainError, bateman_k_table, bateman_m_log
from .scattering import (
    BoundaryMode,
    Geometry,
    parabolic_amplitude_table,
    plane_amplitude,
)
from .translation import _gram, tilted_matrix_log

__all__ = [
    "PhysicalRegimeError",
    "TruncatedKernel",
    "build_kernel",
    "parity_block",
    "logdet_one_minus",
]


class PhysicalRegimeError(ArithmeticError):
    """det(1 - N) came out nonpositive or nonfinite.

    For a lossless geometry at imaginary frequency every eigenvalue of
    the round-trip kernel lies below one, so the determinant is
    strictly positive; a violation signals numerical breakdown (or a
    kernel evaluated outside its regime), never physics.
    """


@dataclass(frozen=True)
class TruncatedKernel:
    """A round-trip kernel truncated at partial-wave order nu_max.

    ``entries[i, j]`` couples order ``nu_indices[i]`` to
    ``nu_indices[j]`` in the balanced gauge.  ``channel`` records the
    physical content: 'full' for the combined even/odd matrix (zero
    radius, no tilt only), or 'dirichlet-block' / 'neumann-block' for a
    single boundary condition.  ``q_scaled`` is q times the separation.
    """

    nu_max: int
    entries: np.ndarray
    q_scaled: float
    channel: str
    mode: BoundaryMode | None = None
    nu_indices: np.ndarray | None = None


def _knife_block_from_k(nu_idx: np.ndarray, k: np.ndarray, mode: BoundaryMode) -> np.ndarray:
    """Zero-radius, zero-tilt block given precomputed k_{-2n-1} values."""
    if nu_idx.size == 0:
        return np.zeros((0, 0))
    block = k[(nu_idx[:, None] + nu_idx[None, :]) // 2]
    return block if mode is BoundaryMode.DIRICHLET else -block


def _knife_block_from_gram(nu_idx: np.ndarray, G: np.ndarray, w: float) -> np.ndarray:
    """Zero-radius block at tilt from a Gram matrix; mode-independent."""
    if nu_idx.size == 0:
        return np.zeros((0, 0))
    return G[np.ix_(nu_idx, nu_idx)] * (math.exp(-w) / math.pi)


def _body_half_logs(nu_max: int, mode: BoundaryMode, mu0_scaled: float):
    """Signs and half-logs of the normalized cylinder amplitudes.

    Returns (sigma, half) with sigma the amplitude signs and
    half = 0.5 * log|F_nu / nu!|, the per-row balancing weight.
    """
    sigma, logf = parabolic_amplitude_table(nu_max, mode, mu0_scaled)
    half = 0.5 * (logf - gammaln(np.arange(nu_max + 1) + 1.0))
    return sigma, half


def _body_block_theta0(sigma: np.ndarray, half: np.ndarray, fp: float,
                       logm: np.ndarray) -> np.ndarray:
    """Positive-radius, zero-tilt kernel in the balanced gauge.

    logm holds log m_n of the Bateman table at w = 2 q d; entries with
    odd order sum vanish by mirror parity.
    """
    nu = np.arange(half.size)
    tot = nu[:, None] + nu[None, :]
    with np.errstate(over="ignore"):
        mag = np.exp(0.5 * math.log(math.pi / 2.0)
                     + half[:, None] + half[None, :] + logm[tot // 2])
    sign = sigma[:, None] * fp * (-1.0) ** (tot // 2)
    return np.where(tot % 2 == 0, sign * mag, 0.0)


def _body_block_tilted(sigma: np.ndarray, half: np.ndarray, fp: float,
                       sT: np.ndarray, lT: np.ndarray) -> np.ndarray:
    """Positive-radius kernel at tilt from the sign/log element matrix."""
    with np.errstate(over="ignore"):
        mag = np.exp(half[:, None] + half[None, :] + lT)
    return sigma[:, None] * fp * sT * mag


def build_kernel(geom: Geometry, q: float, nu_max: int,
                 mode: BoundaryMode | str | None = None,
                 node_count: int = 16) -> TruncatedKernel:
    """Assemble the truncated round-trip kernel at frequency-axis q.

    With ``mode=None`` (zero radius, zero tilt only) the combined
    matrix over all orders 0..nu_max is returned; its entries are
    (-1)^nu k_{-nu-nu'-1}(2 q H), which block-diagonalizes into the two
    boundary conditions by parity.  With a mode given, the kernel of
    that single channel is returned: on the knife edge it lives on the
    matching-parity orders only, while for positive radius all orders
    couple.
    """
    if q <= 0 or not math.isfinite(q):
        raise DomainError("q must be positive and finite")
    if not isinstance(nu_max, (int, np.integer)) or nu_max < 0:
        raise DomainError("nu_max must be a nonnegative integer")
    nu_max = int(nu_max)
    if mode is None:
        if geom.R != 0.0 or geom.theta != 0.0:
            raise DomainError(
                "the combined kernel requires zero radius and zero tilt; "
                "pass a boundary mode otherwise")
        nu = np.arange(nu_max + 1)
        k = bateman_k_table(nu_max, 2.0 * q * geom.H)
        tot = nu[:, None] + nu[None, :]
        entries = np.where(tot % 2 == 0,
                           (-1.0) ** nu[:, None] * k[tot // 2], 0.0)
        return TruncatedKernel(nu_max, entries, q * geom.H, "full", None, nu)

    mode = BoundaryMode(mode)
    channel = ("dirichlet-block" if mode is BoundaryMode.DIRICHLET
               else "neumann-block")
    if geom.R == 0.0:
        start = 0 if mode is BoundaryMode.DIRICHLET else 1
        nu_idx = np.arange(start, nu_max + 1, 2)
        if geom.theta == 0.0:
            k = bateman_k_table(nu_max, 2.0 * q * geom.H)
            entries = _knife_block_from_k(nu_idx, k, mode)
        else:
            G, w = _gram(q, geom.H, geom.theta, nu_max, node_count)
            entries = _knife_block_from_gram(nu_idx, G, w)
        return TruncatedKernel(nu_max, entries, q * geom.H, channel, mode, nu_idx)

    nu_idx = np.arange(nu_max + 1)
    sigma, half = _body_half_logs(nu_max, mode, geom.mu0 * math.sqrt(2.0 * q))
    fp = plane_amplitude(mode)
    if geom.theta == 0.0:
        logm = bateman_m_log(nu_max, 2.0 * q * geom.d)
        entries = _body_block_theta0(sigma, half, fp, logm)
    else:
        sT, lT = tilted_matrix_log(nu_max, q, geom.d, geom.theta, node_count)
        entries = _body_block_tilted(sigma, half, fp, sT, lT)
    if not np.all(np.isfinite(entries)):
        raise PhysicalRegimeError(
            "kernel entries overflowed; the balanced gauge does not cover "
            f"this parameter corner (q={q:g}, R={geom.R:g}, H={geom.H:g})")
    return TruncatedKernel(nu_max, entries, q * geom.H, channel, mode, nu_idx)


def parity_block(kernel: TruncatedKernel, mode: BoundaryMode | str) -> TruncatedKernel:
    """Extract one boundary condition from a combined 'full' kernel.

    Selects the even (Dirichlet) or odd (Neumann) orders.  Because the
    cross-parity entries of the combined kernel vanish, the two blocks'
    log-determinants add up to the full one.
    """
    if kernel.channel != "full":
        raise DomainError("parity_block expects a 'full' channel kernel")
    mode = BoundaryMode(mode)
    start = 0 if mode is BoundaryMode.DIRICHLET else 1
    sel = np.arange(start, kernel.nu_max + 1, 2)
    channel = ("dirichlet-block" if mode is BoundaryMode.DIRICHLET
               else "neumann-block")
    return TruncatedKernel(kernel.nu_max, kernel.entries[np.ix_(sel, sel)],
                           kernel.q_scaled, channel, mode, sel)


def logdet_one_minus(kernel: TruncatedKernel | np.ndarray) -> float:
    """log det(1 - N) with an explicit positivity check.

    The sign is tracked exactly through the LU factorization (row-swap
    parity times the signs of the pivots).  A nonpositive or nonfinite
    determinant raises `PhysicalRegimeError` rather than returning a
    garbage value, since downstream integration would silently absorb
    it.
    """
    entries = kernel.entries if isinstance(kernel, TruncatedKernel) else np.asarray(kernel)
    n = entries.shape[0]
    if n == 0:
        return 0.0
    if not np.all(np.isfinite(entries)):
        raise PhysicalRegimeError("kernel contains nonfinite entries")
    m = np.eye(n) - entries
    lu, piv = lu_factor(m, check_finite=False)
    diag = np.diagonal(lu)
    if not np.all(np.isfinite(diag)) or np.any(diag == 0.0):
        raise PhysicalRegimeError("factorization of 1 - N broke down")
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    negs = int(np.count_nonzero(diag < 0.0))
    if (swaps + negs) % 2 == 1:
        raise PhysicalRegimeError(
            "det(1 - N) is negative; increase quadrature resolution or "
            "check the geometry")
    return float(np.sum(np.log(np.abs(diag))))
