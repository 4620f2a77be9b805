"""Interaction energies from frequency-integrated log-determinants.

The zero-temperature interaction energy per unit length between the
parabolic cylinder and the plane is

    E / (hbar c L) = (1 / 4 pi) Integral_0^inf q dq [g_D(q) + g_N(q)],

with g = log det(1 - N) per boundary condition; the two polarizations
of the electromagnetic field decompose exactly into the Dirichlet and
Neumann scalar channels.  Working in the scaled variable x = q H makes
the integrand depend on geometry ratios only, so every energy here
carries the overall 1/H^2 explicitly.

Three regimes share the machinery: the quantum energy
(`energy_per_length`, `c_theta`), the classical high-temperature
coefficient (`classical_coefficient`, the n = 0 Matsubara term alone),
and finite temperature (`thermal_energy`, a Matsubara sum of
frequency-shifted integrals).

Truncation in the partial-wave order converges smoothly but slowly
enough to matter at the quoted accuracies, so results are computed on
a ladder of orders and extrapolated by `extrapolate_numax`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from ._quad import expmap_grid, panel_grid
from .specfun import DomainError, bateman_m_log
from .scattering import BoundaryMode, Geometry, plane_amplitude
from .roundtrip import (
    _body_block_theta0,
    _body_block_tilted,
    _body_half_logs,
    _knife_block_from_gram,
    _knife_block_from_k,
    logdet_one_minus,
)
from .translation import AccuracyError, _gram, tilted_matrix_log

__all__ = [
    "FitRejectedError",
    "QuadratureSpec",
    "EnergyResult",
    "default_quadrature",
    "energy_per_length",
    "extrapolate_numax",
    "c_theta",
    "classical_coefficient",
    "thermal_energy",
]

_CHANNELS = {
    "em": (BoundaryMode.DIRICHLET, BoundaryMode.NEUMANN),
    "dirichlet": (BoundaryMode.DIRICHLET,),
    "neumann": (BoundaryMode.NEUMANN,),
}


class FitRejectedError(RuntimeError):
    """The truncation series did not admit a trustworthy extrapolation."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Frequency-integration settings, all in the scaled variable x = q H.

    The integrand is strongly peaked around x ~ 0.3 and dies
    exponentially at large x, so the default 'exp-map' grid places
    ``panel_count`` Gauss-Legendre panels uniformly in log x between
    ``qmin_scaled`` and ``qmax_scaled``.  The 'linear-panels' mapping
    spaces panels uniformly in x instead, mostly to cross-check the
    mapping itself.  ``tolerance`` is the relative accuracy the caller
    is aiming for; it controls adaptive cutoffs such as the
    Matsubara-sum truncation, not the fixed grid.
    """

    node_count: int = 10
    panel_count: int = 18
    qmin_scaled: float = 0.3 * math.exp(-5.0)
    qmax_scaled: float = 0.3 * math.exp(3.6)
    mapping: str = "exp-map"
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.node_count < 2 or self.panel_count < 1:
            raise DomainError("node_count must be >= 2 and panel_count >= 1")
        if not 0.0 < self.qmin_scaled < self.qmax_scaled:
            raise DomainError("need 0 < qmin_scaled < qmax_scaled")
        if self.mapping not in ("exp-map", "linear-panels"):
            raise DomainError("mapping must be 'exp-map' or 'linear-panels'")
        if not self.tolerance > 0.0:
            raise DomainError("tolerance must be positive")


def default_quadrature(geom: Geometry) -> QuadratureSpec:
    """Grid suited to the geometry.

    A finite radius pushes spectral weight to higher x because the
    natural decay scale is the gap H while the kernel argument involves
    the focal distance d = H + R/2, so the upper cutoff moves out.
    """
    if geom.R > 0.0:
        return QuadratureSpec(qmax_scaled=0.3 * math.exp(4.2))
    return QuadratureSpec()


@dataclass(frozen=True)
class EnergyResult:
    """Energy per unit length with its numerical error budget.

    ``value`` is the energy at the largest truncation order of
    ``series``; ``extrapolated`` is the infinite-order estimate.  Both
    are E/(hbar c L), negative for attraction.  ``trunc_error`` bounds
    the truncation-plus-fit uncertainty of ``extrapolated``;
    ``quad_error`` is a node-doubling estimate of the frequency-grid
    error.
    """

    value: float
    series: list
    extrapolated: float
    trunc_error: float
    quad_error: float
    channel: str


def _grid(spec: QuadratureSpec):
    if spec.mapping == "exp-map":
        return expmap_grid(spec.qmin_scaled, spec.qmax_scaled,
                           spec.panel_count, spec.node_count)
    return panel_grid(np.linspace(spec.qmin_scaled, spec.qmax_scaled,
                                  spec.panel_count + 1), spec.node_count)


def _series_orders(nu_max) -> list:
    """Truncation ladder: either an explicit sequence or an octave run."""
    if isinstance(nu_max, (int, np.integer)):
        if nu_max < 0:
            raise DomainError("nu_max must be nonnegative")
        orders = sorted({max(8, int(nu_max) // k) for k in (8, 4, 2, 1)})
        return [n for n in orders if n <= nu_max] or [int(nu_max)]
    orders = sorted({int(n) for n in nu_max})
    if not orders or orders[0] < 0:
        raise DomainError("nu_max sequence must hold nonnegative integers")
    return orders


def _modes(channel: str):
    try:
        return _CHANNELS[channel]
    except KeyError:
        raise DomainError(
            f"channel must be one of {sorted(_CHANNELS)}, got {channel!r}") from None


def _g_series(geom: Geometry, x: np.ndarray, orders: list, channel: str,
              u_node_count: int = 16) -> np.ndarray:
    """log det(1 - N) summed over the channel's boundary modes.

    Returns an array of shape (len(orders), len(x)); entry [j, i] is
    g at scaled frequency x[i] truncated at order orders[j].  The
    kernel is assembled once per node at the largest order and the
    smaller truncations are its leading submatrices, which is exact
    because entries do not depend on the truncation.
    """
    x = np.asarray(x, dtype=float)
    nbig = orders[-1]
    modes = _modes(channel)
    out = np.zeros((len(orders), x.size))
    logm_all = None
    if geom.theta == 0.0:
        logm_all = bateman_m_log(nbig, 2.0 * x * geom.d / geom.H)
    nu_sets = {}
    for mode in modes:
        if geom.R == 0.0:
            start = 0 if mode is BoundaryMode.DIRICHLET else 1
            idx = np.arange(start, nbig + 1, 2)
        else:
            idx = np.arange(nbig + 1)
        nu_sets[mode] = (idx, np.searchsorted(idx, np.asarray(orders), side="right"))
    parity = (-1.0) ** np.arange(nbig + 1)
    for i, xi in enumerate(x):
        q = xi / geom.H
        G = w = sT = lT = None
        if geom.theta != 0.0:
            if geom.R == 0.0:
                G, w = _gram(q, geom.H, geom.theta, nbig, u_node_count)
            else:
                sT, lT = tilted_matrix_log(nbig, q, geom.d, geom.theta,
                                           u_node_count)
        for mode in modes:
            idx, cuts = nu_sets[mode]
            if geom.R == 0.0:
                if geom.theta == 0.0:
                    k = parity * np.exp(logm_all[:, i])
                    block = _knife_block_from_k(idx, k, mode)
                else:
                    block = _knife_block_from_gram(idx, G, w)
            else:
                sigma, half = _body_half_logs(
                    nbig, mode, geom.mu0 * math.sqrt(2.0 * q))
                if geom.theta == 0.0:
                    block = _body_block_theta0(sigma, half,
                                               plane_amplitude(mode),
                                               logm_all[:, i])
                else:
                    block = _body_block_tilted(sigma, half,
                                               plane_amplitude(mode), sT, lT)
            for j, cut in enumerate(cuts):
                out[j, i] += logdet_one_minus(block[:cut, :cut])
    return out


def _geometric_limit(n: np.ndarray, v: np.ndarray):
    """Limit of v = v_inf + A rho^n fitted to the last three points."""
    d1, d2 = v[-2] - v[-3], v[-1] - v[-2]
    h1, h2 = n[-2] - n[-3], n[-1] - n[-2]
    target = d2 / d1

    def mismatch(rho):
        return rho ** h1 * (rho ** h2 - 1.0) / (rho ** h1 - 1.0) - target

    lo, hi = 1e-12, 1.0 - 1e-9
    if not mismatch(lo) * mismatch(hi) < 0:
        return None
    rho = brentq(mismatch, lo, hi)
    frac = rho ** h2
    return float(v[-1] + d2 * frac / (1.0 - frac)), rho


def _algebraic_limit(n: np.ndarray, v: np.ndarray):
    """Limit of v = v_inf + B n^(-p) fitted to the last three points."""
    d1, d2 = v[-2] - v[-3], v[-1] - v[-2]
    n1, n2, n3 = n[-3:]
    target = d1 / d2

    def mismatch(p):
        return (n1 ** -p - n2 ** -p) / (n2 ** -p - n3 ** -p) - target

    lo, hi = 0.05, 16.0
    if not mismatch(lo) * mismatch(hi) < 0:
        return None
    p = brentq(mismatch, lo, hi)
    b = d2 / (n2 ** -p - n3 ** -p)
    return float(v[-1] - b * n3 ** -p), p


def extrapolate_numax(series) -> tuple:
    """Estimate the infinite-order limit of a truncation series.

    ``series`` is a sequence of at least four (nu_max, value) pairs
    with increasing order.  Two tail models are fit to the last three
    points: geometric, v = v_inf + A rho^n, and algebraic,
    v = v_inf + B n^(-p).  Whichever model back-predicts the earlier
    points better supplies the limit; the reported error combines the
    spread between the models with the size of the modeled remainder,
    so disagreement between the tail laws shows up honestly rather
    than being averaged away.

    A constant series short-circuits to (constant, 0).  Increments
    that fail to shrink monotonically with one sign raise
    `FitRejectedError`: extrapolating such a series would be
    guesswork, and the caller should raise nu_max instead.
    """
    pts = sorted({(int(n), float(v)) for n, v in series})
    if not pts:
        raise FitRejectedError("empty truncation series")
    n = np.array([p[0] for p in pts], dtype=float)
    v = np.array([p[1] for p in pts])
    if np.all(v == v[0]):
        return float(v[0]), 0.0
    if len(pts) < 4:
        raise FitRejectedError("need at least four distinct orders to extrapolate")
    d = np.diff(v)
    if np.any(d == 0.0):
        return float(v[-1]), float(np.max(np.abs(d)))
    if len(set(np.sign(d))) != 1:
        raise FitRejectedError("increments change sign; series is not monotone")
    if np.any(np.abs(d[1:]) >= np.abs(d[:-1])):
        raise FitRejectedError("increments are not contracting")

    fits = {}
    geo = _geometric_limit(n, v)
    if geo is not None:
        lim, rho = geo
        pred = lim + (v[-1] - lim) * rho ** (n - n[-1])
        fits["geometric"] = (lim, float(np.max(np.abs(pred - v))))
    alg = _algebraic_limit(n, v)
    if alg is not None:
        lim, p = alg
        b = (v[-1] - lim) * n[-1] ** p
        pred = lim + b * n ** -p
        fits["algebraic"] = (lim, float(np.max(np.abs(pred - v))))
    if not fits:
        raise FitRejectedError("neither tail model brackets the increment ratio")
    limit = min(fits.values(), key=lambda t: t[1])[0]
    spread = max(f[0] for f in fits.values()) - min(f[0] for f in fits.values())
    err = spread + abs(limit - v[-1]) * abs(d[-1] / d[-2])
    return float(limit), float(err)


def energy_per_length(geom: Geometry, spec: QuadratureSpec | None = None,
                      nu_max=100, channel: str = "em") -> EnergyResult:
    """Casimir interaction energy per unit length, E/(hbar c L).

    ``nu_max`` may be a single order (expanded into the octave ladder
    nu_max/8, /4, /2, /1) or an explicit sequence of orders.  The
    returned ``value`` belongs to the largest order; ``extrapolated``
    is the series limit, falling back to ``value`` when the fit is
    rejected.  A gross disagreement under node doubling raises
    `AccuracyError`, since it means the frequency grid, not the
    physics, is setting the answer.
    """
    _modes(channel)
    if spec is None:
        spec = default_quadrature(geom)
    orders = _series_orders(nu_max)
    x, wq = _grid(spec)
    g = _g_series(geom, x, orders, channel)
    h2 = geom.H * geom.H
    values = (g @ (wq * x)) / (4.0 * math.pi * h2)
    series = [(o, float(val)) for o, val in zip(orders, values)]
    value = float(values[-1])
    try:
        extrapolated, fit_err = extrapolate_numax(series)
        trunc_error = abs(extrapolated - value) + fit_err
    except FitRejectedError:
        extrapolated = value
        trunc_error = abs(values[-1] - values[-2]) if len(values) > 1 else 0.0
    fine = replace(spec, node_count=2 * spec.node_count)
    x2, wq2 = _grid(fine)
    g2 = _g_series(geom, x2, orders[:1], channel)
    check = float((g2 @ (wq2 * x2))[0] / (4.0 * math.pi * h2))
    quad_error = abs(check - float(values[0]))
    if not math.isfinite(value) or quad_error > 1e-3 * max(abs(value), 1e-30):
        raise AccuracyError("frequency quadrature did not converge", quad_error)
    return EnergyResult(value, series, float(extrapolated), float(trunc_error),
                        quad_error, channel)


def c_theta(theta: float, nu_max=100, spec: QuadratureSpec | None = None,
            channel: str = "em") -> float:
    """Tilt coefficient c(theta) = cos(theta) C(theta) of the knife edge.

    C(theta) = -H^2 E/(hbar c L) for the half-plane at tilt theta; the
    cosine factor keeps the product finite through the broadside limit,
    where C itself diverges.  At |theta| = pi/2 the coefficient is the
    parallel-plate value pi^2/1440 (split evenly between the boundary
    conditions), returned exactly.  Close to that limit the
    partial-wave series degrades, so beyond 80 degrees the truncation
    order is floored at 200; beyond 85 degrees a request below the
    floor triggers a warning because convergence is slow there.
    """
    _modes(channel)
    half_pi = math.pi / 2.0
    if abs(abs(theta) - half_pi) < 1e-12:
        return math.pi ** 2 / (1440.0 if channel == "em" else 2880.0)
    request = nu_max if isinstance(nu_max, (int, np.integer)) else max(nu_max)
    eff = nu_max
    if abs(theta) > math.radians(80.0) and request < 200:
        eff = 200
        if abs(theta) > math.radians(85.0):
            warnings.warn(
                "tilt above 85 degrees: truncation order raised to 200, "
                "expect slow convergence toward the broadside limit",
                stacklevel=2)
    geom = Geometry(R=0.0, H=1.0, theta=theta)
    res = energy_per_length(geom, spec, eff, channel)
    return -math.cos(theta) * res.extrapolated


_SCHEDULE = ((2e-4, 16), (8e-4, 8), (4e-3, 4), (2e-2, 2))


def _classical_g(x: np.ndarray, nu_max: int, channel: str) -> np.ndarray:
    """Knife-edge integrand of the classical coefficient on given nodes.

    The block size follows a low-frequency schedule: the kernel decays
    like k-functions of argument 2x, so ever more orders contribute as
    x drops, and the base size nu_max//2 + 1 is scaled up in steps to
    keep the truncation error below the grid error.
    """
    modes = _modes(channel)
    base = nu_max // 2 + 1
    mult = np.ones(x.size, dtype=int)
    for cutoff, m in _SCHEDULE:
        mult[x < cutoff] = m
    g = np.zeros(x.size)
    for m in np.unique(mult):
        sel = np.nonzero(mult == m)[0]
        nb = base * int(m)
        logm = bateman_m_log(2 * nb - 1, 2.0 * x[sel])
        a = np.arange(nb)
        pair = a[:, None] + a[None, :]
        for j, i in enumerate(sel):
            mj = np.exp(logm[:, j])
            for mode in modes:
                par = 0 if mode is BoundaryMode.DIRICHLET else 1
                g[i] += logdet_one_minus(mj[pair + par])
    return g


def classical_coefficient(nu_max: int = 200, spec: QuadratureSpec | None = None,
                          channel: str = "em") -> float:
    """High-temperature coefficient of the knife edge at zero tilt.

    This is the n = 0 Matsubara term alone: the energy per length
    approaches -(T H / hbar c) * C / H^2 with C the value returned
    here.  The frequency integral needs care at both ends: the
    integrand grows logarithmically at small x (handled by a fitted
    a ln x + b tail below x = 3e-5 plus the block-size schedule) and
    dies off exponentially above x ~ 10.
    """
    node_count = spec.node_count if spec is not None else 10
    xmin, xmax = 3e-5, 11.0
    tlo, thi = math.log(xmin / 0.3), math.log(xmax / 0.3)
    npan = math.ceil((thi - tlo) / 0.5)
    t, wt = panel_grid(np.linspace(tlo, thi, npan + 1), node_count)
    x = 0.3 * np.exp(t)
    wx = wt * x
    g = _classical_g(x, nu_max, channel)
    total = float(np.sum(wx * g))
    sel = x <= 4.0 * xmin
    coef, *_ = np.linalg.lstsq(
        np.column_stack([np.log(x[sel]), np.ones(int(np.count_nonzero(sel)))]),
        g[sel], rcond=None)
    tail = xmin * (coef[0] * (math.log(xmin) - 1.0) + coef[1])
    return -(total + tail) / (2.0 * math.pi)


_Z_EDGES = (0.25, 0.6, 1.1, 1.8, 2.8, 4.2, 6.2, 9.0, 13.0, 18.5)


def _z_integral(geom: Geometry, xn: float, orders: list, channel: str,
                spec: QuadratureSpec) -> np.ndarray:
    """(1/pi) Integral dz g(sqrt(xn^2 + z^2)), one value per order."""
    if xn == 0.0:
        z, wz = _grid(spec)
        xq = z
    else:
        if xn >= spec.qmax_scaled:
            return np.zeros(len(orders))
        zmax = math.sqrt(spec.qmax_scaled ** 2 - xn ** 2)
        edges = [0.0] + [e for e in _Z_EDGES if e < zmax] + [zmax]
        z, wz = panel_grid(edges, spec.node_count)
        xq = np.hypot(xn, z)
    g = _g_series(geom, xq, orders, channel)
    return (g @ wz) / math.pi


def _matsubara_sum(geom: Geometry, T_scaled: float, orders: list,
                   channel: str, spec: QuadratureSpec) -> np.ndarray:
    totals = 0.5 * _z_integral(geom, 0.0, orders, channel, spec)
    n = 1
    while True:
        xn = 2.0 * math.pi * n * T_scaled
        term = _z_integral(geom, xn, orders, channel, spec)
        totals = totals + term
        if xn >= spec.qmax_scaled or (
                abs(term[-1]) <= 1e-3 * spec.tolerance * abs(totals[-1])):
            break
        n += 1
    return totals


def thermal_energy(geom: Geometry, T_scaled: float, nu_max=100,
                   spec: QuadratureSpec | None = None,
                   channel: str = "em") -> EnergyResult:
    """Finite-temperature interaction energy per unit length.

    ``T_scaled`` is k_B T H / (hbar c).  The Matsubara sum runs over
    frequencies x_n = 2 pi n T_scaled with the n = 0 term at half
    weight; it is truncated once a term stops mattering at the spec's
    tolerance.  As T_scaled grows only n = 0 survives and the energy
    approaches -(T_scaled/H^2) times the classical coefficient; as
    T_scaled -> 0 the sum goes over into the zero-temperature
    frequency integral.
    """
    if T_scaled < 0.0 or not math.isfinite(T_scaled):
        raise DomainError("T_scaled must be nonnegative and finite")
    _modes(channel)
    if spec is None:
        spec = default_quadrature(geom)
    if T_scaled == 0.0:
        return energy_per_length(geom, spec, nu_max, channel)
    orders = _series_orders(nu_max)
    h2 = geom.H * geom.H
    totals = _matsubara_sum(geom, T_scaled, orders, channel, spec)
    values = T_scaled * totals / h2
    series = [(o, float(val)) for o, val in zip(orders, values)]
    value = float(values[-1])
    try:
        extrapolated, fit_err = extrapolate_numax(series)
        trunc_error = abs(extrapolated - value) + fit_err
    except FitRejectedError:
        extrapolated = value
        trunc_error = abs(values[-1] - values[-2]) if len(values) > 1 else 0.0
    fine = replace(spec, node_count=2 * spec.node_count)
    check = float(T_scaled * _matsubara_sum(geom, T_scaled, orders[:1],
                                            channel, fine)[0] / h2)
    quad_error = abs(check - float(values[0]))
    return EnergyResult(value, series, float(extrapolated), float(trunc_error),
                        quad_error, channel)
