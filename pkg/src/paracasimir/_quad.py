"""Gauss-Legendre panel quadrature helpers.

Frequency integrals here stretch over several decades, so the standard
grid maps panels uniformly in t = log(q H / 0.3) and folds the Jacobian
q = 0.3 e^t into the weights.  A plain linear-panel variant covers
integrals on ordinary bounded intervals.
"""

from __future__ import annotations

import numpy as np
from scipy.special import roots_legendre

__all__ = ["panel_grid", "expmap_grid"]


def panel_grid(edges, node_count: int):
    """Gauss-Legendre nodes and weights on consecutive panels.

    ``edges`` is an increasing sequence; each adjacent pair becomes one
    panel with ``node_count`` nodes.  Returns flat (x, w) arrays.
    """
    edges = np.asarray(edges, dtype=float)
    xg, wg = roots_legendre(node_count)
    mid = (edges[1:] + edges[:-1]) / 2.0
    half = (edges[1:] - edges[:-1]) / 2.0
    x = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    return x, w


def expmap_grid(qmin: float, qmax: float, panel_count: int, node_count: int):
    """Exponentially mapped grid for integrals of the form int_0^inf f(q) dq.

    Panels are uniform in t = log(q / 0.3) between log(qmin/0.3) and
    log(qmax/0.3); the returned weights already contain the dq = q dt
    measure, so sum(w * f(x)) approximates the q-integral directly.
    """
    t, wt = panel_grid(np.linspace(np.log(qmin / 0.3), np.log(qmax / 0.3),
                                   panel_count + 1), node_count)
    x = 0.3 * np.exp(t)
    return x, wt * x
