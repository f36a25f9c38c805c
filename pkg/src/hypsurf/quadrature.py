"""Quadrature helpers used throughout the toolkit.

Two workhorses: Gauss-Legendre rules (cached nodes, plain or composite) for
integrals over intervals, and the periodic trapezoid rule with node doubling
for integrals of analytic periodic functions over the circle.  Convergence is
always assessed by comparing successive refinements; failure to stabilize
raises :class:`~hypsurf.errors.QuadratureNotConverged`.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .errors import QuadratureNotConverged


@lru_cache(maxsize=None)
def _gl_rule(n: int):
    x, w = roots_legendre(n)
    return x, w


def gauss_legendre(a: float, b: float, n: int):
    """Nodes and weights of the n-point Gauss-Legendre rule on [a, b]."""
    x, w = _gl_rule(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def composite_gl(a: float, b: float, n_panels: int, n_per_panel: int = 8):
    """Composite Gauss-Legendre rule: n_panels equal panels on [a, b]."""
    edges = np.linspace(a, b, n_panels + 1)
    xs, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(lo, hi, n_per_panel)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def gl_integrate(f, a: float, b: float, n0: int = 32, tol: float = 1e-10,
                 max_doublings: int = 8):
    """Integrate a vectorized callable on [a, b], doubling nodes until stable."""
    if b <= a:
        return 0.0
    x, w = gauss_legendre(a, b, n0)
    prev = float(np.sum(f(x) * w))
    n = n0
    for _ in range(max_doublings):
        n *= 2
        x, w = gauss_legendre(a, b, n)
        cur = float(np.sum(f(x) * w))
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureNotConverged(
        f"GL on [{a}, {b}] did not stabilize below {tol} at {n} nodes")


def trapezoid_periodic(f, n0: int = 64, tol: float = 1e-9,
                       max_nodes: int = 1 << 21, period: float = 2.0 * np.pi):
    """Integrate f over one period, doubling nodes until the change is < tol.

    f must accept a vector of sample angles.  Spectrally accurate for
    analytic integrands; raises QuadratureNotConverged past max_nodes.
    """
    n = n0
    theta = period * np.arange(n) / n
    prev = np.sum(f(theta)) * (period / n)
    while n < max_nodes:
        # reuse existing nodes: new samples sit halfway between old ones
        theta_new = theta + period / (2 * n)
        add = np.sum(f(theta_new)) * (period / (2 * n))
        cur = prev / 2.0 + add
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        theta = np.sort(np.concatenate([theta, theta_new]))
        n *= 2
        prev = cur
    raise QuadratureNotConverged(
        f"periodic trapezoid did not stabilize below {tol} within {max_nodes} nodes")
