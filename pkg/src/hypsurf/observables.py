"""Observables (multiplication, finite-range, differential) and their symbols.

The complete symbol of an operator A is read off its action on the plane
waves e_{lam,b}(z) = exp((1/2 + i lam) <z, b>):

    a(z, lam, b) = exp(-(1/2 + i lam)<z, b>) * (A e_{lam,b})(z).

Differential operators act through centered finite differences on the chart,
with the conformal metric factor supplied by the operator's coefficients and
the step scaled as 1e-5 * (1 - |z|^2) (the factor the metric contributes to
second derivatives cancels the step's boundary shrinkage exactly).

Every observable carries declared locality constants (C, S, k): the operator
is supported within distance S of the diagonal and |A u(x)| is dominated by
C times the C^k norm of u on B(x, S).  The declared constants are checkable
against measured ratios on a panel of test functions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import StencilOutOfDomain
from .fuchsian import (CoverSurface, DomainSampler, bs_statistic,
                       systole_upper_bound)
from .geometry import DiscPoint, GroupElement, mobius_apply_complex
from .quadrature import gauss_legendre
from .transforms import (PlancherelWeight, SpectralMultiplier, inverse_selberg,
                         phi_eval)

TWO_PI = 2.0 * math.pi


def _busemann_c(z: complex, b: complex) -> float:
    return math.log1p(-abs(z) ** 2) - 2.0 * math.log(abs(z - b))


def _dist_c(z: complex, w: complex) -> float:
    num = abs(z - w) ** 2
    if num == 0.0:
        return 0.0
    den = (1.0 - abs(z) ** 2) * (1.0 - abs(w) ** 2)
    return 2.0 * math.asinh(math.sqrt(num / den))


def plane_wave(lam: float, b: complex):
    def pw(z: complex) -> complex:
        return cmath.exp((0.5 + 1j * lam) * _busemann_c(z, b))
    return pw


# ---------------------------------------------------------------------------
# Observables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalityConstants:
    """Constants of the finite-propagation assumption: |Au| <= C ||u||_{C^k(B(x,S))}."""

    C: float
    S: float
    k: int


@dataclass(frozen=True)
class Observable:
    variant: str                    # 'multiplication' | 'finite_range' | 'differential'
    locality: LocalityConstants
    a: Callable = None              # multiplication density a(z)
    kernel: Callable = None         # finite-range K(z, w)
    radial_profile: Callable = None # optional psi(t) when the kernel is radial
    coefficients: dict = None       # differential: (i, j) -> coeff(z), i + j <= 2

    def apply(self, u: Callable[[complex], complex], z: complex) -> complex:
        if self.variant == "multiplication":
            return self.a(z) * u(z)
        if self.variant == "differential":
            return _apply_differential(self.coefficients, u, z)
        if self.variant == "finite_range":
            return _apply_finite_range(self.kernel, self.locality.S, u, z)
        raise ValueError(self.variant)


def multiplication_observable(a: Callable[[complex], float],
                              sup_bound: float) -> Observable:
    return Observable("multiplication", LocalityConstants(sup_bound, 0.0, 0),
                      a=a)


def finite_range_observable(K: Callable[[complex, complex], complex], S: float,
                            C: float, radial_profile: Callable = None) -> Observable:
    return Observable("finite_range", LocalityConstants(C, S, 0), kernel=K,
                      radial_profile=radial_profile)


def radial_kernel_observable(psi: Callable, S: float, C: float | None = None) -> Observable:
    """Finite-range observable with K(z, w) = psi(d(z, w)), psi supported [0, S]."""
    if C is None:
        ts = np.linspace(0.0, S, 512)
        # |Au(x)| <= ||u||_C0 * int |psi| dmu over the ball
        t, w = gauss_legendre(0.0, S, 256)
        C = TWO_PI * float(np.sum(np.abs(psi(t)) * np.sinh(t) * w))

    def K(z, w):
        return psi(_dist_c(z, w))

    return Observable("finite_range", LocalityConstants(C, S, 0), kernel=K,
                      radial_profile=psi)


def differential_observable(coefficients: dict, C: float, S: float = 0.0) -> Observable:
    k = max(i + j for (i, j) in coefficients)
    if k > 2:
        raise ValueError("differential order must be <= 2")
    return Observable("differential", LocalityConstants(C, S, k),
                      coefficients=dict(coefficients))


def laplacian_observable() -> Observable:
    """Minus the hyperbolic Laplacian: -((1-|z|^2)^2/4) (d_xx + d_yy)."""
    conf = lambda z: -(1.0 - abs(z) ** 2) ** 2 / 4.0
    return differential_observable({(2, 0): conf, (0, 2): conf}, C=1.0)


def _fd_step(z: complex) -> float:
    h = 1e-5 * (1.0 - abs(z) ** 2)
    if abs(z) > 1.0 - 1e-6:
        raise StencilOutOfDomain(f"|z| = {abs(z)} too close to the boundary")
    return h


def _apply_differential(coeffs: dict, u: Callable, z: complex) -> complex:
    h = _fd_step(z)
    out = 0.0 + 0.0j

    def coeff_val(c):
        return c(z) if callable(c) else c

    for (i, j), c in coeffs.items():
        cv = coeff_val(c)
        if cv == 0:
            continue
        if (i, j) == (0, 0):
            der = u(z)
        elif (i, j) == (1, 0):
            der = (u(z + h) - u(z - h)) / (2 * h)
        elif (i, j) == (0, 1):
            der = (u(z + 1j * h) - u(z - 1j * h)) / (2 * h)
        elif (i, j) == (2, 0):
            der = (u(z + h) - 2.0 * u(z) + u(z - h)) / (h * h)
        elif (i, j) == (0, 2):
            der = (u(z + 1j * h) - 2.0 * u(z) + u(z - 1j * h)) / (h * h)
        elif (i, j) == (1, 1):
            der = (u(z + h + 1j * h) - u(z + h - 1j * h)
                   - u(z - h + 1j * h) + u(z - h - 1j * h)) / (4 * h * h)
        else:
            raise ValueError(f"unsupported derivative {(i, j)}")
        out += cv * der
    return out


def _apply_finite_range(K: Callable, S: float, u: Callable, z: complex,
                        n_rad: int = 48, n_ang: int = 96) -> complex:
    t, wt = gauss_legendre(0.0, S, n_rad)
    trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
    total = 0.0 + 0.0j
    for i, tt in enumerate(t):
        r_e = math.tanh(tt / 2.0)
        for ang in TWO_PI * np.arange(n_ang) / n_ang:
            w = mobius_apply_complex(trans, r_e * cmath.exp(1j * ang))
            total += wt[i] * math.sinh(tt) * (TWO_PI / n_ang) * K(z, w) * u(w)
    return total


# ---------------------------------------------------------------------------
# Complete symbol
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Symbol:
    """Complete symbol a(z, lambda, b); b passed as a unit-modulus complex."""

    eval: Callable[[complex, float, complex], complex]
    lambda_support: tuple = (0.0, math.inf)
    derived_from: Observable | None = None

    def __call__(self, z: complex, lam: float, b: complex) -> complex:
        return self.eval(z, lam, b)


def complete_symbol(A: Observable, z: complex, lam: float, b: complex) -> complex:
    """a(z,lam,b) = e^{-(1/2+i lam)<z,b>} (A e_{lam,b})(z)."""
    if A.variant == "multiplication":
        return complex(A.a(z))
    pw = plane_wave(lam, b)
    val = A.apply(pw, z)
    return val * cmath.exp(-(0.5 + 1j * lam) * _busemann_c(z, b))


def symbol_of(A: Observable, lambda_support=(0.0, math.inf)) -> Symbol:
    return Symbol(lambda z, lam, b: complete_symbol(A, z, lam, b),
                  lambda_support, A)


# ---------------------------------------------------------------------------
# Angular decomposition at a point
# ---------------------------------------------------------------------------

def rotation_boundary_point(z: complex, theta: float) -> complex:
    """The boundary point at rotation angle theta of the direction circle at z."""
    trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
    return mobius_apply_complex(trans, cmath.exp(1j * theta))


@dataclass(frozen=True)
class AngularParts:
    mean: complex
    zero_mean_part: Callable[[float], complex]
    residual_mean: float


def angular_decompose(a: Symbol, z: complex, lam: float, n: int = 512) -> AngularParts:
    """Split a(z, lam, .) into its rotation-invariant mean and the rest.

    The mean is over the rotation angle at z (the Liouville fiber measure),
    which differs from the plain boundary measure unless z = 0.
    """
    thetas = TWO_PI * np.arange(n) / n
    vals = np.array([a(z, lam, rotation_boundary_point(z, th)) for th in thetas])
    mean = complex(np.mean(vals))

    def zero_mean(theta: float) -> complex:
        return a(z, lam, rotation_boundary_point(z, theta)) - mean

    residual = abs(np.mean(vals - mean))
    return AngularParts(mean, zero_mean, residual)


def condition_a1_holds(a: Symbol, z: complex, lam: float, tol: float = 1e-9) -> bool:
    """Zero angular mean at (z, lam): the cancellation the averaging step needs."""
    return abs(angular_decompose(a, z, lam).mean) <= tol


def theta_second_derivative_norm(a: Symbol, lam_window, surface, n_mc: int,
                                 seed: int, fd_step: float = 1e-4,
                                 n_lam: int = 7) -> float:
    """sup over lam in the window of the volume-normalized L^2 norm (squared)
    of the second rotation-angle derivative of the symbol over the sphere
    bundle; Monte Carlo over (fundamental domain) x (angle)."""
    group = surface.base if isinstance(surface, CoverSurface) else surface
    sampler = DomainSampler(group)
    rng = np.random.default_rng(seed)
    pts = [(sampler.sample(rng), rng.uniform(0.0, TWO_PI)) for _ in range(n_mc)]
    lams = np.linspace(lam_window[0], lam_window[1], n_lam)
    worst = 0.0
    h = fd_step
    for lam in lams:
        acc = 0.0
        for z, th in pts:
            f = lambda phi: a(z, float(lam), rotation_boundary_point(z, phi))
            d2 = (-f(th + 2 * h) + 16 * f(th + h) - 30 * f(th)
                  + 16 * f(th - h) - f(th - 2 * h)) / (12 * h * h)
            acc += abs(d2) ** 2
        worst = max(worst, acc / n_mc)
    return worst


# ---------------------------------------------------------------------------
# Propagator sandwich P_t A P_t
# ---------------------------------------------------------------------------

def _smooth_chi(t: float, sigma: float, r, eta):
    return eta((np.asarray(r, dtype=float) - t) / sigma)


def smooth_sandwich_kernel(A: Observable, t: float, sigma: float, z: complex,
                           w: complex, eta=None, n_rad: int = 48,
                           n_ang: int = 96) -> complex:
    """Kernel of P_t A P_t at (z, w); exactly 0 beyond distance 2t + S."""
    from .propagators import default_eta
    eta = eta or default_eta
    S = A.locality.S
    if _dist_c(z, w) > 2.0 * t + S:
        return 0.0 + 0.0j
    c_t = math.cosh(t) ** -0.5

    def k_t(r):
        return c_t * _smooth_chi(t, sigma, r, eta)

    trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
    tq, wq = gauss_legendre(0.0, t, n_rad)
    total = 0.0 + 0.0j
    if A.variant == "multiplication":
        for i, tt in enumerate(tq):
            r_e = math.tanh(tt / 2.0)
            for ang in TWO_PI * np.arange(n_ang) / n_ang:
                u = mobius_apply_complex(trans, r_e * cmath.exp(1j * ang))
                duw = _dist_c(u, w)
                if duw >= t:
                    continue
                total += (wq[i] * math.sinh(tt) * (TWO_PI / n_ang)
                          * float(k_t(tt)) * A.a(u) * float(k_t(duw)))
        return total
    if A.variant == "differential":
        cutoff = lambda v: complex(k_t(_dist_c(v, w)))
        for i, tt in enumerate(tq):
            r_e = math.tanh(tt / 2.0)
            for ang in TWO_PI * np.arange(n_ang) / n_ang:
                u = mobius_apply_complex(trans, r_e * cmath.exp(1j * ang))
                if _dist_c(u, w) > t + 2e-2:
                    continue
                total += (wq[i] * math.sinh(tt) * (TWO_PI / n_ang)
                          * float(k_t(tt)) * A.apply(cutoff, u))
        return total
    if A.variant == "finite_range":
        # double ball integral; coarse nodes, desk-scale use only
        n2r, n2a = max(12, n_rad // 3), max(24, n_ang // 3)
        t2, w2 = gauss_legendre(0.0, t, n2r)
        for i, tt in enumerate(tq):
            r_e = math.tanh(tt / 2.0)
            for ang in TWO_PI * np.arange(n_ang) / n_ang:
                u = mobius_apply_complex(trans, r_e * cmath.exp(1j * ang))
                if _dist_c(u, w) > t + S:
                    continue
                trans_u = GroupElement.translation_to(DiscPoint(u.real, u.imag))
                inner = 0.0 + 0.0j
                for i2, ss in enumerate(t2):
                    if ss > S:
                        break
                    r2 = math.tanh(ss / 2.0)
                    for ang2 in TWO_PI * np.arange(n2a) / n2a:
                        v = mobius_apply_complex(trans_u, r2 * cmath.exp(1j * ang2))
                        dvw = _dist_c(v, w)
                        if dvw >= t:
                            continue
                        inner += (w2[i2] * math.sinh(ss) * (TWO_PI / n2a)
                                  * A.kernel(u, v) * float(k_t(dvw)))
                total += wq[i] * math.sinh(tt) * (TWO_PI / n_ang) * float(k_t(tt)) * inner
        return total
    raise ValueError(A.variant)


def sandwich_sup_bound(A: Observable, t: float, sigma: float, eta=None,
                       n_grid: int = 160) -> float:
    """Computable version of the pointwise sandwich-kernel bound:

        sup |K_{P_t A P_t}| <= C * sup_w ||k_t(d(., w))||_{C^k} * ||K_t||_L1,

    with the C^k factor measured on a finite-difference grid (same stencils
    as the operator) and the L1 norm integrated exactly.
    """
    from .propagators import default_eta
    eta = eta or default_eta
    c_t = math.cosh(t) ** -0.5
    k = A.locality.k

    def f(v: complex, w: complex) -> float:
        return c_t * float(_smooth_chi(t, sigma, _dist_c(v, w), eta))

    # radial symmetry: put w at the origin, scan v along a ray and measure
    # chart derivatives up to order k by centered differences
    w0 = 0.0 + 0.0j
    ts = np.linspace(0.0, t + 0.05, n_grid)
    worst = 0.0
    for tt in ts:
        v = math.tanh(tt / 2.0) + 0.0j
        h = 1e-5 * (1.0 - abs(v) ** 2)
        total = abs(f(v, w0))
        if k >= 1:
            total += abs((f(v + h, w0) - f(v - h, w0)) / (2 * h))
            total += abs((f(v + 1j * h, w0) - f(v - 1j * h, w0)) / (2 * h))
        if k >= 2:
            total += abs((f(v + h, w0) - 2 * f(v, w0) + f(v - h, w0)) / (h * h))
            total += abs((f(v + 1j * h, w0) - 2 * f(v, w0) + f(v - 1j * h, w0)) / (h * h))
            total += abs((f(v + h + 1j * h, w0) - f(v + h - 1j * h, w0)
                          - f(v - h + 1j * h, w0) + f(v - h - 1j * h, w0)) / (4 * h * h))
        worst = max(worst, total)
    r, wq = gauss_legendre(0.0, t, 256)
    l1 = TWO_PI * c_t * float(np.sum(np.asarray(_smooth_chi(t, sigma, r, eta))
                                     * np.sinh(r) * wq))
    return A.locality.C * worst * l1


def locality_ratio(A: Observable, u: Callable, z: complex, n_ball: int = 7) -> float:
    """Measured |Au(z)| / ||u||_{C^k(B(z, S))} on a finite-difference grid."""
    val = abs(A.apply(u, z))
    S_eff = max(A.locality.S, 0.05)
    k = A.locality.k
    trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
    norm = 0.0
    for tt in np.linspace(0.0, S_eff, n_ball):
        for ang in TWO_PI * np.arange(8) / 8:
            v = mobius_apply_complex(trans, math.tanh(tt / 2.0) * cmath.exp(1j * ang))
            h = 1e-4 * (1.0 - abs(v) ** 2)
            total = abs(u(v))
            if k >= 1:
                total += abs((u(v + h) - u(v - h)) / (2 * h))
                total += abs((u(v + 1j * h) - u(v - 1j * h)) / (2 * h))
            if k >= 2:
                total += abs((u(v + h) - 2 * u(v) + u(v - h)) / (h * h))
                total += abs((u(v + 1j * h) - 2 * u(v) + u(v - 1j * h)) / (h * h))
                total += abs((u(v + h + 1j * h) - u(v + h - 1j * h)
                              - u(v - h + 1j * h) + u(v - h - 1j * h)) / (4 * h * h))
            norm = max(norm, total)
    return val / norm if norm > 0 else 0.0


# ---------------------------------------------------------------------------
# The limit term of the variance functional
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitTerm:
    value: float
    stderr: float


def limit_term(A: Observable, lam: float, surface, n_mc: int = 2000,
               seed: int = 0) -> LimitTerm:
    """(1/Vol) iint K_A(x, y) phi_lambda(d(x, y)) dmu dmu.

    Multiplication: the Dirac kernel collapses the double integral to the
    mean of the density (phi(0) = 1).  Radial finite-range kernels reduce to
    the spherical pairing 2 pi int psi phi sinh; general finite-range kernels
    are integrated by Monte Carlo over the fundamental domain.
    """
    group = surface.base if isinstance(surface, CoverSurface) else surface
    if A.variant == "multiplication":
        sampler = DomainSampler(group)
        rng = np.random.default_rng(seed)
        vals = np.array([A.a(sampler.sample(rng)) for _ in range(n_mc)])
        return LimitTerm(float(np.mean(vals)),
                         float(np.std(vals) / math.sqrt(n_mc)))
    if A.variant == "finite_range":
        S = A.locality.S
        if A.radial_profile is not None:
            t, w = gauss_legendre(0.0, S, 400)
            vals = np.array([float(phi_eval(lam, float(tt))) for tt in t])
            total = TWO_PI * float(np.sum(A.radial_profile(t) * vals * np.sinh(t) * w))
            return LimitTerm(total, 0.0)
        sampler = DomainSampler(group)
        rng = np.random.default_rng(seed)
        vals = []
        t, wq = gauss_legendre(0.0, S, 32)
        phi_tab = np.array([float(phi_eval(lam, float(tt))) for tt in t])
        angs = TWO_PI * np.arange(48) / 48
        for _ in range(n_mc):
            z = sampler.sample(rng)
            trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
            acc = 0.0
            for i, tt in enumerate(t):
                ring = [mobius_apply_complex(trans, math.tanh(tt / 2.0)
                                             * cmath.exp(1j * ang)) for ang in angs]
                ksum = sum(complex(A.kernel(z, wpt)).real for wpt in ring)
                acc += wq[i] * math.sinh(tt) * (TWO_PI / 48) * ksum * phi_tab[i]
            vals.append(acc)
        vals = np.array(vals)
        return LimitTerm(float(np.mean(vals)), float(np.std(vals) / math.sqrt(n_mc)))
    raise ValueError("limit term needs an integrable kernel (multiplication or finite range)")


# ---------------------------------------------------------------------------
# Error-operator budgets (spectral cutoff and truncation)
# ---------------------------------------------------------------------------

# ---------------------------------------------------------------------------
# JSON-declared observable presets
# ---------------------------------------------------------------------------

def _preset_density(name: str, params: dict):
    if name == "sign_re":
        return lambda z: 1.0 if z.real > 0 else -1.0
    if name == "cos_re":
        k = float(params.get("k", 3.0))
        return lambda z: math.cos(k * z.real)
    if name == "indicator_half":
        return lambda z: 1.0 if z.imag > 0 else 0.0
    raise ValueError(f"unknown multiplication preset {name!r}")


def observable_from_json(text: str) -> Observable:
    """Build a preset observable from a JSON declaration.

    Schema: {"variant": ..., "parameters": {...},
             "declared_constants": {"C": ..., "S": ..., "k": ...}}.
    Multiplication presets: sign_re, cos_re(k), indicator_half.
    finite_range preset: radial_bump with range S.
    differential preset: laplacian.
    """
    import json as _json
    d = _json.loads(text)
    variant = d["variant"]
    params = d.get("parameters", {})
    consts = d.get("declared_constants", {})
    if variant == "multiplication":
        f = _preset_density(params.get("preset", "sign_re"), params)
        return multiplication_observable(f, float(consts.get("C", 1.0)))
    if variant == "finite_range":
        if params.get("preset", "radial_bump") != "radial_bump":
            raise ValueError("unknown finite-range preset")
        S = float(params.get("S", 0.8))

        def psi(t):
            t = np.asarray(t, dtype=float)
            x = t / S
            out = np.zeros_like(t)
            inside = x < 1.0
            out[inside] = np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
            return out

        C = consts.get("C")
        return radial_kernel_observable(psi, S, float(C) if C is not None else None)
    if variant == "differential":
        if params.get("preset", "laplacian") != "laplacian":
            raise ValueError("unknown differential preset")
        return laplacian_observable()
    raise ValueError(f"unknown observable variant {variant!r}")


@dataclass(frozen=True)
class ErrorBudget:
    E_bound: float
    R_hs_bound: float
    injrad_fraction: float
    systole_bound: float


def multiplier_tail_bound(rho: SpectralMultiplier, weight: PlancherelWeight,
                          r: float, lam_grid, t_max_extra: float = 60.0) -> float:
    """max over the lambda grid of int_r^inf |k_rho(t) phi_lam(t) sinh t| dt."""
    kern = inverse_selberg(rho, weight)
    t, w = gauss_legendre(r, r + t_max_extra, 600)
    scaled_k = np.abs(kern.scaled_eval(t))          # |k_rho| e^{t/2}
    best = 0.0
    for lam in np.atleast_1d(lam_grid):
        phis = np.array([float(phi_eval(float(lam), float(tt))) for tt in t])
        integrand = scaled_k * np.abs(phis) * np.exp(t / 2.0) * np.exp(-t) * np.sinh(t)
        best = max(best, float(np.sum(integrand * w)))
    return best


def error_ops_bounds(A: Observable, rho: SpectralMultiplier,
                     weight: PlancherelWeight, r: float, surface,
                     lam_grid=None, sup_kernel: float | None = None,
                     n_mc: int = 300, seed: int = 0,
                     chi_prime_sup: float = 1.5) -> ErrorBudget:
    """Computable budget for the two approximation errors at truncation r.

    E_bound: the spectral-multiplier tail int_r^inf |k_rho phi sinh|.
    R_hs_bound: (D/r)^2 ||chi'||^2 e^{2D} (int |rho|^2 w) sup|K_A|^2
                * (Vol + e^{r+D}/systole * Vol{InjRad < r + D}).
    """
    group = surface.base if isinstance(surface, CoverSurface) else surface
    vol = (surface.volume() if isinstance(surface, CoverSurface)
           else group.volume())
    lam_grid = lam_grid if lam_grid is not None else np.linspace(
        max(rho.support[0], 0.3), rho.support[1], 9)
    e_bound = multiplier_tail_bound(rho, weight, r, lam_grid)
    D = max(A.locality.S, 1e-9)
    if sup_kernel is None:
        if A.radial_profile is not None:
            ts = np.linspace(0.0, D, 512)
            sup_kernel = float(np.max(np.abs(A.radial_profile(ts))))
        elif A.variant == "multiplication":
            sup_kernel = A.locality.C
        else:
            raise ValueError("sup_kernel required for this observable")
    lam, wl = gauss_legendre(rho.support[0], rho.support[1], 200)
    rho_l2 = float(np.sum(rho(lam) ** 2 * weight(lam) * wl))
    stat = bs_statistic(surface, r + D, n_mc, seed)
    systole, _ = systole_upper_bound(group)
    r_hs = ((D / r) ** 2 * chi_prime_sup ** 2 * math.exp(2.0 * D) * rho_l2
            * sup_kernel ** 2
            * (vol + math.exp(r + D) / systole * stat.value * vol))
    return ErrorBudget(e_bound, r_hs, stat.value, systole)
