"""Dev scratch: pin transform normalizations against brute-force oracles."""
import numpy as np
import mpmath as mp
from scipy.integrate import quad
from scipy.special import loggamma

# --- spherical function: boundary-circle integral definition
def phi_integral(lam, t, n=200000):
    z = np.tanh(t / 2.0)
    theta = 2 * np.pi * np.arange(n) / n
    b = np.exp(1j * theta)
    bus = np.log((1 - z * z) / np.abs(z - b) ** 2)
    vals = np.exp((0.5 + 1j * lam) * bus)
    return np.mean(vals)

# --- conical (Mehler) function via mpmath
def phi_mpmath(lam, t):
    return complex(mp.legenp(-0.5 + 1j * lam, 0, mp.cosh(t)))

# --- Mehler-Dirichlet
def phi_md(lam, t):
    f = lambda u: np.cos(lam * u) / np.sqrt(np.cosh(t) - np.cosh(u))
    v, _ = quad(f, 0, t, points=[t], limit=400)
    return np.sqrt(2) / np.pi * v

# --- Harish-Chandra series
def c_func(lam):
    return np.exp(loggamma(1j * lam) - loggamma(0.5 + 1j * lam)) / np.sqrt(np.pi)

def gamma_coeffs(lam, lmax):
    g = [1.0 + 0j]
    for n in range(1, lmax + 1):
        s = sum(g[l] * (1j * lam - 0.5 - 2 * l) for l in range(n))
        g.append(-s / (2 * n * (n - 1j * lam)))
    return g

def phi_series(lam, t, lmax=30):
    g = gamma_coeffs(lam, lmax)
    s = sum(g[l] * np.exp(-2 * l * t) for l in range(lmax + 1))
    val = c_func(lam) * np.exp((-0.5 + 1j * lam) * t) * s
    return 2 * val.real

for lam in [0.5, 1.0, 2.0]:
    for t in [0.7, 1.0, 3.0, 10.0]:
        a = phi_integral(lam, t)
        b = phi_mpmath(lam, t)
        c = phi_md(lam, t)
        d = phi_series(lam, t)
        print(f"lam={lam} t={t}: int={a.real:.12g} (im {abs(a.imag):.1e}) mp={b.real:.12g} md={c:.12g} ser={d:.12g}")

# --- |c(lam)|^-2 identity
for lam in [0.5, 1.0, 2.0]:
    lhs = 1.0 / abs(c_func(lam)) ** 2
    rhs = np.pi * lam * np.tanh(np.pi * lam)
    print(f"|c|^-2: {lhs:.15g} vs pi*lam*tanh(pi*lam)={rhs:.15g} diff={abs(lhs-rhs):.2e}")

# --- triangle: S(k) with c_S=2pi vs Fourier(Abel(k)) for k = sharp ball kernel t0=1.5
t0 = 1.5
def k_sharp(r):
    return (np.cosh(t0)) ** -0.5 * (r <= t0)

def selberg(lam, cs):
    f = lambda r: k_sharp(r) * phi_md(lam, r) * np.sinh(r)
    v, _ = quad(f, 0, t0, limit=200)
    return cs * v

def g_sharp(u):
    # closed form: 2*sqrt(2(cosh t0 - cosh u)/cosh t0)
    return 2 * np.sqrt(2 * max(np.cosh(t0) - np.cosh(u), 0.0) / np.cosh(t0))

def fourier_abel(lam):
    f = lambda u: np.cos(lam * u) * g_sharp(u)
    v, _ = quad(f, 0, t0, limit=200)
    return 2 * v

for lam in [0.5, 1.0, 2.0]:
    s1 = selberg(lam, 1.0)
    s2pi = selberg(lam, 2 * np.pi)
    fa = fourier_abel(lam)
    print(f"lam={lam}: S(c=1)={s1:.10g} S(c=2pi)={s2pi:.10g} F(A(k))={fa:.10g} ratio={fa/s1:.10g}")

# --- round trip: k_rho with weights, then Selberg back
def rho(lam):
    # bump on [1,2]
    x = (lam - 1.5) / 0.5
    return np.exp(-1.0 / (1 - x * x)) * (abs(x) < 1) if abs(x) < 1 else 0.0

def k_rho(t, weight):
    if weight == "paper":
        w = lambda l: l * np.tanh(2 * np.pi * l)
    else:
        w = lambda l: np.pi * l * np.tanh(np.pi * l)
    f = lambda l: rho(l) * phi_md(l, t) * w(l)
    v, _ = quad(f, 1.0, 2.0, limit=200)
    return v

def roundtrip(lam, weight, norm_inv):
    f = lambda t: norm_inv * k_rho(t, weight) * phi_md(lam, t) * np.sinh(t)
    v, _ = quad(f, 1e-8, 40.0, limit=400)
    return 2 * np.pi * v

for lam in [1.2, 1.5, 1.8]:
    rt_h = roundtrip(lam, "harm", 1.0 / (2 * np.pi ** 2))
    rt_p = roundtrip(lam, "paper", 1.0 / (2 * np.pi))
    print(f"lam={lam}: rho={rho(lam):.10g} rt_harm={rt_h:.10g} rt_paper={rt_p:.10g}")
