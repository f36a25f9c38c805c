"""Experiment driver: every subcommand writes CSV data plus a JSON summary.

Summaries embed the full configuration (seed, weight convention, cutoff and
exponent choices) so a run is reproducible from its own output; floats are
serialized with 17 significant digits and files are written atomically, so
the same configuration and seed produce byte-identical summaries.  Exit code
0 means every internal assertion of the subcommand passed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .errors import HypsurfError
from .eigensolve import disc_surface_mesh, export_eigendata, fem_eigensolve, torus_mesh
from .fuchsian import (bolza_group, bs_statistic, cyclic_group, hs_bound_check,
                       injectivity_radius_at, orbit_enumerate, random_cover,
                       systole_upper_bound)
from .geometry import (AnkCoords, BoundaryPoint, DiscPoint, GroupElement,
                       ank_compose, ank_decompose, boundary_angle_derivative,
                       busemann, hyp_distance, mobius_apply, poisson_weight)
from .observables import (complete_symbol, laplacian_observable,
                          multiplication_observable)
from .propagators import (beta_norm_check, lemma_a1_check, prop33_certificate)
from .toy1d import alternating_step, toy1d_variance
from .transforms import (RadialKernel, abel_sharp, bump_multiplier,
                         c_inverse_square, fourier_of_abel, k_rho_scaled,
                         selberg_transform, spherical_phi,
                         spherical_phi_series, weight_from_name)
from .variance import (SpectralWindow, mean_zero_density, quantum_variance,
                       variance_pipeline_bounds, weyl_ratio)

FMT = "%.17g"


def _fnum(x):
    if isinstance(x, float):
        return float(FMT % x)
    return x


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return _fnum(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _atomic_write(path: str, text: str):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    with os.fdopen(fd, "w") as f:
        f.write(text)
    os.replace(tmp, path)


def write_summary(out_dir: str, name: str, payload: dict):
    payload = dict(payload)
    payload["tool_version"] = __version__
    text = json.dumps(_jsonify(payload), sort_keys=True, indent=1) + "\n"
    _atomic_write(os.path.join(out_dir, name + ".json"), text)


def write_csv(out_dir: str, name: str, header: str, rows):
    lines = [header]
    for row in rows:
        lines.append(",".join(FMT % v if isinstance(v, float) else str(v)
                              for v in row))
    _atomic_write(os.path.join(out_dir, name + ".csv"), "\n".join(lines) + "\n")


def _base_config(args) -> dict:
    return {"seed": args.seed, "weight_convention": args.weight,
            "out_dir": args.out, "subcommand": args.command}


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_toy1d(args) -> int:
    window = tuple(float(x) for x in args.window.split(":"))
    rep = toy1d_variance(args.L, window, alternating_step(args.blocks))
    ok = rep.passed
    write_csv(args.out, "toy1d", "L,n_modes,variance,bound",
              [(rep.L, rep.n_modes, rep.variance, rep.parseval_bound)])
    write_summary(args.out, "toy1d", {
        "config": {**_base_config(args), "L": args.L, "window": list(window),
                   "blocks": args.blocks},
        "n_modes": rep.n_modes, "variance": rep.variance,
        "parseval_bound": rep.parseval_bound, "passed": ok})
    return 0 if ok else 1


def cmd_geometry_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    n = args.samples
    worst = {"cocycle": 0.0, "poisson": 0.0, "ank": 0.0, "cosh_formula": 0.0}
    for _ in range(n):
        s, u = rng.uniform(-2, 2, 2)
        th = rng.uniform(0, 2 * math.pi)
        g = ank_compose(AnkCoords(s, u, th))
        r = math.sqrt(rng.uniform(0, 0.81))
        z = DiscPoint(r * math.cos(th), r * math.sin(th))
        b = BoundaryPoint(rng.uniform(0, 2 * math.pi))
        lhs = busemann(mobius_apply(g, z), mobius_apply(g, b))
        rhs = busemann(z, b) + busemann(mobius_apply(g, DiscPoint(0, 0)),
                                        mobius_apply(g, b))
        worst["cocycle"] = max(worst["cocycle"], abs(lhs - rhs))
        pw = (poisson_weight(mobius_apply(g, z), mobius_apply(g, b))
              * boundary_angle_derivative(g, b))
        worst["poisson"] = max(worst["poisson"], abs(pw - poisson_weight(z, b)))
        h = ank_compose(ank_decompose(g))
        worst["ank"] = max(worst["ank"], abs(h.alpha - g.alpha) + abs(h.beta - g.beta))
        zz = mobius_apply(GroupElement.geodesic(s) @ GroupElement.horocycle(u),
                          DiscPoint(0, 0))
        lhs2 = math.cosh(hyp_distance(DiscPoint(0, 0), zz))
        rhs2 = (u * u * math.exp(s) + 2.0 * math.cosh(s)) / 2.0
        worst["cosh_formula"] = max(worst["cosh_formula"], abs(lhs2 - rhs2))
    ok = all(v < args.tol for v in worst.values())
    write_summary(args.out, "geometry_check", {
        "config": {**_base_config(args), "samples": n, "tol": args.tol},
        "worst_deviations": worst, "passed": ok})
    return 0 if ok else 1


def cmd_spherical(args) -> int:
    lams = [float(x) for x in args.lams.split(",")]
    ts = [float(x) for x in args.ts.split(",")]
    rows, worst = [], 0.0
    for lam in lams:
        for t in ts:
            vi = spherical_phi(lam, t)
            vs = spherical_phi_series(lam, t) if t >= 0.5 else vi
            worst = max(worst, abs(vi - vs))
            rows.append((lam, t, vi, abs(vi - vs)))
    cid = max(abs(c_inverse_square(lam) - math.pi * lam * math.tanh(math.pi * lam))
              for lam in lams)
    ok = worst < 1e-6 and cid < 1e-10
    write_csv(args.out, "spherical", "lambda,t,phi,int_vs_series", rows)
    write_summary(args.out, "spherical", {
        "config": {**_base_config(args), "lams": lams, "ts": ts},
        "max_integral_series_gap": worst, "c_function_identity_gap": cid,
        "passed": ok})
    return 0 if ok else 1


def cmd_selberg(args) -> int:
    t0 = args.t
    k = RadialKernel(lambda r: np.cosh(t0) ** -0.5 * (r <= t0), support_bound=t0)
    h1 = selberg_transform(k)
    h2 = fourier_of_abel(abel_sharp(t0))
    lams = np.linspace(0.25, 4.0, args.n_lams)
    rows, worst = [], 0.0
    for lam in lams:
        a, b = float(h1(float(lam))), float(h2(float(lam)))
        worst = max(worst, abs(a - b))
        rows.append((float(lam), a, b, abs(a - b)))
    ok = worst < 1e-6
    write_csv(args.out, "selberg", "lambda,selberg,fourier_abel,gap", rows)
    write_summary(args.out, "selberg", {
        "config": {**_base_config(args), "t": t0, "n_lams": args.n_lams},
        "max_triangle_gap": worst, "passed": ok})
    return 0 if ok else 1


def cmd_kernel_decay(args) -> int:
    weight = weight_from_name(args.weight)
    lo, hi = (float(x) for x in args.support.split(":"))
    rho = bump_multiplier(lo, hi)
    ts = np.linspace(1.0, 40.0, args.n_t)
    s1 = np.abs(k_rho_scaled(rho, weight, ts, n_lambda=256))
    s2 = np.abs(k_rho_scaled(rho, weight, ts, n_lambda=512))
    sups, stable = [], True
    for N in range(5):
        v1 = float((s1 * (1 + ts) ** N).max())
        v2 = float((s2 * (1 + ts) ** N).max())
        sups.append(v2)
        stable &= math.isfinite(v2) and abs(v1 - v2) <= 0.01 * v2
    write_csv(args.out, "kernel_decay", "t,scaled_abs_k,est_error",
              [(float(t), float(v), float(e)) for t, v, e in
               zip(ts, s2, np.abs(s1 - s2))])
    write_summary(args.out, "kernel_decay", {
        "config": {**_base_config(args), "support": [lo, hi], "n_t": args.n_t},
        "sup_scaled_times_poly": sups, "grid_stable": stable, "passed": stable})
    return 0 if stable else 1


def cmd_prop33(args) -> int:
    T_list = [float(x) for x in args.T.split(",")]
    lam_lo, lam_hi = (float(x) for x in args.interval.split(":"))
    cert = prop33_certificate((lam_lo, lam_hi), args.sigma, T_list,
                              lam_spacing=args.lam_spacing)
    write_summary(args.out, "prop33", {
        "config": {**_base_config(args), "interval": [lam_lo, lam_hi],
                   "sigma": args.sigma, "T_list": T_list,
                   "lam_spacing": args.lam_spacing},
        "I": [cert.lam_lo, cert.lam_hi], "sigma": cert.sigma,
        "T_list": list(cert.T_list), "c_min": list(cert.c_min),
        "argmin_lambda": list(cert.argmin_lambda),
        "lemmaA1_constant": cert.lemma_a1_const,
        "upper_half_variation": cert.upper_half_variation, "pass": cert.passed})
    return 0 if cert.passed else 1


def cmd_lemma_a1(args) -> int:
    lams = [float(x) for x in args.lams.split(",")]
    rows = []
    per_lam_max = {}
    for lam in lams:
        vals = [float(lemma_a1_check(lam, float(r))) for r in range(2, 21)]
        per_lam_max[lam] = max(vals)
        rows.extend((lam, float(r), v) for r, v in zip(range(2, 21), vals))
    ratio = max(per_lam_max.values()) / min(per_lam_max.values())
    ok = ratio < 10.0
    write_csv(args.out, "lemma_a1", "lambda,r,value", rows)
    write_summary(args.out, "lemma_a1", {
        "config": {**_base_config(args), "lams": lams},
        "per_lambda_max": {str(k): v for k, v in per_lam_max.items()},
        "max_over_min_ratio": ratio, "passed": ok})
    return 0 if ok else 1


def cmd_orbit(args) -> int:
    group = bolza_group() if args.group == "bolza" else cyclic_group(args.length)
    ball = orbit_enumerate(group, DiscPoint(0, 0), args.R)
    inj = injectivity_radius_at(group, DiscPoint(0, 0), max(args.R, 1.0))
    sys_bound, wl = systole_upper_bound(group, args.word_len)
    write_csv(args.out, "orbit", "displacement,word_length",
              [(e.displacement, len(e.word)) for e in ball.elements])
    write_summary(args.out, "orbit", {
        "config": {**_base_config(args), "group": args.group, "R": args.R,
                   "length": args.length, "word_len": args.word_len},
        "count": len(ball), "injectivity_radius": inj.value,
        "inj_is_lower_bound": inj.is_lower_bound,
        "systole_upper_bound": sys_bound, "systole_word_len": wl,
        "passed": True})
    return 0


def cmd_bs_stat(args) -> int:
    base = bolza_group()
    surface = base if args.degree == 1 else random_cover(base, args.degree, args.seed)
    res = bs_statistic(surface, args.R, args.samples, args.seed)
    write_summary(args.out, "bs_stat", {
        "config": {**_base_config(args), "R": args.R, "degree": args.degree,
                   "samples": args.samples},
        "value": res.value, "stderr": res.stderr, "n_hits": res.n_hits,
        "passed": True})
    return 0


def cmd_hs_check(args) -> int:
    group = bolza_group() if args.group == "bolza" else cyclic_group(args.length)
    kern = RadialKernel(lambda t: np.exp(-t * t), support_bound=8.0)
    kw = {}
    if args.group != "bolza":
        kw = {"systole": args.length, "window_radius": 2.5}
    rep = hs_bound_check(kern, group, r=args.r, n_mc=args.samples,
                         seed=args.seed, **kw)
    write_summary(args.out, "hs_check", {
        "config": {**_base_config(args), "group": args.group, "r": args.r,
                   "samples": args.samples, "length": args.length},
        "lhs_estimate": rep.lhs_estimate, "lhs_stderr": rep.lhs_stderr,
        "rhs_bound": rep.rhs_bound, "rhs_first_term": rep.rhs_first_term,
        "rhs_second_term": rep.rhs_second_term,
        "injrad_fraction": rep.injrad_fraction,
        "systole_bound": rep.systole_bound, "passed": rep.passed})
    return 0 if rep.passed else 1


def cmd_symbol(args) -> int:
    A = laplacian_observable()
    worst = 0.0
    rows = []
    for zre, zim in ((0.0, 0.0), (0.3, 0.2), (-0.5, 0.1), (0.0, 0.6)):
        for lam in (0.5, 1.5, 3.0):
            s = complete_symbol(A, complex(zre, zim), lam, np.exp(1.1j))
            gap = abs(s - (0.25 + lam * lam))
            worst = max(worst, gap)
            rows.append((zre, zim, lam, s.real, s.imag, gap))
    ok = worst < 1e-5
    write_csv(args.out, "symbol", "z_re,z_im,lambda,sym_re,sym_im,gap", rows)
    write_summary(args.out, "symbol", {
        "config": _base_config(args),
        "max_laplacian_symbol_gap": worst, "passed": ok})
    return 0 if ok else 1


def _tower_surface(base, degree, seed):
    return base if degree == 1 else random_cover(base, degree, seed)


def cmd_variance(args) -> int:
    base = bolza_group()
    surface = _tower_surface(base, args.degree, args.seed)
    data = fem_eigensolve(disc_surface_mesh(surface, args.h), args.modes)
    window = SpectralWindow(*(float(x) for x in args.window.split(":")))
    a_vals = mean_zero_density(lambda z: 1.0 if z.real > 0 else -1.0, data)
    rep = quantum_variance(a_vals, data, window,
                           weight_from_name(args.weight), seed=args.seed)
    spread = float(np.std(rep.terms) / math.sqrt(rep.count))
    write_csv(args.out, "variance", "nu,matrix_element,limit,term",
              [(float(n), float(m), float(l), float(t)) for n, m, l, t in
               zip(rep.eigenvalues, rep.matrix_elements, rep.limit_terms, rep.terms)])
    write_summary(args.out, "variance", {
        "config": {**_base_config(args), "degree": args.degree, "h": args.h,
                   "modes": args.modes, "window": args.window,
                   "observable": "sign_re_mean_zero",
                   "nevo_n": rep.nevo_n, "nevo_n_provenance": rep.nevo_n_provenance},
        "count": rep.count, "variance": rep.variance,
        "uncertainty": rep.uncertainty, "spread_stderr": spread,
        "passed": True})
    return 0


def cmd_weyl(args) -> int:
    base = bolza_group()
    surface = _tower_surface(base, args.degree, args.seed)
    data = fem_eigensolve(disc_surface_mesh(surface, args.h), args.modes)
    window = SpectralWindow(*(float(x) for x in args.window.split(":")))
    rep = weyl_ratio(data, window)
    ok = 0.5 <= rep.ratio <= 2.0
    write_summary(args.out, "weyl", {
        "config": {**_base_config(args), "degree": args.degree, "h": args.h,
                   "modes": args.modes, "window": args.window},
        "measured_density": rep.measured, "predicted_density": rep.predicted,
        "ratio": rep.ratio, "count": rep.count, "volume": rep.volume,
        "passed": ok})
    return 0 if ok else 1


def cmd_tower(args) -> int:
    base = bolza_group()
    window = SpectralWindow(*(float(x) for x in args.window.split(":")))
    degrees = [int(x) for x in args.degrees.split(",")]
    rows, summaries = [], []
    for deg in degrees:
        surface = _tower_surface(base, deg, args.seed)
        data = fem_eigensolve(disc_surface_mesh(surface, args.h),
                              args.modes_base + 10 * deg)
        a_vals = mean_zero_density(lambda z: 1.0 if z.real > 0 else -1.0, data)
        rep = quantum_variance(a_vals, data, window,
                               weight_from_name(args.weight), seed=args.seed)
        spread = float(np.std(rep.terms) / math.sqrt(rep.count))
        wr = weyl_ratio(data, window)
        rows.append((deg, rep.count, rep.variance, spread, wr.ratio))
        summaries.append({"degree": deg, "count": rep.count,
                          "variance": rep.variance, "spread_stderr": spread,
                          "uncertainty": rep.uncertainty,
                          "weyl_ratio": wr.ratio})
    trend_ok = all(
        summaries[i + 1]["variance"] <= summaries[i]["variance"]
        + 2.0 * (summaries[i]["spread_stderr"] + summaries[i + 1]["spread_stderr"])
        for i in range(len(summaries) - 1))
    weyl_ok = 0.5 <= summaries[-1]["weyl_ratio"] <= 2.0
    write_csv(args.out, "tower", "degree,count,variance,spread,weyl_ratio", rows)
    write_summary(args.out, "tower", {
        "config": {**_base_config(args), "degrees": degrees, "h": args.h,
                   "window": args.window, "modes_base": args.modes_base,
                   "observable": "sign_re_mean_zero",
                   "bs_spectral_gap_assumption": "unchecked"},
        "per_degree": summaries, "trend_nonincreasing_within_bars": trend_ok,
        "weyl_ratio_final_ok": weyl_ok, "passed": trend_ok and weyl_ok})
    return 0 if (trend_ok and weyl_ok) else 1


def cmd_fem(args) -> int:
    if args.surface == "torus":
        mesh = torus_mesh(args.h)
    else:
        base = bolza_group()
        mesh = disc_surface_mesh(_tower_surface(base, args.degree, args.seed), args.h)
    data = fem_eigensolve(mesh, args.modes)
    if args.export:
        export_eigendata(data, os.path.join(args.out, args.export))
    write_csv(args.out, "fem_eigs", "index,eigenvalue,residual",
              [(j, float(v), float(r)) for j, (v, r) in
               enumerate(zip(data.eigenvalues, data.residuals))])
    write_summary(args.out, "fem", {
        "config": {**_base_config(args), "surface": args.surface, "h": args.h,
                   "modes": args.modes, "degree": args.degree},
        "n_mesh": len(data.points), "eigenvalues": list(data.eigenvalues),
        "max_residual": float(np.max(data.residuals)),
        "gram_deviation": data.gram_deviation(), "passed": True})
    return 0


def cmd_pipeline(args) -> int:
    base = bolza_group()
    surface = _tower_surface(base, args.degree, args.seed)
    window = SpectralWindow(*(float(x) for x in args.window.split(":")))
    A = multiplication_observable(lambda z: 1.0 if z.real > 0 else -1.0, 1.0)
    budget = variance_pipeline_bounds(A, surface, T=args.T, r=args.r, s=args.s,
                                      window=window,
                                      weight=weight_from_name(args.weight),
                                      sigma=args.sigma, nevo_n=args.nevo_n,
                                      n_mc=args.samples, seed=args.seed)
    write_summary(args.out, "pipeline", {
        "config": {**_base_config(args), "T": args.T, "r": args.r, "s": args.s,
                   "window": args.window, "sigma": args.sigma,
                   "degree": args.degree, "nevo_n": args.nevo_n,
                   "nevo_n_provenance": budget.nevo_n_provenance,
                   "suppressed_constants": budget.note},
        "terms": {"averaging": budget.term_averaging,
                  "wraparound": budget.term_wraparound,
                  "cutoff_tail": budget.term_cutoff_tail,
                  "mean_kernel": budget.term_mean_kernel,
                  "hs_times_E": budget.term_hs_times_E,
                  "truncation": budget.term_truncation},
        "total": budget.total, "dominant": budget.dominant,
        "bs_fraction_wrap": budget.bs_fraction_wrap,
        "bs_saturated": budget.bs_saturated, "systole": budget.systole,
        "passed": math.isfinite(budget.total)})
    return 0 if math.isfinite(budget.total) else 1


def cmd_beta(args) -> int:
    ts = [float(x) for x in args.ts.split(",")]
    vals = [beta_norm_check(t, args.p) for t in ts]
    band_ok = max(vals) / max(min(v for v in vals if v > 0), 1e-12) < 10.0
    write_csv(args.out, "beta_norm", "t,value", list(zip(ts, vals)))
    write_summary(args.out, "beta_norm", {
        "config": {**_base_config(args), "ts": ts, "p": args.p},
        "values": vals, "bounded_band": band_ok, "passed": band_ok})
    return 0 if band_ok else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypsurf",
                                description="hyperbolic-surface spectral experiments")
    p.add_argument("--config", help="JSON file overriding subcommand defaults")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", default="runs", help="output directory")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--weight", choices=["paper", "harmonic"], default="paper")

    sp = sub.add_parser("toy1d", help="interval-model variance and Parseval bound")
    common(sp)
    sp.add_argument("--L", type=float, default=100.0)
    sp.add_argument("--window", default="1:2")
    sp.add_argument("--blocks", type=int, default=7)
    sp.set_defaults(func=cmd_toy1d)

    sp = sub.add_parser("geometry-check", help="disc-geometry identity battery")
    common(sp)
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_geometry_check)

    sp = sub.add_parser("spherical", help="spherical function: integral vs series")
    common(sp)
    sp.add_argument("--lams", default="0.5,1,2,3")
    sp.add_argument("--ts", default="1,2,5,10")
    sp.set_defaults(func=cmd_spherical)

    sp = sub.add_parser("selberg", help="transform-triangle consistency")
    common(sp)
    sp.add_argument("--t", type=float, default=2.0)
    sp.add_argument("--n-lams", type=int, default=9, dest="n_lams")
    sp.set_defaults(func=cmd_selberg)

    sp = sub.add_parser("kernel-decay", help="scaled decay of the multiplier kernel")
    common(sp)
    sp.add_argument("--support", default="1:2")
    sp.add_argument("--n-t", type=int, default=200, dest="n_t")
    sp.set_defaults(func=cmd_kernel_decay)

    sp = sub.add_parser("prop33", help="averaged-multiplier positivity certificate")
    common(sp)
    sp.add_argument("--interval", default="0.8660254037844386:1.9364916731037085")
    sp.add_argument("--sigma", type=float, default=0.1)
    sp.add_argument("--T", default="10,20,40")
    sp.add_argument("--lam-spacing", type=float, default=0.02, dest="lam_spacing")
    sp.set_defaults(func=cmd_prop33)

    sp = sub.add_parser("lemma-a1", help="oscillatory-integral uniform bound scan")
    common(sp)
    sp.add_argument("--lams", default="0.5,1,2,3")
    sp.set_defaults(func=cmd_lemma_a1)

    sp = sub.add_parser("orbit", help="orbit ball, injectivity radius, systole")
    common(sp)
    sp.add_argument("--group", choices=["bolza", "cyclic"], default="bolza")
    sp.add_argument("--R", type=float, default=3.1)
    sp.add_argument("--length", type=float, default=1.0)
    sp.add_argument("--word-len", type=int, default=8, dest="word_len")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("bs-stat", help="small-injectivity-radius volume fraction")
    common(sp)
    sp.add_argument("--R", type=float, default=1.7)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--samples", type=int, default=300)
    sp.set_defaults(func=cmd_bs_stat)

    sp = sub.add_parser("hs-check", help="truncated-periodization HS inequality")
    common(sp)
    sp.add_argument("--group", choices=["bolza", "cyclic"], default="bolza")
    sp.add_argument("--r", type=float, default=2.0)
    sp.add_argument("--length", type=float, default=1.0)
    sp.add_argument("--samples", type=int, default=400)
    sp.set_defaults(func=cmd_hs_check)

    sp = sub.add_parser("symbol", help="complete-symbol spot checks")
    common(sp)
    sp.set_defaults(func=cmd_symbol)

    sp = sub.add_parser("variance", help="windowed quantum variance on one surface")
    common(sp)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--h", type=float, default=0.05)
    sp.add_argument("--modes", type=int, default=30)
    sp.add_argument("--window", default="1:4")
    sp.set_defaults(func=cmd_variance)

    sp = sub.add_parser("weyl", help="window eigenvalue count vs predicted density")
    common(sp)
    sp.add_argument("--degree", type=int, default=4)
    sp.add_argument("--h", type=float, default=0.05)
    sp.add_argument("--modes", type=int, default=60)
    sp.add_argument("--window", default="1:4")
    sp.set_defaults(func=cmd_weyl)

    sp = sub.add_parser("tower", help="variance trend across a cover tower")
    common(sp)
    sp.add_argument("--degrees", default="1,2,4")
    sp.add_argument("--h", type=float, default=0.05)
    sp.add_argument("--window", default="1:4")
    sp.add_argument("--modes-base", type=int, default=24, dest="modes_base")
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("fem", help="eigensolver run, optional eigendata export")
    common(sp)
    sp.add_argument("--surface", choices=["torus", "bolza"], default="torus")
    sp.add_argument("--h", type=float, default=0.02)
    sp.add_argument("--modes", type=int, default=10)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--export", default="", help="basename for eigendata files")
    sp.set_defaults(func=cmd_fem)

    sp = sub.add_parser("pipeline", help="term-by-term variance budget")
    common(sp)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--window", default="1:4")
    sp.add_argument("--T", type=float, default=4.0)
    sp.add_argument("--r", type=float, default=3.0)
    sp.add_argument("--s", type=float, default=3.0)
    sp.add_argument("--sigma", type=float, default=0.1)
    sp.add_argument("--nevo-n", type=float, default=2.0, dest="nevo_n")
    sp.add_argument("--samples", type=int, default=100)
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("beta-norm", help="averaging-density norm majorant scan")
    common(sp)
    sp.add_argument("--ts", default="2,5,10,15")
    sp.add_argument("--p", type=float, default=1.5)
    sp.set_defaults(func=cmd_beta)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config) as f:
            overrides = json.load(f)
        for key, val in overrides.items():
            if hasattr(args, key):
                setattr(args, key, val)
    try:
        return args.func(args)
    except HypsurfError as exc:
        record = {"error": type(exc).__name__, "message": str(exc),
                  "subcommand": args.command}
        sys.stderr.write(json.dumps(record) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
