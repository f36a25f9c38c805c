import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

import hypsurf.observables as O
from hypsurf.errors import StencilOutOfDomain
from hypsurf.fuchsian import bolza_group
from hypsurf.transforms import PlancherelWeight, bump_multiplier


@pytest.fixture(scope="module")
def bolza():
    return bolza_group()


def radial_bump(S):
    def psi(t):
        t = np.asarray(t, dtype=float)
        x = t / S
        out = np.zeros_like(t)
        inside = x < 1.0
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
        return out
    return psi


class TestCompleteSymbol:
    def test_multiplication_factors_out(self):
        a = lambda z: math.sin(z.real) + 2.0
        A = O.multiplication_observable(a, sup_bound=3.0)
        for z in [0.1 + 0.2j, -0.4j]:
            for lam in [0.5, 2.0]:
                s = O.complete_symbol(A, z, lam, cmath.exp(0.7j))
                assert s == pytest.approx(a(z), abs=1e-12)

    def test_laplacian_symbol(self):
        A = O.laplacian_observable()
        for z in [0.0 + 0j, 0.3 + 0.2j, -0.5 + 0.1j, 0.6j]:
            for lam in [0.5, 1.5, 3.0]:
                s = O.complete_symbol(A, z, lam, cmath.exp(1.1j))
                assert abs(s - (0.25 + lam * lam)) < 1e-5

    def test_radial_kernel_symbol_vs_direct_quadrature(self):
        S = 0.8
        psi = radial_bump(S)
        A = O.radial_kernel_observable(psi, S)
        z, lam, b = 0.2 + 0.1j, 1.3, cmath.exp(0.4j)
        got = O.complete_symbol(A, z, lam, b)
        # independent oracle: geodesic polar quadrature at doubled resolution
        from hypsurf.geometry import DiscPoint, GroupElement, mobius_apply_complex
        from hypsurf.quadrature import gauss_legendre
        trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
        t, wt = gauss_legendre(0.0, S, 160)
        bus_z = math.log1p(-abs(z) ** 2) - 2.0 * math.log(abs(z - b))
        acc = 0.0 + 0.0j
        n_ang = 512
        for i, tt in enumerate(t):
            for ang in 2 * np.pi * np.arange(n_ang) / n_ang:
                w = mobius_apply_complex(trans, math.tanh(tt / 2.0) * cmath.exp(1j * ang))
                bus_w = math.log1p(-abs(w) ** 2) - 2.0 * math.log(abs(w - b))
                acc += (wt[i] * math.sinh(tt) * (2 * np.pi / n_ang)
                        * float(psi(np.array([tt]))[0])
                        * cmath.exp((0.5 + 1j * lam) * (bus_w - bus_z)))
        assert abs(got - acc) < 1e-6

    def test_stencil_guard(self):
        A = O.laplacian_observable()
        with pytest.raises((StencilOutOfDomain, ValueError)):
            O.complete_symbol(A, 0.9999995 + 0j, 1.0, 1j)


class TestAngularDecomposition:
    def test_rotation_invariant_symbol(self):
        rho = bump_multiplier(1.0, 2.0)
        sym = O.Symbol(lambda z, lam, b: complex(rho(lam)), (1.0, 2.0))
        parts = O.angular_decompose(sym, 0.3 + 0.1j, 1.5)
        assert parts.residual_mean < 1e-9
        for th in [0.0, 1.0, 2.0]:
            assert abs(parts.zero_mean_part(th)) < 1e-12

    def test_pure_first_mode(self):
        # a = f(z) cos(theta(b; z)): zero rotational mean at every z
        def sym_eval(z, lam, b):
            # recover the rotation angle of b at z
            from hypsurf.geometry import DiscPoint, GroupElement, mobius_apply_complex
            trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
            u = mobius_apply_complex(trans.inverse(), b)
            return (1.0 + abs(z) ** 2) * cmath.cos(cmath.phase(u))

        sym = O.Symbol(sym_eval)
        parts = O.angular_decompose(sym, 0.25 - 0.35j, 1.0)
        assert abs(parts.mean) < 1e-10
        assert O.condition_a1_holds(sym, 0.25 - 0.35j, 1.0)

    def test_multiplication_flagged_nonzero(self):
        A = O.multiplication_observable(lambda z: 1.0 + z.real ** 2, 2.0)
        sym = O.symbol_of(A)
        assert not O.condition_a1_holds(sym, 0.2 + 0.1j, 1.0)


class TestThetaNorm:
    def test_rotation_invariant_gives_zero(self, bolza):
        sym = O.Symbol(lambda z, lam, b: 1.0 + 0j)
        val = O.theta_second_derivative_norm(sym, (0.9, 1.9), bolza, n_mc=20,
                                             seed=1, n_lam=3)
        assert val < 1e-8

    def test_cos_mode_half(self, bolza):
        def sym_eval(z, lam, b):
            from hypsurf.geometry import DiscPoint, GroupElement, mobius_apply_complex
            trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
            u = mobius_apply_complex(trans.inverse(), b)
            return cmath.cos(cmath.phase(u))

        sym = O.Symbol(sym_eval)
        val = O.theta_second_derivative_norm(sym, (1.0, 1.5), bolza, n_mc=300,
                                             seed=2, n_lam=2)
        assert val == pytest.approx(0.5, abs=0.06)

    def test_homogeneity(self, bolza):
        def mk(amp):
            def sym_eval(z, lam, b):
                from hypsurf.geometry import DiscPoint, GroupElement, mobius_apply_complex
                trans = GroupElement.translation_to(DiscPoint(z.real, z.imag))
                u = mobius_apply_complex(trans.inverse(), b)
                return amp * cmath.cos(cmath.phase(u))
            return O.Symbol(sym_eval)

        v1 = O.theta_second_derivative_norm(mk(1.0), (1.0, 1.2), bolza, 60, 3, n_lam=2)
        v2 = O.theta_second_derivative_norm(mk(2.0), (1.0, 1.2), bolza, 60, 3, n_lam=2)
        assert v2 == pytest.approx(4.0 * v1, rel=1e-6)


class TestSandwich:
    def test_exact_zero_beyond_propagation(self):
        A = O.multiplication_observable(lambda z: 1.0, 1.0)
        t = 0.7
        z, w = -0.55 + 0j, 0.55 + 0j   # distance ~ 2.5 > 2 t
        assert O.smooth_sandwich_kernel(A, t, 0.1, z, w) == 0.0

    def test_radial_symmetry_for_unit_multiplication(self):
        from hypsurf.geometry import GroupElement, mobius_apply_complex
        A = O.multiplication_observable(lambda z: 1.0, 1.0)
        t, sigma = 0.8, 0.15
        z1, w1 = 0.0 + 0j, 0.15 + 0j
        g = GroupElement.translation(0.8, 0.5) @ GroupElement.rotation(2.1)
        z2 = mobius_apply_complex(g, z1)
        w2 = mobius_apply_complex(g, w1)
        k1 = O.smooth_sandwich_kernel(A, t, sigma, z1, w1, n_rad=160, n_ang=320)
        k2 = O.smooth_sandwich_kernel(A, t, sigma, z2, w2, n_rad=160, n_ang=320)
        assert abs(k1 - k2) < 1e-6 * max(1.0, abs(k1))

    def test_sup_bound_dominates_measured(self):
        t, sigma = 0.9, 0.2
        for A in [O.multiplication_observable(lambda z: math.cos(3 * z.real), 1.0),
                  O.laplacian_observable()]:
            bound = O.sandwich_sup_bound(A, t, sigma)
            measured = 0.0
            for d in [0.0, 0.3, 0.8, 1.4]:
                z, w = 0.0 + 0j, math.tanh(d / 2.0) + 0j
                measured = max(measured, abs(O.smooth_sandwich_kernel(
                    A, t, sigma, z, w, n_rad=24, n_ang=48)))
            assert measured <= bound * (1.0 + 1e-9)


class TestLocality:
    def test_panel_ratios_below_declared(self):
        panel = []
        for i in range(1, 5):
            panel.append(lambda z, i=i: math.sin(i * z.real) * math.cos(i * z.imag))
            panel.append(lambda z, i=i: (z.real ** i + z.imag ** i))
            panel.append(lambda z, i=i: math.exp(-i * abs(z) ** 2))
            panel.append(lambda z, i=i: math.cos(i * (z.real + 0.5 * z.imag)))
            panel.append(lambda z, i=i: 1.0 / (1.0 + i * abs(z) ** 2))
        assert len(panel) == 20
        mult = O.multiplication_observable(lambda z: 0.5 * math.sin(z.real), 0.5)
        lap = O.laplacian_observable()
        for u in panel:
            for z in [0.1 + 0.1j, -0.3 + 0.2j]:
                assert O.locality_ratio(mult, u, z) <= 0.5 * (1 + 1e-9)
                assert O.locality_ratio(lap, u, z) <= 1.0 * (1 + 1e-6)


class TestLimitTerm:
    def test_constant_multiplication(self, bolza):
        A = O.multiplication_observable(lambda z: 1.0, 1.0)
        lt = O.limit_term(A, 1.0, bolza, n_mc=200, seed=1)
        assert lt.value == pytest.approx(1.0, abs=1e-12)
        assert lt.stderr == 0.0

    def test_mean_of_density(self, bolza):
        A = O.multiplication_observable(lambda z: z.real, 1.0)
        lt = O.limit_term(A, 1.0, bolza, n_mc=4000, seed=2)
        # odd density on a symmetric domain: mean ~ 0
        assert abs(lt.value) < 4.0 * max(lt.stderr, 1e-6)

    def test_radial_kernel_selberg_pairing(self, bolza):
        S = 0.9
        psi = radial_bump(S)
        A = O.radial_kernel_observable(psi, S)
        lam = 1.2
        lt = O.limit_term(A, lam, bolza)
        from hypsurf.transforms import _phi_md_grid
        val, _ = quad(lambda t: float(psi(np.array([t]))[0])
                      * float(_phi_md_grid(np.array([lam]), t)[0]) * math.sinh(t),
                      0.0, S, limit=200)
        assert lt.value == pytest.approx(2.0 * math.pi * val, abs=1e-6)

    def test_radial_vs_general_mc_route(self, bolza):
        S = 0.7
        psi = radial_bump(S)
        A_rad = O.radial_kernel_observable(psi, S)
        A_gen = O.finite_range_observable(
            lambda z, w: complex(psi(np.array([O._dist_c(z, w)]))[0]), S,
            A_rad.locality.C)
        lam = 1.0
        lt_r = O.limit_term(A_rad, lam, bolza)
        lt_g = O.limit_term(A_gen, lam, bolza, n_mc=40, seed=3)
        assert lt_g.value == pytest.approx(lt_r.value, abs=3e-3 + 4 * lt_g.stderr)

    def test_differential_rejected(self, bolza):
        with pytest.raises(ValueError):
            O.limit_term(O.laplacian_observable(), 1.0, bolza)


class TestJsonPresets:
    def test_multiplication_preset(self):
        A = O.observable_from_json(
            '{"variant": "multiplication", "parameters": {"preset": "cos_re",'
            ' "k": 2.0}, "declared_constants": {"C": 1.0, "S": 0.0, "k": 0}}')
        assert A.variant == "multiplication"
        assert A.a(0.5 + 0j) == pytest.approx(math.cos(1.0))
        assert A.locality.C == 1.0

    def test_finite_range_preset(self):
        A = O.observable_from_json(
            '{"variant": "finite_range", "parameters": {"preset": "radial_bump",'
            ' "S": 0.6}}')
        assert A.locality.S == 0.6
        assert A.radial_profile is not None

    def test_differential_preset(self):
        A = O.observable_from_json('{"variant": "differential"}')
        s = O.complete_symbol(A, 0.1 + 0.1j, 1.0, 1j)
        assert abs(s - 1.25) < 1e-5

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            O.observable_from_json('{"variant": "quantization"}')


class TestErrorBudget:
    def test_zero_multiplier(self, bolza):
        rho = bump_multiplier(1.0, 2.0, amplitude=0.0)
        A = O.radial_kernel_observable(radial_bump(0.8), 0.8)
        b = O.error_ops_bounds(A, rho, PlancherelWeight.paper(), r=3.0,
                               surface=bolza, n_mc=30, seed=1)
        assert b.E_bound == pytest.approx(0.0, abs=1e-15)
        assert b.R_hs_bound == pytest.approx(0.0, abs=1e-15)

    def test_tail_decay_rate(self, bolza):
        rho = bump_multiplier(1.0, 2.0)
        w = PlancherelWeight.paper()
        lam_grid = [1.2, 1.5]
        e1 = O.multiplier_tail_bound(rho, w, 4.0, lam_grid)
        e2 = O.multiplier_tail_bound(rho, w, 8.0, lam_grid)
        ratio = e1 / e2
        predicted = ((1.0 + 8.0) / (1.0 + 4.0)) ** 2
        assert ratio > predicted / 4.0   # at least quadratic-ish decay

    def test_r_hs_budget_shrinks(self, bolza):
        rho = bump_multiplier(1.0, 2.0)
        A = O.radial_kernel_observable(radial_bump(0.8), 0.8)
        w = PlancherelWeight.paper()
        b1 = O.error_ops_bounds(A, rho, w, r=3.0, surface=bolza, n_mc=30, seed=5)
        b2 = O.error_ops_bounds(A, rho, w, r=6.0, surface=bolza, n_mc=30, seed=5)
        # with the same InjRad statistics the (D/r)^2 prefactor drives it down
        assert b2.E_bound < b1.E_bound
        assert b2.R_hs_bound < b1.R_hs_bound * (math.exp(3.0) + 1)  # sanity scale
