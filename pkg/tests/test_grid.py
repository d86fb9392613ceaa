import math

import numpy as np
import pytest

from rdcert.grid import (Field, Grid1D, constant_field, discrete_norms,
                         discrete_poincare_constant, lp_integral, mode_field,
                         noise_field, poincare_constant, quadrature_weights, zero_field)


class TestGrid1D:
    def test_dirichlet_layout(self):
        g = Grid1D(1.0, 9, "dirichlet")
        assert g.h == pytest.approx(0.1)
        assert g.x[0] == pytest.approx(0.1)
        assert g.x[-1] == pytest.approx(0.9)
        assert np.all(np.diff(g.x) > 0)

    def test_neumann_layout_includes_endpoints(self):
        g = Grid1D(2.0, 11, "neumann")
        assert g.h == pytest.approx(0.2)
        assert g.x[0] == 0.0
        assert g.x[-1] == pytest.approx(2.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            Grid1D(0.0, 10)
        with pytest.raises(ValueError):
            Grid1D(1.0, 2)
        with pytest.raises(ValueError):
            Grid1D(1.0, 10, "periodic")

    def test_weights_sum(self):
        gn = Grid1D(3.0, 31, "neumann")
        assert np.sum(quadrature_weights(gn)) == pytest.approx(3.0)


class TestField:
    def test_shape_coercion_and_validation(self):
        g = Grid1D(1.0, 8)
        f = Field(g, np.zeros(8))
        assert f.values.shape == (1, 8)
        with pytest.raises(ValueError):
            Field(g, np.zeros(7))
        with pytest.raises(ValueError):
            Field(g, np.full(8, np.nan))

    def test_mode_field_neumann_constant(self):
        g = Grid1D(1.0, 16, "neumann")
        f = mode_field(g, 0, 0.7)
        assert np.all(f.values == 0.7)

    def test_noise_field_reproducible(self):
        g = Grid1D(1.0, 32)
        a = noise_field(g, 2, 0.1, seed=4)
        b = noise_field(g, 2, 0.1, seed=4)
        c = noise_field(g, 2, 0.1, seed=5)
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, c.values)
        assert np.max(np.abs(a.values)) <= 0.1


class TestNorms:
    def test_constant_neumann(self):
        g = Grid1D(1.0, 41, "neumann")
        ns = discrete_norms(constant_field(g, 1.0))
        assert ns.l2 == pytest.approx(1.0)
        assert ns.sup == 1.0
        assert ns.h1_semi == pytest.approx(0.0, abs=1e-14)

    def test_zero_field(self):
        ns = discrete_norms(zero_field(Grid1D(2.0, 15), 2))
        assert (ns.l2, ns.sup, ns.h1_semi, ns.h2) == (0.0, 0.0, 0.0, 0.0)

    def test_sine_l2(self):
        # integral of sin^2(pi x) over (0, 1) is 1/2; the uniform-weight sum is
        # exact for this mode, so the tolerance is round-off and not O(h^2)
        g = Grid1D(1.0, 50, "dirichlet")
        ns = discrete_norms(mode_field(g, 1, 1.0))
        assert ns.l2 == pytest.approx(math.sqrt(0.5), abs=1e-13)

    def test_sine_h2_against_analytic(self):
        # eps*sin(pi x/L): h2 -> eps sqrt(L/2) sqrt(1 + (pi/L)^2 + (pi/L)^4)
        g = Grid1D(2.0, 400, "dirichlet")
        ns = discrete_norms(mode_field(g, 1, 0.3))
        assert ns.h2 == pytest.approx(0.92735766352080915, rel=2e-4)

    def test_l2_dominated_by_sup(self):
        rng = np.random.default_rng(0)
        for bc in ("dirichlet", "neumann"):
            g = Grid1D(2.5, 37, bc)
            f = Field(g, rng.normal(size=(2, 37)))
            ns = discrete_norms(f)
            assert ns.l2 <= math.sqrt(g.L) * ns.sup + 1e-12

    def test_lp_integral_matches_l2(self):
        g = Grid1D(1.0, 64, "dirichlet")
        f = mode_field(g, 1, 1.3)
        assert lp_integral(f, 2.0) == pytest.approx(discrete_norms(f).l2 ** 2, rel=1e-13)

    def test_lp_integral_constant(self):
        g = Grid1D(2.0, 21, "neumann")
        assert lp_integral(constant_field(g, 0.5), 3.0) == pytest.approx(0.5 ** 3 * 2.0)


class TestPoincare:
    def test_unit_value_at_l_pi(self):
        assert poincare_constant(Grid1D(math.pi, 10)) == pytest.approx(1.0)

    def test_l_one(self):
        assert poincare_constant(Grid1D(1.0, 10)) == pytest.approx(math.pi ** 2)

    def test_neumann_zero(self):
        assert poincare_constant(Grid1D(5.0, 10, "neumann")) == 0.0
        assert discrete_poincare_constant(Grid1D(5.0, 10, "neumann")) == 0.0

    def test_discrete_value_below_continuum(self):
        for n in (50, 100, 200):
            g = Grid1D(1.0, n)
            assert discrete_poincare_constant(g) < poincare_constant(g)

    def test_discrete_convergence_second_order(self):
        L = 1.0
        errors = []
        hs = []
        for n in (50, 100, 200):
            g = Grid1D(L, n)
            errors.append(abs(discrete_poincare_constant(g) - poincare_constant(g)))
            hs.append(g.h)
        order = np.polyfit(np.log(hs), np.log(errors), 1)[0]
        assert order >= 1.9
        for h, err in zip(hs, errors):
            assert err <= 10.0 * h * h

    def test_discrete_inequality_random_fields(self):
        # c_h ||u||^2 <= ||grad u||^2 for every Dirichlet field
        rng = np.random.default_rng(9)
        g = Grid1D(1.7, 83, "dirichlet")
        ch = discrete_poincare_constant(g)
        for _ in range(50):
            ns = discrete_norms(Field(g, rng.normal(size=(1, 83))))
            assert ch * ns.l2 ** 2 <= ns.h1_semi ** 2 * (1.0 + 1e-12)

    def test_eigenmode_attains_discrete_constant(self):
        g = Grid1D(3.0, 121, "dirichlet")
        ns = discrete_norms(mode_field(g, 1, 1.0))
        ratio = ns.h1_semi ** 2 / ns.l2 ** 2
        assert ratio == pytest.approx(discrete_poincare_constant(g), rel=1e-12)
