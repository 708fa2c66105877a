import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disklab.blaschke import FiniteBlaschke, blaschke_taylor
from disklab.disk import BoundaryGrid, RadialLadder
from disklab.inner import InnerFunction
from disklab.spaces import (
    NumericalWarning,
    SpaceNorm,
    axiom_x3_check,
    bergman_a2_norm,
    blaschke_distance_probe,
    dirichlet_area_energy,
    dirichlet_energy,
    dirichlet_norm,
    h2_norm_coeff,
    hp_norm,
)
from disklab.series import TaylorSeries

coeff = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)
poly = st.lists(coeff, min_size=1, max_size=12).map(TaylorSeries)
VARIANTS = [SpaceNorm.hardy(2), SpaceNorm.hardy(1), SpaceNorm.hardy(3), SpaceNorm.dirichlet(),
            SpaceNorm.bergman(2), SpaceNorm.bergman(3)]


class TestHp:
    def test_monomial_rung_values(self):  # [TRIVIAL] r^n on each rung, 1 on the boundary
        f = TaylorSeries.monomial(5)
        lad = RadialLadder((0.5, 0.9))
        assert abs(hp_norm(f, 2, lad, include_boundary=False) - 0.9**5) < 1e-14
        assert abs(hp_norm(f, 2, lad) - 1) < 1e-14

    def test_constant(self):  # [TRIVIAL]
        assert abs(hp_norm(TaylorSeries([3 - 4j]), 3) - 5) < 1e-13

    def test_one_plus_z(self):
        # [DERIVED] coefficient oracle: sum |a_n|^2 = 2
        assert abs(hp_norm(TaylorSeries([1, 1]), 2) - math.sqrt(2)) < 1e-8

    @given(poly)
    def test_matches_parseval(self, f):
        # [DERIVED] quadrature vs coefficient form
        assert abs(hp_norm(f, 2) - h2_norm_coeff(f)) < 1e-6 * (1 + h2_norm_coeff(f))

    def test_rejects_small_p(self):
        with pytest.raises(ValueError):
            hp_norm(TaylorSeries([1]), 0.5)

    def test_coarse_grid_warns(self):
        # on an 8-point grid 1 - z^8 aliases to the constant 1 - r^8, whose means decrease
        f = TaylorSeries([1] + [0] * 7 + [-1])
        with pytest.warns(NumericalWarning):
            hp_norm(f, 2, RadialLadder((0.5, 0.9)), BoundaryGrid(8), include_boundary=False)

    def test_fine_grid_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            hp_norm(TaylorSeries([1, 2, 3]), 2)


class TestCoefficientForms:
    def test_h2(self):  # [TRIVIAL]
        assert h2_norm_coeff(TaylorSeries.monomial(7)) == 1
        assert abs(h2_norm_coeff(TaylorSeries([1, 1])) - math.sqrt(2)) < 1e-15

    @pytest.mark.parametrize("m", [1, 2, 9])
    def test_dirichlet_monomial(self, m):  # [TRIVIAL]
        assert dirichlet_energy(TaylorSeries.monomial(m)) == m
        assert abs(dirichlet_norm(TaylorSeries.monomial(m)) - math.sqrt(1 + m)) < 1e-15

    def test_dirichlet_constants(self):  # [TRIVIAL]
        assert dirichlet_energy(TaylorSeries([4])) == 0
        assert dirichlet_norm(TaylorSeries([1])) == 1
        assert abs(dirichlet_norm(TaylorSeries([1, 1])) - math.sqrt(3)) < 1e-15

    def test_dirichlet_of_mobius(self):
        # [PAPER] D(f o phi) = n D(f); f = z, phi of degree 1
        f = blaschke_taylor(FiniteBlaschke.mobius(0.5), 200)
        assert abs(dirichlet_energy(f) - 1) < 1e-6

    def test_dirichlet_degree_two(self):
        B = FiniteBlaschke(1, (0.3, -0.4j))
        assert abs(dirichlet_energy(blaschke_taylor(B, 400)) - 2) < 1e-6

    def test_bergman(self):
        # [DERIVED] sum |a_n|^2/(n+1)
        assert abs(bergman_a2_norm(TaylorSeries([1, 1])) - math.sqrt(1.5)) < 1e-15

    @settings(max_examples=20)
    @given(st.lists(coeff, min_size=2, max_size=31))
    def test_area_integral(self, c):
        # [DERIVED] polar quadrature of (1/pi) int |f'|^2 dA
        f = TaylorSeries(c)
        e = dirichlet_energy(f)
        assert abs(dirichlet_area_energy(f) - e) < 1e-5 * max(1.0, e)

    def test_area_integral_degree_30(self, rng):
        c = rng.normal(size=31) + 1j * rng.normal(size=31)
        f = TaylorSeries(c)
        assert abs(dirichlet_area_energy(f) - dirichlet_energy(f)) < 1e-5 * dirichlet_energy(f)


class TestSpaceNorm:
    @pytest.mark.parametrize("norm", VARIANTS, ids=lambda n: n.label)
    @given(f=poly, g=poly, c=coeff)
    @settings(max_examples=15)
    def test_axioms(self, norm, f, g, c):
        nf, ng = norm.norm(f), norm.norm(g)
        assert abs(norm.norm(TaylorSeries(c * f.coeffs)) - abs(c) * nf) <= 1e-10 * (1 + abs(c) * nf)
        assert norm.norm(f + g) <= nf + ng + 1e-10 * (1 + nf + ng)

    def test_hp_quadrature_exact(self):
        # [DERIVED] ||1+z||_4^4 = mean |1+e^{it}|^4 = 6
        assert abs(SpaceNorm.hardy(4).norm(TaylorSeries([1, 1])) - 6**0.25) < 1e-13

    def test_bergman_p2_quadrature(self):
        f = TaylorSeries([1, 2j, -0.5, 0.25])
        quad = SpaceNorm("BergmanAp", 2.0000001).norm(f)
        assert abs(quad - bergman_a2_norm(f)) < 1e-6

    def test_parse(self):
        assert SpaceNorm.parse("h2") == SpaceNorm.hardy(2)
        assert SpaceNorm.parse("hp:4") == SpaceNorm.hardy(4)
        assert SpaceNorm.parse("Dirichlet") == SpaceNorm.dirichlet()
        assert SpaceNorm.parse("a2") == SpaceNorm.bergman(2)
        assert SpaceNorm.parse("ap:3") == SpaceNorm.bergman(3)
        with pytest.raises(ValueError):
            SpaceNorm.parse("sobolev")
        with pytest.raises(ValueError):
            SpaceNorm.hardy(0.5)


class TestX3:
    def test_hardy_constant(self):  # [TRIVIAL]
        seq = axiom_x3_check(SpaceNorm.hardy(2), 50)
        assert np.abs(seq - 1).max() < 1e-15
        seq = axiom_x3_check(SpaceNorm.hardy(3), 20)
        assert np.abs(seq - 1).max() < 1e-12

    def test_dirichlet_closed_form(self):
        # [DERIVED] (1+n)^{1/(2n)}
        seq = axiom_x3_check(SpaceNorm.dirichlet(), 200)
        n = np.arange(1, 201)
        assert np.abs(seq - (1 + n) ** (1 / (2 * n))).max() < 1e-14
        assert abs(seq[99] - 101 ** (1 / 200)) < 1e-12
        assert abs(seq[99] - 1.0234) < 1e-4
        assert np.all(np.diff(seq) < 0)

    def test_bergman_closed_form(self):
        seq = axiom_x3_check(SpaceNorm.bergman(2), 100)
        n = np.arange(1, 101)
        assert np.abs(seq - (n + 1) ** (-1 / (2 * n))).max() < 1e-14

    @pytest.mark.parametrize("norm", [SpaceNorm.hardy(2), SpaceNorm.dirichlet(), SpaceNorm.bergman(2)],
                             ids=lambda n: n.label)
    def test_final_half_bound(self, norm):
        seq = axiom_x3_check(norm, 200)
        assert seq[99:].max() <= 1.05

    def test_rejects_short(self):
        with pytest.raises(ValueError):
            axiom_x3_check(SpaceNorm.hardy(), 1)


class TestDistance:
    def test_identity_vs_atom(self):
        # [DERIVED] h -> 0 radially at the atom while |B| -> 1
        assert blaschke_distance_probe(FiniteBlaschke.monomial(1), InnerFunction.atom(0, 1)) >= 0.99

    def test_constant_vs_atom(self):
        assert blaschke_distance_probe(FiniteBlaschke(1), InnerFunction.atom(0, 2)) >= 0.99

    def test_degenerate(self):  # [TRIVIAL]
        B = FiniteBlaschke(1j, (0.3, -0.1j))
        assert blaschke_distance_probe(B, B) == 0

    def test_extra_zero(self):
        B = FiniteBlaschke(1, (0.5,))
        h = FiniteBlaschke(1, (0.5, 0.2))
        assert blaschke_distance_probe(B, h) >= 0.99
