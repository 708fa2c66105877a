import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disklab.blaschke import FiniteBlaschke
from disklab.compose import WeightedCompositionOperator
from disklab.disk import random_disk_points
from disklab.handles import Scaled
from disklab.inner import InnerFunction, inner_divides
from disklab.outer import outer_from_modulus
from disklab.preserver import (
    NOT_PRESERVER,
    RANK_ONE,
    WEIGHTED_COMPOSITION,
    MonomialAction,
    corollary_check,
    phi_a_image,
    rank_one_apply,
    reconstruct,
    relation_check,
    surjectivity_probe,
    synthesize,
    two_index_residual,
)
from disklab.series import TaylorSeries
from disklab.suites import random_inner

Z = random_disk_points(np.random.default_rng(11), 32)
MOB = FiniteBlaschke.mobius


def same_data(a: InnerFunction, b: InnerFunction, ztol=1e-10, mtol=1e-12) -> bool:
    """Canonical data equal: zeros as multisets, atoms, constants."""
    a, b = InnerFunction.lift(a), InnerFunction.lift(b)
    if abs(a.constant - b.constant) > mtol or len(a.zeros) != len(b.zeros) or len(a.atoms) != len(b.atoms):
        return False
    left = list(b.zeros)
    for z in a.zeros:
        j = min(range(len(left)), key=lambda i: abs(left[i] - z))
        if abs(left[j] - z) > ztol:
            return False
        left.pop(j)
    for (s, m), (t, n) in zip(sorted(a.atoms), sorted(b.atoms)):
        if abs(s - t) > mtol or abs(m - n) > mtol:
            return False
    return True


def random_pair(rng):
    phi = random_inner(rng, max_degree=4, max_atoms=2)
    while phi.is_constant:
        phi = random_inner(rng, max_degree=4, max_atoms=2)
    return phi, random_inner(rng, max_degree=4, max_atoms=2)


ROUND_TRIP = [random_pair(np.random.default_rng(1000 + i)) for i in range(50)]


class TestAction:
    def test_requires_three_entries(self):
        with pytest.raises(ValueError, match="K >= 2"):
            MonomialAction((MOB(0.5), MOB(0.5)))
        with pytest.raises(TypeError):
            MonomialAction((MOB(0.5), MOB(0.5), 3))

    def test_synthesize_monomials(self):  # [TRIVIAL]
        act = synthesize(FiniteBlaschke.monomial(1), FiniteBlaschke(1), 3)
        assert act.K == 3
        for k in range(4):
            assert np.abs(act[k](Z) - Z**k).max() < 1e-15

    def test_synthesize_constant_phi(self):  # [TRIVIAL]
        alpha = cmath.exp(0.3j)
        psi = InnerFunction.from_data(1j, (0.2,), ((1.0, 0.4),))
        act = synthesize(FiniteBlaschke(alpha), psi, 4)
        for k in range(5):
            assert np.abs(act[k](Z) - alpha**k * psi(Z)).max() < 1e-14

    def test_synthesize_accumulates(self):
        # [DERIVED] canonical arithmetic
        act = synthesize(MOB(0.5), InnerFunction.atom(0.0, 0.3), 5)
        for k in range(6):
            assert sorted(act[k].zeros, key=abs) == [0.5] * k
            assert act[k].atoms == ((0.0, 0.3),)
            if k < 5:
                assert inner_divides(act[k], act[k + 1])

    def test_synthesize_rejects_small_k(self):
        with pytest.raises(ValueError):
            synthesize(MOB(0.5), FiniteBlaschke(1), 1)


class TestPhiA:
    def test_a_zero(self):  # [TRIVIAL]
        act = synthesize(FiniteBlaschke.monomial(1), FiniteBlaschke(1), 4)
        img = phi_a_image(act, 0, Z)
        assert np.abs(img.value + Z).max() < 1e-15 and img.tail_bound == 0

    def test_mobius_composition(self):
        # [DERIVED] oracle: direct Moebius composition phi_a o phi_b
        b, a = 0.3 - 0.2j, 0.4j
        act = synthesize(MOB(b), FiniteBlaschke(1), 60)
        img = phi_a_image(act, a, Z)
        direct = MOB(a)(MOB(b)(Z))
        assert np.abs(img.value - direct).max() <= img.tail_bound + 1e-14
        assert not img.loose

    def test_loose_tail(self):
        # [DERIVED] 0.9^40 / 0.1
        act = synthesize(FiniteBlaschke.monomial(1), FiniteBlaschke(1), 40)
        img = phi_a_image(act, 0.9, 0.1)
        assert abs(img.tail_bound - 0.9**40 / 0.1) < 1e-15
        assert abs(img.tail_bound - 0.148) < 1e-3 and img.loose

    def test_phi_a_image_is_inner(self):
        act = synthesize(MOB(0.3), InnerFunction.atom(1.0, 0.5), 80)
        t = np.linspace(0, 2 * np.pi, 256, endpoint=False)
        # away from the atom, T(phi_a) has unimodular boundary trace
        t = t[np.abs(np.angle(np.exp(1j * (t - 1.0)))) > 0.3]
        img = phi_a_image(act, 0.2 + 0.1j, (1 - 1e-9) * np.exp(1j * t))
        assert np.abs(np.abs(img.value) - 1).max() < 1e-6


class TestRelation:
    @pytest.mark.parametrize("i", range(0, 50, 7))
    def test_true_actions(self, i):
        phi, psi = ROUND_TRIP[i]
        assert relation_check(synthesize(phi, psi, 6)) < 1e-3

    def test_perturbation_detected(self):
        # [DERIVED] relation error grows linearly with the perturbation
        act = synthesize(MOB(0.5), FiniteBlaschke(1), 6)
        bumped = act.replace(2, _Plus(act[2], 0.001))
        assert relation_check(bumped) > 5e-4

    def test_minimal_action(self):  # [TRIVIAL]
        act = synthesize(MOB(0.5), FiniteBlaschke(1), 2)
        assert relation_check(act) < 1e-12

    def test_unstable_traces(self):
        act = synthesize(MOB(0.5), FiniteBlaschke(1), 3).replace(1, lambda z: 0.5 * z)
        with pytest.raises(ValueError, match="increase r or the grid"):
            relation_check(act)

    @settings(max_examples=10)
    @given(st.integers(0, 49))
    def test_two_index_within_four_delta(self, i):
        phi, psi = ROUND_TRIP[i]
        act = synthesize(phi, psi, 5)
        delta = relation_check(act)
        assert two_index_residual(act) <= 4 * delta + 1e-12

    def test_two_index_on_perturbed(self):
        act = synthesize(MOB(0.5), MOB(-0.2j), 4)
        act = act.replace(3, Scaled(cmath.exp(1e-4j), act[3]))
        delta = relation_check(act)
        assert delta > 1e-5
        assert two_index_residual(act) <= 4 * delta + 1e-12


class _Plus:
    """``h + c z`` with exact boundary values."""

    def __init__(self, h, c):
        self.h, self.c = h, c

    def __call__(self, z):
        return self.h(z) + self.c * np.asarray(z)

    def boundary(self, t):
        return self.h.boundary(t) + self.c * np.exp(1j * np.asarray(t))


class TestReconstruct:
    def test_example_round_trip(self):
        phi, psi = MOB(0.5), InnerFunction.atom(0.0, 0.3)
        rep = reconstruct(synthesize(phi, psi, 6))
        assert rep.classification == WEIGHTED_COMPOSITION and rep.path == "canonical"
        assert same_data(rep.phi, phi) and same_data(rep.psi, psi)
        assert rep.reconstruction_residual < 1e-9

    @pytest.mark.parametrize("i", range(50))
    def test_round_trip(self, i):
        phi, psi = ROUND_TRIP[i]
        rep = reconstruct(synthesize(phi, psi, 6))
        assert rep.classification == WEIGHTED_COMPOSITION, rep.message
        assert same_data(rep.phi, phi) and same_data(rep.psi, psi)

    @pytest.mark.parametrize("i", range(50))
    def test_detection(self, i):
        phi, psi = ROUND_TRIP[i]
        act = synthesize(phi, psi, 6)
        k = i % 7
        rep = reconstruct(act.replace(k, Scaled(1 + 1e-3, act[k])))
        assert rep.classification == NOT_PRESERVER and rep.failed_stage == "innerness"

    def test_scaled_entry_message(self):
        act = synthesize(MOB(0.5), FiniteBlaschke(1), 6)
        rep = reconstruct(act.replace(3, Scaled(1.01, act[3])))
        assert rep.failed_stage == "innerness" and "h_3" in rep.message
        rep = reconstruct(act.replace(0, Scaled(1.01, act[0])))
        assert "T(1)" in rep.message

    def test_zero_h0(self):
        act = MonomialAction((lambda z: 0 * z, MOB(0.5), MOB(0.5)))
        rep = reconstruct(act)
        assert rep.classification == NOT_PRESERVER and "T(1)" in rep.message

    def test_rank_one(self):
        # [DERIVED] round trip of the rank-one shape f(alpha) psi
        alpha = cmath.exp(1j * math.pi / 4)
        rep = reconstruct(synthesize(FiniteBlaschke(alpha), FiniteBlaschke.monomial(1), 6))
        assert rep.classification == RANK_ONE
        assert abs(rep.alpha - alpha) < 1e-12

    @pytest.mark.parametrize("i", range(0, 50, 5))
    def test_rank_one_random(self, i):
        rng = np.random.default_rng(i)
        alpha = complex(np.exp(1j * rng.uniform(0, 2 * np.pi)))
        psi = random_inner(rng)
        rep = reconstruct(synthesize(FiniteBlaschke(alpha), psi, 4))
        assert rep.classification == RANK_ONE and abs(rep.alpha - alpha) < 1e-12

    def test_numeric_path(self):
        # entries given as plain callables with boundary hooks
        phi, psi = MOB(0.3j), FiniteBlaschke(1, (0.2,))
        act = synthesize(phi, psi, 4)
        plain = MonomialAction(tuple(_Plus(h, 0.0) for h in act.entries))
        rep = reconstruct(plain)
        assert rep.classification == WEIGHTED_COMPOSITION and rep.path == "numeric"
        assert rep.reconstruction_residual < 1e-10
        assert np.abs(rep.phi(Z[:8]) - phi(Z[:8])).max() < 1e-10

    def test_quotient_stage(self):
        # h_1 is inner but not divisible by h_0
        act = MonomialAction((MOB(0.5), MOB(0.2), MOB(0.2)))
        rep = reconstruct(act)
        assert rep.classification == NOT_PRESERVER
        assert rep.failed_stage in ("relation", "quotient")

    def test_operator(self):
        phi, psi = MOB(0.5), FiniteBlaschke(1, (0.1j,))
        rep = reconstruct(synthesize(phi, psi, 4))
        T = rep.operator()
        f = TaylorSeries([1, 2, 3])
        assert np.abs(T(f)(Z) - psi(Z) * f(phi(Z))).max() < 1e-12

    def test_report_dict(self):
        rep = reconstruct(synthesize(MOB(0.5), FiniteBlaschke(1), 3))
        d = rep.to_dict()
        assert d["classification"] == WEIGHTED_COMPOSITION
        assert d["phi"]["type"] in ("inner", "blaschke")
        assert len(d["innerness_residuals"]) == 4


class TestRankOneApply:
    def test_examples(self):
        psi = FiniteBlaschke(1, (0.3,))
        assert np.abs(rank_one_apply(1, psi, TaylorSeries([1]))(Z) - psi(Z)).max() < 1e-15
        assert np.abs(rank_one_apply(1j, psi, TaylorSeries([0, 1]))(Z) - 1j * psi(Z)).max() < 1e-15
        assert np.abs(rank_one_apply(1, psi, TaylorSeries([1, 1, 1]))(Z) - 3 * psi(Z)).max() < 1e-15

    @given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=1,
                    max_size=6), st.floats(0, 2 * math.pi))
    def test_matches_degenerate_operator(self, c, t):
        alpha = complex(np.exp(1j * t))
        psi = InnerFunction.from_data(1, (0.2 - 0.1j,), ((0.5, 0.7),))
        f = TaylorSeries(c)
        T = WeightedCompositionOperator(psi, FiniteBlaschke(alpha))
        a = rank_one_apply(alpha, psi, f)(Z)
        b = T(f)(Z)
        assert np.abs(a - b).max() < 1e-12 * (1 + np.abs(b).max())


class TestCorollary:
    def test_forward_blaschke(self):
        T = WeightedCompositionOperator(MOB(0.5), FiniteBlaschke(1, (0.1, -0.3j)))
        assert corollary_check(T, MOB(0.2 + 0.2j)).residual < 1e-6

    def test_forward_not_inner(self):
        # [DERIVED] |(2+z)/3| ranges over [1/3, 1]
        T = WeightedCompositionOperator(FiniteBlaschke(1), FiniteBlaschke.monomial(2))
        rep = corollary_check(T, TaylorSeries([2 / 3, 1 / 3]))
        assert rep.residual > 0.3 and abs(rep.residual - 2 / 3) < 1e-6

    def test_backward(self):
        psi = InnerFunction.from_data(1, (0.4,), ((2.0, 0.5),))
        T = WeightedCompositionOperator(psi, MOB(0.3))
        rep = corollary_check(T, InnerFunction.atom(1.0, 0.8), "backward")
        assert rep.residual < 1e-3 and rep.image_residual < 1e-3
        rep = corollary_check(T, TaylorSeries([0.5, 0.5]), "backward")
        assert rep.residual > 0.3

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            corollary_check(WeightedCompositionOperator(FiniteBlaschke(1), MOB(0.5)), MOB(0.1), "sideways")


class TestSurjectivity:
    def test_outer_witness(self):
        # [DERIVED] f = (2+z) o phi_{1/2} maps to the outer 2+z
        theta = cmath.exp(0.7j)
        T = WeightedCompositionOperator(FiniteBlaschke(theta), MOB(0.5))
        f = lambda w: 2 + MOB(0.5)(w)  # noqa: E731
        rep = surjectivity_probe(T, f, (0.1, 0.2))
        assert rep.psi_deviation < 1e-10
        assert rep.outer_image and rep.separated and rep.automorphism

    def test_no_outer_image(self):
        T = WeightedCompositionOperator(FiniteBlaschke.monomial(1), FiniteBlaschke.monomial(1))
        rep = surjectivity_probe(T, TaylorSeries([2, 1]))
        assert rep.outer_image is False and rep.inner_part_deviation > 0.1
        assert rep.psi_deviation > 0.1

    def test_non_separation(self):  # [TRIVIAL] z^2 is even
        T = WeightedCompositionOperator(FiniteBlaschke(1), FiniteBlaschke.monomial(2))
        rep = surjectivity_probe(T, point_pair=(0.3 + 0.1j, -0.3 - 0.1j))
        assert rep.separated is False and rep.automorphism is False

    def test_outer_modulus_witness(self):
        g = outer_from_modulus(np.abs(3 + np.exp(1j * np.linspace(0, 2 * np.pi, 512, endpoint=False))))
        T = WeightedCompositionOperator(FiniteBlaschke(1), FiniteBlaschke.monomial(1))
        rep = surjectivity_probe(T, g)
        assert rep.outer_image
