"""Gauss-Hermite oracles against the Gaussian closed forms."""

import math

import numpy as np
import pytest

from cvpurify import (
    ConvergenceError,
    DomainError,
    GaussianChi4,
    GaussianTerm2,
    InteractionKind,
    Outcome,
    OUTCOMES,
    ProtocolParams,
    QuadratureSpec,
    WeightedGaussianMix,
    chi_exponent,
    conditional_chi,
    evolve_closed_form,
    initial_chi,
    outcome_probabilities,
    partial_vacuum_integrals,
    quadrature_I,
    quadrature_fidelity,
    teleportation_fidelity,
)

PAR = InteractionKind.PARAMETRIC
BS = InteractionKind.BEAM_SPLITTER


def _state(kind, lam, nth, tau):
    return evolve_closed_form(ProtocolParams(lam, nth, tau), kind)


class TestQuadratureSpec:
    def test_defaults(self):
        assert QuadratureSpec().order == 24

    @pytest.mark.parametrize("order", [7, 129, 0])
    def test_rejects_out_of_range(self, order):
        with pytest.raises(DomainError):
            QuadratureSpec(order=order)


class TestQuadratureI:
    def test_no_integration_is_chi_slice(self):
        state = _state(BS, 0.5, 0.0, 1.0)
        a1, a2 = 0.4 - 0.2j, 0.1 + 0.3j
        expected = math.exp(chi_exponent(state, a1, a2, 0.0, 0.0))
        assert quadrature_I(state, a1, a2, 0, 0) == pytest.approx(expected, abs=1e-15)

    def test_unit_gaussian_integral(self):
        state = initial_chi(ProtocolParams(0.5, 0.0), PAR)
        assert quadrature_I(state, 0.0, 0.0, 1, 1) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_bad_bits(self):
        state = initial_chi(ProtocolParams(0.5, 0.0), PAR)
        with pytest.raises(DomainError):
            quadrature_I(state, 0.0, 0.0, 2, 0)

    def test_degenerate_state_rejected(self):
        bad = GaussianChi4(BS, A=0.0, B=0.0, C=0.0, D=0.0, A12=0.0, B12=1.5)
        with pytest.raises(Exception):
            quadrature_I(bad, 0.0, 0.0, 1, 1)

    @pytest.mark.parametrize(
        "kind,lam,nth,tau",
        [
            (PAR, 0.5, 0.0, 0.4),
            (PAR, 0.3, 0.1, 0.9),
            (BS, 0.5, 0.0, 1.0),
            (BS, 0.7, 0.05, 2.9),
        ],
    )
    def test_matches_closed_forms(self, kind, lam, nth, tau):
        state = _state(kind, lam, nth, tau)
        a1, a2 = 0.3 + 0.1j, -0.2j
        reductions = partial_vacuum_integrals(state)
        for (u, v), term in reductions.items():
            numeric = quadrature_I(state, a1, a2, u, v)
            assert numeric == pytest.approx(term.value(a1, a2), abs=1e-6)

    def test_distinguishes_the_asymmetric_assignment(self):
        # swapping the single-reduction widths must disagree with the integral
        state = _state(PAR, 0.5, 0.0, 0.4)
        a1, a2 = 0.3 + 0.1j, -0.2j
        good = partial_vacuum_integrals(state)[(0, 1)]
        swapped = GaussianTerm2(good.weight, good.ga2, good.ga1, good.gc)
        numeric = quadrature_I(state, a1, a2, 0, 1)
        assert numeric == pytest.approx(good.value(a1, a2), abs=1e-8)
        assert abs(numeric - swapped.value(a1, a2)) > 1e-3


class TestQuadratureFidelity:
    def test_vacuum(self):
        mix = WeightedGaussianMix(Outcome(0, 0), 1.0, (GaussianTerm2(1.0, 0, 0, 0),))
        assert quadrature_fidelity(mix) == pytest.approx(0.5, abs=1e-10)

    def test_unevolved_squeezed_input(self):
        state = initial_chi(ProtocolParams(0.5, 0.0), BS)
        mix = conditional_chi(state, Outcome(0, 0))
        assert quadrature_fidelity(mix) == pytest.approx(0.75, abs=1e-8)

    def test_random_mixtures_match_closed_form(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            terms = []
            for _ in range(rng.integers(1, 5)):
                ga1 = rng.uniform(-0.4, 2.0)
                ga2 = rng.uniform(-0.4, 2.0)
                # keep clear of the convergence boundary 2 + ga1 + ga2 - 2 gc = 0
                gc = rng.uniform(-1.0, 0.25 * (2.0 + ga1 + ga2) - 0.05)
                terms.append(GaussianTerm2(rng.uniform(-2.0, 2.0), ga1, ga2, gc))
            mix = WeightedGaussianMix(Outcome(1, 1), 1.0, tuple(terms))
            assert quadrature_fidelity(mix) == pytest.approx(
                teleportation_fidelity(mix), abs=1e-8
            )

    def test_conditional_fidelities_match(self):
        for kind, tau in ((PAR, 0.6), (BS, 2.9)):
            state = _state(kind, 0.5, 0.0, tau)
            probs = outcome_probabilities(state)
            for outcome in OUTCOMES:
                if probs.of(outcome) < 1e-6:
                    continue
                mix = conditional_chi(state, outcome)
                assert quadrature_fidelity(mix) == pytest.approx(
                    teleportation_fidelity(mix), abs=1e-8
                )

    def test_nonconvergent_mixture_raises(self):
        # nearly divergent term: the integrand decays too slowly for any
        # moderate order, so doubling keeps moving the estimate
        mix = WeightedGaussianMix(
            Outcome(0, 0), 1.0, (GaussianTerm2(1.0, -0.9995, -0.9995, 0.0),)
        )
        with pytest.raises(ConvergenceError):
            quadrature_fidelity(mix, QuadratureSpec(order=8))
