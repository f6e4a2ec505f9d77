"""Coefficient evolution: closed forms, RK4 cross-check, exponent evaluation."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cvpurify import (
    DomainError,
    GaussianChi4,
    InteractionKind,
    ProtocolParams,
    chi_exponent,
    evolve_closed_form,
    evolve_ode,
    initial_chi,
)

PAR = InteractionKind.PARAMETRIC
BS = InteractionKind.BEAM_SPLITTER

lam_st = st.floats(min_value=0.0, max_value=0.9)
nth_st = st.floats(min_value=0.0, max_value=0.5)
tau_st = st.floats(min_value=0.0, max_value=3.0)


class TestInitialChi:
    def test_vacuum_input(self):
        state = initial_chi(ProtocolParams(0.0, 0.0), PAR)
        assert state.coefficients() == (0.0,) * 6

    def test_squeezed_input(self):
        state = initial_chi(ProtocolParams(0.5, 0.0), BS)
        assert state.A == pytest.approx(1.0 / 3.0, abs=1e-15)
        assert state.A12 == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert (state.B, state.C, state.D, state.B12) == (0.0,) * 4

    def test_thermal_term_is_additive(self):
        state = initial_chi(ProtocolParams(0.5, 0.05), PAR)
        assert state.A == pytest.approx(1.0 / 3.0 + 0.05, abs=1e-15)
        assert state.A12 == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_kind_is_copied_through(self):
        assert initial_chi(ProtocolParams(0.2), PAR).kind is PAR
        assert initial_chi(ProtocolParams(0.2), BS).kind is BS

    @pytest.mark.parametrize("lam", [1.0, 1.2, -0.1])
    def test_rejects_bad_squeezing(self, lam):
        with pytest.raises(DomainError):
            ProtocolParams(lam)

    def test_rejects_negative_thermal(self):
        with pytest.raises(DomainError):
            ProtocolParams(0.5, -0.01)


class TestClosedForm:
    @pytest.mark.parametrize("kind", [PAR, BS])
    def test_zero_time_reproduces_initial(self, kind):
        params = ProtocolParams(0.5, 0.02, 0.0)
        closed = evolve_closed_form(params, kind)
        init = initial_chi(params, kind)
        for a, b in zip(closed.coefficients(), init.coefficients()):
            assert a == pytest.approx(b, abs=1e-14)

    def test_beam_splitter_full_swap(self):
        state = evolve_closed_form(ProtocolParams(0.5, 0.0, math.pi / 2), BS)
        assert state.A == pytest.approx(0.0, abs=1e-15)
        assert state.B == pytest.approx(1.0 / 3.0, abs=1e-15)
        assert state.D == pytest.approx(0.0, abs=1e-15)
        assert state.A12 == pytest.approx(0.0, abs=1e-15)
        assert state.B12 == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert state.C == pytest.approx(0.0, abs=1e-15)

    def test_parametric_cap(self):
        with pytest.raises(DomainError):
            evolve_closed_form(ProtocolParams(0.5, 0.0, 5.5), PAR)
        evolve_closed_form(ProtocolParams(0.5, 0.0, 5.5), PAR, tau_cap=6.0)

    def test_beam_splitter_has_no_cap(self):
        evolve_closed_form(ProtocolParams(0.5, 0.0, 20.0), BS)

    @given(lam=lam_st, nth=nth_st, tau=tau_st)
    def test_parametric_conserved_differences(self, lam, nth, tau):
        init = initial_chi(ProtocolParams(lam, nth), PAR)
        state = evolve_closed_form(ProtocolParams(lam, nth, min(tau, 3.0)), PAR)
        scale = max(1.0, abs(state.A), abs(state.B))
        assert state.A - state.B == pytest.approx(init.A, abs=1e-12 * scale)
        assert state.A12 - state.B12 == pytest.approx(init.A12, abs=1e-12 * scale)

    @given(lam=lam_st, nth=nth_st, tau=tau_st)
    def test_beam_splitter_conserved_sums(self, lam, nth, tau):
        init = initial_chi(ProtocolParams(lam, nth), BS)
        state = evolve_closed_form(ProtocolParams(lam, nth, tau), BS)
        assert state.A + state.B == pytest.approx(init.A, abs=1e-13)
        assert state.A12 + state.B12 == pytest.approx(init.A12, abs=1e-13)

    @given(lam=lam_st, nth=nth_st, tau=tau_st)
    def test_quadratic_identities(self, lam, nth, tau):
        par = evolve_closed_form(ProtocolParams(lam, nth, min(tau, 3.0)), PAR)
        rel = 1e-10 * max(1.0, par.D**2)
        assert par.D**2 == pytest.approx((par.A + 1.0) * par.B, abs=rel)
        assert par.C**2 == pytest.approx(par.A12 * par.B12, abs=rel)
        bs = evolve_closed_form(ProtocolParams(lam, nth, tau), BS)
        assert bs.D**2 == pytest.approx(bs.A * bs.B, abs=1e-10)
        assert bs.C**2 == pytest.approx(bs.A12 * bs.B12, abs=1e-10)

    @given(lam=lam_st, nth=nth_st, tau=st.floats(min_value=0.0, max_value=2 * math.pi))
    def test_beam_splitter_periodicity(self, lam, nth, tau):
        a = evolve_closed_form(ProtocolParams(lam, nth, tau), BS)
        b = evolve_closed_form(ProtocolParams(lam, nth, tau + 2 * math.pi), BS)
        for x, y in zip(a.coefficients(), b.coefficients()):
            assert x == pytest.approx(y, abs=1e-10)


class TestOdeEvolution:
    def test_zero_time_is_identity(self):
        init = initial_chi(ProtocolParams(0.5, 0.0), PAR)
        assert evolve_ode(init, 0.0).coefficients() == init.coefficients()

    def test_rejects_nonpositive_step(self):
        init = initial_chi(ProtocolParams(0.5, 0.0), PAR)
        with pytest.raises(DomainError):
            evolve_ode(init, 1.0, step=0.0)
        with pytest.raises(DomainError):
            evolve_ode(init, 1.0, step=-1e-3)

    def test_parametric_cap_applies(self):
        init = initial_chi(ProtocolParams(0.5, 0.0), PAR)
        with pytest.raises(DomainError):
            evolve_ode(init, 5.5)

    def test_beam_splitter_swap_point(self):
        params = ProtocolParams(0.5, 0.0, math.pi / 2)
        stepped = evolve_ode(initial_chi(params, BS), math.pi / 2, step=1e-3)
        closed = evolve_closed_form(params, BS)
        for a, b in zip(stepped.coefficients(), closed.coefficients()):
            assert a == pytest.approx(b, abs=1e-8)

    def test_parametric_with_thermal_noise(self):
        params = ProtocolParams(0.3, 0.1, 1.0)
        stepped = evolve_ode(initial_chi(params, PAR), 1.0, step=1e-3)
        closed = evolve_closed_form(params, PAR)
        for a, b in zip(stepped.coefficients(), closed.coefficients()):
            assert a == pytest.approx(b, abs=1e-8)

    @pytest.mark.parametrize("kind", [PAR, BS])
    @pytest.mark.parametrize("lam,nth", [(0.0, 0.0), (0.4, 0.0), (0.7, 0.2)])
    def test_matches_closed_form_on_grid(self, kind, lam, nth):
        for tau in (0.25, 1.5, 3.0):
            params = ProtocolParams(lam, nth, tau)
            stepped = evolve_ode(initial_chi(params, kind), tau)
            closed = evolve_closed_form(params, kind)
            for a, b in zip(stepped.coefficients(), closed.coefficients()):
                assert a == pytest.approx(b, abs=1e-8)

    def test_resumable_evolution(self):
        # evolving 0.4 then 0.6 equals evolving 1.0 in one go
        init = initial_chi(ProtocolParams(0.5, 0.0), BS)
        two_leg = evolve_ode(evolve_ode(init, 0.4), 0.6)
        one_leg = evolve_ode(init, 1.0)
        for a, b in zip(two_leg.coefficients(), one_leg.coefficients()):
            assert a == pytest.approx(b, abs=1e-12)


class TestChiExponent:
    @given(lam=lam_st, nth=nth_st, tau=tau_st, kind=st.sampled_from([PAR, BS]))
    def test_zero_arguments_normalize(self, lam, nth, tau, kind):
        state = evolve_closed_form(ProtocolParams(lam, nth, min(tau, 3.0)), kind)
        assert chi_exponent(state, 0.0, 0.0, 0.0, 0.0) == 0.0

    def test_initial_state_value(self):
        state = initial_chi(ProtocolParams(0.5, 0.0), PAR)
        value = chi_exponent(state, 1.0, 1.0, 0.0, 0.0)
        assert value == pytest.approx(2.0 / 3.0, abs=1e-14)

    def test_vectorized_broadcast(self):
        state = evolve_closed_form(ProtocolParams(0.4, 0.0, 0.6), BS)
        a1 = np.array([0.1, 0.2 + 0.3j, -0.5j])
        out = chi_exponent(state, a1, 0.2, 0.1j, -0.3)
        assert out.shape == (3,)
        for k in range(3):
            assert out[k] == pytest.approx(
                chi_exponent(state, complex(a1[k]), 0.2, 0.1j, -0.3), abs=1e-14
            )

    def test_exponent_is_real_valued_float(self):
        state = evolve_closed_form(ProtocolParams(0.4, 0.1, 0.8), PAR)
        value = chi_exponent(state, 0.3 + 0.2j, -0.1j, 0.25, 0.4 - 0.3j)
        assert isinstance(value, float)


def _wirtinger(fn, z, h=1e-5):
    """Finite-difference (d/dz, d/dz*) of a real-valued fn of one complex arg."""
    fx = (fn(z + h) - fn(z - h)) / (2.0 * h)
    fy = (fn(z + 1j * h) - fn(z - 1j * h)) / (2.0 * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


@pytest.mark.parametrize("kind,tau", [(PAR, 0.2), (PAR, 0.7), (BS, 0.2), (BS, 0.9)])
def test_evolution_equation_holds_pointwise(kind, tau):
    """d(chi)/dtau from the closed forms matches the transport equation
    reconstructed by numerical differentiation in every argument."""
    lam, nth = 0.45, 0.03
    args = (0.23 - 0.11j, -0.17 + 0.31j, 0.12 + 0.27j, -0.21 - 0.09j)
    a1, a2, b1, b2 = args

    def chi_at(tau_val, a1_, a2_, b1_, b2_):
        state = evolve_closed_form(ProtocolParams(lam, nth, tau_val), kind)
        return math.exp(chi_exponent(state, a1_, a2_, b1_, b2_))

    dt = 1e-5
    lhs = (chi_at(tau + dt, *args) - chi_at(tau - dt, *args)) / (2.0 * dt)

    d_a1, d_a1s = _wirtinger(lambda z: chi_at(tau, z, a2, b1, b2), a1)
    d_a2, d_a2s = _wirtinger(lambda z: chi_at(tau, a1, z, b1, b2), a2)
    d_b1, d_b1s = _wirtinger(lambda z: chi_at(tau, a1, a2, z, b2), b1)
    d_b2, d_b2s = _wirtinger(lambda z: chi_at(tau, a1, a2, b1, z), b2)
    chi = chi_at(tau, *args)

    if kind is PAR:
        rhs = (
            (a1 * b1 + np.conj(a1 * b1) + a2 * b2 + np.conj(a2 * b2)) * chi
            - a1 * d_b1s
            - np.conj(a1) * d_b1
            - a2 * d_b2s
            - np.conj(a2) * d_b2
            - b1 * d_a1s
            - np.conj(b1) * d_a1
            - b2 * d_a2s
            - np.conj(b2) * d_a2
        )
    else:
        rhs = (
            a1 * d_b1
            + np.conj(a1) * d_b1s
            + a2 * d_b2
            + np.conj(a2) * d_b2s
            - b1 * d_a1
            - np.conj(b1) * d_a1s
            - b2 * d_a2
            - np.conj(b2) * d_a2s
        )
    assert abs(rhs.imag) < 1e-6
    assert lhs == pytest.approx(rhs.real, abs=1e-6)


def test_direct_construction_allows_artificial_states():
    # oracle and test fixtures build coefficient sets directly
    state = GaussianChi4(BS, A=0.1, B=0.2, C=0.0, D=0.0, A12=0.05, B12=0.1)
    assert chi_exponent(state, 0.0, 0.0, 0.0, 0.0) == 0.0
