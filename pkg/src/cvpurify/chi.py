"""Four-mode Gaussian characteristic function: coefficients and time evolution.

The joint state of the two optical modes and the two collective atomic modes
stays Gaussian under both effective light-atom couplings, so its
normally-ordered characteristic function is fixed by six real exponent
coefficients. This module owns that representation: the coefficients of a
two-mode squeezed thermal input with the atoms in vacuum, hyperbolic
(parametric) and trigonometric (beam-splitter) closed-form evolution, an
independent fixed-step RK4 integration of the coefficient ODEs, and
evaluation of the exponent at arbitrary complex arguments.

Time is always the dimensionless product of the effective coupling and the
physical interaction time; the coupling itself is never stored.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# cosh^2 growth makes longer parametric evolutions numerically and physically
# meaningless (the low-excitation regime is long gone)
PARAMETRIC_TAU_CAP = 5.0

DEFAULT_ODE_STEP = 1e-3


class InteractionKind(enum.Enum):
    """Which effective light-atom coupling generates the dynamics."""

    PARAMETRIC = "parametric"
    BEAM_SPLITTER = "beam-splitter"


@dataclass(frozen=True)
class ProtocolParams:
    """Input-state and interaction-time parameters.

    lam   -- two-mode squeezing parameter of the optical input, 0 <= lam < 1
             (the exponent coefficients diverge at lam = 1, so it is rejected,
             never clamped)
    n_th  -- mean thermal photon number per optical mode, >= 0
    tau   -- dimensionless interaction time (coupling times t), >= 0
    """

    lam: float
    n_th: float = 0.0
    tau: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam < 1.0:
            raise DomainError(f"squeezing parameter must be in [0, 1), got {self.lam}")
        if not self.n_th >= 0.0:
            raise DomainError(f"thermal photon number must be >= 0, got {self.n_th}")
        if not self.tau >= 0.0:
            raise DomainError(f"interaction time must be >= 0, got {self.tau}")


@dataclass(frozen=True)
class GaussianChi4:
    """Exponent coefficients of the four-mode Gaussian characteristic function.

    A multiplies -(|alpha1|^2 + |alpha2|^2), B the same for the atomic
    arguments, A12 and B12 the intra-optical and intra-atomic pair terms, and
    C and D the optical-atomic cross couplings whose argument pairing depends
    on the interaction kind (see :func:`chi_exponent`).
    """

    kind: InteractionKind
    A: float
    B: float
    C: float
    D: float
    A12: float
    B12: float

    def coefficients(self) -> tuple[float, float, float, float, float, float]:
        return (self.A, self.B, self.C, self.D, self.A12, self.B12)


def initial_chi(params: ProtocolParams, kind: InteractionKind) -> GaussianChi4:
    """Coefficients of the two-mode squeezed thermal input, atoms in vacuum.

    Only A and A12 are nonzero at t = 0; `params.tau` is ignored.
    """
    one = 1.0 - params.lam * params.lam
    return GaussianChi4(
        kind=kind,
        A=params.lam * params.lam / one + params.n_th,
        B=0.0,
        C=0.0,
        D=0.0,
        A12=params.lam / one,
        B12=0.0,
    )


def evolve_closed_form(
    params: ProtocolParams,
    kind: InteractionKind,
    tau_cap: float = PARAMETRIC_TAU_CAP,
) -> GaussianChi4:
    """Coefficients at dimensionless time tau from the closed-form solutions.

    Parametric evolution is hyperbolic in tau, beam-splitter evolution is
    trigonometric (period pi in every coefficient). Parametric times beyond
    `tau_cap` are rejected.
    """
    lam, n_th, tau = params.lam, params.n_th, params.tau
    one = 1.0 - lam * lam
    pair0 = lam / one
    if kind is InteractionKind.PARAMETRIC:
        if tau > tau_cap:
            raise DomainError(
                f"parametric interaction time {tau} exceeds the cap {tau_cap}"
            )
        scale = (1.0 + n_th * one) / one
        ch2 = math.cosh(tau) ** 2
        sh2 = math.sinh(tau) ** 2
        half_s2 = 0.5 * math.sinh(2.0 * tau)
        return GaussianChi4(
            kind=kind,
            A=scale * ch2 - 1.0,
            B=scale * sh2,
            C=-pair0 * half_s2,
            D=scale * half_s2,
            A12=pair0 * ch2,
            B12=pair0 * sh2,
        )
    scale = (lam * lam + n_th * one) / one
    cs2 = math.cos(tau) ** 2
    sn2 = math.sin(tau) ** 2
    half_s2 = 0.5 * math.sin(2.0 * tau)
    return GaussianChi4(
        kind=kind,
        A=scale * cs2,
        B=scale * sn2,
        C=-pair0 * half_s2,
        D=scale * half_s2,
        A12=pair0 * cs2,
        B12=pair0 * sn2,
    )


def _rates_parametric(y):
    a, b, c, d, a12, b12 = y
    return (2.0 * d, 2.0 * d, -(a12 + b12), 1.0 + a + b, -2.0 * c, -2.0 * c)


def _rates_beam_splitter(y):
    a, b, c, d, a12, b12 = y
    return (-2.0 * d, 2.0 * d, -(a12 - b12), a - b, 2.0 * c, -2.0 * c)


_RATES = {
    InteractionKind.PARAMETRIC: _rates_parametric,
    InteractionKind.BEAM_SPLITTER: _rates_beam_splitter,
}


def _rk4_step(rates, y, h):
    k1 = rates(y)
    k2 = rates(tuple(yi + 0.5 * h * ki for yi, ki in zip(y, k1)))
    k3 = rates(tuple(yi + 0.5 * h * ki for yi, ki in zip(y, k2)))
    k4 = rates(tuple(yi + h * ki for yi, ki in zip(y, k3)))
    sixth = h / 6.0
    return tuple(
        yi + sixth * (a + 2.0 * (b + c) + d)
        for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
    )


def evolve_ode(
    init: GaussianChi4,
    tau: float,
    step: float = DEFAULT_ODE_STEP,
    tau_cap: float = PARAMETRIC_TAU_CAP,
) -> GaussianChi4:
    """Advance the coefficients by tau with classical fixed-step RK4.

    Independent of the closed forms; used to cross-check them. The final
    partial step lands exactly on tau.
    """
    if not step > 0.0:
        raise DomainError(f"integration step must be positive, got {step}")
    if not tau >= 0.0:
        raise DomainError(f"interaction time must be >= 0, got {tau}")
    if init.kind is InteractionKind.PARAMETRIC and tau > tau_cap:
        raise DomainError(f"parametric interaction time {tau} exceeds the cap {tau_cap}")
    rates = _RATES[init.kind]
    y = (init.A, init.B, init.C, init.D, init.A12, init.B12)
    n_full = int(tau / step)
    for _ in range(n_full):
        y = _rk4_step(rates, y, step)
    rest = tau - n_full * step
    if rest > 1e-15:
        y = _rk4_step(rates, y, rest)
    return GaussianChi4(init.kind, *y)


def chi_exponent(state: GaussianChi4, alpha1, alpha2, beta1, beta2):
    """Real exponent of the characteristic function at the given arguments.

    The characteristic function itself is exp() of this value. Every term
    comes paired with its complex conjugate, so the exponent is real for any
    complex arguments. The parametric kind couples alpha1 to beta2* through C
    and alpha1 to beta1 through D; the beam splitter couples alpha1 to beta1*
    through D and alpha1 to beta2 through C (and symmetrically for mode 2).

    Accepts scalars or broadcastable numpy arrays.
    """
    a1 = np.asarray(alpha1)
    a2 = np.asarray(alpha2)
    b1 = np.asarray(beta1)
    b2 = np.asarray(beta2)

    out = -state.A * (_abs2(a1) + _abs2(a2))
    out = out - state.B * (_abs2(b1) + _abs2(b2))
    out = out + state.A12 * 2.0 * np.real(a1 * a2)
    out = out + state.B12 * 2.0 * np.real(b1 * b2)
    if state.kind is InteractionKind.PARAMETRIC:
        out = out + state.C * 2.0 * np.real(a1 * np.conj(b2) + a2 * np.conj(b1))
        out = out + state.D * 2.0 * np.real(a1 * b1 + a2 * b2)
    else:
        out = out + state.D * 2.0 * np.real(a1 * np.conj(b1) + a2 * np.conj(b2))
        out = out + state.C * 2.0 * np.real(a1 * b2 + a2 * b1)
    if np.ndim(out) == 0:
        return float(out)
    return out


def _abs2(z):
    return np.real(z) ** 2 + np.imag(z) ** 2
