"""Vacuum/not-vacuum conditioning and teleportation-fidelity evaluation.

Checking each atomic ensemble for the presence or absence of collective
excitations is the protocol's non-Gaussian element. In the characteristic
function picture, projecting an atomic mode onto vacuum amounts to a Gaussian
integral over the matching argument, while ignoring it sets that argument to
zero. Every conditional optical state is therefore a short signed mixture of
two-mode Gaussians; this module builds those mixtures and evaluates outcome
probabilities, conditional teleportation fidelities, the unconditioned input
fidelity, the success-weighted efficiency, and the coefficient exchange that
turns the pipeline into its entanglement-swapping variant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chi import GaussianChi4, ProtocolParams
from .errors import (
    DegenerateOutcomeError,
    DegenerateStateError,
    DomainError,
    FidelityDivergenceError,
)

# outcomes with probability below this are treated as physically absent
DEGENERACY_THRESHOLD = 1e-12

# minimum distance of B + 1 from |B12| for the conditioning integrals to exist
_DENOMINATOR_FLOOR = 1e-12


@dataclass(frozen=True)
class Outcome:
    """Measurement record (x1, x2); 0 means no excitation found, 1 at least one."""

    x1: int
    x2: int

    def __post_init__(self) -> None:
        if self.x1 not in (0, 1) or self.x2 not in (0, 1):
            raise DomainError(f"outcome bits must be 0 or 1, got ({self.x1}, {self.x2})")

    @property
    def label(self) -> str:
        return f"{self.x1}{self.x2}"


OUTCOMES = (Outcome(0, 0), Outcome(0, 1), Outcome(1, 0), Outcome(1, 1))


@dataclass(frozen=True)
class GaussianTerm2:
    """One two-mode Gaussian term: weight * exp of a quadratic form.

    The exponent is -ga1 |alpha1|^2 - ga2 |alpha2|^2 + gc (alpha1 alpha2 + c.c.).
    """

    weight: float
    ga1: float
    ga2: float
    gc: float

    def value(self, alpha1, alpha2):
        a1 = np.asarray(alpha1)
        a2 = np.asarray(alpha2)
        expo = (
            -self.ga1 * _abs2(a1)
            - self.ga2 * _abs2(a2)
            + self.gc * 2.0 * np.real(a1 * a2)
        )
        out = self.weight * np.exp(expo)
        if np.ndim(out) == 0:
            return float(out)
        return out


@dataclass(frozen=True)
class WeightedGaussianMix:
    """A conditional two-mode state as a normalized signed Gaussian mixture."""

    outcome: Outcome
    probability: float
    terms: tuple[GaussianTerm2, ...]

    def value(self, alpha1, alpha2):
        """Characteristic-function value of the mixture; 1 at the origin."""
        total = self.terms[0].value(alpha1, alpha2)
        for term in self.terms[1:]:
            total = total + term.value(alpha1, alpha2)
        return total


@dataclass(frozen=True)
class OutcomeProbabilities:
    """The four measurement-outcome probabilities; they sum to one."""

    p00: float
    p01: float
    p10: float
    p11: float

    def of(self, outcome: Outcome) -> float:
        return getattr(self, f"p{outcome.label}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p00, self.p01, self.p10, self.p11)


@dataclass(frozen=True)
class FidelityReport:
    """Conditional fidelities (None where the outcome is degenerate) plus
    the input fidelity, the efficiency, and the outcome probabilities."""

    f00: float | None
    f01: float | None
    f10: float | None
    f11: float | None
    f_init: float
    efficiency: float
    probabilities: OutcomeProbabilities


def _denominators(state: GaussianChi4) -> tuple[float, float]:
    d1 = state.B + 1.0
    if d1 - abs(state.B12) < _DENOMINATOR_FLOOR:
        raise DegenerateStateError(
            f"conditioning integrals degenerate: B+1 = {d1}, |B12| = {abs(state.B12)}"
        )
    return d1, d1 * d1 - state.B12 * state.B12


def partial_vacuum_integrals(
    state: GaussianChi4,
) -> dict[tuple[int, int], GaussianTerm2]:
    """Gaussian reductions of the four-mode state over the atomic arguments.

    Key (u, v): u = 1 integrates the first atomic argument against the vacuum
    kernel, u = 0 evaluates it at zero, and likewise v for the second. The
    returned weight is the Gaussian prefactor; ga1/ga2/gc describe the
    remaining two-mode exponent. Integrating the second atomic argument always
    feeds C^2 into the alpha1 width and D^2 into the alpha2 width (and the
    mirror image for the first), for either interaction kind, because C pairs
    cross-index and D same-index modes in both.
    """
    a, b, c, d, a12, b12 = state.coefficients()
    den1, den2 = _denominators(state)
    cc, dd, cd = c * c, d * d, c * d
    g11 = a - ((b + 1.0) * (cc + dd) + 2.0 * b12 * cd) / den2
    gc11 = a12 + (2.0 * (b + 1.0) * cd + b12 * (cc + dd)) / den2
    return {
        (0, 0): GaussianTerm2(1.0, a, a, a12),
        (0, 1): GaussianTerm2(1.0 / den1, a - cc / den1, a - dd / den1, a12 + cd / den1),
        (1, 0): GaussianTerm2(1.0 / den1, a - dd / den1, a - cc / den1, a12 + cd / den1),
        (1, 1): GaussianTerm2(1.0 / den2, g11, g11, gc11),
    }


def outcome_probabilities(state: GaussianChi4) -> OutcomeProbabilities:
    """Closed-form probabilities of the four vacuum/not-vacuum outcomes.

    The single-sided and double-sided probabilities are evaluated over a
    common denominator; the naive difference-of-reciprocals forms lose
    precision exactly where the probabilities become small.
    """
    den1, den2 = _denominators(state)
    b, b12sq = state.B, state.B12 * state.B12
    p00 = 1.0 / den2
    p01 = (b * den1 - b12sq) / (den1 * den2)
    p11 = (b * b * den1 + b12sq * (1.0 - b)) / (den1 * den2)
    return OutcomeProbabilities(p00=p00, p01=p01, p10=p01, p11=p11)


# how each outcome combines the (u, v) reductions; the not-vacuum projector is
# identity minus the vacuum projector, hence the signs
_OUTCOME_COMBINATIONS = {
    (0, 0): ((1.0, (1, 1)),),
    (0, 1): ((1.0, (1, 0)), (-1.0, (1, 1))),
    (1, 0): ((1.0, (0, 1)), (-1.0, (1, 1))),
    (1, 1): ((1.0, (0, 0)), (-1.0, (1, 0)), (-1.0, (0, 1)), (1.0, (1, 1))),
}


def conditional_chi(
    state: GaussianChi4,
    outcome: Outcome,
    threshold: float = DEGENERACY_THRESHOLD,
) -> WeightedGaussianMix:
    """Normalized characteristic function of the optical state given an outcome.

    Raises DegenerateOutcomeError when the outcome probability is below
    `threshold` (a branch that physically never occurs, like detecting an
    excitation at t = 0).
    """
    prob = outcome_probabilities(state).of(outcome)
    if prob < threshold:
        raise DegenerateOutcomeError(
            f"outcome {outcome.label} has probability {prob:.3e} below {threshold:.3e}"
        )
    reductions = partial_vacuum_integrals(state)
    terms = tuple(
        GaussianTerm2(sign * r.weight / prob, r.ga1, r.ga2, r.gc)
        for sign, key in _OUTCOME_COMBINATIONS[(outcome.x1, outcome.x2)]
        for r in (reductions[key],)
    )
    return WeightedGaussianMix(outcome=outcome, probability=prob, terms=terms)


def teleportation_fidelity(mix: WeightedGaussianMix) -> float:
    """Average fidelity for teleporting a coherent state over the mixture.

    Each Gaussian term integrates in closed form; the precondition
    2 + ga1 + ga2 - 2 gc > 0 is the convergence condition of that integral.
    """
    total = 0.0
    for term in mix.terms:
        denom = 2.0 + (term.ga1 + term.ga2) - 2.0 * term.gc
        if not denom > 0.0:
            raise FidelityDivergenceError(
                f"fidelity integral diverges for term with ga1={term.ga1}, "
                f"ga2={term.ga2}, gc={term.gc}"
            )
        total += term.weight / denom
    return total


def initial_fidelity(params: ProtocolParams) -> float:
    """Teleportation fidelity of the unmeasured two-mode squeezed thermal input."""
    lam, n_th = params.lam, params.n_th
    one = 1.0 - lam * lam
    return 0.5 * one / (1.0 - lam + n_th * one)


def efficiency(p11: float, f11: float, f_init: float) -> float:
    """Success-probability-weighted fidelity gain of the (1,1) branch.

    Zero whenever the conditional fidelity does not beat the input fidelity.
    """
    gain = f11 - f_init
    if gain > 0.0:
        return p11 * gain
    return 0.0


def swap_exchange(state: GaussianChi4) -> GaussianChi4:
    """Exchange the optical and atomic roles (A <-> B, A12 <-> B12).

    Feeding the result through the conditioning pipeline evaluates the
    entanglement-swapping variant, where the optical modes are measured and
    the atomic modes are kept.
    """
    return GaussianChi4(
        kind=state.kind,
        A=state.B,
        B=state.A,
        C=state.C,
        D=state.D,
        A12=state.B12,
        B12=state.A12,
    )


def f_param_baseline(tau: float) -> float:
    """Short-time fidelity baseline (1 + tau) / 2 of a pure two-mode squeezer.

    Taken verbatim as the comparison curve for the swapping variant; note it
    exceeds 1 for tau > 1.
    """
    if not tau >= 0.0:
        raise DomainError(f"interaction time must be >= 0, got {tau}")
    return 0.5 * (1.0 + tau)


def fidelity_report(
    state: GaussianChi4,
    f_init: float,
    p_min: float = 1e-6,
) -> FidelityReport:
    """Evaluate all four conditional fidelities of a state in one pass.

    Outcomes with probability below `p_min` are reported as None rather
    than zero; the efficiency of a degenerate (1,1) branch is zero.
    """
    probs = outcome_probabilities(state)
    fids: dict[str, float | None] = {}
    for outcome in OUTCOMES:
        if probs.of(outcome) >= p_min:
            fids[outcome.label] = teleportation_fidelity(
                conditional_chi(state, outcome, threshold=p_min)
            )
        else:
            fids[outcome.label] = None
    f11 = fids["11"]
    eff = efficiency(probs.p11, f11, f_init) if f11 is not None else 0.0
    return FidelityReport(
        f00=fids["00"],
        f01=fids["01"],
        f10=fids["10"],
        f11=f11,
        f_init=f_init,
        efficiency=eff,
        probabilities=probs,
    )


def _abs2(z):
    return np.real(z) ** 2 + np.imag(z) ** 2
