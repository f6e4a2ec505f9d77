"""Gauss-Hermite quadrature oracles for the Gaussian closed forms.

These integrators treat the characteristic function as a black box and
evaluate the defining integrals numerically, so they share no algebra with
the closed-form reductions they verify. Every result is computed at the
requested order and again at twice the order; disagreement beyond the
convergence tolerance raises instead of returning a doubtful number.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chi import GaussianChi4, chi_exponent
from .conditioning import WeightedGaussianMix
from .errors import ConvergenceError, DegenerateStateError, DomainError

CONVERGENCE_TOL = 1e-6

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Hermite order per real integration dimension.

    The default is plenty for the Gaussian-times-Gaussian integrands here
    (convergence is geometric); every oracle doubles it internally as a
    convergence check and returns the doubled-order value.
    """

    order: int = 24

    def __post_init__(self) -> None:
        if not 8 <= self.order <= 128:
            raise DomainError(f"quadrature order must be in [8, 128], got {self.order}")


@lru_cache(maxsize=32)
def _nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.hermite.hermgauss(order)
    return x, w


def _doubled(evaluate, order: int, tol: float) -> float:
    coarse = evaluate(order)
    fine = evaluate(2 * order)
    if abs(fine - coarse) > tol:
        raise ConvergenceError(
            f"quadrature not converged: order {order} gives {coarse!r}, "
            f"order {2 * order} gives {fine!r}"
        )
    return fine


def quadrature_I(
    state: GaussianChi4,
    alpha1: complex,
    alpha2: complex,
    u: int,
    v: int,
    quad: QuadratureSpec | None = None,
) -> float:
    """Numerically reduce the four-mode state over the atomic arguments.

    u (v) = 1 integrates the first (second) atomic argument against the
    vacuum kernel exp(-|beta|^2) with measure d^2beta / pi; u (v) = 0 pins it
    to zero. Matches the closed forms in
    :func:`cvpurify.conditioning.partial_vacuum_integrals`.
    """
    if u not in (0, 1) or v not in (0, 1):
        raise DomainError(f"u and v must be 0 or 1, got ({u}, {v})")
    if state.B + 1.0 - abs(state.B12) < 1e-12:
        raise DegenerateStateError("beta integrals do not converge: B+1 <= |B12|")
    if quad is None:
        quad = QuadratureSpec()

    if (u, v) == (0, 0):
        # both measures are deltas: no integration at all
        return float(np.exp(chi_exponent(state, alpha1, alpha2, 0.0, 0.0)))

    if u == 1 and v == 1:

        def evaluate(order: int) -> float:
            x, w = _nodes(order)
            b1 = x[:, None, None, None] + 1j * x[None, :, None, None]
            b2 = x[None, None, :, None] + 1j * x[None, None, None, :]
            weight = (
                w[:, None, None, None]
                * w[None, :, None, None]
                * w[None, None, :, None]
                * w[None, None, None, :]
            )
            expo = chi_exponent(state, alpha1, alpha2, b1, b2)
            return float(np.sum(weight * np.exp(expo)) / np.pi**2)

    else:

        def evaluate(order: int) -> float:
            x, w = _nodes(order)
            b = x[:, None] + 1j * x[None, :]
            weight = w[:, None] * w[None, :]
            if u == 1:
                expo = chi_exponent(state, alpha1, alpha2, b, 0.0)
            else:
                expo = chi_exponent(state, alpha1, alpha2, 0.0, b)
            return float(np.sum(weight * np.exp(expo)) / np.pi)

    return _doubled(evaluate, quad.order, CONVERGENCE_TOL)


def quadrature_fidelity(
    mix: WeightedGaussianMix,
    quad: QuadratureSpec | None = None,
) -> float:
    """Teleportation fidelity of a mixture by direct phase-space integration.

    Evaluates the coherent-state-averaged fidelity integral over the complex
    plane; agrees with the closed-form sum in
    :func:`cvpurify.conditioning.teleportation_fidelity`.
    """
    if quad is None:
        quad = QuadratureSpec(order=48)

    def evaluate(order: int) -> float:
        x, w = _nodes(order)
        # absorb exp(-2|xi|^2) into the Gauss-Hermite weight via xi = (s + i t) / sqrt(2)
        xi = (x[:, None] + 1j * x[None, :]) / _SQRT2
        weight = w[:, None] * w[None, :]
        values = mix.value(np.conj(xi), xi)
        return float(np.sum(weight * values) / (2.0 * np.pi))

    return _doubled(evaluate, quad.order, CONVERGENCE_TOL)
