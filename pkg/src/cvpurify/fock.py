"""Truncated Fock-space oracle for the four-mode protocol at zero temperature.

Everything here is deliberately brute force: the state is a dense amplitude
array over photon-number indices, evolution is fixed-step RK4 on the
Schroedinger equation, and measurement is literal projector application
followed by a partial trace. The point is independence from the Gaussian
closed forms this oracle verifies, so nothing below shares algebra with
:mod:`cvpurify.chi` or :mod:`cvpurify.conditioning`.

Array axis order is (n_a1, n_a2, n_b1, n_b2) with each index in 0..N. Both
effective Hamiltonians have real matrix elements in this basis, so real and
imaginary amplitude parts evolve independently; the RK4 kernels below run on
float64 arrays and the complex public interface splits and recombines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

from .chi import InteractionKind
from .conditioning import Outcome
from .errors import (
    ConvergenceError,
    DegenerateOutcomeError,
    DomainError,
    TruncationError,
)
from .quadrature import QuadratureSpec

DEFAULT_FOCK_STEP = 5e-3

# occupation of the highest retained level beyond which results are untrusted
TOP_LEVEL_TOL = 1e-8

# RK4 norm drift beyond this indicates too coarse a step for the truncation
NORM_DRIFT_TOL = 1e-8

_SQRT2 = math.sqrt(2.0)


@dataclass
class FockState:
    """Dense four-mode pure state truncated at N photons per mode."""

    truncation: int
    amplitudes: np.ndarray  # complex128, shape (N+1, N+1, N+1, N+1)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass
class TwoModeDensity:
    """Dense two-mode optical density operator, row/column index (n1, n2)."""

    truncation: int
    matrix: np.ndarray  # complex128, shape ((N+1)^2, (N+1)^2)


def build_initial_fock(lam: float, truncation: int) -> FockState:
    """Two-mode squeezed vacuum on the optical modes, atomic modes empty.

    The squared norm misses 1 by exactly lam^(2(N+1)), the discarded
    geometric tail.
    """
    if not 0.0 <= lam < 1.0:
        raise DomainError(f"squeezing parameter must be in [0, 1), got {lam}")
    if truncation < 1:
        raise DomainError(f"truncation must be >= 1, got {truncation}")
    n1 = truncation + 1
    amps = np.zeros((n1, n1, n1, n1), dtype=np.complex128)
    weights = math.sqrt(1.0 - lam * lam) * lam ** np.arange(n1)
    amps[np.arange(n1), np.arange(n1), 0, 0] = weights
    return FockState(truncation=truncation, amplitudes=amps)


@njit(cache=True)
def _gen_beam_splitter(psi, rt, out):  # pragma: no cover - compiled
    # (a1^dag b1 - a1 b1^dag) + (a2^dag b2 - a2 b2^dag) applied to psi
    n1 = psi.shape[0]
    for i in range(n1):
        for j in range(n1):
            for k in range(n1):
                row = out[i, j, k]
                for l in range(n1):
                    row[l] = 0.0
                if i >= 1 and k + 1 < n1:
                    c = rt[i] * rt[k + 1]
                    src = psi[i - 1, j, k + 1]
                    for l in range(n1):
                        row[l] += c * src[l]
                if i + 1 < n1 and k >= 1:
                    c = rt[i + 1] * rt[k]
                    src = psi[i + 1, j, k - 1]
                    for l in range(n1):
                        row[l] -= c * src[l]
                if j >= 1:
                    c = rt[j]
                    src = psi[i, j - 1, k]
                    for l in range(n1 - 1):
                        row[l] += c * rt[l + 1] * src[l + 1]
                if j + 1 < n1:
                    c = rt[j + 1]
                    src = psi[i, j + 1, k]
                    for l in range(1, n1):
                        row[l] -= c * rt[l] * src[l - 1]


@njit(cache=True)
def _gen_parametric(psi, rt, out):  # pragma: no cover - compiled
    # (a1^dag b1^dag - a1 b1) + (a2^dag b2^dag - a2 b2) applied to psi
    n1 = psi.shape[0]
    for i in range(n1):
        for j in range(n1):
            for k in range(n1):
                row = out[i, j, k]
                for l in range(n1):
                    row[l] = 0.0
                if i >= 1 and k >= 1:
                    c = rt[i] * rt[k]
                    src = psi[i - 1, j, k - 1]
                    for l in range(n1):
                        row[l] += c * src[l]
                if i + 1 < n1 and k + 1 < n1:
                    c = rt[i + 1] * rt[k + 1]
                    src = psi[i + 1, j, k + 1]
                    for l in range(n1):
                        row[l] -= c * src[l]
                if j >= 1:
                    c = rt[j]
                    src = psi[i, j - 1, k]
                    for l in range(1, n1):
                        row[l] += c * rt[l] * src[l - 1]
                if j + 1 < n1:
                    c = rt[j + 1]
                    src = psi[i, j + 1, k]
                    for l in range(n1 - 1):
                        row[l] -= c * rt[l + 1] * src[l + 1]


@njit(cache=True)
def _axpy(base, coef, vec, out):  # pragma: no cover - compiled
    for idx in range(base.size):
        out[idx] = base[idx] + coef * vec[idx]


@njit(cache=True)
def _rk4_combine(psi, h, k1, k2, k3, k4):  # pragma: no cover - compiled
    sixth = h / 6.0
    for idx in range(psi.size):
        psi[idx] += sixth * (k1[idx] + 2.0 * (k2[idx] + k3[idx]) + k4[idx])


def _evolve_real(psi: np.ndarray, kind: InteractionKind, tau: float, step: float):
    """In-place RK4 of dpsi/dtau = G psi on a float64 array."""
    gen = (
        _gen_beam_splitter
        if kind is InteractionKind.BEAM_SPLITTER
        else _gen_parametric
    )
    n1 = psi.shape[0]
    rt = np.sqrt(np.arange(n1, dtype=np.float64))
    k1 = np.empty_like(psi)
    k2 = np.empty_like(psi)
    k3 = np.empty_like(psi)
    k4 = np.empty_like(psi)
    tmp = np.empty_like(psi)
    flat = psi.reshape(-1)
    fk1, fk2, fk3, fk4 = (a.reshape(-1) for a in (k1, k2, k3, k4))
    ftmp = tmp.reshape(-1)

    n_full = int(tau / step)
    rest = tau - n_full * step
    schedule = [step] * n_full + ([rest] if rest > 1e-15 else [])
    for h in schedule:
        gen(psi, rt, k1)
        _axpy(flat, 0.5 * h, fk1, ftmp)
        gen(tmp, rt, k2)
        _axpy(flat, 0.5 * h, fk2, ftmp)
        gen(tmp, rt, k3)
        _axpy(flat, h, fk3, ftmp)
        gen(tmp, rt, k4)
        _rk4_combine(flat, h, fk1, fk2, fk3, fk4)


def _top_level_occupation(amps: np.ndarray) -> float:
    top = amps.shape[0] - 1
    occ = 0.0
    for axis in range(4):
        sl = [slice(None)] * 4
        sl[axis] = top
        occ = max(occ, float(np.sum(np.abs(amps[tuple(sl)]) ** 2)))
    return occ


def evolve_fock(
    state: FockState,
    kind: InteractionKind,
    tau: float,
    step: float = DEFAULT_FOCK_STEP,
) -> FockState:
    """Integrate the Schroedinger equation for the effective Hamiltonian.

    Uses classical fixed-step RK4 with the final partial step landing on tau.
    Raises TruncationError when the top retained Fock level acquires more
    than TOP_LEVEL_TOL occupation (the parametric interaction grows photon
    number without bound) or when the integration itself drifts the norm.
    """
    if not step > 0.0:
        raise DomainError(f"integration step must be positive, got {step}")
    if not tau >= 0.0:
        raise DomainError(f"interaction time must be >= 0, got {tau}")
    amps = state.amplitudes
    norm_before = float(np.sum(np.abs(amps) ** 2))

    re = np.ascontiguousarray(amps.real)
    _evolve_real(re, kind, tau, step)
    if np.any(amps.imag):
        im = np.ascontiguousarray(amps.imag)
        _evolve_real(im, kind, tau, step)
        out = re + 1j * im
    else:
        out = re.astype(np.complex128)

    occ = _top_level_occupation(out)
    if occ > TOP_LEVEL_TOL:
        raise TruncationError(
            f"top Fock level occupation {occ:.3e} exceeds {TOP_LEVEL_TOL:.0e}; "
            f"increase the truncation or shorten the evolution"
        )
    drift = abs(float(np.sum(np.abs(out) ** 2)) - norm_before)
    if drift > NORM_DRIFT_TOL:
        raise TruncationError(
            f"norm drifted by {drift:.3e} during integration; reduce the step"
        )
    return FockState(truncation=state.truncation, amplitudes=out)


def project_outcome_fock(
    state: FockState,
    outcome: Outcome,
) -> tuple[float, TwoModeDensity]:
    """Apply the vacuum/not-vacuum projectors to the atomic modes.

    Returns the outcome probability and the normalized reduced density
    operator of the two optical modes.
    """
    amps = state.amplitudes
    n1 = state.truncation + 1
    sel1 = slice(0, 1) if outcome.x1 == 0 else slice(1, None)
    sel2 = slice(0, 1) if outcome.x2 == 0 else slice(1, None)
    selected = amps[:, :, sel1, sel2]
    total = float(np.sum(np.abs(amps) ** 2))
    prob = float(np.sum(np.abs(selected) ** 2)) / total
    if prob < 1e-12:
        raise DegenerateOutcomeError(
            f"outcome {outcome.label} has probability {prob:.3e}"
        )
    w = selected.reshape(n1 * n1, -1)
    if not np.any(w.imag):
        wr = np.ascontiguousarray(w.real)
        mat = (wr @ wr.T).astype(np.complex128)
    else:
        mat = w @ w.conj().T
    mat /= np.trace(mat).real
    return prob, TwoModeDensity(truncation=state.truncation, matrix=mat)


def _displacement_normal(alpha: complex, n_levels: int) -> np.ndarray:
    """Matrix of exp(alpha a^dag) exp(-alpha^* a) on the truncated mode."""
    n1 = n_levels + 1
    logfact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1.0, n1)))))
    m = np.arange(n1)
    d = m[:, None] - m[None, :]
    lower = d >= 0
    upper = d <= 0
    with np.errstate(invalid="ignore"):
        raise_part = np.where(
            lower,
            np.exp(0.5 * (logfact[:, None] - logfact[None, :]) - logfact[np.abs(d)])
            * np.power(complex(alpha), np.where(lower, d, 0)),
            0.0,
        )
        lower_part = np.where(
            upper,
            np.exp(0.5 * (logfact[None, :] - logfact[:, None]) - logfact[np.abs(d)])
            * np.power(-np.conj(complex(alpha)), np.where(upper, -d, 0)),
            0.0,
        )
    return raise_part @ lower_part


def char_value_fock(density: TwoModeDensity, alpha1: complex, alpha2: complex) -> complex:
    """Normally-ordered characteristic function of the density operator."""
    n1 = density.truncation + 1
    e1 = _displacement_normal(alpha1, density.truncation)
    e2 = _displacement_normal(alpha2, density.truncation)
    rho4 = density.matrix.reshape(n1, n1, n1, n1)
    return complex(np.einsum("abcd,ca,db->", rho4, e1, e2, optimize=True))


@lru_cache(maxsize=8)
def _fidelity_kernel(truncation: int, order: int) -> np.ndarray:
    """Quadrature-accumulated operator whose expectation is the fidelity.

    Summing weight * E(xi^*) (x) E(xi) over the Gauss-Hermite grid turns the
    phase-space fidelity integral into a single trace against the density
    operator; the kernel depends only on (truncation, order) and is cached.
    """
    n1 = truncation + 1
    x, w = np.polynomial.hermite.hermgauss(order)
    xi = (x[:, None] + 1j * x[None, :]) / _SQRT2
    weight = (w[:, None] * w[None, :]).ravel()
    xi = xi.ravel()
    e1 = np.stack(
        [_displacement_normal(np.conj(z), truncation).reshape(-1) for z in xi]
    )
    e2 = np.stack([_displacement_normal(z, truncation).reshape(-1) for z in xi])
    accum = (weight[:, None] * e1).T @ e2  # indexed [(m1,n1),(m2,n2)]
    accum /= 2.0 * np.pi
    kernel = (
        accum.reshape(n1, n1, n1, n1).transpose(0, 2, 1, 3).reshape(n1 * n1, n1 * n1)
    )
    return kernel


def fidelity_fock(density: TwoModeDensity, quad: QuadratureSpec | None = None) -> float:
    """Teleportation fidelity of a numerically represented two-mode state.

    Evaluates the coherent-state-averaged fidelity integral by Gauss-Hermite
    quadrature of the characteristic function; raises ConvergenceError when
    doubling the order moves the result by more than 1e-6.
    """
    if quad is None:
        quad = QuadratureSpec(order=20)

    def evaluate(order: int) -> float:
        kernel = _fidelity_kernel(density.truncation, order)
        return float(np.einsum("ij,ji->", density.matrix, kernel, optimize=True).real)

    coarse = evaluate(quad.order)
    fine = evaluate(2 * quad.order)
    if abs(fine - coarse) > 1e-6:
        raise ConvergenceError(
            f"fidelity quadrature not converged: order {quad.order} gives "
            f"{coarse!r}, order {2 * quad.order} gives {fine!r}"
        )
    return fine
