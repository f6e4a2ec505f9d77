"""One-command cross-verification of the closed forms against the oracles.

Runs a fixed battery: closed-form coefficient evolution against RK4
integration, closed-form atomic-mode reductions and fidelities against
Gauss-Hermite quadrature, and probabilities plus conditional fidelities
against the truncated Fock-space simulator. Produces a machine-readable
report with the worst deviation per check; oracle convergence or truncation
problems become named failures instead of crashes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .chi import (
    InteractionKind,
    ProtocolParams,
    evolve_closed_form,
    evolve_ode,
    initial_chi,
)
from .conditioning import (
    OUTCOMES,
    conditional_chi,
    outcome_probabilities,
    partial_vacuum_integrals,
    teleportation_fidelity,
)
from .errors import CvPurifyError
from .fock import build_initial_fock, evolve_fock, fidelity_fock, project_outcome_fock
from .quadrature import QuadratureSpec, quadrature_I, quadrature_fidelity

DEFAULT_TOLERANCES = {
    "closed_vs_ode": 1e-8,
    "reduction_vs_quadrature": 1e-6,
    "fidelity_vs_quadrature": 1e-6,
    "fock_probabilities": 1e-4,
    "fock_fidelities": 1e-4,
    "fock_parametric_probabilities": 1e-3,
    "fock_parametric_fidelities": 1e-3,
}


@dataclass
class CheckResult:
    name: str
    tolerance: float
    max_deviation: float | None
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "tolerance": self.tolerance,
            "max_deviation": self.max_deviation,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class OracleReport:
    grid: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> str:
        return json.dumps(
            {
                "grid": self.grid,
                "passed": self.passed,
                "checks": [r.as_dict() for r in self.results],
            },
            indent=2,
        )


def _record(report: OracleReport, name: str, tolerance: float, deviation) -> None:
    if isinstance(deviation, CvPurifyError):
        report.results.append(
            CheckResult(
                name=name,
                tolerance=tolerance,
                max_deviation=None,
                passed=False,
                detail=f"{type(deviation).__name__}: {deviation}",
            )
        )
    else:
        report.results.append(
            CheckResult(
                name=name,
                tolerance=tolerance,
                max_deviation=deviation,
                passed=deviation <= tolerance,
            )
        )


def oracle_check(
    grid: str = "small",
    tolerances: dict | None = None,
    _corrupt=None,
) -> OracleReport:
    """Run the standard verification battery and return a report.

    grid = "small" keeps the Fock sector light enough for routine runs;
    grid = "full" uses the heavyweight truncation. `_corrupt` is a testing
    hook applied to each closed-form state before comparison, so fault
    injection surfaces as named failures.
    """
    if grid not in ("small", "full"):
        raise CvPurifyError(f"unknown oracle grid {grid!r}; expected small or full")
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = sorted(set(tolerances) - set(tol))
        if unknown:
            raise CvPurifyError(f"unknown tolerance keys: {', '.join(unknown)}")
        tol.update(tolerances)
    corrupt = _corrupt if _corrupt is not None else (lambda s: s)
    report = OracleReport(grid=grid)

    def closed_state(kind, lam, n_th, tau):
        return corrupt(evolve_closed_form(ProtocolParams(lam, n_th, tau), kind))

    both_kinds = (InteractionKind.PARAMETRIC, InteractionKind.BEAM_SPLITTER)

    # closed forms against RK4 coefficient integration
    try:
        worst = 0.0
        for kind in both_kinds:
            for lam in (0.0, 0.3, 0.7):
                for n_th in (0.0, 0.1):
                    for tau in (0.0, 0.4, 1.1, 2.7):
                        params = ProtocolParams(lam, n_th, tau)
                        closed = corrupt(evolve_closed_form(params, kind))
                        stepped = evolve_ode(initial_chi(params, kind), tau)
                        worst = max(
                            worst,
                            max(
                                abs(x - y)
                                for x, y in zip(
                                    closed.coefficients(), stepped.coefficients()
                                )
                            ),
                        )
        _record(report, "closed_vs_ode", tol["closed_vs_ode"], worst)
    except CvPurifyError as exc:
        _record(report, "closed_vs_ode", tol["closed_vs_ode"], exc)

    # closed-form reductions and conditional fidelities against quadrature
    quad_points = [
        (InteractionKind.PARAMETRIC, 0.5, 0.0, 0.4, 0.3 + 0.1j, -0.2j),
        (InteractionKind.PARAMETRIC, 0.3, 0.1, 0.8, -0.4, 0.2 + 0.3j),
        (InteractionKind.BEAM_SPLITTER, 0.5, 0.0, 1.0, 0.3 + 0.1j, -0.2j),
        (InteractionKind.BEAM_SPLITTER, 0.7, 0.05, 2.2, 0.5, 0.1 - 0.4j),
    ]

    try:
        worst = 0.0
        for kind, lam, n_th, tau, a1, a2 in quad_points:
            state = closed_state(kind, lam, n_th, tau)
            for (u, v), term in partial_vacuum_integrals(state).items():
                numeric = quadrature_I(state, a1, a2, u, v)
                worst = max(worst, abs(numeric - term.value(a1, a2)))
        _record(report, "reduction_vs_quadrature", tol["reduction_vs_quadrature"], worst)
    except CvPurifyError as exc:
        _record(report, "reduction_vs_quadrature", tol["reduction_vs_quadrature"], exc)

    try:
        worst = 0.0
        for kind, lam, n_th, tau, _, _ in quad_points:
            state = closed_state(kind, lam, n_th, tau)
            probs = outcome_probabilities(state)
            for outcome in OUTCOMES:
                if probs.of(outcome) < 1e-6:
                    continue
                mix = conditional_chi(state, outcome)
                worst = max(
                    worst, abs(quadrature_fidelity(mix) - teleportation_fidelity(mix))
                )
        _record(report, "fidelity_vs_quadrature", tol["fidelity_vs_quadrature"], worst)
    except CvPurifyError as exc:
        _record(report, "fidelity_vs_quadrature", tol["fidelity_vs_quadrature"], exc)

    # Fock oracle at zero temperature
    if grid == "full":
        truncation, quad = 40, QuadratureSpec(order=20)
        bs_cases = [(0.3, (0.5, 1.0, 2.9)), (0.5, (0.5, 1.0, 2.9))]
        par_cases = [(0.3, (0.3,)), (0.5, (0.3,))]
    else:
        truncation, quad = 16, QuadratureSpec(order=16)
        bs_cases = [(0.4, (0.7, 2.9))]
        par_cases = [(0.4, (0.3,))]

    def fock_battery(kind, cases):
        worst_prob = 0.0
        worst_fid = 0.0
        for lam, taus in cases:
            state = build_initial_fock(lam, truncation)
            reached = 0.0
            for tau in taus:
                state = evolve_fock(state, kind, tau - reached)
                reached = tau
                closed = closed_state(kind, lam, 0.0, tau)
                probs = outcome_probabilities(closed)
                for outcome in OUTCOMES:
                    p_closed = probs.of(outcome)
                    if p_closed < 1e-6:
                        continue
                    p_fock, density = project_outcome_fock(state, outcome)
                    worst_prob = max(worst_prob, abs(p_fock - p_closed))
                    f_closed = teleportation_fidelity(conditional_chi(closed, outcome))
                    f_fock = fidelity_fock(density, quad)
                    worst_fid = max(worst_fid, abs(f_fock - f_closed))
        return worst_prob, worst_fid

    for kind, cases, prob_name, fid_name in (
        (
            InteractionKind.BEAM_SPLITTER,
            bs_cases,
            "fock_probabilities",
            "fock_fidelities",
        ),
        (
            InteractionKind.PARAMETRIC,
            par_cases,
            "fock_parametric_probabilities",
            "fock_parametric_fidelities",
        ),
    ):
        try:
            worst_prob, worst_fid = fock_battery(kind, cases)
            _record(report, prob_name, tol[prob_name], worst_prob)
            _record(report, fid_name, tol[fid_name], worst_fid)
        except CvPurifyError as exc:
            _record(report, prob_name, tol[prob_name], exc)
            _record(report, fid_name, tol[fid_name], exc)

    return report
