"""Declarative parameter sweeps over the purification pipeline.

A sweep walks a (lambda, n_th, tau) grid, evolves the joint state in closed
form, conditions on all four outcomes, and records probabilities, defined
conditional fidelities, the input fidelity and the efficiency, one row per
grid point in deterministic grid order. Output formatting is pinned (12
significant digits, fixed column order, empty cells for undefined fidelities)
so identical configurations produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import NamedTuple

from .chi import GaussianChi4, InteractionKind, ProtocolParams, evolve_closed_form
from .conditioning import (
    FidelityReport,
    Outcome,
    conditional_chi,
    fidelity_report,
    initial_fidelity,
    outcome_probabilities,
    swap_exchange,
    teleportation_fidelity,
)
from .errors import ConfigError, CvPurifyError, NoAdmissiblePointError

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "kind",
    "swap",
    "lambda",
    "n_th",
    "tau",
    "p00",
    "p01",
    "p10",
    "p11",
    "f00",
    "f01",
    "f10",
    "f11",
    "f_init",
    "efficiency",
)

_KIND_NAMES = {k.value: k for k in InteractionKind}

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepConfig:
    """Validated description of one sweep run."""

    kind: InteractionKind
    lambda_grid: tuple[float, ...]
    nth_grid: tuple[float, ...]
    tau_grid: tuple[float, ...]
    output_path: str
    swap: bool = False
    p_min: float = 1e-6
    format: str = "csv"

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        if not isinstance(raw, dict):
            raise ConfigError("configuration must be a JSON object")
        known = {
            "version",
            "kind",
            "swap",
            "lambda_grid",
            "nth_grid",
            "tau_grid",
            "p_min",
            "output_path",
            "format",
        }
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        missing = sorted(
            {"version", "kind", "lambda_grid", "nth_grid", "tau_grid", "output_path"}
            - set(raw)
        )
        if missing:
            raise ConfigError(f"missing configuration keys: {', '.join(missing)}")
        if raw["version"] != SCHEMA_VERSION:
            raise ConfigError(
                f"field 'version': expected {SCHEMA_VERSION}, got {raw['version']!r}"
            )
        if raw["kind"] not in _KIND_NAMES:
            raise ConfigError(
                f"field 'kind': expected one of {sorted(_KIND_NAMES)}, got {raw['kind']!r}"
            )
        swap = raw.get("swap", False)
        if not isinstance(swap, bool):
            raise ConfigError(f"field 'swap': expected a boolean, got {swap!r}")
        fmt = raw.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"field 'format': expected 'csv' or 'json', got {fmt!r}")
        p_min = raw.get("p_min", 1e-6)
        if not isinstance(p_min, (int, float)) or not p_min > 0:
            raise ConfigError(f"field 'p_min': expected a positive number, got {p_min!r}")
        output_path = raw["output_path"]
        if not isinstance(output_path, str) or not output_path:
            raise ConfigError("field 'output_path': expected a nonempty string")

        lam_grid = _grid_field("lambda_grid", raw["lambda_grid"])
        for v in lam_grid:
            if not 0.0 <= v < 1.0:
                raise ConfigError(f"field 'lambda_grid': value {v} outside [0, 1)")
        nth_grid = _grid_field("nth_grid", raw["nth_grid"])
        for v in nth_grid:
            if v < 0.0:
                raise ConfigError(f"field 'nth_grid': value {v} is negative")
        tau_grid = _grid_field("tau_grid", raw["tau_grid"])
        for v in tau_grid:
            if v < 0.0:
                raise ConfigError(f"field 'tau_grid': value {v} is negative")

        return cls(
            kind=_KIND_NAMES[raw["kind"]],
            swap=swap,
            lambda_grid=lam_grid,
            nth_grid=nth_grid,
            tau_grid=tau_grid,
            p_min=float(p_min),
            output_path=output_path,
            format=fmt,
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "SweepConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
        return cls.from_dict(raw)

    def canonical_json(self) -> str:
        doc = {
            "version": SCHEMA_VERSION,
            "kind": self.kind.value,
            "swap": self.swap,
            "lambda_grid": list(self.lambda_grid),
            "nth_grid": list(self.nth_grid),
            "tau_grid": list(self.tau_grid),
            "p_min": self.p_min,
            "output_path": self.output_path,
            "format": self.format,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


def _grid_field(name: str, value) -> tuple[float, ...]:
    if isinstance(value, dict):
        extra = sorted(set(value) - {"start", "stop", "step"})
        if extra:
            raise ConfigError(f"field '{name}': unknown range keys {', '.join(extra)}")
        try:
            start, stop, step = value["start"], value["stop"], value["step"]
        except KeyError as exc:
            raise ConfigError(f"field '{name}': range needs start, stop and step ({exc})")
        if step <= 0:
            raise ConfigError(f"field '{name}': range step must be positive")
        return grid_range(start, stop, step)
    if not isinstance(value, list) or not value:
        raise ConfigError(f"field '{name}': expected a nonempty list or a range object")
    for v in value:
        if not isinstance(v, (int, float)):
            raise ConfigError(f"field '{name}': non-numeric entry {v!r}")
    return tuple(float(v) for v in value)


def grid_range(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Inclusive arithmetic grid with drift-free integer multiples of step."""
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    if count < 1:
        raise ConfigError(f"empty grid: start={start}, stop={stop}, step={step}")
    return tuple(start + k * step for k in range(count))


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a sweep; fidelities are None when degenerate."""

    kind: InteractionKind
    swap: bool
    lam: float
    n_th: float
    tau: float
    p00: float
    p01: float
    p10: float
    p11: float
    f00: float | None
    f01: float | None
    f10: float | None
    f11: float | None
    f_init: float
    efficiency: float

    def values(self) -> tuple:
        return (
            self.kind.value,
            "true" if self.swap else "false",
            self.lam,
            self.n_th,
            self.tau,
            self.p00,
            self.p01,
            self.p10,
            self.p11,
            self.f00,
            self.f01,
            self.f10,
            self.f11,
            self.f_init,
            self.efficiency,
        )


def conditioned_state(
    kind: InteractionKind, swap: bool, lam: float, n_th: float, tau: float
) -> GaussianChi4:
    """Evolved state with the optical/atomic roles exchanged when swapping."""
    state = evolve_closed_form(ProtocolParams(lam=lam, n_th=n_th, tau=tau), kind)
    return swap_exchange(state) if swap else state


def evaluate_point(
    kind: InteractionKind,
    swap: bool,
    lam: float,
    n_th: float,
    tau: float,
    p_min: float,
) -> SweepRow:
    """Full pipeline at one grid point."""
    state = conditioned_state(kind, swap, lam, n_th, tau)
    f_init = initial_fidelity(ProtocolParams(lam=lam, n_th=n_th))
    report = fidelity_report(state, f_init, p_min=p_min)
    return _row_from_report(kind, swap, lam, n_th, tau, report)


def _row_from_report(kind, swap, lam, n_th, tau, report: FidelityReport) -> SweepRow:
    p = report.probabilities
    return SweepRow(
        kind=kind,
        swap=swap,
        lam=lam,
        n_th=n_th,
        tau=tau,
        p00=p.p00,
        p01=p.p01,
        p10=p.p10,
        p11=p.p11,
        f00=report.f00,
        f01=report.f01,
        f10=report.f10,
        f11=report.f11,
        f_init=report.f_init,
        efficiency=report.efficiency,
    )


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """Evaluate every grid point in deterministic (lambda, n_th, tau) order."""
    rows = []
    for lam in config.lambda_grid:
        for n_th in config.nth_grid:
            for tau in config.tau_grid:
                rows.append(
                    evaluate_point(config.kind, config.swap, lam, n_th, tau, config.p_min)
                )
    return rows


def validate_row(row: SweepRow, tol: float = 1e-12) -> None:
    """Re-check the conditioning invariants before anything is written."""
    psum = row.p00 + row.p01 + row.p10 + row.p11
    if abs(psum - 1.0) > tol:
        raise CvPurifyError(f"probabilities sum to {psum!r}, not 1")
    if row.p01 != row.p10:
        raise CvPurifyError(f"p01 != p10: {row.p01!r} vs {row.p10!r}")
    if (row.f01 is None) != (row.f10 is None) or (
        row.f01 is not None and row.f01 != row.f10
    ):
        raise CvPurifyError(f"f01 != f10: {row.f01!r} vs {row.f10!r}")
    for name in ("p00", "p01", "p10", "p11"):
        value = getattr(row, name)
        if not -tol <= value <= 1.0 + tol:
            raise CvPurifyError(f"{name} = {value!r} outside [0, 1]")
    for name in ("f00", "f01", "f10", "f11"):
        value = getattr(row, name)
        if value is not None and not 0.0 < value <= 1.0 + tol:
            raise CvPurifyError(f"{name} = {value!r} outside (0, 1]")
    if row.efficiency < 0.0:
        raise CvPurifyError(f"efficiency = {row.efficiency!r} is negative")


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.12g}"


def rows_to_csv(rows: list[SweepRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        validate_row(row)
        lines.append(",".join(format_value(v) for v in row.values()))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[SweepRow]) -> str:
    docs = []
    for row in rows:
        validate_row(row)
        doc = dict(zip(CSV_COLUMNS, row.values()))
        doc["swap"] = row.swap
        docs.append(doc)
    return json.dumps(docs, indent=2) + "\n"


def write_sweep(config: SweepConfig, rows: list[SweepRow]) -> list[Path]:
    """Write the result file plus a manifest; returns the written paths."""
    out = Path(config.output_path)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    text = rows_to_csv(rows) if config.format == "csv" else rows_to_json(rows)
    out.write_bytes(text.encode())
    manifest = out.with_suffix(out.suffix + ".manifest.json")
    manifest.write_text(make_manifest(config=config, rows=len(rows)))
    return [out, manifest]


def make_manifest(config: SweepConfig | None = None, **extra) -> str:
    from . import __version__

    doc: dict = {
        "tool": "cvpurify",
        "tool_version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }
    if config is not None:
        doc["config"] = json.loads(config.canonical_json())
        doc["config_hash"] = config.config_hash()
    doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


class OptimalTime(NamedTuple):
    tau_star: float
    f11_star: float
    p11_star: float


def find_optimal_time(
    kind: InteractionKind,
    swap: bool,
    lam: float,
    n_th: float,
    window: tuple[float, float],
    p_min: float = 1e-6,
    coarse_step: float = 0.01,
    tol: float = 1e-10,
) -> OptimalTime:
    """Maximize the (1,1) conditional fidelity over an interaction-time window.

    A coarse grid restricted to points with p11 >= p_min seeds a
    golden-section refinement; inadmissible points count as minus infinity, so
    the search converges onto the probability boundary when the supremum sits
    there. Raises NoAdmissiblePointError when the constraint empties the grid.
    """
    lo, hi = window
    if not (lo >= 0.0 and hi > lo):
        raise NoAdmissiblePointError(f"invalid search window ({lo}, {hi})")
    if not p_min > 0.0:
        raise NoAdmissiblePointError(f"p_min must be positive, got {p_min}")

    def objective(tau: float) -> tuple[float, float]:
        state = conditioned_state(kind, swap, lam, n_th, tau)
        p11 = outcome_probabilities(state).p11
        if p11 < p_min:
            return -math.inf, p11
        f11 = teleportation_fidelity(
            conditional_chi(state, Outcome(1, 1), threshold=p_min)
        )
        return f11, p11

    grid = grid_range(lo, hi, coarse_step)
    values = [objective(t) for t in grid]
    best_idx = max(range(len(grid)), key=lambda i: values[i][0])
    if values[best_idx][0] == -math.inf:
        raise NoAdmissiblePointError(
            f"p11 < {p_min} everywhere in ({lo}, {hi}) for lambda={lam}, n_th={n_th}"
        )

    a = grid[max(best_idx - 1, 0)]
    b = grid[min(best_idx + 1, len(grid) - 1)]
    best_tau, best_f = grid[best_idx], values[best_idx][0]

    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, _ = objective(c)
    fd, _ = objective(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc, _ = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd, _ = objective(d)
        for t, f in ((c, fc), (d, fd)):
            if f > best_f:
                best_f = f
                best_tau = t
    f_star, p_star = objective(best_tau)
    return OptimalTime(tau_star=best_tau, f11_star=f_star, p11_star=p_star)
