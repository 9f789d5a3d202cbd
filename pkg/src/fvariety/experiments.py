"""Ratio-and-sample-size sweeps with plot-ready tables.

For every (divergence, non-expert ratio, sample size) grid point the
sweep draws ``trials_per_point`` independent sample sets, records the
mean and std of the empirical variety, and attaches the two theoretical
values (continuous-model quadrature and exact discretized joint).
Per-trial seeds are derived from (base_seed, kind, ratio index, n, trial
index), so results are identical at any parallelism level and extending
the grid never perturbs existing points.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .divergence import f_variety, get_kind
from .errors import ConfigError, IoError
from .estimation import empirical_f_variety
from .sampling import RandomStream
from .synthesis import (
    PopulationModel,
    continuous_f_variety,
    draw_samples,
    exact_discretized_joint,
    get_preset,
)

DEFAULT_RATIOS = tuple(k / 10 for k in range(11))
DEFAULT_SAMPLE_SIZES = (100, 200, 500, 1000)


@dataclass(frozen=True)
class SweepConfig:
    """Grid description for one sweep run."""

    model: PopulationModel | str
    ratios: tuple[float, ...] = DEFAULT_RATIOS
    sample_sizes: tuple[int, ...] = DEFAULT_SAMPLE_SIZES
    trials_per_point: int = 100
    divergences: tuple[str, ...] = ("tvd",)
    base_seed: int = 0
    theory_tol: float = 1e-8

    def __post_init__(self) -> None:
        if not self.ratios:
            raise ConfigError("ratios list is empty")
        if any(not 0.0 <= r <= 1.0 for r in self.ratios):
            raise ConfigError(f"ratios must lie in [0, 1], got {self.ratios}")
        if not self.sample_sizes or any(n < 1 for n in self.sample_sizes):
            raise ConfigError(f"sample sizes must be >= 1, got {self.sample_sizes}")
        if self.trials_per_point < 2:
            raise ConfigError(
                f"need at least 2 trials for a std, got {self.trials_per_point}"
            )
        if not self.divergences:
            raise ConfigError("divergences list is empty")
        for name in self.divergences:
            get_kind(name)  # raises on unknown names

    def resolve_model(self) -> PopulationModel:
        if isinstance(self.model, str):
            return get_preset(self.model)
        return self.model


@dataclass(frozen=True)
class SweepRow:
    kind: str
    ratio: float
    n: int
    empirical_mean: float
    empirical_std: float
    theoretical_continuous: float
    theoretical_discretized: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]


def _run_point(args: tuple[SweepConfig, str, int, int]) -> tuple[float, float]:
    """Empirical mean/std for one (kind, ratio, n) grid point."""
    config, kind_name, ratio_index, n = args
    kind = get_kind(kind_name)
    model = config.resolve_model().with_ratio(config.ratios[ratio_index])
    root = RandomStream(config.base_seed)
    values = np.empty(config.trials_per_point)
    for t in range(config.trials_per_point):
        stream = root.spawn(kind_name, ratio_index, n, t)
        values[t] = empirical_f_variety(draw_samples(model, n, stream), kind)
    return float(values.mean()), float(values.std(ddof=1))


def run_sweep(config: SweepConfig, jobs: int = 1) -> SweepResult:
    """Run the full grid; ``jobs`` > 1 fans points out to worker processes."""
    base_model = config.resolve_model()

    theory: dict[tuple[str, int], tuple[float, float]] = {}
    for kind_name in config.divergences:
        kind = get_kind(kind_name)
        for ri, ratio in enumerate(config.ratios):
            model = base_model.with_ratio(ratio)
            theory[(kind_name, ri)] = (
                continuous_f_variety(model, kind, tol=config.theory_tol),
                f_variety(exact_discretized_joint(model), kind),
            )

    points = [
        (config, kind_name, ri, n)
        for kind_name in config.divergences
        for ri in range(len(config.ratios))
        for n in config.sample_sizes
    ]
    if jobs <= 1:
        stats = [_run_point(p) for p in points]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            stats = list(pool.map(_run_point, points))

    rows = []
    for (cfg, kind_name, ri, n), (mean, std) in zip(points, stats):
        cont, disc = theory[(kind_name, ri)]
        rows.append(
            SweepRow(
                kind=kind_name,
                ratio=cfg.ratios[ri],
                n=n,
                empirical_mean=mean,
                empirical_std=std,
                theoretical_continuous=cont,
                theoretical_discretized=disc,
            )
        )
    return SweepResult(rows=tuple(rows))


CSV_HEADER = "kind,ratio,n,mean,std,theory_cont,theory_disc"


def _sig6(x: float) -> str:
    return f"{x:.6g}"


def write_sweep(
    result: SweepResult, path: str, format: Literal["csv", "json"] = "csv"
) -> None:
    """Write rows to ``path``; reals carry 6 significant digits.

    Output bytes depend only on ``result``, so identical runs produce
    identical files.
    """
    if format == "csv":
        lines = [CSV_HEADER]
        for r in result.rows:
            lines.append(
                f"{r.kind},{_sig6(r.ratio)},{r.n},{_sig6(r.empirical_mean)},"
                f"{_sig6(r.empirical_std)},{_sig6(r.theoretical_continuous)},"
                f"{_sig6(r.theoretical_discretized)}"
            )
        payload = "\n".join(lines) + "\n"
    elif format == "json":
        rows = [
            {
                "kind": r.kind,
                "ratio": float(_sig6(r.ratio)),
                "n": r.n,
                "mean": float(_sig6(r.empirical_mean)),
                "std": float(_sig6(r.empirical_std)),
                "theory_cont": float(_sig6(r.theoretical_continuous)),
                "theory_disc": float(_sig6(r.theoretical_discretized)),
            }
            for r in result.rows
        ]
        payload = json.dumps(rows, indent=2) + "\n"
    else:
        raise ConfigError(f"unknown output format {format!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
