"""Plug-in estimation from observed (choice, prediction-bin) samples.

The empirical joint is the raw normalized histogram; there is no
smoothing, so zero-count cells are genuine zeros.  Group comparisons
follow the equalized-subsampling protocol: the larger group is repeatedly
subsampled without replacement down to the smaller group's respondent
count, which removes sample-size effects from the metric and puts the
error bar on exactly one side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, NamedTuple

import numpy as np

from .distributions import JointDistribution
from .divergence import DivergenceKind, f_variety
from .errors import BadShape, EmptySampleSet
from .sampling import RandomStream


class Observation(NamedTuple):
    """One respondent's answer to one question."""

    choice: int
    prediction: int
    respondent_id: Hashable | None = None
    question_id: Hashable | None = None


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Observations plus the (n_choices, n_bins) shape they live in."""

    n_choices: int
    n_bins: int
    observations: tuple[Observation, ...]

    def __post_init__(self) -> None:
        if self.n_choices < 2 or self.n_bins < 1:
            raise BadShape(
                f"sample shape ({self.n_choices}, {self.n_bins}) is invalid"
            )
        for obs in self.observations:
            if not (0 <= obs.choice < self.n_choices):
                raise BadShape(f"choice {obs.choice} outside [0, {self.n_choices})")
            if not (0 <= obs.prediction < self.n_bins):
                raise BadShape(
                    f"prediction bin {obs.prediction} outside [0, {self.n_bins})"
                )
        object.__setattr__(self, "observations", tuple(self.observations))

    def __len__(self) -> int:
        return len(self.observations)

    def respondent_units(self) -> list[tuple[Hashable, np.ndarray]]:
        """Respondents in first-appearance order with their observation indices.

        Observations without a respondent id each count as their own
        respondent, so subsampling falls back to the observation level.
        """
        order: dict[Hashable, list[int]] = {}
        for i, obs in enumerate(self.observations):
            key: Hashable = ("#anon", i) if obs.respondent_id is None else obs.respondent_id
            order.setdefault(key, []).append(i)
        return [(rid, np.array(idx, dtype=np.intp)) for rid, idx in order.items()]


def empirical_joint(samples: SampleSet) -> JointDistribution:
    """Normalized count table: entry (c, b) = count(c, b) / n."""
    n = len(samples)
    if n == 0:
        raise EmptySampleSet("cannot estimate a distribution from no observations")
    counts = np.zeros((samples.n_choices, samples.n_bins))
    choices = np.fromiter((o.choice for o in samples.observations), np.intp, count=n)
    bins = np.fromiter((o.prediction for o in samples.observations), np.intp, count=n)
    np.add.at(counts, (choices, bins), 1.0)
    return JointDistribution(
        n_choices=samples.n_choices, n_bins=samples.n_bins, mass=counts / n
    )


def empirical_f_variety(samples: SampleSet, kind: DivergenceKind) -> float:
    """Variety of the empirical joint.  Positively biased on noise at small n."""
    return f_variety(empirical_joint(samples), kind)


@dataclass(frozen=True)
class GroupComparison:
    """Outcome of an equalized two-group comparison.

    ``group_a_value`` is the smaller group's metric on its full sample
    (computed once, no error bar); ``group_b_mean``/``group_b_std`` are
    the larger group's metric over repeated subsamples of
    ``subsample_size`` respondents drawn without replacement.
    """

    metric_name: str
    group_a_value: float
    group_b_mean: float
    group_b_std: float
    trials: int
    subsample_size: int

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "metric": self.metric_name,
            "group_a": self.group_a_value,
            "group_b_mean": self.group_b_mean,
            "group_b_std": self.group_b_std,
            "trials": self.trials,
            "subsample_size": self.subsample_size,
        }

    CSV_HEADER = "metric,group_a,group_b_mean,group_b_std,trials,subsample_size"

    def to_csv_row(self) -> str:
        return (
            f"{self.metric_name},{self.group_a_value:.6g},{self.group_b_mean:.6g},"
            f"{self.group_b_std:.6g},{self.trials},{self.subsample_size}"
        )


def _subsampled_values(
    samples: SampleSet,
    units: list[tuple[Hashable, np.ndarray]],
    size: int,
    kind: DivergenceKind,
    trials: int,
    stream: RandomStream,
) -> np.ndarray:
    """Metric over ``trials`` without-replacement respondent subsamples.

    Each trial uses its own derived stream, so values do not depend on
    evaluation order.
    """
    counts_base = np.zeros((samples.n_choices, samples.n_bins))
    choices = np.fromiter(
        (o.choice for o in samples.observations), np.intp, count=len(samples)
    )
    bins = np.fromiter(
        (o.prediction for o in samples.observations), np.intp, count=len(samples)
    )
    values = np.empty(trials)
    n_units = len(units)
    for t in range(trials):
        rng = stream.spawn("subsample-trial", t).generator
        picked = rng.choice(n_units, size=size, replace=False)
        idx = np.concatenate([units[u][1] for u in picked])
        counts = counts_base.copy()
        np.add.at(counts, (choices[idx], bins[idx]), 1.0)
        dist = JointDistribution(
            n_choices=samples.n_choices, n_bins=samples.n_bins,
            mass=counts / counts.sum(),
        )
        values[t] = f_variety(dist, kind)
    return values


def compare_groups_equalized(
    group_a: SampleSet,
    group_b: SampleSet,
    kind: DivergenceKind,
    trials: int = 1000,
    stream: RandomStream | None = None,
) -> GroupComparison:
    """Compare two groups at equal respondent counts.

    The smaller group's metric is computed once on everything it has; the
    larger group is subsampled without replacement to the same respondent
    count ``trials`` times.  When sizes are equal the argument order is
    kept, and the subsample is the whole group, so the std is 0.
    """
    if len(group_a) == 0 or len(group_b) == 0:
        raise EmptySampleSet("both groups need at least one observation")
    if trials < 1:
        raise EmptySampleSet(f"trials must be >= 1, got {trials}")
    if stream is None:
        stream = RandomStream(0)

    units_a = group_a.respondent_units()
    units_b = group_b.respondent_units()
    if len(units_a) <= len(units_b):
        small, small_units = group_a, units_a
        large, large_units = group_b, units_b
    else:
        small, small_units = group_b, units_b
        large, large_units = group_a, units_a

    size = len(small_units)
    once = empirical_f_variety(small, kind)
    values = _subsampled_values(large, large_units, size, kind, trials, stream)
    std = float(values.std(ddof=1)) if trials > 1 else 0.0
    return GroupComparison(
        metric_name=kind.name,
        group_a_value=once,
        group_b_mean=float(values.mean()),
        group_b_std=std,
        trials=trials,
        subsample_size=size,
    )
