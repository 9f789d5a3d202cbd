"""Survey-file ingestion and group-comparison analysis.

Data arrives as two CSV files: one row per (respondent, question) answer
and one row per respondent with side-question attributes.  Answers pair a
choice label with a prediction percent on the 0/10/.../100 grid.  The
analyzer turns a question's filtered answers into a sample set, scores it
with a variety metric and the choice-unbalance baseline, and compares two
respondent groups at equal size via without-replacement subsampling.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .distributions import JointDistribution
from .divergence import DivergenceKind, TVD, baseline, f_variety
from .errors import (
    EmptyGroup,
    ParseError,
    UnknownQuestion,
    ValidationError,
)
from .estimation import (
    GroupComparison,
    Observation,
    SampleSet,
    compare_groups_equalized,
    empirical_joint,
)
from .sampling import RandomStream

N_PREDICTION_BINS = 11

RESPONSES_HEADER = ("respondent_id", "question_id", "choice", "prediction_pct")


@dataclass(frozen=True)
class SurveyQuestion:
    question_id: str
    options: tuple[str, ...]  # sorted distinct choice labels

    @property
    def n_choices(self) -> int:
        return len(self.options)


@dataclass(frozen=True)
class SurveyResponse:
    respondent_id: str
    question_id: str
    choice: str
    prediction_pct: int


@dataclass(frozen=True, eq=False)
class SurveyDataset:
    questions: tuple[SurveyQuestion, ...]
    respondents: dict[str, dict[str, str]]
    responses: tuple[SurveyResponse, ...]

    def question(self, question_id: str) -> SurveyQuestion:
        for q in self.questions:
            if q.question_id == question_id:
                return q
        known = ", ".join(q.question_id for q in self.questions)
        raise UnknownQuestion(f"no question {question_id!r}; known: {known}")

    def attribute_names(self) -> set[str]:
        names: set[str] = set()
        for attrs in self.respondents.values():
            names.update(attrs)
        return names


def _read_rows(path: str) -> tuple[list[str], list[tuple[int, list[str]]]]:
    """CSV rows as (line number, fields), header separated out."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        rows = [(reader.line_num, row) for row in reader]
    rows = [(ln, row) for ln, row in rows if row]
    if not rows:
        raise ParseError(f"{path}: file is empty")
    _, header = rows[0]
    return [h.strip() for h in header], rows[1:]


def load_survey(responses_path: str, respondents_path: str) -> SurveyDataset:
    """Parse and cross-validate the two survey files.

    Malformed rows raise :class:`ParseError` with the file line number;
    rows that parse but break an invariant (prediction off the 10% grid,
    unknown respondent, duplicate answer) raise :class:`ValidationError`.
    """
    header, rows = _read_rows(respondents_path)
    if not header or header[0] != "respondent_id":
        raise ParseError(
            f"{respondents_path}: first column must be respondent_id, got {header!r}"
        )
    attr_names = header[1:]
    respondents: dict[str, dict[str, str]] = {}
    for ln, row in rows:
        if len(row) != len(header):
            raise ParseError(
                f"{respondents_path}:{ln}: expected {len(header)} fields, got {len(row)}"
            )
        rid = row[0].strip()
        if rid in respondents:
            raise ValidationError(
                f"{respondents_path}:{ln}: duplicate respondent id {rid!r}"
            )
        respondents[rid] = {
            name: value.strip() for name, value in zip(attr_names, row[1:])
        }

    header, rows = _read_rows(responses_path)
    if tuple(header) != RESPONSES_HEADER:
        raise ParseError(
            f"{responses_path}: header must be {','.join(RESPONSES_HEADER)}, "
            f"got {','.join(header)}"
        )
    responses: list[SurveyResponse] = []
    seen_pairs: set[tuple[str, str]] = set()
    options: dict[str, set[str]] = {}
    question_order: list[str] = []
    for ln, row in rows:
        if len(row) != 4:
            raise ParseError(f"{responses_path}:{ln}: expected 4 fields, got {len(row)}")
        rid, qid, choice, pct_text = (f.strip() for f in row)
        try:
            pct = int(pct_text)
        except ValueError:
            raise ParseError(
                f"{responses_path}:{ln}: prediction_pct {pct_text!r} is not an integer"
            ) from None
        if pct < 0 or pct > 100 or pct % 10 != 0:
            raise ValidationError(
                f"{responses_path}:{ln}: prediction_pct must be one of "
                f"0,10,...,100, got {pct}"
            )
        if rid not in respondents:
            raise ValidationError(
                f"{responses_path}:{ln}: unknown respondent {rid!r}"
            )
        if (rid, qid) in seen_pairs:
            raise ValidationError(
                f"{responses_path}:{ln}: duplicate answer by {rid!r} to {qid!r}"
            )
        seen_pairs.add((rid, qid))
        if qid not in options:
            options[qid] = set()
            question_order.append(qid)
        options[qid].add(choice)
        responses.append(SurveyResponse(rid, qid, choice, pct))

    questions = tuple(
        SurveyQuestion(qid, tuple(sorted(options[qid]))) for qid in question_order
    )
    return SurveyDataset(
        questions=questions, respondents=respondents, responses=tuple(responses)
    )


@dataclass(frozen=True)
class FilterClause:
    attribute: str
    op: str  # "=", "!=", or "in"
    values: tuple[str, ...]

    def matches(self, attrs: Mapping[str, str]) -> bool:
        value = attrs.get(self.attribute)
        if self.op == "=":
            return value == self.values[0]
        if self.op == "!=":
            return value != self.values[0]
        return value in self.values


@dataclass(frozen=True)
class RespondentFilter:
    """Conjunction of attribute predicates over respondent side answers."""

    clauses: tuple[FilterClause, ...]

    @classmethod
    def parse(cls, text: str) -> "RespondentFilter":
        """Parse e.g. ``"watch=often"``, ``"watch!=never;gender=F"``,
        ``"watch in often|sometimes"``."""
        clauses = []
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            if "!=" in part:
                attr, _, value = part.partition("!=")
                clauses.append(FilterClause(attr.strip(), "!=", (value.strip(),)))
            elif " in " in part:
                attr, _, values = part.partition(" in ")
                alternatives = tuple(v.strip() for v in values.split("|") if v.strip())
                if not alternatives:
                    raise ValidationError(f"filter clause {part!r} lists no values")
                clauses.append(FilterClause(attr.strip(), "in", alternatives))
            elif "=" in part:
                attr, _, value = part.partition("=")
                clauses.append(FilterClause(attr.strip(), "=", (value.strip(),)))
            else:
                raise ValidationError(
                    f"filter clause {part!r} has no operator (=, !=, in)"
                )
        if not clauses:
            raise ValidationError(f"filter {text!r} contains no clauses")
        return cls(clauses=tuple(clauses))

    def validate_against(self, dataset: SurveyDataset) -> None:
        known = dataset.attribute_names()
        for clause in self.clauses:
            if clause.attribute not in known:
                raise ValidationError(
                    f"filter references unknown attribute {clause.attribute!r}; "
                    f"dataset has: {', '.join(sorted(known))}"
                )

    def matches(self, attrs: Mapping[str, str]) -> bool:
        return all(clause.matches(attrs) for clause in self.clauses)


def extract_samples(
    dataset: SurveyDataset,
    question_id: str,
    respondent_filter: RespondentFilter | None = None,
) -> SampleSet:
    """Sample set of one question's answers from the filtered respondents.

    Respondent ids ride along on every observation so group comparisons
    can subsample by respondent.
    """
    question = dataset.question(question_id)
    if respondent_filter is not None:
        respondent_filter.validate_against(dataset)
    index = {label: i for i, label in enumerate(question.options)}
    observations = []
    for resp in dataset.responses:
        if resp.question_id != question_id:
            continue
        if respondent_filter is not None and not respondent_filter.matches(
            dataset.respondents[resp.respondent_id]
        ):
            continue
        observations.append(
            Observation(
                choice=index[resp.choice],
                prediction=resp.prediction_pct // 10,
                respondent_id=resp.respondent_id,
                question_id=question_id,
            )
        )
    if not observations:
        raise EmptyGroup(
            f"no observations for question {question_id!r} under the given filter"
        )
    return SampleSet(
        n_choices=question.n_choices,
        n_bins=N_PREDICTION_BINS,
        observations=tuple(observations),
    )


@dataclass(frozen=True)
class QuestionReport:
    """Per-question metrics; the b-side fields are None for single-group runs.

    ``variety_a``/``variety_b`` are full-group values.  When two groups are
    compared, ``comparison`` holds the equalized-subsampling outcome and
    ``resampled_side`` names the larger group ("a" or "b"), the one whose
    table entry is a subsample mean with an error bar.
    """

    question_id: str
    metric_name: str
    n_a: int
    variety_a: float
    baseline_a: float | None
    n_b: int | None = None
    variety_b: float | None = None
    baseline_b: float | None = None
    comparison: GroupComparison | None = None
    resampled_side: str | None = None


@dataclass(frozen=True)
class AnalysisReport:
    rows: tuple[QuestionReport, ...]

    def to_json_dict(self) -> dict[str, Any]:
        out = []
        for r in self.rows:
            row: dict[str, Any] = {
                "question_id": r.question_id,
                "metric": r.metric_name,
                "respondents_a": r.n_a,
                "variety_a": r.variety_a,
                "baseline_a": r.baseline_a,
            }
            if r.n_b is not None:
                row.update(
                    respondents_b=r.n_b,
                    variety_b=r.variety_b,
                    baseline_b=r.baseline_b,
                    resampled_side=r.resampled_side,
                    comparison=r.comparison.to_json_dict() if r.comparison else None,
                )
            out.append(row)
        return {"questions": out}

    def to_csv(self) -> str:
        two_group = any(r.n_b is not None for r in self.rows)
        buf = io.StringIO()
        if two_group:
            buf.write(
                "question_id,metric,respondents_a,respondents_b,variety_a,variety_b,"
                "baseline_a,baseline_b,resampled_side,resampled_mean,resampled_std,"
                "trials,subsample_size\n"
            )
            for r in self.rows:
                cmp = r.comparison
                assert cmp is not None and r.variety_b is not None
                buf.write(
                    f"{r.question_id},{r.metric_name},{r.n_a},{r.n_b},"
                    f"{r.variety_a:.6g},{r.variety_b:.6g},"
                    f"{_fmt_opt(r.baseline_a)},{_fmt_opt(r.baseline_b)},"
                    f"{r.resampled_side},{cmp.group_b_mean:.6g},"
                    f"{cmp.group_b_std:.6g},{cmp.trials},{cmp.subsample_size}\n"
                )
        else:
            buf.write("question_id,metric,respondents,variety,baseline\n")
            for r in self.rows:
                buf.write(
                    f"{r.question_id},{r.metric_name},{r.n_a},"
                    f"{r.variety_a:.6g},{_fmt_opt(r.baseline_a)}\n"
                )
        return buf.getvalue()

    def to_table(self) -> str:
        """Human-readable table; metric values are scaled by 100.

        The larger group's entries are subsample means with a std; the
        smaller group's entry is its plain full-sample value.
        """
        lines = []
        two_group = any(r.n_b is not None for r in self.rows)
        if two_group:
            lines.append(
                f"{'question':<14}{'metric':<10}{'group A':>16}{'group B':>16}"
                f"{'base A':>9}{'base B':>9}"
            )
            for r in self.rows:
                cmp = r.comparison
                assert cmp is not None
                cell_a = f"{100 * r.variety_a:.1f}"
                cell_b = f"{100 * r.variety_b:.1f}"
                resampled = f"{100 * cmp.group_b_mean:.1f}±{100 * cmp.group_b_std:.1f}"
                if r.resampled_side == "a":
                    cell_a = resampled
                else:
                    cell_b = resampled
                lines.append(
                    f"{r.question_id:<14}{r.metric_name + ' x100':<10}"
                    f"{cell_a:>16}{cell_b:>16}"
                    f"{_fmt_x100(r.baseline_a):>9}{_fmt_x100(r.baseline_b):>9}"
                )
        else:
            lines.append(
                f"{'question':<14}{'metric':<10}{'value':>10}{'baseline':>10}"
            )
            for r in self.rows:
                lines.append(
                    f"{r.question_id:<14}{r.metric_name + ' x100':<10}"
                    f"{100 * r.variety_a:>10.1f}{_fmt_x100(r.baseline_a):>10}"
                )
        return "\n".join(lines) + "\n"


def _fmt_opt(value: float | None) -> str:
    return "" if value is None else f"{value:.6g}"


def _fmt_x100(value: float | None) -> str:
    return "" if value is None else f"{100 * value:.1f}"


def _maybe_baseline(dist: JointDistribution) -> float | None:
    return baseline(dist) if dist.n_choices == 2 else None


def analyze(
    dataset: SurveyDataset,
    question_ids: Sequence[str],
    filter_a: RespondentFilter | None,
    filter_b: RespondentFilter | None = None,
    kind: DivergenceKind = TVD,
    trials: int = 1000,
    stream: RandomStream | None = None,
) -> AnalysisReport:
    """Score each question for one group, or compare two groups.

    With ``filter_b`` present the two groups are compared at equal
    respondent counts (see :func:`compare_groups_equalized`); the error
    bar lands on whichever group is larger for that question.
    """
    if stream is None:
        stream = RandomStream(0)
    rows = []
    for qid in question_ids:
        samples_a = extract_samples(dataset, qid, filter_a)
        joint_a = empirical_joint(samples_a)
        n_a = len(samples_a.respondent_units())
        variety_a = f_variety(joint_a, kind)
        baseline_a = _maybe_baseline(joint_a)
        if filter_b is None:
            rows.append(
                QuestionReport(
                    question_id=qid,
                    metric_name=kind.name,
                    n_a=n_a,
                    variety_a=variety_a,
                    baseline_a=baseline_a,
                )
            )
            continue
        samples_b = extract_samples(dataset, qid, filter_b)
        joint_b = empirical_joint(samples_b)
        n_b = len(samples_b.respondent_units())
        comparison = compare_groups_equalized(
            samples_a, samples_b, kind, trials=trials, stream=stream.spawn("q", qid)
        )
        rows.append(
            QuestionReport(
                question_id=qid,
                metric_name=kind.name,
                n_a=n_a,
                variety_a=variety_a,
                baseline_a=baseline_a,
                n_b=n_b,
                variety_b=f_variety(joint_b, kind),
                baseline_b=_maybe_baseline(joint_b),
                comparison=comparison,
                resampled_side="a" if n_a > n_b else "b",
            )
        )
    return AnalysisReport(rows=tuple(rows))
