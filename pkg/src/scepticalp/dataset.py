"""Batch analysis of replication projects reported as correlations.

Correlations are moved to the Fisher z scale, where the standard error
of a study with ``n`` participants is ``1 / sqrt(n - 3)``.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field

from .design import power_replication_success
from .distributions import two_sided_p
from .exceptions import DomainError, InvalidRowError
from .sceptical import sceptical_p_two_sided

__all__ = [
    "AnalyzedStudy",
    "DatasetAnalysis",
    "OUTPUT_COLUMNS",
    "RawStudyRow",
    "analyze_dataset",
    "analyze_row",
    "fisher_z",
    "read_rows_csv",
]

log = logging.getLogger(__name__)

INPUT_COLUMNS = ("study_id", "n_o", "r_o", "n_r", "r_r")
OUTPUT_COLUMNS = (
    "study_id", "n_o", "r_o", "p_o", "n_r", "r_r", "p_r", "c", "power_success", "p_s", "success",
)
DEFAULT_THRESHOLDS = (0.01, 0.05, 0.10, 0.15)


def fisher_z(rho):
    """``artanh(rho)``; raises DomainError unless ``|rho| < 1``."""
    if not -1.0 < rho < 1.0:
        raise DomainError(f"correlation must lie in (-1, 1), got {rho}")
    return math.atanh(rho)


@dataclass(frozen=True)
class RawStudyRow:
    study_id: str
    n_o: int
    r_o: float
    n_r: int
    r_r: float

    def validate(self):
        for name in ("n_o", "n_r"):
            if getattr(self, name) <= 3:
                raise InvalidRowError(self.study_id, f"{name} must exceed 3")
        for name in ("r_o", "r_r"):
            value = getattr(self, name)
            if not (math.isfinite(value) and -1.0 < value < 1.0):
                raise InvalidRowError(self.study_id, f"{name} must lie in (-1, 1)")


@dataclass(frozen=True)
class AnalyzedStudy:
    study_id: str
    n_o: int
    r_o: float
    n_r: int
    r_r: float
    theta_o: float
    theta_r: float
    se_o: float
    se_r: float
    t_o: float
    t_r: float
    c: float
    p_o: float
    p_r: float
    p_s: float
    power_success: float
    original_significant: bool
    replication_significant: bool
    replication_success: bool

    def output_row(self):
        return {
            "study_id": self.study_id, "n_o": self.n_o, "r_o": self.r_o, "p_o": self.p_o,
            "n_r": self.n_r, "r_r": self.r_r, "p_r": self.p_r, "c": self.c,
            "power_success": self.power_success, "p_s": self.p_s,
            "success": self.replication_success,
        }


def analyze_row(row: RawStudyRow, alpha=0.05) -> AnalyzedStudy:
    """Sceptical p-value and predictive power for one study pair.

    Power is the two-sided predictive power for replication success at
    ``alpha`` given the original result and the realised relative sample
    size. Significance flags are two-sided at ``alpha``.
    """
    row.validate()
    theta_o, theta_r = fisher_z(row.r_o), fisher_z(row.r_r)
    se_o, se_r = 1.0 / math.sqrt(row.n_o - 3), 1.0 / math.sqrt(row.n_r - 3)
    t_o, t_r = theta_o / se_o, theta_r / se_r
    c = (row.n_r - 3) / (row.n_o - 3)
    p_o, p_r = two_sided_p(t_o), two_sided_p(t_r)
    p_s = sceptical_p_two_sided(t_o, t_r, c)
    pw = power_replication_success(t_o, c, alpha=alpha, sided=2, prior="normal")
    return AnalyzedStudy(
        row.study_id, row.n_o, row.r_o, row.n_r, row.r_r,
        theta_o, theta_r, se_o, se_r, t_o, t_r, c, p_o, p_r, p_s, pw,
        p_o <= alpha, p_r <= alpha, p_s <= alpha,
    )


@dataclass
class DatasetAnalysis:
    """Studies ranked by ``p_s`` plus summary counts and skipped rows."""

    studies: list
    alpha: float
    thresholds: tuple = DEFAULT_THRESHOLDS
    skipped: list = field(default_factory=list)

    @property
    def summary(self):
        orig_sig = [s for s in self.studies if s.original_significant]
        return {
            "n_studies": len(self.studies),
            "n_skipped": len(self.skipped),
            "alpha": self.alpha,
            "n_original_significant": len(orig_sig),
            "n_original_nonsignificant": len(self.studies) - len(orig_sig),
            "n_replication_significant_given_original": sum(
                s.replication_significant for s in orig_sig
            ),
            "n_success": sum(s.replication_success for s in self.studies),
            "n_p_s_at_most": {
                str(th): sum(s.p_s <= th for s in self.studies) for th in self.thresholds
            },
        }

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=OUTPUT_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for s in self.studies:
            row = s.output_row()
            row["success"] = str(row["success"]).lower()
            writer.writerow(row)
        return buf.getvalue()

    def to_json(self, **kwargs):
        return json.dumps(
            {
                "summary": self.summary,
                "studies": [asdict(s) for s in self.studies],
                "skipped": [{"study_id": e.study_id, "reason": e.reason} for e in self.skipped],
            },
            **kwargs,
        )


def analyze_dataset(rows, alpha=0.05, thresholds=DEFAULT_THRESHOLDS, skipped=()) -> DatasetAnalysis:
    """Analyse every valid row and rank by ``p_s`` (ties by study id).

    Invalid rows are logged and listed in ``skipped`` instead of aborting
    the batch. ``skipped`` may carry parse errors from :func:`read_rows_csv`.
    """
    rows = list(rows)
    if not rows and not skipped:
        raise DomainError("dataset is empty")
    studies, errors = [], list(skipped)
    for row in rows:
        try:
            studies.append(analyze_row(row, alpha))
        except InvalidRowError as exc:
            log.warning("skipping study %s: %s", exc.study_id, exc.reason)
            errors.append(exc)
    if not studies:
        raise DomainError("no valid rows in dataset")
    studies.sort(key=lambda s: (s.p_s, s.study_id))
    return DatasetAnalysis(studies, alpha, tuple(thresholds), errors)


def read_rows_csv(source):
    """Parse ``study_id,n_o,r_o,n_r,r_r`` rows from a path or open file.

    Returns ``(rows, errors)``; rows that do not parse become
    :class:`InvalidRowError` entries.
    """
    if hasattr(source, "read"):
        return _parse(source)
    with open(source, newline="", encoding="utf-8") as fh:
        return _parse(fh)


def _parse(fh):
    reader = csv.DictReader(fh)
    missing = set(INPUT_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise DomainError(f"missing columns: {', '.join(sorted(missing))}")
    rows, errors = [], []
    for i, rec in enumerate(reader, start=2):
        study_id = (rec["study_id"] or "").strip() or f"line{i}"
        try:
            rows.append(RawStudyRow(
                study_id,
                int(rec["n_o"]),
                float(rec["r_o"]),
                int(rec["n_r"]),
                float(rec["r_r"]),
            ))
        except (TypeError, ValueError) as exc:
            err = InvalidRowError(study_id, f"unparseable row: {exc}")
            log.warning("skipping study %s: %s", study_id, err.reason)
            errors.append(err)
    return rows, errors
