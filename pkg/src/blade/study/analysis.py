"""Cohort analysis: performance bands, correct-answer distributions,
resource-usage survey statistics, and the plot-ready output files.

All functions are pure over the input records; the same records and
configuration always produce the same tables.
"""

from __future__ import annotations

import math
from collections import defaultdict
from pathlib import Path

from blade.errors import NoStudents
from blade.study.scoring import score_quiz
from blade.study.types import BANDS, CONFIG_IDS, BandCuts, QuizItem, StudyRecord


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def mean_scores(records: list[StudyRecord], items: list[QuizItem]) -> dict[str, float]:
    """Mean quiz score percentage per student."""
    totals: dict[str, list[float]] = defaultdict(list)
    for record in records:
        totals[record.student_id].append(score_quiz(record, items)["score_pct"])
    return {sid: sum(v) / len(v) for sid, v in totals.items()}


def partition_performance(records: list[StudyRecord], items: list[QuizItem],
                          cuts: BandCuts | None = None,
                          quiz_id: str | None = None) -> dict[str, str]:
    """Assign each student to upper / mid / lower.

    Students are ranked by mean score across their quizzes (or by their
    score on `quiz_id` when given), descending; ties go to the smaller
    student_id, which therefore takes the higher band. Band sizes are
    round-half-up of the cut fractions; the upper band is never empty.
    """
    cuts = cuts or BandCuts()
    if quiz_id is not None:
        records = [r for r in records if r.quiz_id == quiz_id]
    scores = mean_scores(records, items)
    if not scores:
        raise NoStudents("no records to partition")
    ranked = sorted(scores, key=lambda sid: (-scores[sid], sid))
    n = len(ranked)
    n_upper = max(1, _round_half_up(cuts.upper * n))
    n_mid = min(_round_half_up(cuts.mid * n), n - n_upper)
    assignment = {}
    for pos, sid in enumerate(ranked):
        if pos < n_upper:
            assignment[sid] = "upper"
        elif pos < n_upper + n_mid:
            assignment[sid] = "mid"
        else:
            assignment[sid] = "lower"
    return assignment


def correct_answer_distribution(records: list[StudyRecord], items: list[QuizItem],
                                band: str | None = None,
                                band_assignment: dict[str, str] | None = None,
                                ) -> dict[tuple[str, str], dict[str, float]]:
    """(quiz, config) -> item_id -> fraction of takers answering correctly.

    The denominator is the number of (band-filtered) students sitting that
    quiz under that config. Empty cells are absent from the result, never
    reported as 0/0.
    """
    if band is not None:
        if band not in BANDS:
            raise ValueError(f"unknown band {band!r}")
        if band_assignment is None:
            raise ValueError("band filtering requires a band assignment")
        records = [r for r in records if band_assignment.get(r.student_id) == band]
    takers: dict[tuple[str, str], int] = defaultdict(int)
    for record in records:
        takers[(record.quiz_id, record.config)] += 1

    out: dict[tuple[str, str], dict[str, float]] = {}
    for item in items:
        for config in CONFIG_IDS:
            cell = (item.quiz_id, config)
            n = takers.get(cell, 0)
            if n == 0:
                continue
            correct = sum(
                1
                for r in records
                if r.quiz_id == item.quiz_id
                and r.config == config
                and r.responses.get(item.item_id) == item.correct_option
            )
            out.setdefault(cell, {})[item.item_id] = correct / n
    return out


def resource_usage_report(records: list[StudyRecord]) -> dict[str, dict[str, float]]:
    """Per config: percentage of sittings that used the designated resources.

    Categories are used_blade_only / used_materials_only / used_both /
    used_none and sum to 100 per config. Categories inapplicable to a config
    (materials under A, the assistant under C) are 0 by construction:
    survey flags for resources the config did not provide are ignored.
    """
    out: dict[str, dict[str, float]] = {}
    for config in CONFIG_IDS:
        sittings = [r for r in records if r.config == config]
        if not sittings:
            continue
        counts = {"used_blade_only": 0, "used_materials_only": 0, "used_both": 0, "used_none": 0}
        for record in sittings:
            blade_used = record.used_resources.used_blade and config in ("A", "B")
            materials_used = record.used_resources.used_materials and config in ("B", "C")
            if blade_used and materials_used:
                counts["used_both"] += 1
            elif blade_used:
                counts["used_blade_only"] += 1
            elif materials_used:
                counts["used_materials_only"] += 1
            else:
                counts["used_none"] += 1
        out[config] = {k: 100.0 * v / len(sittings) for k, v in counts.items()}
    return out


def _write_distribution_csv(path: Path, dist: dict[tuple[str, str], dict[str, float]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("quiz_id,config,item_id,fraction_correct\n")
        for (quiz_id, config) in sorted(dist):
            for item_id in sorted(dist[(quiz_id, config)]):
                value = dist[(quiz_id, config)][item_id]
                fh.write(f"{quiz_id},{config},{item_id},{value:.6f}\n")


def write_analysis_files(records: list[StudyRecord], items: list[QuizItem],
                         out_dir: str | Path, cuts: BandCuts | None = None,
                         per_quiz_bands: bool = False) -> list[Path]:
    """Write the six plot-ready stats files and return their paths.

    Four correct-answer distribution files (upper / lower / overall / mid),
    the per-sitting score distribution, and the per-item difficulty indices
    by configuration.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    assignment = partition_performance(records, items, cuts)

    def band_dist(band: str | None) -> dict:
        if band is None:
            return correct_answer_distribution(records, items)
        if per_quiz_bands:
            merged: dict[tuple[str, str], dict[str, float]] = {}
            for quiz_id in sorted({r.quiz_id for r in records}):
                per_quiz = partition_performance(records, items, cuts, quiz_id=quiz_id)
                quiz_records = [r for r in records if r.quiz_id == quiz_id]
                merged.update(
                    correct_answer_distribution(quiz_records, items, band, per_quiz)
                )
            return merged
        return correct_answer_distribution(records, items, band, assignment)

    for band, name in (
        ("upper", "correct_distribution_upper.csv"),
        ("lower", "correct_distribution_lower.csv"),
        (None, "correct_distribution_overall.csv"),
        ("mid", "correct_distribution_mid.csv"),
    ):
        path = out_dir / name
        _write_distribution_csv(path, band_dist(band))
        written.append(path)

    score_path = out_dir / "score_distribution.csv"
    with open(score_path, "w", encoding="utf-8") as fh:
        fh.write("student_id,quiz_id,config,score_pct\n")
        for record in sorted(records, key=lambda r: (r.student_id, r.quiz_id)):
            pct = score_quiz(record, items)["score_pct"]
            fh.write(f"{record.student_id},{record.quiz_id},{record.config},{pct:.4f}\n")
    written.append(score_path)

    from blade.study.scoring import item_stats_by_config

    difficulty_path = out_dir / "difficulty_index.csv"
    with open(difficulty_path, "w", encoding="utf-8") as fh:
        fh.write("quiz_id,item_id,config,n_attempts,n_correct,difficulty_index\n")
        for item in sorted(items, key=lambda i: (i.quiz_id, i.item_id)):
            for config, stats in sorted(item_stats_by_config(item, records).items()):
                fh.write(
                    f"{item.quiz_id},{item.item_id},{config},"
                    f"{stats.n_attempts},{stats.n_correct},{stats.difficulty_index:.6f}\n"
                )
    written.append(difficulty_path)
    return written
