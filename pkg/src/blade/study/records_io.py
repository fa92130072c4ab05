"""Tabular study-record files.

A records directory holds three CSV files:

  quiz_key.csv   quiz_id,item_id,options,correct_option   (options '|'-separated)
  records.csv    student_id,group,quiz_id,config,used_blade,used_materials
  responses.csv  student_id,quiz_id,item_id,chosen_option

Loading validates that every record's configuration matches the rotation
table for its (group, quiz) cell.
"""

from __future__ import annotations

import csv
from pathlib import Path

from blade.errors import DataError, MissingFile
from blade.study.rotation import config_for
from blade.study.types import QuizItem, StudyRecord, UsageFlags

_FILES = ("quiz_key.csv", "records.csv", "responses.csv")


def save_study_dir(records: list[StudyRecord], items: list[QuizItem],
                   out_dir: str | Path) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "quiz_key.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["quiz_id", "item_id", "options", "correct_option"])
        for item in items:
            writer.writerow([item.quiz_id, item.item_id, "|".join(item.options), item.correct_option])
    with open(out_dir / "records.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["student_id", "group", "quiz_id", "config", "used_blade", "used_materials"])
        for r in records:
            writer.writerow([
                r.student_id, r.group, r.quiz_id, r.config,
                int(r.used_resources.used_blade), int(r.used_resources.used_materials),
            ])
    with open(out_dir / "responses.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["student_id", "quiz_id", "item_id", "chosen_option"])
        for r in records:
            for item_id in sorted(r.responses):
                writer.writerow([r.student_id, r.quiz_id, item_id, r.responses[item_id]])


def load_study_dir(records_dir: str | Path) -> tuple[list[StudyRecord], list[QuizItem]]:
    records_dir = Path(records_dir)
    for name in _FILES:
        if not (records_dir / name).is_file():
            raise MissingFile(records_dir / name)

    items: list[QuizItem] = []
    with open(records_dir / "quiz_key.csv", newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            items.append(
                QuizItem(
                    quiz_id=row["quiz_id"],
                    item_id=row["item_id"],
                    options=tuple(row["options"].split("|")),
                    correct_option=row["correct_option"],
                )
            )

    responses: dict[tuple[str, str], dict[str, str]] = {}
    with open(records_dir / "responses.csv", newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            responses.setdefault((row["student_id"], row["quiz_id"]), {})[
                row["item_id"]
            ] = row["chosen_option"]

    records: list[StudyRecord] = []
    with open(records_dir / "records.csv", newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            expected = config_for(row["group"], row["quiz_id"])
            if row["config"] != expected:
                raise DataError(
                    f"record ({row['student_id']}, {row['quiz_id']}): config "
                    f"{row['config']!r} contradicts the rotation table ({expected!r})"
                )
            records.append(
                StudyRecord(
                    student_id=row["student_id"],
                    group=row["group"],
                    quiz_id=row["quiz_id"],
                    config=row["config"],
                    responses=responses.get((row["student_id"], row["quiz_id"]), {}),
                    used_resources=UsageFlags(
                        used_blade=row["used_blade"] == "1",
                        used_materials=row["used_materials"] == "1",
                    ),
                )
            )
    return records, items
