"""Quiz scoring and classical item statistics."""

from __future__ import annotations

from blade.errors import NoAttempts, UnknownItem
from blade.study.types import CONFIG_IDS, ItemStats, QuizItem, StudyRecord


def score_quiz(record: StudyRecord, items: list[QuizItem]) -> dict:
    """Percentage score plus per-item correctness; unanswered items count
    incorrect."""
    by_id = {item.item_id: item for item in items if item.quiz_id == record.quiz_id}
    if not by_id:
        raise UnknownItem(f"no items known for quiz {record.quiz_id!r}")
    for item_id in record.responses:
        if item_id not in by_id:
            raise UnknownItem(f"response to unknown item {item_id!r}")
    per_item = {
        item_id: record.responses.get(item_id) == item.correct_option
        for item_id, item in by_id.items()
    }
    correct = sum(per_item.values())
    return {"score_pct": 100.0 * correct / len(by_id), "per_item": per_item}


def item_attempts(item: QuizItem, records: list[StudyRecord], config: str,
                  ) -> tuple[int, int]:
    """(n_attempts, n_correct) for one item under one configuration.

    Every sitting of the item's quiz under the configuration counts as an
    attempt, answered or not.
    """
    n_attempts = 0
    n_correct = 0
    for record in records:
        if record.quiz_id != item.quiz_id or record.config != config:
            continue
        n_attempts += 1
        if record.responses.get(item.item_id) == item.correct_option:
            n_correct += 1
    return n_attempts, n_correct


def difficulty_index(item: QuizItem, records: list[StudyRecord], config: str) -> ItemStats:
    n_attempts, n_correct = item_attempts(item, records, config)
    if n_attempts == 0:
        raise NoAttempts(f"item {item.item_id!r} has no attempts under config {config}")
    return ItemStats(item_id=item.item_id, config=config,
                     n_attempts=n_attempts, n_correct=n_correct)


def item_stats_by_config(item: QuizItem, records: list[StudyRecord],
                         ) -> dict[str, ItemStats]:
    """Difficulty per configuration; configurations without attempts omitted."""
    out = {}
    for config in CONFIG_IDS:
        n_attempts, n_correct = item_attempts(item, records, config)
        if n_attempts:
            out[config] = ItemStats(item.item_id, config, n_attempts, n_correct)
    return out
