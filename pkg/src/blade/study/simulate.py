"""Synthetic-student cohort simulator for end-to-end pipeline tests.

Correctness of student s on any item of a quiz sat under configuration c is
Bernoulli with p = clamp(skill_s + effect_c, 0, 1); skills are uniform in
[skill_low, skill_high]. Deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from blade.errors import InvalidParameter
from blade.study.rotation import config_for
from blade.study.types import GROUPS, QUIZZES, QuizItem, StudyRecord, UsageFlags

_OPTIONS = ("a", "b", "c", "d")

# survey response rates: probability a student reports using each provided resource
_USAGE_P = {
    "A": {"blade": 0.85, "materials": 0.0},
    "B": {"blade": 0.75, "materials": 0.55},
    "C": {"blade": 0.0, "materials": 0.60},
}


@dataclass(frozen=True)
class SimulationParams:
    skill_low: float = 0.35
    skill_high: float = 0.85
    effects: dict = field(default_factory=lambda: {"A": 0.05, "B": 0.12, "C": 0.0})
    items_per_quiz: int = 10

    def __post_init__(self):
        values = [self.skill_low, self.skill_high, *self.effects.values()]
        if any(not 0.0 <= v <= 1.0 for v in values):
            raise InvalidParameter("skill bounds and config effects must lie in [0, 1]")
        if self.skill_low > self.skill_high:
            raise InvalidParameter("skill_low must not exceed skill_high")
        if set(self.effects) != {"A", "B", "C"}:
            raise InvalidParameter("effects must cover exactly configs A, B, C")
        if self.items_per_quiz < 1:
            raise InvalidParameter("items_per_quiz must be positive")


def simulate_items(seed: int, items_per_quiz: int = 10) -> list[QuizItem]:
    rng = np.random.default_rng(seed)
    items = []
    for quiz_id in QUIZZES:
        for i in range(items_per_quiz):
            correct = _OPTIONS[int(rng.integers(len(_OPTIONS)))]
            items.append(
                QuizItem(
                    quiz_id=quiz_id,
                    item_id=f"{quiz_id}-q{i + 1:02d}",
                    options=_OPTIONS,
                    correct_option=correct,
                )
            )
    return items


def simulate_cohort(seed: int, n_students: int = 85,
                    params: SimulationParams | None = None,
                    ) -> tuple[list[StudyRecord], list[QuizItem]]:
    params = params or SimulationParams()
    if n_students < 1:
        raise InvalidParameter("n_students must be positive")
    items = simulate_items(seed, params.items_per_quiz)
    by_quiz: dict[str, list[QuizItem]] = {q: [] for q in QUIZZES}
    for item in items:
        by_quiz[item.quiz_id].append(item)

    rng = np.random.default_rng(seed + 1)
    records: list[StudyRecord] = []
    for s in range(n_students):
        student_id = f"s{s + 1:04d}"
        group = GROUPS[s % len(GROUPS)]
        skill = float(rng.uniform(params.skill_low, params.skill_high))
        for quiz_id in QUIZZES:
            config = config_for(group, quiz_id)
            p = min(1.0, max(0.0, skill + params.effects[config]))
            responses = {}
            for item in by_quiz[quiz_id]:
                if rng.random() < p:
                    responses[item.item_id] = item.correct_option
                else:
                    wrong = [o for o in item.options if o != item.correct_option]
                    responses[item.item_id] = wrong[int(rng.integers(len(wrong)))]
            usage = UsageFlags(
                used_blade=bool(rng.random() < _USAGE_P[config]["blade"]),
                used_materials=bool(rng.random() < _USAGE_P[config]["materials"]),
            )
            records.append(
                StudyRecord(
                    student_id=student_id,
                    group=group,
                    quiz_id=quiz_id,
                    config=config,
                    responses=responses,
                    used_resources=usage,
                )
            )
    return records, items
