"""Group-to-configuration rotation across the three quizzes.

The 3x3 assignment is a Latin square: every group meets every resource
configuration exactly once, and every configuration appears once per quiz.

    quiz    config A   config B   config C
    quiz1   group1     group2     group3
    quiz2   group2     group3     group1
    quiz3   group3     group1     group2
"""

from __future__ import annotations

from blade.errors import UnknownGroup, UnknownQuiz
from blade.study.types import CONFIG_IDS, GROUPS, QUIZZES

_GROUP_FOR = {
    ("quiz1", "A"): "group1", ("quiz1", "B"): "group2", ("quiz1", "C"): "group3",
    ("quiz2", "A"): "group2", ("quiz2", "B"): "group3", ("quiz2", "C"): "group1",
    ("quiz3", "A"): "group3", ("quiz3", "B"): "group1", ("quiz3", "C"): "group2",
}

ROTATION: dict[tuple[str, str], str] = {
    (quiz, group): config for (quiz, config), group in _GROUP_FOR.items()
}


def config_for(group: str, quiz_id: str) -> str:
    if group not in GROUPS:
        raise UnknownGroup(f"unknown group {group!r}")
    if quiz_id not in QUIZZES:
        raise UnknownQuiz(f"unknown quiz {quiz_id!r}")
    return ROTATION[(quiz_id, group)]


def rotation_table() -> dict[str, dict[str, str]]:
    """quiz -> config -> group, for display."""
    return {
        quiz: {config: _GROUP_FOR[(quiz, config)] for config in CONFIG_IDS}
        for quiz in QUIZZES
    }
