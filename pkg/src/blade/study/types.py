"""Domain types for the quiz impact study."""

from __future__ import annotations

from dataclasses import dataclass, field

CONFIG_IDS = ("A", "B", "C")  # A: assistant only, B: assistant + materials, C: materials only
GROUPS = ("group1", "group2", "group3")
QUIZZES = ("quiz1", "quiz2", "quiz3")
BANDS = ("upper", "mid", "lower")


@dataclass(frozen=True)
class QuizItem:
    quiz_id: str
    item_id: str
    options: tuple[str, ...]
    correct_option: str

    def __post_init__(self):
        object.__setattr__(self, "options", tuple(self.options))
        if len(self.options) < 2:
            raise ValueError(f"item {self.item_id!r} needs at least 2 options")
        if self.correct_option not in self.options:
            raise ValueError(f"item {self.item_id!r}: correct option not among options")


@dataclass(frozen=True)
class UsageFlags:
    used_blade: bool = False
    used_materials: bool = False


@dataclass(frozen=True)
class StudyRecord:
    """One student's sitting of one quiz under one resource configuration."""

    student_id: str
    group: str
    quiz_id: str
    config: str
    responses: dict[str, str] = field(default_factory=dict)  # item_id -> chosen option
    used_resources: UsageFlags = UsageFlags()

    def __post_init__(self):
        if self.config not in CONFIG_IDS:
            raise ValueError(f"bad config {self.config!r}")
        if self.group not in GROUPS:
            raise ValueError(f"bad group {self.group!r}")


@dataclass(frozen=True)
class ItemStats:
    item_id: str
    config: str
    n_attempts: int
    n_correct: int

    def __post_init__(self):
        if self.n_attempts < 1 or self.n_correct > self.n_attempts:
            raise ValueError("need 0 <= n_correct <= n_attempts, n_attempts >= 1")

    @property
    def difficulty_index(self) -> float:
        """Classical item difficulty p: fraction answering correctly (higher = easier)."""
        return self.n_correct / self.n_attempts


@dataclass(frozen=True)
class BandCuts:
    """Fractions of the ranked cohort per band; must sum to 1."""

    upper: float = 0.27
    mid: float = 0.46
    lower: float = 0.27

    def __post_init__(self):
        if abs(self.upper + self.mid + self.lower - 1.0) > 1e-9:
            raise ValueError("band fractions must sum to 1")
        if min(self.upper, self.mid, self.lower) < 0:
            raise ValueError("band fractions must be non-negative")
