"""Quiz impact-study harness: rotation, scoring, analysis, simulation."""

from blade.study.analysis import (
    correct_answer_distribution,
    mean_scores,
    partition_performance,
    resource_usage_report,
    write_analysis_files,
)
from blade.study.records_io import load_study_dir, save_study_dir
from blade.study.rotation import ROTATION, config_for, rotation_table
from blade.study.scoring import (
    difficulty_index,
    item_attempts,
    item_stats_by_config,
    score_quiz,
)
from blade.study.simulate import SimulationParams, simulate_cohort, simulate_items
from blade.study.types import (
    BANDS,
    CONFIG_IDS,
    GROUPS,
    QUIZZES,
    BandCuts,
    ItemStats,
    QuizItem,
    StudyRecord,
    UsageFlags,
)

__all__ = [
    "BANDS",
    "BandCuts",
    "CONFIG_IDS",
    "GROUPS",
    "ItemStats",
    "QUIZZES",
    "QuizItem",
    "ROTATION",
    "SimulationParams",
    "StudyRecord",
    "UsageFlags",
    "config_for",
    "correct_answer_distribution",
    "difficulty_index",
    "item_attempts",
    "item_stats_by_config",
    "load_study_dir",
    "mean_scores",
    "partition_performance",
    "resource_usage_report",
    "rotation_table",
    "save_study_dir",
    "score_quiz",
    "simulate_cohort",
    "simulate_items",
    "write_analysis_files",
]
