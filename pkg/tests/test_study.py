import random

import pytest

from blade.errors import (
    InvalidParameter,
    NoAttempts,
    NoStudents,
    UnknownGroup,
    UnknownItem,
    UnknownQuiz,
)
from blade.study import (
    BandCuts,
    QuizItem,
    StudyRecord,
    UsageFlags,
    config_for,
    correct_answer_distribution,
    difficulty_index,
    item_stats_by_config,
    partition_performance,
    resource_usage_report,
    rotation_table,
    score_quiz,
    simulate_cohort,
)
from oracles import recount_cell, recount_quiz, tally_usage

# the published rotation: quiz -> (config A, config B, config C) groups
PUBLISHED_ROTATION = {
    "quiz1": ("group1", "group2", "group3"),
    "quiz2": ("group2", "group3", "group1"),
    "quiz3": ("group3", "group1", "group2"),
}


def test_rotation_matches_published_table_all_nine_cells():
    for quiz, (a, b, c) in PUBLISHED_ROTATION.items():
        assert config_for(a, quiz) == "A"
        assert config_for(b, quiz) == "B"
        assert config_for(c, quiz) == "C"


def test_rotation_spot_checks():
    assert config_for("group2", "quiz1") == "B"
    assert config_for("group1", "quiz2") == "C"


def test_rotation_is_a_latin_square():
    table = rotation_table()
    # every config appears once per quiz row
    for quiz, row in table.items():
        assert sorted(row.values()) == ["group1", "group2", "group3"]
    # every group meets every config exactly once across quizzes
    for group in ("group1", "group2", "group3"):
        configs = [config_for(group, quiz) for quiz in ("quiz1", "quiz2", "quiz3")]
        assert sorted(configs) == ["A", "B", "C"]


def test_rotation_unknown_inputs():
    with pytest.raises(UnknownGroup):
        config_for("group9", "quiz1")
    with pytest.raises(UnknownQuiz):
        config_for("group1", "quiz9")


# --- scoring ------------------------------------------------------------------


def items_for(quiz_id="quiz1", n=10):
    return [
        QuizItem(quiz_id, f"{quiz_id}-q{i:02d}", ("a", "b", "c", "d"), "a")
        for i in range(n)
    ]


def record_with(n_correct, quiz_id="quiz1", n=10, student="s1", group="group1"):
    items = items_for(quiz_id, n)
    responses = {}
    for i, item in enumerate(items):
        responses[item.item_id] = "a" if i < n_correct else "b"
    return StudyRecord(student, group, quiz_id, config_for(group, quiz_id), responses)


def test_score_quiz_seventy_percent():
    result = score_quiz(record_with(7), items_for())
    assert result["score_pct"] == 70.0
    assert sum(result["per_item"].values()) == 7


def test_score_quiz_empty_responses_zero():
    record = StudyRecord("s1", "group1", "quiz1", "A", {})
    assert score_quiz(record, items_for())["score_pct"] == 0.0


def test_score_quiz_unanswered_count_incorrect():
    items = items_for(n=4)
    record = StudyRecord("s1", "group1", "quiz1", "A", {items[0].item_id: "a"})
    assert score_quiz(record, items)["score_pct"] == 25.0


def test_score_quiz_unknown_item():
    record = StudyRecord("s1", "group1", "quiz1", "A", {"ghost": "a"})
    with pytest.raises(UnknownItem):
        score_quiz(record, items_for())


def test_score_quiz_matches_recount_oracle():
    rng = random.Random(5)
    items = items_for(n=12)
    for _ in range(25):
        responses = {
            item.item_id: rng.choice(("a", "b", "c", "d"))
            for item in items
            if rng.random() < 0.9
        }
        record = StudyRecord("s", "group1", "quiz1", "A", responses)
        assert score_quiz(record, items)["score_pct"] == recount_quiz(record, items)


def test_difficulty_index_arithmetic():
    items = items_for(n=1)
    item = items[0]
    records = []
    for i in range(20):
        responses = {item.item_id: "a" if i < 15 else "c"}
        records.append(StudyRecord(f"s{i}", "group1", "quiz1", "A", responses))
    stats = difficulty_index(item, records, "A")
    assert stats.n_attempts == 20
    assert stats.n_correct == 15
    assert stats.difficulty_index == 0.75


def test_difficulty_index_all_correct_is_one():
    item = items_for(n=1)[0]
    records = [
        StudyRecord(f"s{i}", "group1", "quiz1", "A", {item.item_id: "a"}) for i in range(5)
    ]
    assert difficulty_index(item, records, "A").difficulty_index == 1.0


def test_difficulty_index_no_attempts():
    item = items_for(n=1)[0]
    with pytest.raises(NoAttempts):
        difficulty_index(item, [], "A")


# --- banding ------------------------------------------------------------------


def cohort(n_students, seed=1):
    """Simple synthetic cohort over one quiz per config via the rotation."""
    rng = random.Random(seed)
    items = items_for("quiz1") + items_for("quiz2") + items_for("quiz3")
    records = []
    for i in range(n_students):
        student = f"s{i:03d}"
        group = ("group1", "group2", "group3")[i % 3]
        skill = rng.random()
        for quiz in ("quiz1", "quiz2", "quiz3"):
            responses = {}
            for item in items:
                if item.quiz_id != quiz:
                    continue
                responses[item.item_id] = "a" if rng.random() < skill else "d"
            records.append(
                StudyRecord(student, group, quiz, config_for(group, quiz), responses,
                            UsageFlags(rng.random() < 0.7, rng.random() < 0.5))
            )
    return records, items


def test_partition_counts_100_students():
    records, items = cohort(100)
    bands = partition_performance(records, items)
    counts = {band: 0 for band in ("upper", "mid", "lower")}
    for band in bands.values():
        counts[band] += 1
    assert counts == {"upper": 27, "mid": 46, "lower": 27}


def test_partition_single_student_is_upper():
    records, items = cohort(1)
    assert set(partition_performance(records, items).values()) == {"upper"}


def test_partition_respects_ranking():
    records, items = cohort(50, seed=3)
    from blade.study import mean_scores

    scores = mean_scores(records, items)
    bands = partition_performance(records, items)
    worst_upper = min(scores[s] for s, b in bands.items() if b == "upper")
    best_mid = max((scores[s] for s, b in bands.items() if b == "mid"), default=-1)
    best_lower = max((scores[s] for s, b in bands.items() if b == "lower"), default=-1)
    assert worst_upper >= best_mid >= best_lower


def test_partition_tie_at_boundary_goes_to_smaller_id():
    # two students, identical scores; upper has room for exactly one
    items = items_for(n=2)
    records = [
        StudyRecord("s2", "group1", "quiz1", "A", {items[0].item_id: "a"}),
        StudyRecord("s1", "group1", "quiz1", "A", {items[0].item_id: "a"}),
    ]
    bands = partition_performance(records, items, BandCuts(0.5, 0.5, 0.0))
    assert bands["s1"] == "upper"
    assert bands["s2"] == "mid"


def test_partition_empty_raises():
    with pytest.raises(NoStudents):
        partition_performance([], items_for())


def test_bad_cuts_rejected():
    with pytest.raises(ValueError):
        BandCuts(0.27, 0.46, 0.46)  # sums to 1.19


# --- distributions ------------------------------------------------------------


def test_distribution_cell_value():
    item = items_for(n=1)[0]
    records = []
    for i in range(10):
        records.append(
            StudyRecord(f"s{i}", "group1", "quiz1", "A",
                        {item.item_id: "a" if i < 6 else "b"})
        )
    dist = correct_answer_distribution(records, [item])
    assert dist[("quiz1", "A")][item.item_id] == pytest.approx(0.6)


def test_distribution_empty_cell_absent():
    item = items_for(n=1)[0]
    records = [StudyRecord("s0", "group1", "quiz1", "A", {item.item_id: "a"})]
    dist = correct_answer_distribution(records, [item])
    assert ("quiz1", "B") not in dist
    assert ("quiz1", "C") not in dist


def test_distribution_band_filter_matches_recount():
    records, items = cohort(60, seed=9)
    bands = partition_performance(records, items)
    upper_students = {s for s, b in bands.items() if b == "upper"}
    dist = correct_answer_distribution(records, items, band="upper", band_assignment=bands)
    for item in items:
        for config in ("A", "B", "C"):
            takers, correct = recount_cell(records, item, config, upper_students)
            cell = dist.get((item.quiz_id, config), {})
            if takers == 0:
                assert item.item_id not in cell
            else:
                assert cell[item.item_id] == pytest.approx(correct / takers)


def test_difficulty_equals_all_band_distribution():
    """Two code paths, one number: classical difficulty == overall distribution."""
    records, items = cohort(90, seed=21)
    dist = correct_answer_distribution(records, items)
    for item in items:
        for config, stats in item_stats_by_config(item, records).items():
            assert stats.difficulty_index == pytest.approx(
                dist[(item.quiz_id, config)][item.item_id], abs=1e-12
            )


# --- usage report ---------------------------------------------------------------


def usage_records(config, flags):
    quiz, group = {
        "A": ("quiz1", "group1"),
        "B": ("quiz1", "group2"),
        "C": ("quiz1", "group3"),
    }[config]
    return [
        StudyRecord(f"s{i}", group, quiz, config, {}, UsageFlags(*f))
        for i, f in enumerate(flags)
    ]


def test_usage_config_c_materials_only():
    # 40% set used_materials; blade flag is impossible under C and ignored
    flags = [(False, True)] * 4 + [(False, False)] * 6
    report = resource_usage_report(usage_records("C", flags))
    assert report["C"]["used_materials_only"] == pytest.approx(40.0)
    assert report["C"]["used_none"] == pytest.approx(60.0)
    assert report["C"]["used_blade_only"] == 0.0
    assert report["C"]["used_both"] == 0.0


def test_usage_config_a_never_reports_materials():
    flags = [(True, True), (True, False), (False, True), (False, False)]
    report = resource_usage_report(usage_records("A", flags))
    assert report["A"]["used_materials_only"] == 0.0
    assert report["A"]["used_both"] == 0.0
    assert report["A"]["used_blade_only"] == pytest.approx(50.0)
    assert report["A"]["used_none"] == pytest.approx(50.0)


def test_usage_percentages_sum_to_100_and_match_tally():
    records, _ = cohort(45, seed=2)
    report = resource_usage_report(records)
    for config, cats in report.items():
        assert sum(cats.values()) == pytest.approx(100.0, abs=0.01)
        assert cats == pytest.approx(tally_usage(records, config))


# --- simulator ------------------------------------------------------------------


def test_simulate_deterministic_for_seed():
    a_records, a_items = simulate_cohort(123, n_students=30)
    b_records, b_items = simulate_cohort(123, n_students=30)
    assert a_records == b_records
    assert a_items == b_items
    c_records, _ = simulate_cohort(124, n_students=30)
    assert c_records != a_records


def test_simulate_invalid_parameters():
    from blade.study import SimulationParams

    with pytest.raises(InvalidParameter):
        SimulationParams(skill_low=-0.1)
    with pytest.raises(InvalidParameter):
        SimulationParams(effects={"A": 1.5, "B": 0.1, "C": 0.0})
    with pytest.raises(InvalidParameter):
        simulate_cohort(1, n_students=0)


def test_simulate_effect_ordering_visible_at_scale():
    """effect_B > effect_C must surface as mean difficulty B > C over 1000
    students (Monte-Carlo check; the gap is far beyond sampling noise)."""
    from blade.study import SimulationParams

    params = SimulationParams(effects={"A": 0.05, "B": 0.15, "C": 0.0})
    records, items = simulate_cohort(7, n_students=1000, params=params)
    means = {}
    for config in ("A", "B", "C"):
        values = [
            item_stats_by_config(item, records)[config].difficulty_index for item in items
        ]
        means[config] = sum(values) / len(values)
    assert means["B"] > means["A"] > means["C"]
    assert means["B"] - means["C"] > 0.05


def test_simulate_zero_effects_symmetric():
    """All-zero effects: per-config mean scores agree within 3 standard errors."""
    import math

    from blade.study import SimulationParams

    params = SimulationParams(effects={"A": 0.0, "B": 0.0, "C": 0.0})
    records, items = simulate_cohort(11, n_students=1000, params=params)
    per_config: dict[str, list[float]] = {"A": [], "B": [], "C": []}
    for record in records:
        per_config[record.config].append(score_quiz(record, items)["score_pct"])
    means = {c: sum(v) / len(v) for c, v in per_config.items()}
    # pooled standard error of a difference of means
    def se(c1, c2):
        v1 = sum((x - means[c1]) ** 2 for x in per_config[c1]) / (len(per_config[c1]) - 1)
        v2 = sum((x - means[c2]) ** 2 for x in per_config[c2]) / (len(per_config[c2]) - 1)
        return math.sqrt(v1 / len(per_config[c1]) + v2 / len(per_config[c2]))

    for c1, c2 in (("A", "B"), ("B", "C"), ("A", "C")):
        assert abs(means[c1] - means[c2]) <= 3 * se(c1, c2)
