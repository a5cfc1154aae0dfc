"""Randomized structural invariants, 10^4 examples per property.

Run alone with ``pytest tests/test_properties.py``.
"""
from collections import Counter

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oracles import all_cluster_decompositions, minimal_marking
from rrg.partitions import Partition, cluster_decompose, gordon_mark
from rrg.paths import (
    LatticePath,
    Step,
    insert_initial_peaks,
    major_index,
    prepend_descent,
    undo_volcanic_uplift,
    volcanic_uplift,
)

EXAMPLES = 10_000
# bodies executed per property, read back by the acceptance suite
CALLS: Counter = Counter()
heavy = settings(max_examples=EXAMPLES, deadline=None, suppress_health_check=[HealthCheck.too_slow])

partitions_st = st.lists(st.integers(1, 12), max_size=14).map(lambda xs: Partition.of(xs))
small_partitions_st = st.lists(st.integers(1, 9), max_size=9).map(lambda xs: Partition.of(xs))


@st.composite
def lattice_paths(draw, max_height: int = 5):
    """A random valid path: walk from its start choosing among the legal steps."""
    top = draw(st.integers(2, max_height))
    start = draw(st.integers(0, top - 1))
    h, steps = start, []
    for choice in draw(st.lists(st.integers(0, 2), max_size=40)):
        legal = [Step.SE] if h > 0 else [Step.E]
        if h + 1 < top:
            legal.append(Step.NE)
        s = legal[choice % len(legal)]
        steps.append(s)
        h += {Step.NE: 1, Step.SE: -1, Step.E: 0}[s]
    steps.extend([Step.SE] * h)
    if steps and steps[-1] is Step.E:
        steps.extend([Step.NE, Step.SE])
    return LatticePath(start, tuple(steps))


@heavy
@given(partitions_st)
def test_marking_is_the_greedy_minimal_one(p):
    CALLS["marking_is_the_greedy_minimal_one"] += 1
    g = gordon_mark(p)
    expected = minimal_marking(p.parts)
    seen = Counter()
    for part, mark in g.entries:
        assert expected[(part, seen[part])] == mark
        seen[part] += 1
    # each mark m > 1 is forced by a conflicting smaller mark at distance <= 1
    marks = {}
    for part, mark in g.entries:
        marks.setdefault(part, set()).add(mark)
    for part, mark in g.entries:
        near = marks.get(part, set()) | marks.get(part - 1, set()) | marks.get(part + 1, set())
        assert all(m in near for m in range(1, mark))


@heavy
@given(small_partitions_st)
def test_cluster_decomposition_is_unique(p):
    CALLS["cluster_decomposition_is_unique"] += 1
    g = gordon_mark(p)
    ours = sorted(tuple(c.members) for c in cluster_decompose(g))
    brute = all_cluster_decompositions(list(g.entries))
    assert brute == [ours]


@heavy
@given(lattice_paths())
def test_uplift_weight_map_and_major_shift(path):
    CALLS["uplift_weight_map_and_major_shift"] += 1
    xs = path.peak_positions()
    up = volcanic_uplift(path)
    assert up.peak_positions() == [x + 2 * i - 1 for i, x in enumerate(xs, start=1)]
    assert major_index(up) - major_index(path) == len(xs) ** 2
    assert max(up.heights()) <= max(path.heights()) + 1
    assert undo_volcanic_uplift(up) == path


@heavy
@given(lattice_paths())
def test_prepend_shifts_major_by_peak_count(path):
    CALLS["prepend_shifts_major_by_peak_count"] += 1
    q = prepend_descent(path)
    assert q.start_height == path.start_height + 1
    assert major_index(q) - major_index(path) == len(path.peak_positions())


@heavy
@given(lattice_paths(), st.integers(0, 12))
def test_insert_shifts_major_by_square_plus_cross_term(path, n):
    CALLS["insert_shifts_major_by_square_plus_cross_term"] += 1
    total = len(path.peak_positions())
    q = insert_initial_peaks(path, n)
    assert major_index(q) - major_index(path) == n * n + 2 * n * total
    assert q.peak_positions()[:n] == list(range(1, 2 * n, 2))
