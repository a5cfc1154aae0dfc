import pytest

from oracles import b_member, partitions
from rrg.errors import StructuralError
from rrg.partitions import (
    Cluster,
    FamilySpec,
    GordonMarking,
    Parity,
    Partition,
    cluster_decompose,
    cluster_parity,
    format_partition,
    full_lower_even_cluster_parity_index,
    gordon_mark,
    is_member,
    lower_even_parity_index,
    max_mark_bound_check,
    parity_changes,
    parse_partition,
    satisfies_difference_condition,
)

LAMBDA0 = Partition((13, 11, 11, 11, 9, 8, 6, 6, 5, 4, 3, 3, 2, 1))


def test_partition_normalises_and_validates():
    assert Partition.of([1, 3, 2]).parts == (3, 2, 1)
    assert Partition.of([4, 4]).weight == 8
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((0,))


def test_text_format_roundtrip():
    text = "13,11,11,11,9,8,6,6,5,4,3,3,2,1"
    assert parse_partition(text) == LAMBDA0
    assert format_partition(LAMBDA0) == text
    assert parse_partition("") == Partition()


def test_marking_of_diagram_example():
    g = gordon_mark(Partition.of([1, 1, 2, 3, 4, 4, 5, 5, 6, 6, 8, 9]))
    assert g.rows() == {1: [1, 3, 5, 8], 2: [1, 4, 6, 9], 3: [2, 4, 6], 4: [5]}


def test_marking_of_lambda0():
    g = gordon_mark(LAMBDA0)
    assert g.rows() == {1: [1, 3, 5, 8, 11, 13], 2: [2, 4, 6, 9, 11], 3: [3, 6, 11]}
    assert g.is_valid()


def test_empty_marking():
    g = gordon_mark(Partition())
    assert g.entries == () and g.max_mark == 0


def test_marking_json_roundtrip():
    g = gordon_mark(LAMBDA0)
    assert GordonMarking.from_json(g.to_json()) == g
    assert g.to_json()["entries"][0] == {"part": 13, "mark": 1}


@pytest.mark.parametrize(
    "parts,k,expected",
    [((3, 1), 2, True), ((2, 2, 1), 2, False), (LAMBDA0.parts, 4, True)],
)
def test_max_mark_bound(parts, k, expected):
    assert max_mark_bound_check(Partition(parts), k) is expected


def test_max_mark_bound_matches_frequencies():
    for n in range(16):
        for parts in partitions(n):
            freq = {v: parts.count(v) for v in set(parts)}
            for k in (2, 3, 4):
                by_freq = all(freq.get(l, 0) + freq.get(l + 1, 0) <= k - 1 for l in range(1, n + 1))
                assert max_mark_bound_check(Partition(parts), k) == by_freq


def test_clusters_of_lambda0():
    got = sorted(tuple(c.members) for c in cluster_decompose(gordon_mark(LAMBDA0)))
    assert got == sorted(
        [
            ((1, 1), (2, 2), (3, 3)),
            ((5, 1), (6, 2), (6, 3)),
            ((11, 1), (11, 2), (11, 3)),
            ((3, 1), (4, 2)),
            ((8, 1), (9, 2)),
            ((13, 1),),
        ]
    )


def test_small_cluster_decompositions():
    assert [c.members for c in cluster_decompose(gordon_mark(Partition((5,))))] == [((5, 1),)]
    assert [c.members for c in cluster_decompose(gordon_mark(Partition((2, 1))))] == [((1, 1), (2, 2))]


def test_corrupted_marking_is_rejected():
    # a 2-marked part with no 1-marked partner nearby
    with pytest.raises(StructuralError):
        cluster_decompose(GordonMarking(((1, 1), (5, 2))))


def test_cluster_parity_counts_even_members():
    # parity of the number of even members: all-odd clusters are even
    assert cluster_parity(Cluster(((1, 1), (1, 2)))) is Parity.EVEN
    assert cluster_parity(Cluster(((1, 1), (2, 2), (3, 3)))) is Parity.ODD
    assert cluster_parity(Cluster(((5, 1), (6, 2), (6, 3)))) is Parity.EVEN
    assert cluster_parity(Cluster(((2, 1),))) is Parity.ODD


def test_parity_changes_from_even_sentinel():
    E, O = Parity.EVEN, Parity.ODD
    assert parity_changes([]) == 0
    assert parity_changes([E, E, E]) == 0
    assert parity_changes([O, E, O]) == 3


def test_lower_even_index_without_clusters():
    assert lower_even_parity_index(gordon_mark(Partition((4,))), 2) == 0


def test_full_index_of_small_marking():
    g = gordon_mark(Partition((2, 1)))
    expected = sum(lower_even_parity_index(g, r) for r in (1, 2))
    assert full_lower_even_cluster_parity_index(g, 3) == expected == 1
    assert full_lower_even_cluster_parity_index(gordon_mark(Partition()), 3) == 0


@pytest.mark.parametrize(
    "parts,spec,expected",
    [
        ((4,), ("B", 2, 2), True),
        ((3, 1), ("B", 2, 2), True),
        ((2, 2), ("B", 2, 2), False),
        ((1,), ("B", 3, 1), False),
        ((1,), ("B", 5, 1), False),
        (LAMBDA0.parts, ("B", 4, 3), True),
        ((4,), ("A", 2, 2), True),
        ((2,), ("A", 2, 2), False),
        ((2, 2), ("W", 3, 3), True),
        ((2,), ("W", 3, 3), False),
        ((1, 1), ("Wbar", 3, 3), True),
        ((1,), ("Wbar", 3, 3), False),
        ((2,), ("Btilde", 2, 1), True),
        ((3,), ("Btilde", 2, 1), False),
        ((4,), ("Atilde", 2, 1), False),
        ((2,), ("Atilde", 2, 1), True),
    ],
)
def test_membership_examples(parts, spec, expected):
    assert is_member(Partition(parts), FamilySpec(*spec)) is expected


def test_b_membership_frequency_vs_difference_form():
    for n in range(21):
        for parts in partitions(n):
            p = Partition(parts)
            for k in (2, 3, 4):
                for a in range(1, k + 1):
                    expected = b_member(parts, k, a)
                    assert is_member(p, FamilySpec("B", k, a)) is expected
                    assert satisfies_difference_condition(p, k, a) is expected


def test_family_spec_bounds():
    with pytest.raises(ValueError):
        FamilySpec("B", 1, 1)
    with pytest.raises(ValueError):
        FamilySpec("B", 3, 4)
