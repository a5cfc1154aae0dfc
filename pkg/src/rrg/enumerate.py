"""Brute-force generators and count tables for partitions and lattice paths."""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator

from rrg.partitions import (
    FamilySpec,
    Partition,
    cluster_decompose,
    full_lower_even_cluster_parity_index,
    gordon_mark,
    is_member,
)
from rrg.paths import (
    LatticePath,
    PathFamilySpec,
    Step,
    full_lower_even_peak_parity_index,
    is_path_member,
    peaks,
)

__all__ = [
    "gen_partitions",
    "gen_paths",
    "count_partition_family",
    "count_path_family",
    "count_refined_partitions",
    "count_refined_paths",
    "CountTable",
]


def gen_partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None or max_part > n:
        max_part = n

    def rec(rest: int, cap: int, acc: list[int]):
        if rest == 0:
            yield Partition(tuple(acc))
            return
        for part in range(min(rest, cap), 0, -1):
            acc.append(part)
            yield from rec(rest - part, part, acc)
            acc.pop()

    yield from rec(n, max_part, [])


def gen_paths(k: int, a: int, max_major: int) -> Iterator[LatticePath]:
    """Every path obeying the (k, a)-conditions with major index <= ``max_major``.

    Depth-first with two cuts: after an NE step some peak will sit at the
    current abscissa or later, and after an E step a peak must come strictly
    later (the path has to end with an SE).
    """
    start = k - a
    steps: list[Step] = []

    def rec(x: int, h: int, major: int, last: Step | None):
        if h == 0 and (last is Step.SE or (last is None and x == 0)):
            yield LatticePath(start, tuple(steps))
        if last is Step.NE and major + x > max_major:
            return
        if last is Step.E and major + x + 1 > max_major:
            return
        if h + 1 < k and major + x + 1 <= max_major:
            steps.append(Step.NE)
            yield from rec(x + 1, h + 1, major, Step.NE)
            steps.pop()
        if h > 0:
            steps.append(Step.SE)
            yield from rec(x + 1, h - 1, major + (x if last is Step.NE else 0), Step.SE)
            steps.pop()
        if h == 0 and major + x + 2 <= max_major:
            steps.append(Step.E)
            yield from rec(x + 1, 0, major, Step.E)
            steps.pop()

    yield from rec(0, start, 0, None)


def count_partition_family(spec: FamilySpec, max_n: int) -> list[int]:
    """Coefficients c_0 .. c_maxN of the family's generating function."""
    return [sum(1 for p in gen_partitions(n) if is_member(p, spec)) for n in range(max_n + 1)]


def count_path_family(spec: PathFamilySpec, max_n: int) -> list[int]:
    counts = [0] * (max_n + 1)
    for path in gen_paths(spec.k, spec.a, max_n):
        if is_path_member(path, spec):
            counts[sum(path.peak_positions())] += 1
    return counts


def count_refined_partitions(
    spec: FamilySpec, max_n: int, keep: Callable[[Partition], bool] | None = None
) -> Counter:
    """Counter keyed by (l, m, n): parity index, total cluster order, weight."""
    out: Counter = Counter()
    for n in range(max_n + 1):
        for p in gen_partitions(n):
            if not is_member(p, spec) or (keep and not keep(p)):
                continue
            g = gordon_mark(p)
            m = sum(c.order for c in cluster_decompose(g))
            out[(full_lower_even_cluster_parity_index(g, spec.k), m, n)] += 1
    return out


def count_refined_paths(spec: PathFamilySpec, max_n: int) -> Counter:
    """Counter keyed by (l, m, n): parity index, total relative height, major index."""
    out: Counter = Counter()
    for path in gen_paths(spec.k, spec.a, max_n):
        if not is_path_member(path, spec):
            continue
        m = sum(pk.relative_height for pk in peaks(path))
        out[(full_lower_even_peak_parity_index(path, spec.k), m, sum(path.peak_positions()))] += 1
    return out


@dataclass
class CountTable:
    """Counts by n, optionally refined by (l, m)."""

    label: str
    counts: dict[tuple, int] = field(default_factory=dict)
    refined: bool = False

    @classmethod
    def from_list(cls, label: str, coeffs: list[int]) -> "CountTable":
        return cls(label, {(n,): c for n, c in enumerate(coeffs)})

    @classmethod
    def from_refined(cls, label: str, counter: Counter) -> "CountTable":
        return cls(label, dict(sorted(counter.items())), refined=True)

    @property
    def header(self) -> list[str]:
        return ["l", "m", "n", "count"] if self.refined else ["n", "count"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for key, c in sorted(self.counts.items()):
            w.writerow([*key, c])
        return buf.getvalue()

    def to_json(self) -> dict:
        names = self.header[:-1]
        return {
            "label": self.label,
            "rows": [dict(zip(names, key), count=c) for key, c in sorted(self.counts.items())],
        }
