"""Partitions, Gordon markings, clusters and partition-family membership.

A Gordon marking assigns each part the smallest positive mark not already
taken by an equal part or by a part one smaller, scanning parts in increasing
order. Parts with the same mark chain together into clusters; the cluster
statistics defined here feed the refined (l, m, n) counts.
"""
from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from rrg.errors import StructuralError

__all__ = [
    "Partition",
    "GordonMarking",
    "Cluster",
    "Parity",
    "Family",
    "FamilySpec",
    "gordon_mark",
    "max_mark_bound_check",
    "cluster_decompose",
    "cluster_parity",
    "lower_even_parity_index",
    "full_lower_even_cluster_parity_index",
    "parity_changes",
    "is_member",
    "satisfies_difference_condition",
    "parse_partition",
    "format_partition",
]


@dataclass(frozen=True)
class Partition:
    """Non-increasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def frequency(self, value: int) -> int:
        return self.parts.count(value)

    def frequencies(self) -> Counter:
        return Counter(self.parts)

    def __str__(self) -> str:
        return format_partition(self)


def parse_partition(text: str) -> Partition:
    """Parse the comma separated text format, e.g. ``"13,11,11,2"``."""
    text = text.strip()
    if not text:
        return Partition()
    return Partition.of(int(tok) for tok in text.split(",") if tok.strip())


def format_partition(p: Partition) -> str:
    return ",".join(str(x) for x in p.parts)


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls.ODD if n % 2 else cls.EVEN

    def flip(self) -> "Parity":
        return Parity.ODD if self is Parity.EVEN else Parity.EVEN


@dataclass(frozen=True)
class GordonMarking:
    """Marked partition stored as (part, mark) pairs sorted by part then mark.

    Equal parts carry distinct marks, so each (part, mark) pair is unique.
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        entries = tuple(sorted((int(p), int(m)) for p, m in self.entries))
        if len(set(entries)) != len(entries):
            raise StructuralError(f"duplicate (part, mark) entries in {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def max_mark(self) -> int:
        return max((m for _, m in self.entries), default=0)

    @property
    def weight(self) -> int:
        return sum(p for p, _ in self.entries)

    def partition(self) -> Partition:
        return Partition.of(p for p, _ in self.entries)

    def marked(self, r: int) -> list[int]:
        """Sorted parts carrying mark ``r``."""
        return sorted(p for p, m in self.entries if m == r)

    def count(self, r: int) -> int:
        """N_r, the number of r-marked parts."""
        return sum(1 for _, m in self.entries if m == r)

    def rows(self) -> dict[int, list[int]]:
        return {r: self.marked(r) for r in range(1, self.max_mark + 1)}

    def is_valid(self) -> bool:
        """Distinct-mark and minimality invariants of a Gordon marking."""
        entries = set(self.entries)
        for p, m in entries:
            if m < 1 or p < 1:
                return False
            for q in (p, p - 1, p + 1):
                if q != p and (q, m) in entries:
                    return False
            for smaller in range(1, m):
                if (p, smaller) not in entries and (p - 1, smaller) not in entries:
                    return False
        return True

    def to_json(self) -> dict:
        return {"entries": [{"part": p, "mark": m} for p, m in sorted(self.entries, key=lambda e: (-e[0], e[1]))]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "GordonMarking":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(tuple((e["part"], e["mark"]) for e in doc["entries"]))


def gordon_mark(p: Partition | Sequence[int]) -> GordonMarking:
    """Gordon marking of ``p``; equal parts are marked in a fixed order."""
    parts = sorted(p.parts if isinstance(p, Partition) else p)
    used: dict[int, set[int]] = {}
    entries = []
    for part in parts:
        taken = used.get(part, set()) | used.get(part - 1, set())
        mark = 1
        while mark in taken:
            mark += 1
        used.setdefault(part, set()).add(mark)
        entries.append((part, mark))
    return GordonMarking(tuple(entries))


def max_mark_bound_check(p: Partition, k: int) -> bool:
    """True iff every mark of ``p`` is at most k - 1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return gordon_mark(p).max_mark <= k - 1


@dataclass(frozen=True)
class Cluster:
    """An r-cluster; ``members[j]`` is the (part, mark) pair with mark j + 1."""

    members: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def weight(self) -> int:
        return sum(p for p, _ in self.members)

    @property
    def top(self) -> int:
        """The r-marked member."""
        return self.members[-1][0]

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.members)

    def is_valid_in(self, g: GordonMarking) -> bool:
        r = self.order
        if [m for _, m in self.members] != list(range(1, r + 1)):
            return False
        ps = self.parts
        if any(not 0 <= ps[j + 1] - ps[j] <= 1 for j in range(r - 1)):
            return False
        hosts = set(g.entries)
        if any(e not in hosts for e in self.members):
            return False
        return (self.top, r + 1) not in hosts and (self.top + 1, r + 1) not in hosts


def cluster_decompose(g: GordonMarking) -> list[Cluster]:
    """Split a marking into its clusters, highest order first.

    Within an order, clusters are listed by increasing top part. At each mark
    level the largest unused candidate in [current - 1, current] is attached.
    """
    unused = set(g.entries)
    clusters = []
    for r in range(g.max_mark, 0, -1):
        for top in g.marked(r):
            if (top, r) not in unused:
                continue
            unused.discard((top, r))
            chain = [(top, r)]
            current = top
            for j in range(r - 1, 0, -1):
                if (current, j) in unused:
                    pick = current
                elif (current - 1, j) in unused:
                    pick = current - 1
                else:
                    raise StructuralError(f"no {j}-marked part below {current} for the {r}-cluster topped by {top}")
                unused.discard((pick, j))
                chain.append((pick, j))
                current = pick
            clusters.append(Cluster(tuple(reversed(chain))))
    if unused:
        raise StructuralError(f"entries left outside every cluster: {sorted(unused)}")
    return clusters


def cluster_parity(c: Cluster) -> Parity:
    """Parity of the number of even members.

    A cluster made only of odd parts is even, and each forward move on it
    flips the parity.
    """
    evens = sum(1 for p in c.parts if p % 2 == 0)
    return Parity.of(evens)


def parity_changes(parities: Iterable[Parity]) -> int:
    """Number of adjacent changes in ``parities`` after an EVEN sentinel."""
    prev = Parity.EVEN
    changes = 0
    for par in parities:
        if par is not prev:
            changes += 1
        prev = par
    return changes


def lower_even_parity_index(g: GordonMarking, r: int, clusters: Sequence[Cluster] | None = None) -> int:
    if r < 1:
        raise ValueError("r must be positive")
    if clusters is None:
        clusters = cluster_decompose(g)
    ordered = sorted((c for c in clusters if c.order == r), key=lambda c: c.top)
    return parity_changes(cluster_parity(c) for c in ordered)


def full_lower_even_cluster_parity_index(g: GordonMarking, k: int) -> int:
    if g.max_mark > k - 1:
        raise ValueError(f"marking uses mark {g.max_mark} > k - 1 = {k - 1}")
    clusters = cluster_decompose(g)
    return sum(lower_even_parity_index(g, r, clusters) for r in range(1, k))


class Family(str, enum.Enum):
    B = "B"
    A = "A"
    W = "W"
    WBAR = "Wbar"
    BTILDE = "Btilde"
    ATILDE = "Atilde"


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    k: int
    a: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if not 1 <= self.a <= self.k:
            raise ValueError(f"need 1 <= a <= k, got a={self.a}, k={self.k}")


def _frequency_ok(freq: Counter, k: int, a: int) -> bool:
    if freq[1] > a - 1:
        return False
    return all(freq[l] + freq[l + 1] <= k - 1 for l in list(freq))


def satisfies_difference_condition(p: Partition, k: int, a: int) -> bool:
    """Gordon's original form: lambda_j - lambda_{j+k-1} >= 2, at most a-1 ones."""
    parts = p.parts
    if parts.count(1) > a - 1:
        return False
    return all(parts[j] - parts[j + k - 1] >= 2 for j in range(len(parts) - k + 1))


def is_member(p: Partition, spec: FamilySpec) -> bool:
    k, a = spec.k, spec.a
    fam = spec.family
    if fam is Family.A:
        mod = 2 * k + 1
        return all(x % mod not in (0, a % mod, (-a) % mod) for x in p.parts)
    if fam is Family.ATILDE:
        mod = 2 * k
        return all(x % mod not in (0, a % mod, (-a) % mod) for x in p.parts)

    freq = p.frequencies()
    if not _frequency_ok(freq, k, a):
        return False
    if fam is Family.B:
        return True
    if fam is Family.W:
        return all(c % 2 == 0 for v, c in freq.items() if v % 2 == 0)
    if fam is Family.WBAR:
        return all(c % 2 == 0 for v, c in freq.items() if v % 2 == 1)
    # Btilde: where f_l + f_{l+1} hits k - 1 the weight of those parts has parity a - 1
    for l in set(freq) | {v - 1 for v in freq}:
        if l >= 1 and freq[l] + freq[l + 1] == k - 1:
            if (l * freq[l] + (l + 1) * freq[l + 1]) % 2 != (a - 1) % 2:
                return False
    return True
