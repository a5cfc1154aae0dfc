"""Backward and forward moves on Gordon markings, and the map phi.

phi strips a B_{k,a} partition down to the minimal-weight partition mu with
the same cluster counts. Each cluster is pushed down by backward moves until
it sits in its lowest slot; the number of moves spent on every r-cluster is
recorded as a part of pi^(r).
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from rrg.errors import InvalidLedgerError, MoveUnderflowError, MoveValidityError, StructuralError
from rrg.partitions import (
    Family,
    FamilySpec,
    GordonMarking,
    Partition,
    cluster_decompose,
    gordon_mark,
    is_member,
)

__all__ = [
    "BijectionLedger",
    "base_partition",
    "backward_move",
    "forward_move",
    "target_shape",
    "phi",
    "phi_inverse",
    "cluster_counts",
]


def _counts_to_cumulative(counts: Sequence[int]) -> list[int]:
    """N_r = n_r + ... + n_{k-1}, returned as [N_1, ..., N_{k-1}]."""
    cumulative = []
    total = 0
    for n in reversed(counts):
        total += n
        cumulative.append(total)
    return cumulative[::-1]


def cluster_counts(g: GordonMarking, k: int) -> tuple[int, ...]:
    """(n_1, ..., n_{k-1}): number of r-clusters for each r."""
    orders = Counter(c.order for c in cluster_decompose(g))
    if orders and max(orders) > k - 1:
        raise ValueError(f"marking has a {max(orders)}-cluster but k - 1 = {k - 1}")
    return tuple(orders[r] for r in range(1, k))


def base_partition(k: int, a: int, counts: Sequence[int]) -> GordonMarking:
    """Minimal-weight member of B_{k,a} with ``counts[r-1]`` r-clusters.

    Its r-marked parts are 1, 3, ..., 2N_r - 1 when r < a and 2, 4, ..., 2N_r
    when r >= a.
    """
    if k < 2 or not 1 <= a <= k:
        raise ValueError(f"invalid parameters k={k}, a={a}")
    counts = list(counts)
    if len(counts) != k - 1:
        raise ValueError(f"expected {k - 1} cluster counts, got {len(counts)}")
    if any(n < 0 for n in counts):
        raise ValueError(f"cluster counts must be non-negative, got {counts}")
    entries = []
    for r, big_n in enumerate(_counts_to_cumulative(counts), start=1):
        offset = 1 if r <= a - 1 else 2
        entries.extend((offset + 2 * i, r) for i in range(big_n))
    mu = GordonMarking(tuple(entries))
    if gordon_mark(mu.partition()) != mu:
        raise StructuralError(f"base partition for counts {counts} is not self-consistently marked")
    return mu


def _replace(g: GordonMarking, old: int, new: int) -> Partition:
    parts = [p for p, _ in g.entries]
    parts.remove(old)
    if new > 0:
        parts.append(new)
    return Partition.of(parts)


def _check_bound(g: GordonMarking, k: int | None) -> GordonMarking:
    if k is not None and g.max_mark > k - 1:
        raise MoveValidityError(f"move creates mark {g.max_mark} > k - 1 = {k - 1}")
    return g


def _orders(g: GordonMarking) -> Counter:
    try:
        return Counter(c.order for c in cluster_decompose(g))
    except StructuralError:
        return Counter()


def backward_move(g: GordonMarking, r: int, k: int | None = None) -> GordonMarking:
    """Lower the smallest r-marked part by one and remark the whole partition."""
    marked = g.marked(r)
    if not marked:
        raise ValueError(f"no {r}-marked part to move")
    p = marked[0]
    if p == 1:
        raise MoveUnderflowError(f"the smallest {r}-marked part is already 1")
    return _check_bound(gordon_mark(_replace(g, p, p - 1)), k)


def forward_move(g: GordonMarking, r: int, k: int | None = None) -> GordonMarking:
    """Inverse of :func:`backward_move`.

    The preimage differs from ``g`` by raising a single part; every distinct
    part value is tried and the unique candidate that maps back to ``g`` wins.
    """
    shape = _orders(g)
    found = []
    for v in sorted({p for p, _ in g.entries}):
        cand = gordon_mark(_replace(g, v, v + 1))
        if not cand.marked(r) or cand.marked(r)[0] != v + 1:
            continue
        if _orders(cand) == shape and backward_move(cand, r) == g:
            found.append(cand)
    if not found:
        raise StructuralError(f"no forward move of kind {r} leads back to this marking")
    if len(found) > 1:
        raise StructuralError(f"ambiguous forward move of kind {r}: {len(found)} preimages")
    return _check_bound(found[0], k)


def target_shape(r: int, m: int, a: int) -> tuple[int, ...]:
    """Sorted parts of the r-cluster occupying slot ``m`` of the base partition."""
    if r >= a:
        return (2 * m + 1,) * (a - 1) + (2 * m + 2,) * (r - a + 1)
    return (2 * m + 1,) * r


@dataclass(frozen=True)
class BijectionLedger:
    """Output of phi: base partition ``mu`` and move partitions ``pis``.

    ``pis[r - 1]`` is pi^(r), stored non-increasing.
    """

    k: int
    a: int
    mu: GordonMarking
    pis: tuple[tuple[int, ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(pi) for pi in self.pis)

    @property
    def weight(self) -> int:
        return self.mu.weight + sum(sum(pi) for pi in self.pis)

    def validate(self) -> None:
        if len(self.pis) != self.k - 1:
            raise InvalidLedgerError(f"expected {self.k - 1} move partitions, got {len(self.pis)}")
        for r, pi in enumerate(self.pis, start=1):
            if any(x < 0 for x in pi):
                raise InvalidLedgerError(f"pi^({r}) has a negative part: {pi}")
            if any(pi[i] < pi[i + 1] for i in range(len(pi) - 1)):
                raise InvalidLedgerError(f"pi^({r}) is not non-increasing: {pi}")
        try:
            expected = base_partition(self.k, self.a, self.counts)
        except ValueError as exc:
            raise InvalidLedgerError(str(exc)) from exc
        if expected != self.mu:
            raise InvalidLedgerError("mu is not the base partition for the cluster counts of pis")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "a": self.a,
            "mu": self.mu.to_json()["entries"],
            "pis": [list(pi) for pi in self.pis],
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> "BijectionLedger":
        if isinstance(doc, str):
            doc = json.loads(doc)
        mu = GordonMarking(tuple((e["part"], e["mark"]) for e in doc["mu"]))
        return cls(int(doc["k"]), int(doc["a"]), mu, tuple(tuple(int(x) for x in pi) for pi in doc["pis"]))


def phi(p: Partition, k: int, a: int) -> BijectionLedger:
    if not is_member(p, FamilySpec(Family.B, k, a)):
        raise ValueError(f"{p} is not counted by B_{{{k},{a}}}")
    lam = gordon_mark(p)
    moves_by_order: dict[int, list[int]] = {r: [] for r in range(1, k)}
    m = 0
    while lam.entries:
        r = lam.max_mark
        target = target_shape(r, m, a)
        moves = 0
        # each backward move lowers the weight by one, so |p| caps the loop
        for _ in range(p.weight + 1):
            lowest = min((c for c in cluster_decompose(lam) if c.order == r), key=lambda c: c.top)
            if lowest.parts == target:
                break
            if lowest.weight <= sum(target):
                raise StructuralError(f"{r}-cluster {lowest.parts} slipped past its target {target}")
            shape = _orders(lam)
            lam = backward_move(lam, r, k)
            if _orders(lam) != shape:
                raise StructuralError("a backward move changed the cluster counts")
            moves += 1
        else:
            raise StructuralError("backward moves did not terminate")
        remaining = Counter(x for x, _ in lam.entries)
        remaining.subtract(lowest.parts)
        lam = gordon_mark(Partition.of(remaining.elements()))
        moves_by_order[r].append(moves)
        m += 1

    for r, seq in moves_by_order.items():
        if any(seq[i] > seq[i + 1] for i in range(len(seq) - 1)):
            raise StructuralError(f"move counts for order {r} decrease along deposits: {seq}")
    counts = [len(moves_by_order[r]) for r in range(1, k)]
    pis = tuple(tuple(sorted(moves_by_order[r], reverse=True)) for r in range(1, k))
    return BijectionLedger(k, a, base_partition(k, a, counts), pis)


def phi_inverse(ledger: BijectionLedger) -> Partition:
    ledger.validate()
    k, a = ledger.k, ledger.a
    deposits = []
    m = 0
    for r in range(k - 1, 0, -1):
        for moves in reversed(ledger.pis[r - 1]):
            deposits.append((r, m, moves))
            m += 1
    parts: list[int] = []
    for r, m, moves in reversed(deposits):
        parts.extend(target_shape(r, m, a))
        lam = gordon_mark(Partition.of(parts))
        for _ in range(moves):
            lam = forward_move(lam, r, k)
        parts = [x for x, _ in lam.entries]
    return Partition.of(parts)
