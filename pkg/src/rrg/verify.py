"""Side-by-side checks of the counting identities.

Each identity names two or more independent computations (enumerations,
multisums, products). A report lists every compared coefficient and is a
PASS only when all sides agree everywhere.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from rrg.enumerate import (
    count_partition_family,
    count_path_family,
    count_refined_partitions,
    count_refined_paths,
)
from rrg.errors import ParityConstraintError, UnknownSeriesError
from rrg.partitions import FamilySpec
from rrg.paths import PathFamilySpec
from rrg.qseries import eval_master, eval_multisum, eval_product

__all__ = ["VerificationReport", "IDENTITIES", "verify"]


@dataclass
class VerificationReport:
    identity: str
    k: int
    a: int
    bound: int
    sides: list[str]
    # key -> value of each side, in ``sides`` order
    rows: dict[tuple, list[int]] = field(default_factory=dict)
    runtime: float = 0.0
    version: str = ""

    @property
    def mismatches(self) -> list[tuple]:
        return [key for key, vals in sorted(self.rows.items()) if len(set(vals)) > 1]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def first_mismatch(self) -> tuple | None:
        bad = self.mismatches
        return bad[0] if bad else None

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.identity} k={self.k} a={self.a} bound={self.bound} ({' = '.join(self.sides)})"
        if not self.passed:
            key = self.first_mismatch
            vals = ", ".join(f"{s}={v}" for s, v in zip(self.sides, self.rows[key]))
            line += f"; first mismatch at {_fmt_key(key)}: {vals}; {len(self.mismatches)} mismatching coefficients"
        return line

    def to_json(self) -> dict:
        key_names = ["l", "m", "n"] if self.rows and len(next(iter(self.rows))) == 3 else ["n"]
        return {
            "identity": self.identity,
            "version": self.version,
            "params": {"k": self.k, "a": self.a, "bound": self.bound},
            "status": "PASS" if self.passed else "FAIL",
            "sides": self.sides,
            "first_mismatch": dict(zip(key_names, self.first_mismatch)) if self.first_mismatch else None,
            "rows": [
                {**dict(zip(key_names, key)), "values": vals, "match": len(set(vals)) == 1}
                for key, vals in sorted(self.rows.items())
            ],
            "runtime_s": round(self.runtime, 4),
        }


def _fmt_key(key: tuple) -> str:
    if len(key) == 1:
        return f"q^{key[0]}"
    return "y^{}x^{}q^{}".format(*key)


Side = Callable[[int, int, int], list[int]]


def _parts(family: str) -> Side:
    return lambda k, a, n: count_partition_family(FamilySpec(family, k, a), n)


def _paths(family: str) -> Side:
    return lambda k, a, n: count_path_family(PathFamilySpec(family, k, a), n)


def _sum(spec_id: str) -> Side:
    return lambda k, a, n: list(eval_multisum(spec_id, k, a, n).coeffs)


def _prod(spec_id: str) -> Side:
    return lambda k, a, n: list(eval_product(spec_id, k, a, n).coeffs)


def _w_sides(k: int, a: int) -> list[tuple[str, Side]]:
    tag = "same" if (k - a) % 2 == 0 else "diff"
    return [(f"w-sum-{tag}", _sum(f"w-sum-{tag}")), (f"w-prod-{tag}", _prod(f"w-prod-{tag}"))]


def _wbar_tag(k: int, a: int) -> str | None:
    if k % 2 == 1 and a % 2 == 0:
        return "koa"
    if k % 2 == 0 and a % 2 == 1:
        return "kea"
    return None


def _wbar_sides(k: int, a: int, strict: bool) -> list[tuple[str, Side]]:
    tag = _wbar_tag(k, a)
    if tag is None:
        if strict:
            raise ParityConstraintError("needs k odd with a even, or k even with a odd")
        return []
    return [(f"wbar-sum-{tag}", _sum(f"wbar-sum-{tag}")), (f"wbar-prod-{tag}", _prod(f"wbar-prod-{tag}"))]


def _q_sides(k: int, a: int) -> list[tuple[str, Side]]:
    sid = "q-sum-aodd" if a % 2 else "q-sum-aeven"
    return [(sid, _sum(sid))]


# identity id -> builder returning the named sides for (k, a)
IDENTITIES: dict[str, Callable[[int, int], list[tuple[str, Side]]]] = {
    "thm1": lambda k, a: [("A", _parts("A")), ("B", _parts("B"))],
    "eq2": lambda k, a: [("ag-sum", _sum("ag-sum")), ("ag-prod", _prod("ag-prod"))],
    "thm3": lambda k, a: [("Atilde", _parts("Atilde")), ("Btilde", _parts("Btilde"))],
    "eq4": lambda k, a: [("bressoud-sum", _sum("bressoud-sum")), ("bressoud-prod", _prod("bressoud-prod"))],
    "eq4-printed": lambda k, a: [
        ("bressoud-sum-literal", _sum("bressoud-sum-literal")),
        ("bressoud-prod", _prod("bressoud-prod")),
    ],
    "thm5": lambda k, a: [("E", _paths("E")), ("ag-sum", _sum("ag-sum")), ("B", _parts("B"))],
    "thm6": lambda k, a: [("Etilde", _paths("Etilde")), ("bressoud-sum", _sum("bressoud-sum")), ("Btilde", _parts("Btilde"))],
    "thm7": lambda k, a: [("W", _parts("W"))] + _w_sides(k, a),
    "thm8": lambda k, a: [("Wbar", _parts("Wbar"))] + _wbar_sides(k, a, strict=True),
    "thm10": lambda k, a: [("W", _parts("W")), ("P", _paths("P"))] + _w_sides(k, a)[:1],
    "thm11": lambda k, a: [("Wbar", _parts("Wbar")), ("Pbar", _paths("Pbar"))] + _wbar_sides(k, a, strict=False),
    "thm12": lambda k, a: [("Q", _paths("Q"))] + _q_sides(k, a),
}
REFINED = ("thm9", "thm13")
ALL_IDS = tuple(IDENTITIES) + REFINED


def _refined(identity: str, k: int, a: int, bound: int) -> tuple[list[str], dict[tuple, list[int]]]:
    if a != k:
        raise ParityConstraintError(f"{identity} concerns the case a = k; got a={a}, k={k}")
    clusters = count_refined_partitions(FamilySpec("B", k, k), bound)
    if identity == "thm9":
        names, other = ["B(l,m,n)", "master"], eval_master(k, bound).nonzero()
    else:
        names, other = ["E(l,m,n)", "B(l,m,n)"], count_refined_paths(PathFamilySpec("E", k, k), bound)
        clusters, other = other, clusters
    keys = set(clusters) | set(other)
    return names, {key: [clusters.get(key, 0), other.get(key, 0)] for key in keys}


def verify(identity: str, k: int, a: int, bound: int) -> VerificationReport:
    """Run ``identity`` for (k, a) up to q^bound; never stops at the first mismatch."""
    from rrg import __version__

    if k < 2 or not 1 <= a <= k:
        raise ValueError(f"need k >= 2 and 1 <= a <= k, got k={k}, a={a}")
    if bound < 0:
        raise ValueError("bound must be non-negative")
    t0 = time.perf_counter()
    if identity in REFINED:
        names, rows = _refined(identity, k, a, bound)
    elif identity in IDENTITIES:
        sides = IDENTITIES[identity](k, a)
        names = [name for name, _ in sides]
        columns = [fn(k, a, bound) for _, fn in sides]
        rows = {(n,): [col[n] for col in columns] for n in range(bound + 1)}
    else:
        raise UnknownSeriesError(f"unknown identity {identity!r}; known: {', '.join(ALL_IDS)}")
    return VerificationReport(
        identity, k, a, bound, names, rows, runtime=time.perf_counter() - t0, version=__version__
    )
