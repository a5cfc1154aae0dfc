"""Lattice paths with NE, SE and E steps, and the map psi into them.

Paths start on the y-axis, end on the x-axis and use E steps only at height
0. Vertices are indexed by their x-coordinate (the weight), so the vertex
after ``steps[i]`` is ``i + 1``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Sequence

from rrg.errors import PathGeometryError, StructuralError
from rrg.partitions import Parity, Partition, parity_changes

__all__ = [
    "Step",
    "LatticePath",
    "Peak",
    "PathFamily",
    "PathFamilySpec",
    "peaks",
    "relative_height",
    "major_index",
    "satisfies_conditions",
    "is_path_member",
    "volcanic_uplift",
    "undo_volcanic_uplift",
    "insert_initial_peaks",
    "prepend_descent",
    "move_peak_right",
    "advance_unit_peak",
    "retreat_unit_peak",
    "psi",
    "psi_inverse",
    "theta",
    "theta_inverse",
    "peak_parity",
    "full_lower_even_peak_parity_index",
    "render_ascii",
    "render_svg",
]


class Step(str, enum.Enum):
    NE = "NE"
    SE = "SE"
    E = "E"


_DELTA = {Step.NE: 1, Step.SE: -1, Step.E: 0}


@dataclass(frozen=True)
class LatticePath:
    start_height: int = 0
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Step(s) for s in self.steps))
        self._validate()

    def _validate(self) -> None:
        h = self.start_height
        if h < 0:
            raise PathGeometryError("start height must be non-negative")
        for i, s in enumerate(self.steps):
            if s is Step.E and h != 0:
                raise PathGeometryError(f"E step at height {h} (x={i})")
            h += _DELTA[s]
            if h < 0:
                raise PathGeometryError(f"path dips below the x-axis at x={i + 1}")
        if h != 0:
            raise PathGeometryError(f"path ends at height {h}, not on the x-axis")
        if self.steps and self.steps[-1] is not Step.SE:
            raise PathGeometryError("a non-empty path must end with an SE step")

    @classmethod
    def parse(cls, start_height: int, steps: str | Sequence[str]) -> "LatticePath":
        if isinstance(steps, str):
            steps = [t for t in steps.replace(",", " ").split() if t]
        return cls(start_height, tuple(Step(t.upper()) for t in steps))

    def heights(self) -> list[int]:
        hs = [self.start_height]
        for s in self.steps:
            hs.append(hs[-1] + _DELTA[s])
        return hs

    @property
    def length(self) -> int:
        return len(self.steps)

    def peak_positions(self) -> list[int]:
        st = self.steps
        return [i + 1 for i in range(len(st) - 1) if st[i] is Step.NE and st[i + 1] is Step.SE]

    def to_json(self) -> dict:
        return {"start_height": self.start_height, "steps": [s.value for s in self.steps]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "LatticePath":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(int(doc["start_height"]), tuple(Step(s) for s in doc["steps"]))

    def __str__(self) -> str:
        return render_ascii(self)


@dataclass(frozen=True)
class Peak:
    weight: int
    height: int
    relative_height: int


def _relative_height_at(hs: Sequence[int], peak_xs: Sequence[int], x: int) -> int:
    y = hs[x]
    best = 0
    for h in range(1, y + 1):
        level = y - h
        left = next((i for i in range(x - 1, -1, -1) if hs[i] == level), None)
        right = next((i for i in range(x + 1, len(hs)) if hs[i] == level), None)
        if left is None or right is None:
            break
        blocked = any(
            hs[px] > y or (hs[px] == y and px < x)
            for px in peak_xs
            if left < px < right and px != x
        )
        if blocked:
            break
        best = h
    return best


def relative_height(path: LatticePath, peak_index: int) -> int:
    """Largest h with flanking vertices at height y - h, no taller peak
    between them and every equally tall peak between them at or right of x.
    """
    xs = path.peak_positions()
    return _relative_height_at(path.heights(), xs, xs[peak_index])


def peaks(path: LatticePath) -> list[Peak]:
    hs = path.heights()
    xs = path.peak_positions()
    return [Peak(x, hs[x], _relative_height_at(hs, xs, x)) for x in xs]


def major_index(path: LatticePath) -> int:
    return sum(path.peak_positions())


def satisfies_conditions(path: LatticePath, k: int, a: int) -> bool:
    """Start at height k - a and stay strictly below k."""
    return path.start_height == k - a and max(path.heights()) < k


class PathFamily(str, enum.Enum):
    E = "E"
    ETILDE = "Etilde"
    P = "P"
    PBAR = "Pbar"
    Q = "Q"


@dataclass(frozen=True)
class PathFamilySpec:
    family: PathFamily
    k: int
    a: int

    def __post_init__(self):
        object.__setattr__(self, "family", PathFamily(self.family))
        if self.k < 1 or not 1 <= self.a <= self.k:
            raise ValueError(f"need 1 <= a <= k, got k={self.k}, a={self.a}")


def is_path_member(path: LatticePath, spec: PathFamilySpec) -> bool:
    k, a = spec.k, spec.a
    if not satisfies_conditions(path, k, a):
        return False
    fam = spec.family
    if fam is PathFamily.E:
        return True
    if fam is PathFamily.ETILDE:
        hs = path.heights()
        return all(x % 2 == (a - 1) % 2 for x in path.peak_positions() if hs[x] == k - 1)
    if fam is PathFamily.PBAR:
        return all(x % 2 == 0 for x in path.peak_positions())
    if fam is PathFamily.Q:
        return all(x % 2 == 1 for x in path.peak_positions())
    return all((pk.weight - pk.relative_height) % 2 == 0 for pk in peaks(path))


# -- building blocks of psi -------------------------------------------------


def volcanic_uplift(path: LatticePath) -> LatticePath:
    """Split the path at every peak and insert a peak one unit taller."""
    out: list[Step] = []
    st = path.steps
    for i, s in enumerate(st):
        out.append(s)
        if s is Step.NE and i + 1 < len(st) and st[i + 1] is Step.SE:
            out.extend((Step.NE, Step.SE))
    return LatticePath(path.start_height, tuple(out))


def undo_volcanic_uplift(path: LatticePath) -> LatticePath:
    """Inverse of :func:`volcanic_uplift`; every peak must have relative height >= 2."""
    xs = path.peak_positions()
    drop = set()
    for x in xs:
        if x < 2 or path.steps[x - 2] is not Step.NE or x + 1 >= len(path.steps) or path.steps[x + 1] is not Step.SE:
            raise PathGeometryError(f"peak at x={x} is not the product of an uplift")
        drop.update((x - 1, x))
    st = tuple(s for i, s in enumerate(path.steps) if i not in drop)
    return LatticePath(path.start_height, st)


def insert_initial_peaks(path: LatticePath, count: int, at_height_base: int | None = None) -> LatticePath:
    """Prepend ``count`` unit peaks at weights 1, 3, ..., 2*count - 1."""
    if at_height_base is not None and path.start_height != at_height_base:
        raise PathGeometryError(f"path starts at height {path.start_height}, expected {at_height_base}")
    if count < 0:
        raise ValueError("count must be non-negative")
    return LatticePath(path.start_height, (Step.NE, Step.SE) * count + path.steps)


def prepend_descent(path: LatticePath) -> LatticePath:
    """Raise the start by one and open with an SE step; every peak shifts right by one."""
    return LatticePath(path.start_height + 1, (Step.SE,) + path.steps)


def move_peak_right(path: LatticePath, peak_index: int) -> LatticePath:
    """Push the peak one unit right with a local rewrite of three steps.

    NE,SE,E -> E,NE,SE (slide), NE,SE,NE -> NE,NE,SE (climb),
    NE,SE,SE -> SE,NE,SE (descend). A peak whose SE closes the path slides
    as if an E step followed.
    """
    xs = path.peak_positions()
    x = xs[peak_index]
    st = list(path.steps)
    nxt = st[x + 1] if x + 1 < len(st) else None
    if nxt is None or nxt is Step.E:
        if path.heights()[x] != 1:
            raise PathGeometryError("only a peak of height 1 can slide along the axis")
        new = [Step.E, Step.NE, Step.SE]
        span = 2 if nxt is None else 3
    elif nxt is Step.NE:
        new, span = [Step.NE, Step.NE, Step.SE], 3
    else:
        new, span = [Step.SE, Step.NE, Step.SE], 3
    st[x - 1 : x - 1 + span] = new
    return LatticePath(path.start_height, tuple(st))


def _unit_peak_indices(path: LatticePath) -> list[int]:
    return [i for i, pk in enumerate(peaks(path)) if pk.relative_height == 1]


def advance_unit_peak(path: LatticePath, j: int) -> LatticePath:
    """Move the j-th (1-based, counted from the right) relative-height-1 peak one unit right."""
    ones = _unit_peak_indices(path)
    if not 1 <= j <= len(ones):
        raise PathGeometryError(f"path has {len(ones)} peaks of relative height 1, asked for #{j}")
    return move_peak_right(path, ones[-j])


def _unit_peak_weight(path: LatticePath, j: int) -> int:
    ones = _unit_peak_indices(path)
    return path.peak_positions()[ones[-j]]


def _left_rewrites(path: LatticePath):
    st = list(path.steps)
    for x in path.peak_positions():
        prev = st[x - 2] if x >= 2 else None
        if prev is None:
            continue
        cand = st.copy()
        if prev is Step.E:
            cand[x - 2 : x + 1] = [Step.NE, Step.SE, Step.E]
        elif prev is Step.NE:
            cand[x - 2 : x + 1] = [Step.NE, Step.SE, Step.NE]
        else:
            cand[x - 2 : x + 1] = [Step.NE, Step.SE, Step.SE]
        while cand and cand[-1] is Step.E:
            cand.pop()
        try:
            yield LatticePath(path.start_height, tuple(cand))
        except PathGeometryError:
            continue


def retreat_unit_peak(path: LatticePath, j: int) -> LatticePath:
    """Inverse of :func:`advance_unit_peak`."""
    shape = sorted(pk.relative_height for pk in peaks(path))
    found = []
    for cand in _left_rewrites(path):
        if sorted(pk.relative_height for pk in peaks(cand)) != shape:
            continue
        try:
            if advance_unit_peak(cand, j) == path:
                found.append(cand)
        except PathGeometryError:
            continue
    if len(found) != 1:
        raise StructuralError(f"{len(found)} candidate predecessors when retracting unit peak #{j}")
    return found[0]


def _check_pis(counts: Sequence[int], pis: Sequence[Sequence[int]], k: int) -> None:
    if len(counts) != k - 1 or len(pis) != k - 1:
        raise ValueError(f"need {k - 1} cluster counts and move partitions")
    for r, (n, pi) in enumerate(zip(counts, pis), start=1):
        if len(pi) != n:
            raise ValueError(f"pi^({r}) must have exactly {n} parts, got {tuple(pi)}")
        if any(x < 0 for x in pi) or any(pi[i] < pi[i + 1] for i in range(len(pi) - 1)):
            raise ValueError(f"pi^({r}) must be non-increasing and non-negative, got {tuple(pi)}")


def psi(counts: Sequence[int], pis: Sequence[Sequence[int]], k: int, a: int) -> LatticePath:
    """Build the path with ``counts[r-1]`` peaks of relative height r."""
    _check_pis(counts, pis, k)
    path = LatticePath(0, ())
    for i in range(k - 1, 0, -1):
        path = insert_initial_peaks(path, counts[i - 1], k - i - 1 if i >= a else k - a)
        if i >= a:
            path = prepend_descent(path)
        for j, amount in enumerate(pis[i - 1], start=1):
            for _ in range(amount):
                path = advance_unit_peak(path, j)
        if i >= 2:
            path = volcanic_uplift(path)
    return path


def psi_inverse(path: LatticePath, k: int, a: int) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    if not satisfies_conditions(path, k, a):
        raise ValueError(f"path does not satisfy the ({k},{a})-conditions")
    counts = [0] * (k - 1)
    pis: list[tuple[int, ...]] = [()] * (k - 1)
    for i in range(1, k):
        if i >= 2:
            path = undo_volcanic_uplift(path)
        n = len(_unit_peak_indices(path))
        shift = 1 if i >= a else 0
        amounts = [0] * n
        for j in range(n, 0, -1):
            home = 2 * (n - j) + 1 + shift
            prefix = (Step.SE,) * shift + (Step.NE, Step.SE) * (n - j + 1)
            while path.steps[: len(prefix)] != prefix or _unit_peak_weight(path, j) != home:
                path = retreat_unit_peak(path, j)
                amounts[j - 1] += 1
        if i >= a:
            if not path.steps or path.steps[0] is not Step.SE:
                raise StructuralError("expected the prepended SE step")
            path = LatticePath(path.start_height - 1, path.steps[1:])
        if path.steps[: 2 * n] != (Step.NE, Step.SE) * n:
            raise StructuralError(f"expected {n} unit peaks at the start")
        path = LatticePath(path.start_height, path.steps[2 * n :])
        counts[i - 1] = n
        pis[i - 1] = tuple(amounts)
    if path.steps or path.start_height != 0:
        raise StructuralError("path has peaks of relative height >= k")
    return tuple(counts), tuple(pis)


def theta(p: Partition, k: int, a: int) -> LatticePath:
    from rrg.moves import phi

    ledger = phi(p, k, a)
    return psi(ledger.counts, ledger.pis, k, a)


def theta_inverse(path: LatticePath, k: int, a: int) -> Partition:
    from rrg.moves import BijectionLedger, base_partition, phi_inverse

    counts, pis = psi_inverse(path, k, a)
    return phi_inverse(BijectionLedger(k, a, base_partition(k, a, counts), pis))


# -- parity statistics -------------------------------------------------------


def peak_parity(pk: Peak) -> Parity:
    return Parity.of(pk.weight - pk.relative_height)


def full_lower_even_peak_parity_index(path: LatticePath, k: int) -> int:
    pks = peaks(path)
    return sum(parity_changes(peak_parity(pk) for pk in pks if pk.relative_height == r) for r in range(1, k))


# -- rendering ---------------------------------------------------------------

_GLYPH = {Step.NE: "/", Step.SE: "\\", Step.E: "_"}


def render_ascii(path: LatticePath, grid: bool = False) -> str:
    """One character per step; with ``grid`` the path is drawn on its rows."""
    if not grid:
        return "".join(_GLYPH[s] for s in path.steps)
    hs = path.heights()
    top = max(hs) if hs else 0
    rows = [[" "] * len(path.steps) for _ in range(max(top, 1))]
    for i, s in enumerate(path.steps):
        row = hs[i] if s is not Step.SE else hs[i] - 1
        rows[row][i] = _GLYPH[s]
    return "\n".join("".join(r).rstrip() for r in reversed(rows))


def render_svg(path: LatticePath, unit: int = 20) -> str:
    hs = path.heights()
    width = max(len(path.steps), 1) * unit + 2 * unit
    height = (max(hs) + 2) * unit + unit
    base = height - unit

    def pt(x, y):
        return f"{unit + x * unit},{base - y * unit}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<g stroke="#ccc" stroke-width="1">',
    ]
    for x in range(len(path.steps) + 1):
        lines.append(f'<line x1="{unit + x * unit}" y1="{base}" x2="{unit + x * unit}" y2="{base - (max(hs) + 1) * unit}"/>')
    for y in range(max(hs) + 2):
        lines.append(f'<line x1="{unit}" y1="{base - y * unit}" x2="{unit + len(path.steps) * unit}" y2="{base - y * unit}"/>')
    lines.append("</g>")
    points = " ".join(pt(x, y) for x, y in enumerate(hs))
    lines.append(f'<polyline fill="none" stroke="black" stroke-width="2" points="{points}"/>')
    for pk in peaks(path):
        cx, cy = pt(pk.weight, pk.height).split(",")
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="red"/>')
        lines.append(
            f'<text x="{cx}" y="{int(cy) - 6}" font-size="10" text-anchor="middle">{pk.weight}/{pk.relative_height}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines)
