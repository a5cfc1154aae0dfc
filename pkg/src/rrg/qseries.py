"""Exact truncated q-series and the sum/product sides of the identities.

Coefficients are Python ints, so nothing overflows or rounds. Multisums run
over N_1 >= ... >= N_{k-1} >= 0 and stop as soon as the quadratic part of
the exponent exceeds the truncation order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from rrg.errors import OrderMismatchError, ParityConstraintError, UnknownSeriesError

__all__ = [
    "TruncatedSeries",
    "TrivariateSeries",
    "pochhammer",
    "series_arith",
    "eval_product",
    "eval_multisum",
    "eval_master",
    "eval_series",
    "SUM_IDS",
    "PRODUCT_IDS",
    "SERIES_IDS",
]


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 q + ... + c_N q^N, everything above q^N discarded."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        cs = tuple(int(c) for c in self.coeffs[: self.order + 1])
        cs = cs + (0,) * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, (1,))

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order, ())

    @classmethod
    def monomial(cls, order: int, exponent: int, coeff: int = 1) -> "TruncatedSeries":
        if exponent > order:
            return cls.zero(order)
        return cls(order, (0,) * exponent + (coeff,))

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.order, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = self.order
        out = [0] * (n + 1)
        b = other.coeffs
        nz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in nz:
                if i + j > n:
                    break
                out[i + j] += x * y
        return TruncatedSeries(n, tuple(out))

    def shift(self, exponent: int) -> "TruncatedSeries":
        """Multiply by q^exponent."""
        if exponent >= len(self.coeffs):
            return TruncatedSeries.zero(self.order)
        return TruncatedSeries(self.order, (0,) * exponent + self.coeffs[: len(self.coeffs) - exponent])

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ZeroDivisionError(f"constant term {c0} is not a unit over the integers")
        out = [0] * (self.order + 1)
        out[0] = c0
        for n in range(1, self.order + 1):
            s = sum(self.coeffs[i] * out[n - i] for i in range(1, n + 1))
            out[n] = -s * c0
        return TruncatedSeries(self.order, tuple(out))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, doc: dict | str) -> "TruncatedSeries":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(int(doc["order"]), tuple(doc["coeffs"]))


def series_arith(op: str, lhs: TruncatedSeries, rhs: TruncatedSeries | None = None) -> TruncatedSeries:
    if op == "negate":
        return -lhs
    if rhs is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def _factor_times(s: list[int], e: int, sign: int) -> None:
    """In place: s *= (1 + sign*q^e)."""
    for i in range(len(s) - 1, e - 1, -1):
        s[i] += sign * s[i - e]


def _factor_divide(s: list[int], e: int, sign: int) -> None:
    """In place: s /= (1 + sign*q^e)."""
    for i in range(e, len(s)):
        s[i] -= sign * s[i - e]


def pochhammer(c: int, d: int, sign: int, power: int, n: int | None, order: int) -> TruncatedSeries:
    """prod_{i<n} (1 + sign*q^(c+d*i))^power; ``n=None`` means the infinite product.

    A factor with exponent 0 is the constant 1 + sign: a zero factor kills a
    numerator and cannot be inverted.
    """
    if d < 1 or sign not in (1, -1) or power not in (1, -1):
        raise ValueError("need d >= 1, sign = +-1 and power = +-1")
    if c < 0:
        raise ValueError("c must be non-negative")
    s = [0] * (order + 1)
    s[0] = 1
    i = 0
    while n is None or i < n:
        e = c + d * i
        if e > order:
            break
        if e == 0:
            if sign == -1:
                if power == -1:
                    raise ZeroDivisionError("factor (1 - q^0) is zero")
                return TruncatedSeries.zero(order)
            s = [2 * x for x in s] if power == 1 else None
            if s is None:
                raise ZeroDivisionError("factor (1 + q^0) = 2 is not a unit over the integers")
        elif power == 1:
            _factor_times(s, e, sign)
        else:
            _factor_divide(s, e, sign)
        i += 1
    return TruncatedSeries(order, tuple(s))


# -- multisums ---------------------------------------------------------------


def _chains(k: int, order: int) -> Iterator[tuple[int, ...]]:
    """All N_1 >= ... >= N_{k-1} >= 0 with sum of squares <= order."""
    depth = k - 1
    acc: list[int] = []

    def rec(cap: int, budget: int):
        if len(acc) == depth:
            yield tuple(acc)
            return
        top = cap
        while top * top > budget:
            top -= 1
        for v in range(top + 1):
            acc.append(v)
            yield from rec(v, budget - v * v)
            acc.pop()

    yield from rec(order, order)


def _small_n(big: Sequence[int]) -> list[int]:
    """n_i = N_i - N_{i+1} with N_k = 0."""
    ext = list(big) + [0]
    return [ext[i] - ext[i + 1] for i in range(len(big))]


def _inv_poch_table(q_step: int, max_n: int, order: int) -> list[TruncatedSeries]:
    """1/(q^s;q^s)_n for n = 0..max_n."""
    out = [TruncatedSeries.one(order)]
    s = [0] * (order + 1)
    s[0] = 1
    for n in range(1, max_n + 1):
        _factor_divide(s, q_step * n, -1)
        out.append(TruncatedSeries(order, tuple(s)))
    return out


def _multisum(
    k: int,
    order: int,
    linear: Callable[[Sequence[int], Sequence[int]], int],
    denom_steps: Callable[[int], int],
) -> TruncatedSeries:
    """sum q^(sum N_i^2 + linear(N, n)) / prod_i (q^s_i; q^s_i)_{n_i}, s_i = denom_steps(i)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    top = int(order**0.5) + 1
    tables: dict[int, list[TruncatedSeries]] = {}
    total = [0] * (order + 1)
    for big in _chains(k, order):
        small = _small_n(big)
        e = sum(v * v for v in big) + linear(big, small)
        if e > order:
            continue
        term = TruncatedSeries.monomial(order, e)
        for i, ni in enumerate(small, start=1):
            if ni:
                step = denom_steps(i)
                if step not in tables:
                    tables[step] = _inv_poch_table(step, top, order)
                term = term * tables[step][ni]
        for j, c in enumerate(term.coeffs):
            total[j] += c
    return TruncatedSeries(order, tuple(total))


def _N(big: Sequence[int], i: int) -> int:
    """1-based N_i, zero outside 1..k-1."""
    return big[i - 1] if 1 <= i <= len(big) else 0


def _n(small: Sequence[int], i: int) -> int:
    return small[i - 1] if 1 <= i <= len(small) else 0


def _tail(big, start):
    return sum(_N(big, i) for i in range(max(start, 1), len(big) + 1))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParityConstraintError(msg)


def _lin_ag(k, a):
    return lambda N, n: _tail(N, a)


def _lin_bressoud(k, a, literal=False):
    start = a + 1 if literal else a
    return lambda N, n: _tail(N, start)


def _lin_w(k, a, last):
    return lambda N, n: 2 * sum(_N(N, j) for j in range(a, last + 1, 2))


def _lin_wbar(k, a):
    # a even: n_1 + n_3 + ... + n_{a-3} + N_{a-1} + N_a + ...; a odd: n_1 + ... + n_{a-2} + N_a + ...
    if a % 2 == 0:
        return lambda N, n: sum(_n(n, j) for j in range(1, a - 2, 2)) + _tail(N, a - 1)
    return lambda N, n: sum(_n(n, j) for j in range(1, a - 1, 2)) + _tail(N, a)


def _lin_q(k, a):
    # even r < a contribute n_r; when a is odd every r >= a adds n_r too, i.e. N_a in total.
    # For odd a >= 3 this is n_2 + ... + n_{a-3} + N_{a-1}; for a = 1 it is N_1.
    bump = (lambda N: _N(N, a)) if a % 2 == 1 else (lambda N: 0)
    return lambda N, n: sum(_n(n, j) for j in range(2, a, 2)) + bump(N) + _tail(N, a)


SUM_IDS = (
    "ag-sum",
    "bressoud-sum",
    "bressoud-sum-literal",
    "w-sum-same",
    "w-sum-diff",
    "wbar-sum-koa",
    "wbar-sum-kea",
    "q-sum-aodd",
    "q-sum-aeven",
)
PRODUCT_IDS = ("ag-prod", "bressoud-prod", "w-prod-same", "w-prod-diff", "wbar-prod-koa", "wbar-prod-kea")
SERIES_IDS = SUM_IDS + PRODUCT_IDS + ("master",)


def _check_params(k: int, a: int) -> None:
    if k < 2 or not 1 <= a <= k:
        raise ValueError(f"need k >= 2 and 1 <= a <= k, got k={k}, a={a}")


def eval_multisum(spec_id: str, k: int, a: int, order: int) -> TruncatedSeries:
    _check_params(k, a)
    single = lambda i: 1  # noqa: E731
    double = lambda i: 2  # noqa: E731
    if spec_id == "ag-sum":
        return _multisum(k, order, _lin_ag(k, a), single)
    if spec_id in ("bressoud-sum", "bressoud-sum-literal"):
        last = k - 1
        return _multisum(
            k, order, _lin_bressoud(k, a, spec_id.endswith("literal")), lambda i: 2 if i == last else 1
        )
    if spec_id == "w-sum-same":
        _require((k - a) % 2 == 0, "w-sum-same needs k and a of equal parity")
        return _multisum(k, order, _lin_w(k, a, k - 2), double)
    if spec_id == "w-sum-diff":
        _require((k - a) % 2 == 1, "w-sum-diff needs k and a of different parity")
        return _multisum(k, order, _lin_w(k, a, k - 1), double)
    if spec_id == "wbar-sum-koa":
        _require(k % 2 == 1 and a % 2 == 0, "wbar-sum-koa needs k odd and a even")
        return _multisum(k, order, _lin_wbar(k, a), double)
    if spec_id == "wbar-sum-kea":
        _require(k % 2 == 0 and a % 2 == 1, "wbar-sum-kea needs k even and a odd")
        return _multisum(k, order, _lin_wbar(k, a), double)
    if spec_id == "q-sum-aodd":
        _require(a % 2 == 1, "q-sum-aodd needs a odd")
        return _multisum(k, order, _lin_q(k, a), double)
    if spec_id == "q-sum-aeven":
        _require(a % 2 == 0, "q-sum-aeven needs a even")
        return _multisum(k, order, _lin_q(k, a), double)
    raise UnknownSeriesError(f"unknown multisum id {spec_id!r}")


def _theta_triple(lo: int, hi: int, mod: int, order: int) -> TruncatedSeries:
    """(q^lo, q^hi, q^mod; q^mod)_inf."""
    out = TruncatedSeries.one(order)
    for c in (lo, hi, mod):
        out = out * pochhammer(c, mod, -1, 1, None, order)
    return out


def eval_product(spec_id: str, k: int, a: int, order: int) -> TruncatedSeries:
    _check_params(k, a)
    inv_q = pochhammer(1, 1, -1, -1, None, order)
    inv_q2 = pochhammer(2, 2, -1, -1, None, order)
    if spec_id == "ag-prod":
        m = 2 * k + 1
        return _theta_triple(a, m - a, m, order) * inv_q
    if spec_id == "bressoud-prod":
        m = 2 * k
        return _theta_triple(a, m - a, m, order) * inv_q
    m = 2 * k + 2
    if spec_id == "w-prod-same":
        _require((k - a) % 2 == 0, "w-prod-same needs k and a of equal parity")
        return pochhammer(1, 2, 1, 1, None, order) * _theta_triple(a, m - a, m, order) * inv_q2
    if spec_id == "w-prod-diff":
        _require((k - a) % 2 == 1, "w-prod-diff needs k and a of different parity")
        odd = pochhammer(3, 2, 1, 1, None, order)
        first = odd * _theta_triple(a + 1, m - a - 1, m, order) * inv_q2
        second = (odd * _theta_triple(a - 1, m - a + 1, m, order) * inv_q2).shift(1)
        return first + second
    if spec_id == "wbar-prod-koa":
        _require(k % 2 == 1 and a % 2 == 0, "wbar-prod-koa needs k odd and a even")
        return pochhammer(2, 2, 1, 1, None, order) * _theta_triple(a, m - a, m, order) * inv_q2
    if spec_id == "wbar-prod-kea":
        _require(k % 2 == 0 and a % 2 == 1, "wbar-prod-kea needs k even and a odd")
        return pochhammer(2, 2, 1, 1, None, order) * _theta_triple(a + 1, m - a - 1, m, order) * inv_q2
    raise UnknownSeriesError(f"unknown product id {spec_id!r}")


@dataclass
class TrivariateSeries:
    """Sum of y^l x^m F_{l,m}(q); keys absent from ``terms`` are zero."""

    order: int
    terms: dict[tuple[int, int], TruncatedSeries] = field(default_factory=dict)

    def coefficient(self, l: int, m: int, n: int) -> int:
        s = self.terms.get((l, m))
        return s.coeffs[n] if s is not None and n <= self.order else 0

    def add_term(self, l: int, m: int, s: TruncatedSeries) -> None:
        cur = self.terms.get((l, m))
        self.terms[(l, m)] = s if cur is None else cur + s

    def nonzero(self) -> dict[tuple[int, int, int], int]:
        return {
            (l, m, n): c
            for (l, m), s in sorted(self.terms.items())
            for n, c in enumerate(s.coeffs)
            if c
        }

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [
                {"l": l, "m": m, "coeffs": list(s.coeffs)}
                for (l, m), s in sorted(self.terms.items())
                if any(s.coeffs)
            ],
        }


def _neg_yq(n: int, order: int) -> list[list[int]]:
    """(-yq; q)_n as rows indexed by the power of y."""
    rows = [[0] * (order + 1)]
    rows[0][0] = 1
    for i in range(1, n + 1):
        new = [r.copy() for r in rows] + [[0] * (order + 1)]
        for l, r in enumerate(rows):
            for e in range(order + 1 - i):
                if r[e]:
                    new[l + 1][e + i] += r[e]
        rows = new
    return rows


def eval_master(k: int, order: int) -> TrivariateSeries:
    """Refined multisum with y marking the parity index and x counting parts."""
    if k < 2:
        raise ValueError("k must be at least 2")
    out = TrivariateSeries(order)
    inv = _inv_poch_table(2, int(order**0.5) + 1, order)
    for big in _chains(k, order):
        small = _small_n(big)
        e = sum(v * v for v in big)
        base = TruncatedSeries.monomial(order, e)
        for ni in small:
            if ni:
                base = base * inv[ni]
        # y-polynomial from the product of (-yq)_{n_i}
        ypoly = {0: TruncatedSeries.one(order)}
        for ni in small:
            rows = _neg_yq(ni, order)
            nxt: dict[int, TruncatedSeries] = {}
            for l1, s1 in ypoly.items():
                for l2, r in enumerate(rows):
                    if not any(r):
                        continue
                    prod = s1 * TruncatedSeries(order, tuple(r))
                    nxt[l1 + l2] = nxt[l1 + l2] + prod if l1 + l2 in nxt else prod
            ypoly = nxt
        m = sum(big)
        for l, s in ypoly.items():
            term = s * base
            if any(term.coeffs):
                out.add_term(l, m, term)
    return out


def eval_series(spec_id: str, k: int, a: int, order: int) -> TruncatedSeries | TrivariateSeries:
    if spec_id == "master":
        return eval_master(k, order)
    if spec_id in SUM_IDS:
        return eval_multisum(spec_id, k, a, order)
    if spec_id in PRODUCT_IDS:
        return eval_product(spec_id, k, a, order)
    raise UnknownSeriesError(f"unknown series id {spec_id!r}; known: {', '.join(SERIES_IDS)}")
