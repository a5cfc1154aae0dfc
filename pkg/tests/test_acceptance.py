"""Acceptance suite: one PASS/FAIL line per criterion.

Every comparison is exact integer equality. Time limits are pinned below and
measured with ``time.perf_counter``.
"""
import time

import pytest

from oracles import b_member, partitions
from rrg.enumerate import gen_paths
from rrg.moves import cluster_counts, phi
from rrg.partitions import Partition, gordon_mark
from rrg.paths import major_index, peaks, psi, theta, theta_inverse
from rrg.verify import verify

LAMBDA0 = Partition((13, 11, 11, 11, 9, 8, 6, 6, 5, 4, 3, 3, 2, 1))

# pinned limits, seconds
LIMIT_GOLDEN = 1.0
LIMIT_THM1 = 60.0
LIMIT_SERIES = 60.0
LIMIT_PATH_COUNTS = 300.0
LIMIT_REFINED = 300.0
PROPERTY_EXAMPLES = 10_000


@pytest.fixture
def announce(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail

    return emit


def _sweep(identity, ks, bound, keep=lambda k, a: True):
    failures = []
    runs = 0
    for k in ks:
        for a in range(1, k + 1):
            if keep(k, a):
                rep = verify(identity, k, a, bound)
                runs += 1
                if not rep.passed:
                    failures.append(rep.summary())
    return runs, failures


def test_criterion_01_golden_fixture(announce):
    t0 = time.perf_counter()
    led = phi(LAMBDA0, 4, 3)
    path = theta(LAMBDA0, 4, 3)
    elapsed = time.perf_counter() - t0
    got_peaks = sorted((pk.weight, pk.relative_height) for pk in peaks(path))
    want_peaks = sorted([(5, 1), (3, 2), (16, 2), (12, 3), (23, 3), (34, 3)])
    want_pis = ((2,), (4, 1), (8, 3, 2))
    # the stated ledger, pushed through psi alone
    ledger_path = psi((1, 2, 3), want_pis, 4, 3)
    ledger_peaks = sorted((pk.weight, pk.relative_height) for pk in peaks(ledger_path))
    checks = {
        "|mu|=73": led.mu.weight == 73,
        "pi=(2),(4,1),(8,3,2)": led.pis == want_pis,
        "theta peaks": got_peaks == want_peaks,
        "major 93": major_index(path) == 93,
        "time": elapsed < LIMIT_GOLDEN,
    }
    verdicts = ", ".join(f"{name}:{'ok' if v else 'no'}" for name, v in checks.items())
    detail = (
        f"{verdicts}; "
        f"phi gives pis={led.pis}, theta peaks={got_peaks}; "
        f"psi of the stated ledger gives peaks={ledger_peaks} (match={ledger_peaks == want_peaks}); "
        f"{elapsed:.3f}s"
    )
    announce(1, all(checks.values()), detail)


def test_criterion_02_thm1(announce):
    t0 = time.perf_counter()
    runs, bad = _sweep("thm1", range(2, 5), 30)
    elapsed = time.perf_counter() - t0
    announce(2, not bad and elapsed < LIMIT_THM1, f"A=B on {runs} (k,a) pairs, n<=30, {elapsed:.1f}s {bad}")


def test_criterion_03_multisum_products(announce):
    t0 = time.perf_counter()
    runs2, bad2 = _sweep("eq2", range(2, 6), 40)
    runs4, bad4 = _sweep("eq4", range(2, 6), 40)
    elapsed = time.perf_counter() - t0
    ok = not bad2 and not bad4 and elapsed < LIMIT_SERIES
    announce(3, ok, f"odd modulus {runs2} runs, even modulus {runs4} runs, order 40, {elapsed:.1f}s {bad2 + bad4}")


def test_criterion_04_path_counts(announce):
    t0 = time.perf_counter()
    r5, bad5 = _sweep("thm5", range(2, 5), 20)
    r6, bad6 = _sweep("thm6", range(2, 5), 20)
    elapsed = time.perf_counter() - t0
    ok = not bad5 and not bad6 and elapsed < LIMIT_PATH_COUNTS
    announce(4, ok, f"E=sum=B in {r5} runs, Etilde=sum=Btilde in {r6} runs, n<=20, {elapsed:.1f}s {bad5 + bad6}")


def test_criterion_05_bijection_audit(announce):
    problems = []
    pairs = 0
    for k in range(2, 5):
        for a in range(1, k + 1):
            images = {}
            for n in range(21):
                for parts in partitions(n):
                    if not b_member(parts, k, a):
                        continue
                    p = Partition(parts)
                    L = theta(p, k, a)
                    if major_index(L) != n:
                        problems.append(f"weight {p}")
                    if theta_inverse(L, k, a) != p:
                        problems.append(f"roundtrip {p}")
                    rel = [pk.relative_height for pk in peaks(L)]
                    if tuple(rel.count(r) for r in range(1, k)) != cluster_counts(gordon_mark(p), k):
                        problems.append(f"transport {p}")
                    if L in images:
                        problems.append(f"collision {p} {images[L]}")
                    images[L] = p
            paths = set(gen_paths(k, a, 20))
            if paths != set(images):
                problems.append(f"surjectivity k={k} a={a}: {len(paths)} paths vs {len(images)} images")
            for L in paths:
                if theta(theta_inverse(L, k, a), k, a) != L:
                    problems.append(f"path roundtrip {L}")
            pairs += len(images)
    announce(5, not problems, f"{pairs} partition/path pairs checked for k<=4, n<=20; issues={problems[:5]}")


def test_criterion_06_thm10(announce):
    r10, bad10 = _sweep("thm10", range(2, 5), 20)
    r7, bad7 = _sweep("thm7", range(2, 5), 20)
    announce(6, not bad10 and not bad7, f"W=P=sum in {r10} runs, W=sum=product in {r7} runs, n<=20 {bad10 + bad7}")


def test_criterion_07_thm11(announce):
    cases = lambda k, a: (k % 2) != (a % 2)  # noqa: E731
    r11, bad11 = _sweep("thm11", range(2, 6), 20, cases)
    r8, bad8 = _sweep("thm8", range(2, 6), 20, cases)
    announce(7, not bad11 and not bad8, f"Wbar=Pbar=sum=product in {r11} runs, {r8} series runs, n<=20 {bad11 + bad8}")


def test_criterion_08_thm12(announce):
    runs, bad = _sweep("thm12", range(2, 5), 20)
    announce(8, not bad, f"Q matches the multisum for its a-parity in {runs} runs, order 20 {bad}")


def test_criterion_09_refined(announce):
    t0 = time.perf_counter()
    r9, bad9 = _sweep("thm9", (2, 3), 14, lambda k, a: a == k)
    r13, bad13 = _sweep("thm13", (2, 3), 14, lambda k, a: a == k)
    elapsed = time.perf_counter() - t0
    ok = not bad9 and not bad13 and elapsed < LIMIT_REFINED
    announce(9, ok, f"B(l,m,n)=master in {r9} runs, E(l,m,n)=B(l,m,n) in {r13} runs, n<=14, {elapsed:.1f}s {bad9 + bad13}")


def test_criterion_10_property_suites(announce):
    import test_properties as props

    props.CALLS.clear()
    for name in dir(props):
        if name.startswith("test_"):
            getattr(props, name)()
    counts = dict(props.CALLS)
    ok = len(counts) == 5 and all(c >= PROPERTY_EXAMPLES for c in counts.values())
    announce(10, ok, f"examples per property: {counts}")
