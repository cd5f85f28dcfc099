"""Exit criteria.  Each test prints one PASS/FAIL line (also shown in the summary)."""

import itertools
import random
import time

import pytest

from partite_eppa.core import Tournament, is_semigeneric, normalize, validate
from partite_eppa.verify import (
    CampaignConfig,
    exhaustive_tournaments,
    run_campaign,
    verify_remark,
)
from partite_eppa.witness import build_witness, witness_size

from conftest import small_tournaments

SEED = 2019


def timed(config):
    start = time.perf_counter()
    report = run_campaign(config)
    return report, time.perf_counter() - start


@pytest.fixture(scope="module")
def bipartite_exhaustive():
    return timed(CampaignConfig(generator="exhaustive", n=2, ks=(2, 4)))


@pytest.fixture(scope="module")
def tripartite_exhaustive():
    return timed(CampaignConfig(generator="exhaustive", n=3, ks=(3,)))


@pytest.fixture(scope="module")
def sampled():
    return {n: timed(CampaignConfig(generator="random", n=n, ks=(6,), instances_per_k=50,
                                    phi_sample=200, seed=SEED))
            for n in (2, 3)}


def test_criterion_1_exhaustive_bipartite(bipartite_exhaustive, record):
    report, seconds = bipartite_exhaustive
    ok = (report.instances == 2 + 16 and report.tested > 0 and report.failed == 0
          and report.ok and seconds < 120)
    assert record(1, ok, f"n=2, k in (2,4): {report.instances} instances, "
                         f"{report.tested} maps, {report.failed} failures, {seconds:.1f}s")


def test_criterion_2_exhaustive_tripartite(tripartite_exhaustive, record):
    report, seconds = tripartite_exhaustive
    sizes = {row["witness_size"] for row in report.per_instance}
    ok = report.instances == 8 and report.failed == 0 and report.ok and sizes == {12}
    assert record(2, ok, f"n=3, k=3: {report.instances} instances, {report.tested} maps, "
                         f"{report.failed} failures, witness sizes {sorted(sizes)}, {seconds:.1f}s")


def test_criterion_3_sampled(sampled, record):
    total = 0
    ok = True
    details = []
    for n, expected_size in ((2, 48), (3, 96)):
        report, seconds = sampled[n]
        sizes = {row["witness_size"] for row in report.per_instance}
        total += seconds
        ok &= (report.instances == 50 and report.tested == 50 * 200 and report.failed == 0
               and report.ok and sizes == {expected_size})
        details.append(f"n={n}: {report.tested} maps, {report.failed} failures, size {sorted(sizes)}")
    ok &= total < 300
    assert record(3, ok, "; ".join(details) + f"; {total:.1f}s")


def test_criterion_4_oracle_agreement(record):
    report, seconds = timed(CampaignConfig(generator="exhaustive", n=2, ks=(2, 4), oracle=True))
    ok = report.ok and report.oracle_checks == report.tested > 0 and report.failed == 0
    assert record(4, ok, f"{report.oracle_checks} oracle searches, {report.failed} "
                         f"disagreements, {seconds:.1f}s")


def count_valuations(k, n):
    m = k // n
    total = 0
    for x in range(1, k + 1):
        others = [y for y in range(1, k + 1) if y != x]
        for values in itertools.product((0, 1), repeat=len(others)):
            if all(v == 0 for y, v in zip(others, values) if (y - 1) // m == (x - 1) // m):
                total += 1
    return total


def test_criterion_5_witness_size(record):
    expected = {(2, 2): 4, (4, 2): 16, (6, 2): 48, (8, 2): 128,
                (3, 3): 12, (6, 3): 96, (4, 4): 32, (8, 4): 512}
    rows = []
    ok = True
    for n in (2, 3, 4):
        for k in range(n, 9, n):
            built = len(build_witness(normalize(next(exhaustive_tournaments(n, k)))))
            formula = k * 2 ** (k - k // n)
            ok &= built == formula == witness_size(k, n) == count_valuations(k, n) == expected[(k, n)]
            rows.append(f"({k},{n})={built}")
    assert record(5, ok, "built sizes " + " ".join(rows))


def remark_inputs():
    return [T for T in small_tournaments(3, max_parts=2) if validate(T, min_parts=1) is None]


def test_criterion_6_remark(record):
    inputs = remark_inputs()
    failures = []
    start = time.perf_counter()
    witnesses = 0
    for G in exhaustive_tournaments(2, 4):
        W = build_witness(normalize(G))
        witnesses += 1
        for A in inputs:
            bad = verify_remark(W, A)
            if bad is not None:
                failures.append((G, A, bad))
    seconds = time.perf_counter() - start
    ok = not failures and witnesses == 16 and len(inputs) == 17
    assert record(6, ok, f"{len(inputs)} small tournaments x {witnesses} witnesses, "
                         f"{len(failures)} failures, {seconds:.1f}s")


def test_criterion_7_completion_independence(record):
    report, seconds = timed(CampaignConfig(generator="exhaustive", n=2, ks=(2, 4),
                                           random_completions=5, seed=SEED))
    ok = report.ok and report.tested > 0 and report.failed == 0
    assert record(7, ok, f"{report.tested} maps x (1 ascending + 5 random completions), "
                         f"{report.failed} failures, {seconds:.1f}s")


def test_criterion_8_embedding(bipartite_exhaustive, tripartite_exhaustive, sampled, record):
    reports = [bipartite_exhaustive[0], tripartite_exhaustive[0], sampled[2][0], sampled[3][0]]
    checks = sum(r.embedding_checks for r in reports)
    instances = sum(r.instances for r in reports)
    failures = sum(r.embedding_failures for r in reports)
    ok = checks == instances == 18 + 8 + 100 and failures == 0
    assert record(8, ok, f"{checks} embeddings checked, {failures} failures")


def _relabel_randomly(T, rng):
    perm = list(T.vertices)
    rng.shuffle(perm)
    parts = list(range(1, T.n + 1))
    rng.shuffle(parts)
    return T.relabel(dict(zip(T.vertices, perm)), dict(zip(range(1, T.n + 1), parts)))


def test_criterion_9_semigeneric(record):
    positive = Tournament.from_parts([[1, 2], [3, 4]], [(1, 3), (1, 4), (2, 3), (2, 4)])
    negative = Tournament.from_parts([[1, 2], [3, 4]], [(1, 3), (1, 4), (2, 3), (4, 2)])
    rng = random.Random(SEED)
    ok = is_semigeneric(positive) and not is_semigeneric(negative)
    mismatches = 0
    for T, expected in ((positive, True), (negative, False)):
        for _ in range(100):
            if is_semigeneric(_relabel_randomly(T, rng)) != expected:
                mismatches += 1
    ok &= mismatches == 0
    assert record(9, ok, f"positive/negative classified, {mismatches} mismatches "
                         f"over 200 random relabelings")


def test_criterion_10_determinism(sampled, record):
    again, _ = timed(CampaignConfig(generator="random", n=3, ks=(6,), instances_per_k=50,
                                    phi_sample=200, seed=SEED))
    first = sampled[3][0].to_json()
    ok = again.to_json().encode() == first.encode()
    assert record(10, ok, f"seeded campaign repeated, report of {len(first)} bytes "
                          f"{'identical' if ok else 'differs'}")
