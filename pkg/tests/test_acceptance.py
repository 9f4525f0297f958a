"""Acceptance criteria, one test each, printing a PASS/FAIL line per criterion."""

from __future__ import annotations

import itertools
import json
import random
import subprocess
import sys
import time

import pytest

from strategies import random_collection, star_instance
from transversal.assign import HostSubgraph, Mode, assignment_oracle, find_assignment, validate_assignment
from transversal.core import GraphCollection
from transversal.families import (
    CYCLE_TAGS,
    PATH_TAGS,
    Tag,
    certify_no_thc,
    classify,
    corollary_strategic_edge,
    extract_rainbow_stars,
    generate_family,
    generate_h_s_t,
    single_graph_corollary_families,
    validate_stars,
    witness_for,
)
from transversal.harness import verify_theorem1
from transversal.solver import (
    find_transversal_hamilton_cycle,
    find_transversal_hamilton_path,
    naive_transversal_hamilton_cycle,
    naive_transversal_hamilton_path,
)


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_theorem1_exhaustive(verdict):
    start = time.perf_counter()
    report = verify_theorem1(4, "exhaustive")
    elapsed = time.perf_counter() - start
    ok = report.checked == 1000 and not report.failures and elapsed <= 120
    verdict(1, ok, f"n=4 exhaustive, {report.checked} collections, {len(report.failures)} failures, {elapsed:.1f}s")


def test_criterion_02_theorem1_sampled(verdict):
    start = time.perf_counter()
    failures = checked = skipped = 0
    for n in (5, 6, 7, 8):
        report = verify_theorem1(n, "sample", 2000, 42)
        failures += len(report.failures)
        checked += report.checked
        skipped += report.skipped
    elapsed = time.perf_counter() - start
    ok = failures == 0 and checked + skipped == 8000 and skipped == 0 and elapsed <= 300
    verdict(2, ok, f"{checked} samples at n=5..8, {failures} failures, {skipped} skipped, {elapsed:.1f}s")


FAMILY_CASES = (
    [(Tag.HALF_SPLIT, n) for n in (5, 7, 9)]
    + [(Tag.DOM_VERTEX, n) for n in (5, 7)]
    + [(Tag.HST, n, t) for n in (6, 8) for t in range(1, n + 1, 2)]
    + [(tag, n) for tag in (Tag.NEAR_SPLIT_B, Tag.NO_R2M_TWO_CLIQUES, Tag.NO_R2M_STAR_U,
                            Tag.NO_R2M_FIG1A, Tag.NO_R2M_FIG1B) for n in (6, 8)]
    + [(tag, n) for tag in PATH_TAGS for n in (6, 7)]
)


def test_criterion_03_family_non_hamiltonicity(verdict):
    start = time.perf_counter()
    bad = []
    for case in FAMILY_CASES:
        tag, n = case[0], case[1]
        c = generate_family(tag, n, t=case[2]) if tag is Tag.HST else generate_family(tag, n)
        cls = witness_for(c, tag)
        cert = certify_no_thc(c, cls) if cls.tag is tag else None
        search = find_transversal_hamilton_path if tag in PATH_TAGS else find_transversal_hamilton_cycle
        if cert is None or search(c) is not None:
            bad.append(case)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed <= 120
    verdict(3, ok, f"{len(FAMILY_CASES)} family instances, discrepancies {bad}, {elapsed:.1f}s")


def test_criterion_04_parity_exactness(verdict):
    # t ranges over [n]; t = 0 is reported separately below.
    mismatches = []
    for n in (4, 6, 8):
        for t in range(1, n + 1):
            absent = find_transversal_hamilton_cycle(generate_h_s_t(n, n - t, t)) is None
            if absent != (t % 2 == 1):
                mismatches.append((n, t))
    zero = [n for n in (4, 6, 8) if find_transversal_hamilton_cycle(generate_h_s_t(n, n, 0)) is None]
    verdict(4, not mismatches,
            f"t in [n] for n in 4,6,8: mismatches {mismatches}; t=0 absent (disconnected) at n={zero}")


def test_criterion_05_assignment_engine(verdict):
    rng = random.Random(5)
    disagree = invalid = exists = 0
    for _ in range(1000):
        n = rng.randint(2, 6)
        pairs = list(itertools.combinations(range(n), 2))
        k = rng.randint(0, min(8, len(pairs)))
        host = HostSubgraph.of(n, rng.sample(pairs, k))
        m = rng.choice([k, k, k + rng.randint(0, 3)])
        c = random_collection(n, m, rng.uniform(0.2, 0.9), rng)
        mode = Mode.TRANSVERSAL if m == k else Mode.RAINBOW
        fast, slow = find_assignment(host, c, mode), assignment_oracle(host, c, mode)
        disagree += (fast is None) != (slow is None)
        invalid += fast is not None and not validate_assignment(host, c, fast)
        exists += fast is not None
    ok = disagree == 0 and invalid == 0 and 0 < exists < 1000
    verdict(5, ok, f"1000 instances, {disagree} disagreements, {invalid} invalid, {exists} with an assignment")


def test_criterion_06_solver_completeness(verdict):
    rng = random.Random(6)
    disagree = present = 0
    for index in range(500):
        n = rng.choice([5, 6])
        cycle = index % 2 == 0
        c = random_collection(n, n if cycle else n - 1, rng.uniform(0.3, 0.8), rng)
        if cycle:
            fast, slow = find_transversal_hamilton_cycle(c), naive_transversal_hamilton_cycle(c)
        else:
            fast, slow = find_transversal_hamilton_path(c), naive_transversal_hamilton_path(c)
        disagree += (fast is None) != (slow is None)
        present += fast is not None
    ok = disagree == 0 and 0 < present < 500
    verdict(6, ok, f"500 instances at n=5,6, {disagree} disagreements, {present} present")


ROUND_TRIP_N = {
    Tag.HALF_SPLIT: (5, 7), Tag.DOM_VERTEX: (5, 7), Tag.HST: (6, 8), Tag.NEAR_SPLIT_B: (6, 8),
    Tag.NO_R2M_TWO_CLIQUES: (6, 8), Tag.NO_R2M_STAR_U: (6, 8), Tag.NO_R2M_FIG1A: (6, 8),
    Tag.NO_R2M_FIG1B: (6, 8), Tag.HPATH_HN10: (6, 7), Tag.HPATH_NEAR_SPLIT: (6, 7),
}


def test_criterion_07_classifier_round_trip(verdict):
    assert set(ROUND_TRIP_N) == set(CYCLE_TAGS + PATH_TAGS)
    wrong = [(tag.value, n, classify(generate_family(tag, n)).tag.value)
             for tag, ns in ROUND_TRIP_N.items() for n in ns
             if classify(generate_family(tag, n)).tag is not tag]
    verdict(7, not wrong, f"{2 * len(ROUND_TRIP_N)} round trips, mismatches {wrong}")


def test_criterion_08_corollary(verdict):
    results = []
    for n, variant in [(7, "dom-two-cliques"), (7, "independent-join"),
                       (8, "dom-unequal-cliques"), (8, "edge-independent-join")]:
        c = single_graph_corollary_families(n, variant)
        u, v = corollary_strategic_edge(n, variant)
        boosted = GraphCollection.copies(c[0].with_edge(u, v), n)
        results.append((variant, n, find_transversal_hamilton_cycle(c) is None,
                        find_transversal_hamilton_cycle(boosted) is not None))
    ok = all(absent and present for _, _, absent, present in results)
    verdict(8, ok, "; ".join(f"{v} n={n}: absent={a}, with edge present={p}" for v, n, a, p in results))


def test_criterion_09_rainbow_stars(verdict):
    rng = random.Random(9)
    good = 0
    for index in range(200):
        t = 1 + index % 3
        c, ys, bs = star_instance(t, rng)
        stars = extract_rainbow_stars(c, ys, bs, t)
        good += len(stars) == t and validate_stars(c, ys, bs, stars)
    verdict(9, good == 200, f"{good}/200 instances with t in 1..3 extracted and validated")


CLI_COMMANDS = [
    ["gen", "--family", "half-split", "--n", "7", "--fill", "random", "--seed", "3"],
    ["gen", "--family", "no-r2m-fig1a", "--n", "8", "--fill", "random", "--seed", "4"],
    ["sample", "--n", "7", "--m", "6", "--min-degree", "3", "--seed", "11"],
    ["verify", "theorem1", "--n", "6", "--count", "40", "--seed", "2", "--json"],
    ["verify", "families", "--n", "5,6", "--json"],
    ["verify", "threshold", "--n", "4", "--count", "200", "--seed", "42", "--json"],
]
FILE_COMMANDS = [
    ["solve", "--target", "hamilton-path", "--json"],
    ["solve", "--target", "hamilton-path", "--method", "constructive", "--json"],
    ["classify", "--json"],
    ["certify", "--json"],
]


def _strip_elapsed(text: str) -> str:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return text

    def walk(obj):
        if isinstance(obj, dict):
            return {k: walk(v) for k, v in obj.items() if k != "elapsed_ms"}
        if isinstance(obj, list):
            return [walk(v) for v in obj]
        return obj

    return json.dumps(walk(data), sort_keys=True)


def _tgc(args: list[str], stdin: bytes | None = None) -> bytes:
    cmd = [sys.executable, "-m", "transversal.cli", *args]
    return subprocess.run(cmd, input=stdin, capture_output=True, check=False).stdout


def test_criterion_10_cli_determinism(verdict, tmp_path):
    sample = tmp_path / "sample.tgc"
    sample.write_bytes(_tgc(["sample", "--n", "7", "--m", "6", "--min-degree", "3", "--seed", "11"]))
    family = tmp_path / "family.tgc"
    family.write_bytes(_tgc(["gen", "--family", "hpath-near-split", "--n", "7"]))
    runs = [list(c) for c in CLI_COMMANDS] + [c + [str(f)] for c in FILE_COMMANDS for f in (sample, family)]
    differing = []
    for args in runs:
        first, second = _tgc(args), _tgc(args)
        if not first or _strip_elapsed(first.decode()) != _strip_elapsed(second.decode()):
            differing.append(" ".join(args[:2]))
    verdict(10, not differing, f"{len(runs)} commands run twice, differing {differing}")
