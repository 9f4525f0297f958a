"""Verification campaigns, seeded sampling and JSON reports."""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .construct import constructive_hamilton_path_traced
from .core import DomainError, Graph, GraphCollection, all_graphs, min_degree, parse_tgc, serialize_tgc
from .families import (
    CYCLE_TAGS,
    PATH_TAGS,
    Tag,
    certify_no_thc,
    classify,
    family_parity_ok,
    generate_family,
    generate_h_s_t,
    witness_for,
)
from .solver import (
    find_transversal_hamilton_cycle,
    find_transversal_hamilton_path,
    naive_transversal_hamilton_cycle,
)

__all__ = [
    "SAMPLING_MODEL",
    "VerificationReport",
    "sample_collection",
    "instance_seed",
    "verify_theorem1",
    "verify_families",
    "threshold_scan",
    "theorem1_min_degree",
    "theorem3_min_degree",
    "replay_failure",
]

SAMPLING_MODEL = "uniform(p=1/2)+repair"
NAIVE_RECHECK_MAX_N = 8


@dataclass
class VerificationReport:
    campaign: str
    parameters: dict
    checked: int = 0
    failures: list = field(default_factory=list)
    elapsed_ms: float = 0.0
    skipped: int = 0
    anomalies: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "campaign": self.campaign,
            "parameters": self.parameters,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failures,
            "anomalies": self.anomalies,
            "summary": self.summary,
        }
        if include_elapsed:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True, indent=2)


def theorem1_min_degree(n: int) -> int:
    return math.ceil((n - 1) / 2)


def theorem3_min_degree(n: int) -> int:
    return math.ceil(n / 2 - 1)


def _sample_graph(n: int, min_deg: int, rng: random.Random) -> Graph:
    rows = [0] * n
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < 0.5:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    full = (1 << n) - 1
    while True:
        low = next((v for v in range(n) if rows[v].bit_count() < min_deg), None)
        if low is None:
            return Graph(n, tuple(rows))
        missing = [w for w in range(n) if w != low and not rows[low] >> w & 1 and full >> w & 1]
        w = rng.choice(missing)
        rows[low] |= 1 << w
        rows[w] |= 1 << low


def sample_collection(n: int, m: int, min_deg: int, seed: int) -> GraphCollection:
    """``m`` graphs at edge probability 1/2, each repaired up to ``min_deg``.

    Repair repeatedly takes the lowest-index vertex below ``min_deg`` and adds
    a uniformly random missing edge at it.
    """
    if n < 1 or m < 0:
        raise DomainError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    if not 0 <= min_deg <= n - 1:
        raise DomainError(f"min_deg={min_deg} is infeasible for n={n}")
    rng = random.Random(seed)
    return GraphCollection(n, tuple(_sample_graph(n, min_deg, rng) for _ in range(m)))


def instance_seed(seed: int, index: int) -> int:
    """Per-instance seed, independent of how instances are sharded."""
    return seed * 1_000_003 + index


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _failure(index: int, c: GraphCollection, reason: str, **extra) -> dict:
    return {"index": index, "reason": reason, "tgc": serialize_tgc(c), **extra}


# -- path threshold ------------------------------------------------------------


def _theorem1_check(c: GraphCollection) -> tuple[Optional[str], str]:
    """(failure reason or None, pipeline stage)."""
    exact = find_transversal_hamilton_path(c)
    built, stage = constructive_hamilton_path_traced(c)
    if exact is None:
        return "solver found no transversal Hamilton path", stage
    if built is None:
        return "constructive pipeline found no transversal Hamilton path", stage
    if not built.is_valid(c) or sorted(built.edge_colors) != list(range(c.m)):
        return "constructive pipeline returned an invalid path", stage
    return None, stage


def _theorem1_sample(args: tuple[int, int, int, int]) -> tuple[int, Optional[str], str, Optional[str]]:
    n, min_deg, seed, index = args
    c = sample_collection(n, n - 1, min_deg, instance_seed(seed, index))
    if min_degree(c) < theorem1_min_degree(n):
        return index, None, "skipped", None
    reason, stage = _theorem1_check(c)
    return index, reason, stage, serialize_tgc(c) if reason else None


def _theorem1_tuple(graphs: tuple[Graph, ...]) -> tuple[Optional[str], str]:
    return _theorem1_check(GraphCollection(graphs[0].n, graphs))


def verify_theorem1(n: int, mode: str = "sample", count: int = 100, seed: int = 0,
                    min_deg: Optional[int] = None, workers: int = 1) -> VerificationReport:
    """Check that every collection of n - 1 graphs at the degree threshold has a
    transversal Hamilton path, by exact search and by the constructive pipeline.

    ``exhaustive`` (n = 4 only) runs every tuple of qualifying graphs.
    ``sample`` draws ``count`` collections; instances whose minimum degree
    falls below the threshold are counted as skipped.
    """
    start = time.perf_counter()
    threshold = theorem1_min_degree(n)
    stages: dict[str, int] = {}
    if mode == "exhaustive":
        if n != 4:
            raise DomainError("exhaustive mode is limited to n = 4")
        pool = [g for g in all_graphs(n) if g.min_degree() >= threshold]
        report = VerificationReport("theorem1", {"n": n, "mode": mode, "min_degree": threshold, "graphs": len(pool)})
        tuples = list(itertools.product(pool, repeat=n - 1))
        for index, (reason, stage) in enumerate(_map(_theorem1_tuple, tuples, workers)):
            report.checked += 1
            stages[stage] = stages.get(stage, 0) + 1
            if reason:
                report.failures.append(_failure(index, GraphCollection(n, tuples[index]), reason))
    elif mode == "sample":
        if not 2 <= n <= 10:
            raise DomainError("sample mode needs 2 <= n <= 10")
        if count < 0:
            raise DomainError("count must be non-negative")
        floor = threshold if min_deg is None else min_deg
        report = VerificationReport("theorem1", {
            "n": n, "mode": mode, "count": count, "seed": seed, "min_degree": floor, "model": SAMPLING_MODEL,
        })
        jobs = [(n, floor, seed, i) for i in range(count)]
        for index, reason, stage, tgc in _map(_theorem1_sample, jobs, workers):
            if stage == "skipped":
                report.skipped += 1
                continue
            report.checked += 1
            stages[stage] = stages.get(stage, 0) + 1
            if reason:
                report.failures.append({"index": index, "reason": reason, "seed": instance_seed(seed, index), "tgc": tgc})
    else:
        raise DomainError(f"unknown mode {mode!r}")
    report.summary = {"pipeline_stages": dict(sorted(stages.items()))}
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


# -- families -----------------------------------------------------------------


def _family_check(args: tuple[str, int]) -> dict:
    tag_name, n = args
    tag = Tag(tag_name)
    c = generate_family(tag, n)
    path = tag in PATH_TAGS
    bound = math.ceil((n - 3) / 2) if path else theorem3_min_degree(n)
    problems = []
    if min_degree(c) < bound:
        problems.append(f"min degree {min_degree(c)} below {bound}")
    cls = witness_for(c, tag)
    cert = certify_no_thc(c, cls) if cls.tag is tag else None
    if cert is None:
        problems.append("no certificate issued")
    found = find_transversal_hamilton_path(c) if path else find_transversal_hamilton_cycle(c)
    if found is not None:
        problems.append("solver found a transversal Hamilton " + ("path" if path else "cycle"))
    entry = {"family": tag.value, "n": n, "pass": not problems,
             "reason": cert.reason.value if cert else None, "min_degree": min_degree(c)}
    if problems:
        entry["problems"] = problems
        entry["tgc"] = serialize_tgc(c)
    return entry


def _control_check(args: tuple[int, int]) -> dict:
    n, t = args
    c = generate_h_s_t(n, n - t, t)
    present = find_transversal_hamilton_cycle(c) is not None
    entry = {"family": "hst-even-control", "n": n, "t": t, "pass": present}
    if not present:
        entry["problems"] = ["solver found no transversal Hamilton cycle"]
        entry["tgc"] = serialize_tgc(c)
    return entry


def verify_families(n_list: Sequence[int], target: str = "both", control: bool = True,
                    workers: int = 1) -> VerificationReport:
    """Generate every family (complete fill) at each compatible n and check the
    degree bound, its certificate and solver absence.

    With ``control``, ℋ with even ``t >= 2`` at even n must have a transversal
    Hamilton cycle.
    """
    if target not in ("cycle", "path", "both"):
        raise DomainError(f"target must be cycle, path or both, got {target!r}")
    if any(n > 12 or n < 2 for n in n_list):
        raise DomainError("verify_families needs 2 <= n <= 12")
    start = time.perf_counter()
    tags = (CYCLE_TAGS if target != "path" else ()) + (PATH_TAGS if target != "cycle" else ())
    jobs = [(tag.value, n) for n in n_list for tag in tags if family_parity_ok(tag, n)]
    controls = [(n, t) for n in n_list if control and target != "path" and n % 2 == 0 and n >= 4
                for t in range(2, n + 1, 2)]
    report = VerificationReport("families", {"n": list(n_list), "target": target, "control": control})
    entries = _map(_family_check, jobs, workers) + _map(_control_check, controls, workers)
    for index, entry in enumerate(entries):
        report.checked += 1
        if not entry["pass"]:
            report.failures.append({"index": index, **entry})
    keep = ("family", "n", "t", "pass")
    report.summary = {"families": [{k: e[k] for k in keep if k in e} for e in entries]}
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


# -- threshold scan -----------------------------------------------------------


def _threshold_check(args: tuple[int, int, int, int]) -> dict:
    n, min_deg, seed, index = args
    c = sample_collection(n, n, min_deg, instance_seed(seed, index))
    if find_transversal_hamilton_cycle(c) is not None:
        return {"index": index, "verdict": "present"}
    cls = classify(c)
    if cls.tag is Tag.UNKNOWN:
        entry = {"index": index, "verdict": "anomaly", "seed": instance_seed(seed, index), "tgc": serialize_tgc(c)}
        if n <= NAIVE_RECHECK_MAX_N:
            entry["naive_recheck_absent"] = naive_transversal_hamilton_cycle(c) is None
        return entry
    cert = certify_no_thc(c, cls)
    if cert is None:
        return {"index": index, "verdict": "failure", "reason": f"{cls.name} certificate did not verify",
                "tgc": serialize_tgc(c)}
    return {"index": index, "verdict": "absent-classified", "family": cls.tag.value}


def threshold_scan(n: int, seed: int = 0, count: int = 100, workers: int = 1) -> VerificationReport:
    """Sample n-color collections at the classification threshold.

    Absent instances must classify into a certified family; absence with an
    Unknown class is recorded as an anomaly rather than a failure.
    """
    if not 3 <= n <= 10:
        raise DomainError("threshold_scan needs 3 <= n <= 10")
    start = time.perf_counter()
    floor = theorem3_min_degree(n)
    report = VerificationReport("threshold", {
        "n": n, "count": count, "seed": seed, "min_degree": floor, "model": SAMPLING_MODEL,
    })
    counts = {"present": 0, "absent-classified": 0, "anomaly": 0, "failure": 0}
    families: dict[str, int] = {}
    for entry in _map(_threshold_check, [(n, floor, seed, i) for i in range(count)], workers):
        report.checked += 1
        verdict = entry["verdict"]
        counts[verdict] += 1
        if verdict == "anomaly":
            report.anomalies.append(entry)
        elif verdict == "failure":
            report.failures.append(entry)
        elif verdict == "absent-classified":
            families[entry["family"]] = families.get(entry["family"], 0) + 1
    report.summary = {"verdicts": counts, "families": dict(sorted(families.items()))}
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def replay_failure(entry: dict) -> GraphCollection:
    """Reload the collection embedded in a report entry."""
    return parse_tgc(entry["tgc"])
