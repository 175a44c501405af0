"""
Exhaustive and constructive checks of the structural results at desk scale.

Each ``check_*`` function returns a ``CheckReport``.  A failing report always
carries a counterexample payload, and scans run in increasing carrier size,
so the first failure found is a smallest one.  Exhaustive scans are cut into
shards that can be handed to worker processes with ``jobs > 1``.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from fortdyn.constructors import (
    enumerate_step_sequences,
    realize_finite_height_perm,
    realize_group_sequence,
    realize_selfmap_sequence,
    reduce_to_finite,
    valid_group_sequence,
    valid_step_sequence,
)
from fortdyn.core_action import (
    FiniteDynSystem,
    Kind,
    chain_heights,
    height_via_closures,
    members,
    orbit,
)
from fortdyn.indicator import (
    ClosurePoset,
    classify_group_topology,
    closure_poset,
    enumerate_opens,
    find_isomorphism,
    format_opens,
    indicator_sequence,
    make_group_canonical_space,
    poset_from_covers,
    poset_isomorphic,
)
from fortdyn.symbolic_fort import SymbolicFortSystem, symbolic_all_closures, symbolic_height

PASS = "pass"
FAIL = "fail"
INFINITE_BY_CONSTRUCTION = "InfiniteByConstruction"
SHARD_SIZE = 512

# Result names used in the coverage matrix.
HEIGHT_EQUIVALENCE = "height-equivalence"
INFINITE_ORBIT_CLOSURE = "infinite-orbit-closure"
GROUP_SEQUENCES_INFINITE = "group-sequences-infinite"
GROUP_SEQUENCES = "group-sequences"
GROUP_TOPOLOGY = "group-topology-classification"
SEQUENCE_DETERMINES_TOPOLOGY = "sequence-determines-topology"
CYCLIC_HEIGHT_SET = "cyclic-height-set"
CYCLIC_WITNESS = "cyclic-witness-sufficiency"
FINITE_REDUCTION = "finite-reduction"
SEQUENCE_REDUCTION = "sequence-reduction"
SELFMAP_STEPS = "selfmap-step-sequences"
CHAIN_COUNTEREXAMPLE = "chain-counterexample"

ALL_RESULTS = (
    HEIGHT_EQUIVALENCE,
    INFINITE_ORBIT_CLOSURE,
    GROUP_SEQUENCES_INFINITE,
    GROUP_SEQUENCES,
    GROUP_TOPOLOGY,
    SEQUENCE_DETERMINES_TOPOLOGY,
    CYCLIC_HEIGHT_SET,
    CYCLIC_WITNESS,
    FINITE_REDUCTION,
    SEQUENCE_REDUCTION,
    SELFMAP_STEPS,
    CHAIN_COUNTEREXAMPLE,
)


@dataclass
class CheckReport:
    name: str
    params: dict
    verdict: str
    counterexample: Optional[dict] = None
    elapsed: float = 0.0
    details: list = field(default_factory=list)
    covers: tuple = ()

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL):
            raise ValueError(f"verdict must be pass or fail, got {self.verdict!r}")
        if self.verdict == FAIL and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "params": self.params,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "elapsed": round(self.elapsed, 4),
            "details": self.details,
            "covers": list(self.covers),
        }


def _report(name, params, t0, failure, details, covers) -> CheckReport:
    return CheckReport(
        name=name,
        params=params,
        verdict=FAIL if failure else PASS,
        counterexample=failure,
        elapsed=time.perf_counter() - t0,
        details=details,
        covers=covers,
    )


def coverage_matrix(reports: Iterable[CheckReport]) -> dict[str, str]:
    """Result name -> verdict; a result fails if any report covering it fails."""
    out: dict[str, str] = {}
    for r in reports:
        for c in r.covers:
            if out.get(c) != FAIL:
                out[c] = r.verdict
    return {k: out[k] for k in ALL_RESULTS if k in out}


# -- sharding -----------------------------------------------------------------


def _map_shards(worker: Callable, shards: list, jobs: int) -> list:
    if jobs <= 1 or len(shards) <= 1:
        return [worker(s) for s in shards]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(worker, shards))


def _selfmap_shards(m: int, kind: Kind) -> list[tuple]:
    total = m**m if kind is Kind.MONOID else math.factorial(m)
    return [(m, kind.value, lo, min(lo + SHARD_SIZE, total)) for lo in range(0, total, SHARD_SIZE)]


def _systems_in_shard(shard) -> Iterable[FiniteDynSystem]:
    m, kind, lo, hi = shard
    kind = Kind(kind)
    source = itertools.product(range(m), repeat=m) if kind is Kind.MONOID else itertools.permutations(range(m))
    for g in itertools.islice(source, lo, hi):
        yield FiniteDynSystem(m, (g,), kind)


def single_generator_systems(m: int, kind: Kind) -> Iterable[FiniteDynSystem]:
    """All ``m**m`` self-maps (monoid) or all ``m!`` permutations (group) on ``m`` points."""
    for shard in _selfmap_shards(m, kind):
        yield from _systems_in_shard(shard)


# -- height equivalence -----------------------------------------------------------


def _closure_count_height(sys: FiniteDynSystem, w) -> int:
    return height_via_closures(sys, w)


def _heights_worker(args):
    shard, closure_height = args
    count = 0
    for sys in _systems_in_shard(shard):
        count += 1
        for wm, hc in chain_heights(sys).items():
            w = sorted(members(wm))
            hk = closure_height(sys, w)
            if hc != hk:
                return count, {
                    "system": sys.to_dict(),
                    "subset": w,
                    "expected": hc,
                    "actual": hk,
                    "note": "longest invariant chain vs closure count",
                }
    return count, None


def check_remark_height_equivalence(
    max_size: int = 6, jobs: int = 1, closure_height: Callable = _closure_count_height
) -> CheckReport:
    """Chain height equals closure-count height on every invariant subset of every single-generator system."""
    t0 = time.perf_counter()
    details, failure = [], None
    for m in range(1, max_size + 1):
        scanned = {}
        for kind in (Kind.MONOID, Kind.GROUP):
            shards = [(s, closure_height) for s in _selfmap_shards(m, kind)]
            scanned[kind] = 0
            for count, bad in _map_shards(_heights_worker, shards, jobs):
                scanned[kind] += count
                if bad and failure is None:
                    failure = bad
        details.append(f"m={m}: {scanned[Kind.MONOID]} self-maps + {scanned[Kind.GROUP]} permutations")
        if failure:
            break
    return _report(
        "remark_height_equivalence", {"max_size": max_size}, t0, failure, details, (HEIGHT_EQUIVALENCE,)
    )


# -- group sequences ----------------------------------------------------------------


def _random_perm(rng: random.Random, m: int) -> tuple[int, ...]:
    g = list(range(m))
    rng.shuffle(g)
    return tuple(g)


def _all_zero_worker(shard):
    for sys in _systems_in_shard(shard):
        seq = indicator_sequence(closure_poset(sys)).entries
        if any(seq) or not valid_group_sequence(seq, infinite=False):
            return {"system": sys.to_dict(), "expected": "all zeros", "actual": list(seq)}
    return None


def check_group_sequence_charac(
    max_pq: int = 10, max_finite: int = 6, samples: int = 1000, seed: int = 0, jobs: int = 1
) -> CheckReport:
    t0 = time.perf_counter()
    details, failure = [], None
    by_height: dict[int, set] = {}

    # infinite branch: symbolic witnesses
    for p in range(1, max_pq):
        for q in range(1, max_pq - p + 1):
            sym = realize_group_sequence(p, q)
            poset = closure_poset(sym)
            seq = indicator_sequence(poset).entries
            target = (0,) * p + (1,) * q
            line_closures = [c for c in symbolic_all_closures(sym) if c.is_infinite]
            if seq != target or not valid_group_sequence(seq, infinite=True):
                failure = failure or {"system": sym.to_dict(), "expected": list(target), "actual": list(seq)}
            elif any(symbolic_height(sym, c) != 1 for c in line_closures) or len(poset) - 1 < 1:
                failure = failure or {
                    "system": sym.to_dict(),
                    "expected": "every line closure has height 1 and total height > 0",
                    "actual": list(poset.node_height),
                }
            by_height.setdefault(len(seq) - 1, set()).add(seq)
    for n in sorted(by_height):
        admissible = {
            s for s in itertools.product((0, 1), repeat=n + 1) if valid_group_sequence(s, infinite=True)
        }
        got = by_height[n]
        if got != admissible or len(got) != n:
            failure = failure or {
                "height": n,
                "expected": sorted(map(list, admissible)),
                "actual": sorted(map(list, got)),
            }
        details.append(f"height {n}: {len(got)} distinct sequences")

    # finite branch: exhaustive single permutations, sampled generator pairs
    for m in range(1, max_finite + 1):
        for bad in _map_shards(_all_zero_worker, _selfmap_shards(m, Kind.GROUP), jobs):
            failure = failure or bad
        rng = random.Random(seed * 1000 + m)
        for _ in range(samples):
            sys = FiniteDynSystem(m, (_random_perm(rng, m), _random_perm(rng, m)), Kind.GROUP)
            seq = indicator_sequence(closure_poset(sys)).entries
            if any(seq):
                failure = failure or {"system": sys.to_dict(), "expected": "all zeros", "actual": list(seq)}
                break
        details.append(f"m={m}: {math.factorial(m)} permutations + {samples} generator pairs all-zero")
    return _report(
        "group_sequence_charac",
        {"max_pq": max_pq, "max_finite": max_finite, "samples": samples, "seed": seed},
        t0,
        failure,
        details,
        (INFINITE_ORBIT_CLOSURE, GROUP_SEQUENCES_INFINITE, GROUP_SEQUENCES, CYCLIC_WITNESS),
    )


# -- self-map step sequences ---------------------------------------------------


def _selfmap_worker(shard):
    m = shard[0]
    seen = set()
    for sys in _systems_in_shard(shard):
        seq = indicator_sequence(closure_poset(sys)).entries
        if not valid_step_sequence(seq):
            return seen, {"system": sys.to_dict(), "expected": "step sequence", "actual": list(seq)}
        if len(seq) == m:
            seen.add(seq)
    return seen, None


def check_selfmap_charac(max_size: int = 6, jobs: int = 1) -> CheckReport:
    t0 = time.perf_counter()
    details, failure = [], None
    for m in range(1, max_size + 1):
        realized: set = set()
        for seen, bad in _map_shards(_selfmap_worker, _selfmap_shards(m, Kind.MONOID), jobs):
            realized |= seen
            failure = failure or bad
        n = m - 1
        expected = set(enumerate_step_sequences(n))
        if realized != expected:
            failure = failure or {
                "points": m,
                "expected": sorted(map(list, expected)),
                "actual": sorted(map(list, realized)),
            }
        for s in sorted(expected):
            got = indicator_sequence(closure_poset(realize_selfmap_sequence(s))).entries
            if got != s:
                failure = failure or {
                    "system": realize_selfmap_sequence(s).to_dict(),
                    "expected": list(s),
                    "actual": list(got),
                }
        details.append(f"m={m}: {m**m} self-maps; {len(realized)} = 2^{n} sequences of length {m}")
        if failure:
            break
    return _report("selfmap_charac", {"max_size": max_size}, t0, failure, details, (SELFMAP_STEPS,))


# -- classification ------------------------------------------------------------


def check_classification(max_pq: int = 8, max_perm: int = 4) -> CheckReport:
    t0 = time.perf_counter()
    details, failure = [], None
    corpus: list[tuple[dict, ClosurePoset]] = []
    for p in range(1, max_pq + 1):
        for q in range(0, max_pq - p + 1):
            sym = SymbolicFortSystem(p, q)
            poset = closure_poset(sym)
            got = classify_group_topology(poset)
            want = (p - 1, q + 1)
            if got != want or not poset_isomorphic(poset, make_group_canonical_space(*want)):
                failure = failure or {"system": sym.to_dict(), "expected": list(want), "actual": got}
            corpus.append((sym.to_dict(), poset))
    for m in range(1, max_perm + 1):
        for sys in single_generator_systems(m, Kind.GROUP):
            poset = closure_poset(sys)
            want = (len(poset) - 1, 1)
            got = classify_group_topology(poset)
            if got != want:
                failure = failure or {"system": sys.to_dict(), "expected": list(want), "actual": got}
            corpus.append((sys.to_dict(), poset))
    pairs = 0
    for (da, pa), (db, pb) in itertools.combinations(corpus, 2):
        pairs += 1
        same_seq = indicator_sequence(pa) == indicator_sequence(pb)
        if same_seq != poset_isomorphic(pa, pb):
            failure = failure or {
                "systems": [da, db],
                "expected": "equal sequences iff isomorphic posets",
                "actual": {"equal_sequences": same_seq},
            }
    details.append(f"{len(corpus)} systems classified, {pairs} pairs compared")
    return _report(
        "classification",
        {"max_pq": max_pq, "max_perm": max_perm},
        t0,
        failure,
        details,
        (GROUP_TOPOLOGY, SEQUENCE_DETERMINES_TOPOLOGY),
    )


# -- reduction to a finite system -------------------------------------------------


def _reduction_failure(source: dict, poset: ClosurePoset) -> Optional[dict]:
    red = reduce_to_finite(poset)
    for k in range(len(poset)):
        if orbit(red, k) != frozenset(poset.downset(k)):
            return {
                "system": source,
                "node": poset.names[k],
                "expected": sorted(poset.downset(k)),
                "actual": sorted(orbit(red, k)),
            }
    back = closure_poset(red)
    if not poset_isomorphic(back, poset) or indicator_sequence(back) != indicator_sequence(poset):
        return {"system": source, "expected": "isomorphic round trip", "actual": red.to_dict()}
    return None


def _reduction_worker(shard):
    for sys in _systems_in_shard(shard):
        bad = _reduction_failure(sys.to_dict(), closure_poset(sys))
        if bad:
            return bad
    return None


def check_reduction(max_size: int = 5, max_pq: int = 6, jobs: int = 1) -> CheckReport:
    t0 = time.perf_counter()
    details, failure = [], None
    count = 0
    for m in range(1, max_size + 1):
        for bad in _map_shards(_reduction_worker, _selfmap_shards(m, Kind.MONOID), jobs):
            failure = failure or bad
        count += m**m
    for p in range(1, max_pq + 1):
        for q in range(0, max_pq - p + 1):
            sym = SymbolicFortSystem(p, q)
            failure = failure or _reduction_failure(sym.to_dict(), closure_poset(sym))
            count += 1
    details.append(f"{count} posets reduced and round-tripped")
    return _report(
        "reduction",
        {"max_size": max_size, "max_pq": max_pq},
        t0,
        failure,
        details,
        (FINITE_REDUCTION, SEQUENCE_REDUCTION),
    )


# -- the three-chain counterexample -----------------------------------------------


def three_chain() -> ClosurePoset:
    return poset_from_covers(["1", "2", "3"], [(0, 1), (1, 2)])


def check_counterexample_44() -> CheckReport:
    t0 = time.perf_counter()
    details, failure = [], None
    chain = three_chain()

    cls = classify_group_topology(chain)
    if cls is not None:
        failure = {"part": "a", "expected": "not classifiable", "actual": list(cls)}
    details.append("3-chain: not a group indicator topology")

    target = (0, 1, 2)
    if valid_group_sequence(target, infinite=True) or valid_group_sequence(target, infinite=False):
        failure = failure or {"part": "b", "expected": "rejected", "actual": "accepted"}
    details.append("(0,1,2): rejected, entry 2 not in {0,1}")

    sys = realize_selfmap_sequence(target)
    poset = closure_poset(sys)
    iso = find_isomorphism(chain, poset)
    opens = None
    if iso is not None:
        inverse = {v: k for k, v in iso.items()}
        opens = sorted(
            (frozenset(inverse[i] for i in s) for s in enumerate_opens(poset)),
            key=lambda s: (len(s), sorted(s)),
        )
        opens = format_opens(chain, opens)
    want = ["∅", "{1}", "{1,2}", "{1,2,3}"]
    if iso is None or opens != want or indicator_sequence(poset).entries != target:
        failure = failure or {"part": "c", "system": sys.to_dict(), "expected": want, "actual": opens}
    else:
        details.append(
            f"witness {list(sys.generators[0])}: "
            + ", ".join(f"{chain.names[a]}->{poset.names[b]}" for a, b in iso.items())
        )
    return _report("counterexample_44", {}, t0, failure, details, (CHAIN_COUNTEREXAMPLE,))


# -- achievable heights under one permutation ---------------------------------------


def _perm_heights_worker(shard):
    return {height_via_closures(s, range(s.size)) for s in _systems_in_shard(shard)}


def check_height_set_A(max_m: int = 6, max_i_countable: int = 10, jobs: int = 1) -> CheckReport:
    t0 = time.perf_counter()
    details, failure = [], None
    for m in range(1, max_m + 1):
        heights: set = set()
        for hs in _map_shards(_perm_heights_worker, _selfmap_shards(m, Kind.GROUP), jobs):
            heights |= hs
        if heights != set(range(m)):
            failure = failure or {"points": m, "expected": list(range(m)), "actual": sorted(heights)}
        for i in range(m):
            sys = realize_finite_height_perm(m, i)
            h = height_via_closures(sys, range(m))
            if h != i or any(indicator_sequence(closure_poset(sys)).entries) or len(closure_poset(sys)) != i + 1:
                failure = failure or {"system": sys.to_dict(), "expected": i, "actual": h}
        details.append(f"m={m}: heights {sorted(heights)}")
    countable = []
    for i in range(1, max_i_countable + 1):
        sym = SymbolicFortSystem(i, 1)
        h = len(symbolic_all_closures(sym)) - 1
        if h != i:
            failure = failure or {"system": sym.to_dict(), "expected": i, "actual": h}
        countable.append(h)
    details.append(f"countable: heights {countable}")
    details.append(f"countable: identity map height {INFINITE_BY_CONSTRUCTION} (infinitely many fixed points)")
    return _report(
        "height_set_A",
        {"max_m": max_m, "max_i_countable": max_i_countable},
        t0,
        failure,
        details,
        (CYCLIC_HEIGHT_SET,),
    )


# -- suites --------------------------------------------------------------------------

SUITES = ("heights", "group", "selfmap", "classify", "reduce", "ce44")


def run_suite(name: str, max_size: int = 5, seed: int = 0, jobs: int = 1) -> list[CheckReport]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, max_size, seed, jobs)]
    if name == "heights":
        return [
            check_remark_height_equivalence(max_size, jobs),
            check_height_set_A(max_size, jobs=jobs),
        ]
    if name == "group":
        return [check_group_sequence_charac(max_finite=max_size, seed=seed, jobs=jobs)]
    if name == "selfmap":
        return [check_selfmap_charac(max_size, jobs)]
    if name == "classify":
        return [check_classification(max_perm=min(max_size, 4))]
    if name == "reduce":
        return [check_reduction(min(max_size, 5), jobs=jobs)]
    if name == "ce44":
        return [check_counterexample_44()]
    raise ValueError(f"unknown suite {name!r}")
