"""Acceptance gate: one test per criterion, each with its runtime budget."""

import itertools
import time

import pytest

from conftest import ACCEPTANCE_LINES
from fortdyn import (
    FiniteDynSystem,
    Kind,
    SymbolicFortSystem,
    classify_group_topology,
    closure_poset,
    enumerate_step_sequences,
    indicator_sequence,
    poset_from_covers,
    poset_isomorphic,
    realize_group_sequence,
    realize_selfmap_sequence,
    valid_step_sequence,
)
from fortdyn.constructors import valid_group_sequence
from fortdyn.core_action import height_via_closures
from fortdyn.indicator import enumerate_opens, find_isomorphism, format_opens
from fortdyn.verify import (
    check_counterexample_44,
    check_group_sequence_charac,
    check_reduction,
    check_remark_height_equivalence,
)


def gate(label, budget, body):
    t0 = time.perf_counter()
    try:
        body()
        ok, why = True, ""
    except AssertionError as e:
        ok, why = False, f" ({e})" if str(e) else ""
    elapsed = time.perf_counter() - t0
    if elapsed >= budget:
        ok, why = False, f" (over budget {budget}s)"
    line = f"[{'PASS' if ok else 'FAIL'}] {label}  {elapsed:.2f}s / {budget}s{why}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def seq_of(src):
    return indicator_sequence(closure_poset(src)).entries


def test_ac1_height_equivalence():
    def body():
        r = check_remark_height_equivalence(max_size=5)
        assert r.passed, r.counterexample
        assert "m=5: 3125 self-maps + 120 permutations" in r.details

    gate("AC1 chain height = closure-count height, all one-generator systems m<=5", 60, body)


def test_ac2_group_sequences_infinite():
    def body():
        by_height = {}
        for p in range(1, 10):
            for q in range(1, 11 - p):
                seq = seq_of(realize_group_sequence(p, q))
                assert seq == (0,) * p + (1,) * q, (p, q, seq)
                by_height.setdefault(p + q - 1, set()).add(seq)
        assert sorted(by_height) == list(range(1, 10))
        for n, seqs in by_height.items():
            assert len(seqs) == n, (n, seqs)
            assert all(valid_group_sequence(s) for s in seqs)

    gate("AC2 group witnesses give 0^p 1^q, exactly n sequences at height n<=9", 1, body)


def test_ac3_group_sequences_finite():
    def body():
        for m in range(1, 7):
            for g in itertools.permutations(range(m)):
                assert not any(seq_of(FiniteDynSystem(m, [g], Kind.GROUP))), g
        r = check_group_sequence_charac(max_pq=10, max_finite=6, samples=1000, seed=0)
        assert r.passed, r.counterexample
        assert "m=6: 720 permutations + 1000 generator pairs all-zero" in r.details

    gate("AC3 finite group actions m<=6 have all-zero sequences (+1000 pairs/size)", 120, body)


def test_ac4_selfmap_step_sequences():
    def body():
        for m in range(1, 6):
            realized = set()
            for g in itertools.product(range(m), repeat=m):
                seq = seq_of(FiniteDynSystem(m, [g]))
                assert seq[0] == 0 and valid_step_sequence(seq), (g, seq)
                if len(seq) == m:
                    realized.add(seq)
            n = m - 1
            assert realized == set(enumerate_step_sequences(n))
            assert len(realized) == 2**n

    gate("AC4 self-map sequences are step sequences; 2^n realized on n+1 points, n<=4", 60, body)


def test_ac5_classification():
    def body():
        corpus = []
        for p in range(1, 9):
            for q in range(0, 9 - p):
                poset = closure_poset(SymbolicFortSystem(p, q))
                assert classify_group_topology(poset) == (p - 1, q + 1), (p, q)
                corpus.append(poset)
        for a, b in itertools.combinations(corpus, 2):
            assert (indicator_sequence(a) == indicator_sequence(b)) == poset_isomorphic(a, b)

    gate("AC5 symbolic p+q<=8 classify as (p-1, q+1); equal sequence iff homeomorphic", 5, body)


def test_ac6_reduction():
    def body():
        r = check_reduction(max_size=5, max_pq=6)
        assert r.passed, r.counterexample

    gate("AC6 reduction round-trips every corpus poset, orbit = downset per node", 60, body)


def test_ac7_three_chain():
    def body():
        chain = poset_from_covers(["1", "2", "3"], [(0, 1), (1, 2)])
        assert classify_group_topology(chain) is None
        assert not valid_group_sequence((0, 1, 2), infinite=True)
        assert not valid_group_sequence((0, 1, 2), infinite=False)
        sys = realize_selfmap_sequence((0, 1, 2))
        poset = closure_poset(sys)
        iso = find_isomorphism(chain, poset)
        assert iso is not None
        back = {v: k for k, v in iso.items()}
        opens = sorted((frozenset(back[i] for i in s) for s in enumerate_opens(poset)), key=len)
        assert format_opens(chain, opens) == ["∅", "{1}", "{1,2}", "{1,2,3}"]
        assert check_counterexample_44().passed

    gate("AC7 3-chain: no group realizes it, a self-map does with the stated opens", 1, body)


def test_ac8_height_sets():
    def body():
        for m in range(1, 7):
            heights = {
                height_via_closures(FiniteDynSystem(m, [g], Kind.GROUP), range(m))
                for g in itertools.permutations(range(m))
            }
            assert heights == set(range(m)), (m, heights)
        for i in range(1, 11):
            p = closure_poset(SymbolicFortSystem(i, 1))
            assert len(p) - 1 == i

    gate("AC8 permutations on m<=6 reach heights {0..m-1}; countable witnesses reach 1..10", 120, body)
