"""Witness builders: explicit systems realizing a requested indicator sequence or topology."""

from __future__ import annotations

import itertools
from typing import Sequence

from fortdyn.core_action import FiniteDynSystem, Kind
from fortdyn.errors import BadParameters, EmptyPoset, InvalidStepSequence, TooLarge
from fortdyn.indicator import ClosurePoset
from fortdyn.symbolic_fort import SymbolicFortSystem

MAX_ENUMERATE = 20


def valid_step_sequence(entries: Sequence[int]) -> bool:
    """Starts at 0 and every consecutive difference is 0 or 1."""
    entries = list(entries)
    if not entries or entries[0] != 0:
        return False
    return all(b - a in (0, 1) for a, b in zip(entries, entries[1:]))


def valid_group_sequence(entries: Sequence[int], infinite: bool = True) -> bool:
    """
    Whether a group acting on a Fort space can have this indicator sequence.

    Infinite space: 0/1 valued, nondecreasing, starting at 0 and ending at 1.
    Finite space: all zeros.
    """
    entries = list(entries)
    if not entries:
        return False
    if not infinite:
        return all(e == 0 for e in entries)
    return (
        all(e in (0, 1) for e in entries)
        and entries == sorted(entries)
        and entries[0] == 0
        and entries[-1] == 1
    )


def realize_group_sequence(p: int, q: int) -> SymbolicFortSystem:
    """
    ``p`` fixed points (one of them ``b``) and ``q`` shift lines.

    Indicator sequence is ``p`` zeros then ``q`` ones; total height ``p+q-1``.
    """
    if p < 1 or q < 1:
        raise BadParameters(f"need p >= 1 and q >= 1, got p={p}, q={q}")
    return SymbolicFortSystem(p, q)


def realize_finite_height_perm(m: int, i: int) -> FiniteDynSystem:
    """Permutation fixing points ``0..i-1`` and cycling ``i..m-1``; height ``i``."""
    if m < 1 or not 0 <= i <= m - 1:
        raise BadParameters(f"need m >= 1 and 0 <= i <= m-1, got m={m}, i={i}")
    g = list(range(m))
    for j in range(i, m - 1):
        g[j] = j + 1
    g[m - 1] = i
    return FiniteDynSystem(m, (tuple(g),), Kind.GROUP)


def realize_selfmap_sequence(seq: Sequence[int]) -> FiniteDynSystem:
    """
    Single self-map on ``len(seq)`` points whose indicator sequence is ``seq``.

    Height-0 points are fixed; a point of height ``h > 0`` maps to the last
    index whose height is below ``h``.
    """
    seq = list(seq)
    if not valid_step_sequence(seq):
        raise InvalidStepSequence(f"{tuple(seq)} does not start at 0 with steps in {{0,1}}")
    g = []
    for i, h in enumerate(seq):
        if h == 0:
            g.append(i)
        else:
            g.append(max(j for j in range(len(seq)) if seq[j] < h))
    return FiniteDynSystem(len(seq), (tuple(g),), Kind.MONOID)


def enumerate_step_sequences(n: int) -> list[tuple[int, ...]]:
    """All ``2**n`` step sequences of length ``n+1``, in lexicographic order."""
    if n < 0:
        raise BadParameters(f"n must be >= 0, got {n}")
    if n > MAX_ENUMERATE:
        raise TooLarge(f"n={n} exceeds enumeration limit {MAX_ENUMERATE}")
    out = []
    for steps in itertools.product((0, 1), repeat=n):
        out.append(tuple(itertools.accumulate(steps, initial=0)))
    return out


def reduce_to_finite(p: ClosurePoset) -> FiniteDynSystem:
    """
    Finite monoid on the poset's nodes whose orbit of each node is its downset.

    Generators are the identity plus, for each strict pair ``w < k``, the map
    sending ``k`` to ``w`` and fixing everything else.  These elementary maps
    generate the same orbits as the full monoid of weakly-decreasing maps.
    """
    n = len(p)
    if n == 0:
        raise EmptyPoset("cannot reduce an empty poset")
    gens = [tuple(range(n))]
    for k in range(n):
        for w in p.below(k):
            g = list(range(n))
            g[k] = w
            gens.append(tuple(g))
    return FiniteDynSystem(n, tuple(gens), Kind.MONOID)
