"""
Finite transformation (semi)groups.

A system is a carrier ``0..size-1`` together with generator self-maps.  The
acting structure is the monoid generated by the generators and the identity
(plus inverses for groups).  On a finite discrete carrier every orbit is
already closed, so orbit and orbit closure coincide.

Two independent height computations live here:

* ``height_via_chains`` enumerates every invariant subset and finds the
  longest strictly increasing chain ending at ``w`` (the definition).
* ``height_via_closures`` counts distinct orbits inside ``w`` (the shortcut).

The first is an oracle for the second and is guarded by ``ORACLE_MAX_SIZE``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from fortdyn.errors import (
    CarrierTooLargeForOracle,
    EmptyGenerators,
    NonBijectiveGroupGenerator,
    NotInvariant,
    OutOfRangeEntry,
    ValidationError,
)

ORACLE_MAX_SIZE = 16


class Kind(enum.Enum):
    GROUP = "group"
    MONOID = "monoid"


@dataclass(frozen=True)
class FiniteDynSystem:
    size: int
    generators: tuple[tuple[int, ...], ...]
    kind: Kind = Kind.MONOID

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "kind", Kind(self.kind))
        validate_system(self)

    @classmethod
    def identity(cls, size: int, kind: Kind = Kind.MONOID) -> "FiniteDynSystem":
        return cls(size, (tuple(range(size)),), kind)

    @cached_property
    def _successors(self) -> tuple[tuple[int, ...], ...]:
        succ: list[set[int]] = [set() for _ in range(self.size)]
        for g in self.generators:
            for x, y in enumerate(g):
                succ[x].add(y)
                if self.kind is Kind.GROUP:
                    succ[y].add(x)
        return tuple(tuple(sorted(s)) for s in succ)

    @cached_property
    def _orbit_masks(self) -> tuple[int, ...]:
        return tuple(_reach(self._successors, x) for x in range(self.size))

    def to_dict(self) -> dict:
        return {
            "type": "finite",
            "kind": self.kind.value,
            "size": self.size,
            "generators": [list(g) for g in self.generators],
        }


def validate_system(sys: FiniteDynSystem) -> None:
    """Raise a ``ValidationError`` subclass if ``sys`` is malformed."""
    if not isinstance(sys.size, int) or sys.size < 1:
        raise ValidationError(f"size must be a positive integer, got {sys.size!r}")
    if not sys.generators:
        raise EmptyGenerators("at least one generator is required")
    for k, g in enumerate(sys.generators):
        if len(g) != sys.size:
            raise OutOfRangeEntry(
                f"generator {k} has length {len(g)}, expected {sys.size}"
            )
        for x, y in enumerate(g):
            if not 0 <= y < sys.size:
                raise OutOfRangeEntry(f"generator {k} maps {x} to {y}, outside carrier")
        if sys.kind is Kind.GROUP and len(set(g)) != sys.size:
            raise NonBijectiveGroupGenerator(f"generator {k} is not a bijection: {list(g)}")


def _reach(succ: Sequence[Sequence[int]], x: int) -> int:
    mask = 1 << x
    stack = [x]
    while stack:
        u = stack.pop()
        for v in succ[u]:
            if not mask >> v & 1:
                mask |= 1 << v
                stack.append(v)
    return mask


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def members(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def set_key(s: Iterable[int]) -> tuple:
    """Sort key: size first, then lexicographic on sorted members."""
    t = tuple(sorted(s))
    return (len(t), t)


def _check_point(sys: FiniteDynSystem, x: int) -> None:
    if not 0 <= x < sys.size:
        raise OutOfRangeEntry(f"point {x} outside carrier of size {sys.size}")


def orbit_mask(sys: FiniteDynSystem, x: int) -> int:
    _check_point(sys, x)
    return sys._orbit_masks[x]


def orbit(sys: FiniteDynSystem, x: int) -> frozenset[int]:
    """Points reachable from ``x``; always contains ``x``."""
    return members(orbit_mask(sys, x))


def all_orbit_closures(sys: FiniteDynSystem) -> list[frozenset[int]]:
    distinct = {m for m in sys._orbit_masks}
    return sorted((members(m) for m in distinct), key=set_key)


def is_invariant(sys: FiniteDynSystem, points: Iterable[int]) -> bool:
    pts = set(points)
    if not pts:
        return False
    for x in pts:
        _check_point(sys, x)
    return all(g[x] in pts for g in sys.generators for x in pts)


def _invariant_masks(sys: FiniteDynSystem) -> list[int]:
    if sys.size > ORACLE_MAX_SIZE:
        raise CarrierTooLargeForOracle(
            f"subset enumeration needs size <= {ORACLE_MAX_SIZE}, got {sys.size}"
        )
    # need[x]: everything one generator step away from x
    need = [0] * sys.size
    for g in sys.generators:
        for x, y in enumerate(g):
            need[x] |= 1 << y
    out = []
    for s in range(1, 1 << sys.size):
        ok = True
        rest = s
        while rest:
            low = rest & -rest
            if need[low.bit_length() - 1] & ~s:
                ok = False
                break
            rest ^= low
        if ok:
            out.append(s)
    return out


def invariant_subsets(sys: FiniteDynSystem) -> list[frozenset[int]]:
    """Brute-force list of all nonempty invariant subsets (size <= 16)."""
    return sorted((members(m) for m in _invariant_masks(sys)), key=set_key)


def chain_heights(sys: FiniteDynSystem) -> dict[int, int]:
    """Longest-chain height of every invariant subset, keyed by bitmask."""
    inv = sorted(_invariant_masks(sys), key=lambda m: bin(m).count("1"))
    h: dict[int, int] = {}
    for s in inv:
        best = 0
        for t, ht in h.items():
            if t != s and t & ~s == 0 and ht + 1 > best:
                best = ht + 1
        h[s] = best
    return h


def _require_invariant(sys: FiniteDynSystem, w: Iterable[int]) -> int:
    pts = list(w)
    if not is_invariant(sys, pts):
        raise NotInvariant(f"{sorted(set(pts))} is not a nonempty invariant subset")
    return mask_of(pts)


def height_via_chains(sys: FiniteDynSystem, w: Iterable[int]) -> int:
    wm = _require_invariant(sys, w)
    return chain_heights(sys)[wm]


def height_via_closures(sys: FiniteDynSystem, w: Iterable[int]) -> int:
    wm = _require_invariant(sys, w)
    orbits = {sys._orbit_masks[y] for y in members(wm)}
    return len(orbits) - 1
