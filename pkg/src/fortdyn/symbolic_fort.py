"""
Symbolic infinite Fort systems.

The carrier is the particular point ``b``, fixed points ``Fixed(1..p-1)`` and
``q`` pairwise disjoint bi-infinite lines, all shifted by +1 under a single
generator.  ``b`` plays the role of fixed point 0.  Each line's orbit is
the whole line, which is infinite, so its closure adjoins ``b``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from fortdyn.core_action import FiniteDynSystem, Kind
from fortdyn.errors import BadParameters, BadReference


class Cardinality(enum.Enum):
    FINITE = "finite"
    COUNTABLY_INFINITE = "countably-infinite"


@dataclass(frozen=True, order=True)
class ParticularPoint:
    def __str__(self):
        return "b"


B = ParticularPoint()


@dataclass(frozen=True, order=True)
class Fixed:
    j: int

    def __str__(self):
        return f"Fixed({self.j})"


@dataclass(frozen=True, order=True)
class Line:
    """The whole ``i``-th line, as a closure atom."""

    i: int

    def __str__(self):
        return f"Line({self.i})"


@dataclass(frozen=True)
class LinePoint:
    i: int
    n: int


Atom = Union[ParticularPoint, Fixed, Line]
PointRef = Union[ParticularPoint, Fixed, LinePoint]


def _atom_key(a: Atom) -> tuple:
    if isinstance(a, ParticularPoint):
        return (0, 0)
    if isinstance(a, Fixed):
        return (1, a.j)
    return (2, a.i)


@dataclass(frozen=True)
class ClosureSet:
    atoms: frozenset

    def __post_init__(self):
        atoms = frozenset(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        lines = [a for a in atoms if isinstance(a, Line)]
        shapes_ok = (
            len(atoms) == 1 and not lines
            or len(atoms) == 2 and len(lines) == 1 and B in atoms
        )
        if not shapes_ok:
            raise ValueError(f"not a closure shape: {sorted(map(str, atoms))}")

    @property
    def is_infinite(self) -> bool:
        return any(isinstance(a, Line) for a in self.atoms)

    def sort_key(self) -> tuple:
        return (len(self.atoms), sorted(_atom_key(a) for a in self.atoms))

    def labels(self) -> list[str]:
        return [str(a) for a in sorted(self.atoms, key=_atom_key)]

    def __str__(self):
        return "{" + ",".join(self.labels()) + "}"


@dataclass(frozen=True)
class SymbolicFortSystem:
    fixed_count: int = 1
    line_count: int = 0

    def __post_init__(self):
        if not isinstance(self.fixed_count, int) or self.fixed_count < 1:
            raise BadParameters(f"fixed_count must be >= 1 (b is always fixed), got {self.fixed_count!r}")
        if not isinstance(self.line_count, int) or self.line_count < 0:
            raise BadParameters(f"line_count must be >= 0, got {self.line_count!r}")

    @property
    def is_infinite(self) -> bool:
        return self.line_count >= 1

    @property
    def cardinality(self) -> Cardinality:
        return Cardinality.COUNTABLY_INFINITE if self.is_infinite else Cardinality.FINITE

    def to_dict(self) -> dict:
        return {"type": "symbolic", "fixed_points": self.fixed_count, "z_lines": self.line_count}


def symbolic_orbit_closure(sym: SymbolicFortSystem, ref: PointRef) -> ClosureSet:
    if isinstance(ref, ParticularPoint):
        return ClosureSet(frozenset([B]))
    if isinstance(ref, Fixed):
        if not 1 <= ref.j < sym.fixed_count:
            raise BadReference(f"{ref} not in a system with {sym.fixed_count} fixed points")
        return ClosureSet(frozenset([ref]))
    if isinstance(ref, LinePoint):
        if not 0 <= ref.i < sym.line_count:
            raise BadReference(f"line {ref.i} not in a system with {sym.line_count} lines")
        # offset is irrelevant: the shift orbit of any line point is the whole line
        return ClosureSet(frozenset([Line(ref.i), B]))
    raise BadReference(f"unknown point reference {ref!r}")


def symbolic_all_closures(sym: SymbolicFortSystem) -> list[ClosureSet]:
    out = [ClosureSet(frozenset([B]))]
    out += [ClosureSet(frozenset([Fixed(j)])) for j in range(1, sym.fixed_count)]
    out += [ClosureSet(frozenset([Line(i), B])) for i in range(sym.line_count)]
    return out


def closure_contains(a: ClosureSet, b2: ClosureSet) -> bool:
    """True when ``a`` is a subset of ``b2``."""
    return a.atoms <= b2.atoms


def symbolic_height(sym: SymbolicFortSystem, c: ClosureSet) -> int:
    below = [d for d in symbolic_all_closures(sym) if closure_contains(d, c)]
    return len(below) - 1


def concretize(sym: SymbolicFortSystem, window: int) -> tuple[FiniteDynSystem, list]:
    """
    Finite stand-in for ``sym``: each line becomes the window ``[-window, window]``.

    Two generators act as a monoid: the forward shift and the backward shift,
    each sending the window's far edge to ``b``.  Every window point then
    reaches its whole window and ``b``, mirroring the closure of an infinite
    orbit.  Returns the system and a label per carrier index.
    """
    if window < 1:
        raise BadParameters("window must be >= 1")
    labels: list = [B] + [Fixed(j) for j in range(1, sym.fixed_count)]
    width = 2 * window + 1
    start = len(labels)
    for i in range(sym.line_count):
        labels += [LinePoint(i, n) for n in range(-window, window + 1)]
    size = len(labels)
    fwd = list(range(size))
    bwd = list(range(size))
    for i in range(sym.line_count):
        base = start + i * width
        for k in range(width):
            fwd[base + k] = base + k + 1 if k + 1 < width else 0
            bwd[base + k] = base + k - 1 if k > 0 else 0
    return FiniteDynSystem(size, (tuple(fwd), tuple(bwd)), Kind.MONOID), labels
