"""
Indicator topology as a finite poset of orbit closures.

Nodes are the distinct orbit closures ordered by inclusion.  The opens of
the indicator topology are exactly the down-closed node sets, so two
indicator topologies are homeomorphic iff their posets are order-isomorphic.
A node's height is the number of closures strictly below it, which is the
height of that closure as an invariant set.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence, Union

from fortdyn.core_action import FiniteDynSystem, all_orbit_closures
from fortdyn.errors import BadCardinal, NotAPartialOrder, TooManyNodes
from fortdyn.symbolic_fort import SymbolicFortSystem, closure_contains, symbolic_all_closures

MAX_OPEN_NODES = 20


def node_name(label) -> str:
    if isinstance(label, frozenset):
        return "{" + ",".join(str(v) for v in sorted(label)) + "}"
    return str(label)


@dataclass(frozen=True)
class ClosurePoset:
    nodes: tuple
    leq: tuple[tuple[bool, ...], ...]
    node_height: tuple[int, ...]

    @classmethod
    def from_relation(cls, nodes: Sequence[Hashable], leq) -> "ClosurePoset":
        n = len(nodes)
        rel = tuple(tuple(bool(leq[i][j]) for j in range(n)) for i in range(n))
        for i in range(n):
            if not rel[i][i]:
                raise NotAPartialOrder(f"relation is not reflexive at {node_name(nodes[i])}")
            for j in range(n):
                if i != j and rel[i][j] and rel[j][i]:
                    raise NotAPartialOrder(
                        f"{node_name(nodes[i])} and {node_name(nodes[j])} are mutually below each other"
                    )
                if rel[i][j]:
                    for k in range(n):
                        if rel[j][k] and not rel[i][k]:
                            raise NotAPartialOrder("relation is not transitive")
        heights = tuple(sum(rel[j][i] for j in range(n)) - 1 for i in range(n))
        return cls(tuple(nodes), rel, heights)

    def __len__(self):
        return len(self.nodes)

    @property
    def names(self) -> list[str]:
        return [node_name(v) for v in self.nodes]

    def below(self, i: int) -> list[int]:
        """Strict downset of node ``i``."""
        return [j for j in range(len(self)) if j != i and self.leq[j][i]]

    def above(self, i: int) -> list[int]:
        return [j for j in range(len(self)) if j != i and self.leq[i][j]]

    def downset(self, i: int) -> list[int]:
        return [j for j in range(len(self)) if self.leq[j][i]]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges ``(i, j)`` with ``i`` covered by ``j``."""
        n = len(self)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if not any(k != i and k != j and self.leq[i][k] and self.leq[k][j] for k in range(n)):
                    out.append((i, j))
        return out

    def longest_chain_below(self, i: int) -> int:
        memo: dict[int, int] = {}

        def go(v):
            if v not in memo:
                memo[v] = max((go(u) + 1 for u in self.below(v)), default=0)
            return memo[v]

        return go(i)

    def relabel(self, order: Sequence[int]) -> "ClosurePoset":
        """Copy with node ``order[k]`` moved to position ``k``."""
        nodes = [self.nodes[o] for o in order]
        leq = [[self.leq[a][b] for b in order] for a in order]
        return ClosurePoset.from_relation(nodes, leq)


def poset_from_covers(names: Sequence[Hashable], covers: Iterable[Sequence[int]]) -> ClosurePoset:
    """Reflexive-transitive closure of the cover pairs ``(i, j)``, meaning ``i < j``."""
    n = len(names)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for pair in covers:
        i, j = pair
        if not (0 <= i < n and 0 <= j < n):
            raise NotAPartialOrder(f"cover {list(pair)} refers to a missing node")
        if i == j:
            raise NotAPartialOrder(f"cover {list(pair)} is a self-loop")
        rel[i][j] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if rel[i][j] and rel[j][i]:
                raise NotAPartialOrder("covers contain a cycle")
    return ClosurePoset.from_relation(list(names), rel)


def closure_poset(source: Union[FiniteDynSystem, SymbolicFortSystem, ClosurePoset]) -> ClosurePoset:
    if isinstance(source, ClosurePoset):
        return source
    if isinstance(source, FiniteDynSystem):
        nodes = all_orbit_closures(source)
        leq = [[a <= b for b in nodes] for a in nodes]
    elif isinstance(source, SymbolicFortSystem):
        nodes = symbolic_all_closures(source)
        leq = [[closure_contains(a, b) for b in nodes] for a in nodes]
    else:
        raise TypeError(f"cannot build a closure poset from {type(source).__name__}")
    return ClosurePoset.from_relation(nodes, leq)


@dataclass(frozen=True)
class IndicatorSequence:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in entries) or list(entries) != sorted(entries):
            raise ValueError(f"indicator sequence must be nondecreasing and nonnegative: {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def total_height(self) -> int:
        """Height of the whole system: number of closures minus one."""
        return len(self.entries) - 1

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return ",".join(map(str, self.entries))


def indicator_sequence(p: ClosurePoset) -> IndicatorSequence:
    return IndicatorSequence(tuple(sorted(p.node_height)))


def parse_sequence(text: str) -> tuple[int, ...]:
    """Parse ``"0,1,2"``, ``"(0, 1, 2)"`` and similar into a tuple of ints."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        raise ValueError("empty sequence")
    parts = re.split(r"\s*,\s*|\s+", body.strip())
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise ValueError(f"not an integer sequence: {text!r}") from None


def _refine_colors(p: ClosurePoset) -> list:
    n = len(p)
    lower = [[] for _ in range(n)]
    up = [[] for _ in range(n)]
    for i, j in p.covers():
        lower[j].append(i)
        up[i].append(j)
    colors = [(len(p.below(i)), len(p.above(i)), len(lower[i]), len(up[i])) for i in range(n)]
    while True:
        sig = [
            (colors[i], tuple(sorted(colors[j] for j in lower[i])), tuple(sorted(colors[j] for j in up[i])))
            for i in range(n)
        ]
        if len(set(sig)) == len(set(colors)):
            return sig
        colors = sig


def find_isomorphism(a: ClosurePoset, b2: ClosurePoset) -> Optional[dict[int, int]]:
    """Order isomorphism ``a -> b2`` as an index map, or ``None``."""
    n = len(a)
    if n != len(b2):
        return None
    ca, cb = _refine_colors(a), _refine_colors(b2)
    if Counter(ca) != Counter(cb):
        return None
    classes: dict = {}
    for j, c in enumerate(cb):
        classes.setdefault(c, []).append(j)
    order = sorted(range(n), key=lambda i: (len(classes[ca[i]]), ca[i]))
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in classes[ca[i]]:
            if j in used:
                continue
            if all(
                a.leq[i][u] == b2.leq[j][v] and a.leq[u][i] == b2.leq[v][j]
                for u, v in image.items()
            ):
                image[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                del image[i]
                used.discard(j)
        return False

    return dict(sorted(image.items())) if extend(0) else None


def poset_isomorphic(a: ClosurePoset, b2: ClosurePoset) -> bool:
    return find_isomorphism(a, b2) is not None


def make_group_canonical_space(alpha: int, beta: int) -> ClosurePoset:
    """Discrete ``alpha``-point antichain beside a ``beta``-point star with bottom 0."""
    if alpha < 0:
        raise BadCardinal(f"alpha must be >= 0, got {alpha}")
    if beta < 1:
        raise BadCardinal(f"beta must be >= 1, got {beta}")
    nodes = [f"Y{i}" for i in range(alpha)] + [f"Z{j}" for j in range(beta)]
    n = len(nodes)
    bottom = alpha
    leq = [[i == j or (i == bottom and j > alpha) for j in range(n)] for i in range(n)]
    return ClosurePoset.from_relation(nodes, leq)


def classify_group_topology(p: ClosurePoset) -> Optional[tuple[int, int]]:
    """
    Return ``(alpha, beta)`` when ``p`` is a discrete antichain plus a star,
    else ``None``.

    Every non-minimal node must sit directly over one shared bottom node and
    nothing else.  With no non-minimal nodes any minimal node may serve as
    the star's bottom, giving ``beta = 1``.
    """
    n = len(p)
    if n == 0:
        return None
    nonmin = [i for i in range(n) if p.below(i)]
    if not nonmin:
        return (n - 1, 1)
    bottoms = {tuple(p.below(i)) for i in nonmin}
    if len(bottoms) != 1:
        return None
    (shared,) = bottoms
    if len(shared) != 1:
        return None
    minimal = n - len(nonmin)
    return (minimal - 1, len(nonmin) + 1)


def enumerate_opens(p: ClosurePoset) -> list[frozenset[int]]:
    """All down-closed node sets (as index sets), including the empty set."""
    n = len(p)
    if n > MAX_OPEN_NODES:
        raise TooManyNodes(f"open enumeration limited to {MAX_OPEN_NODES} nodes, got {n}")
    order = sorted(range(n), key=lambda i: (p.node_height[i], i))
    below = [p.below(i) for i in range(n)]
    out: list[frozenset[int]] = []
    chosen: set[int] = set()

    def go(k):
        if k == n:
            out.append(frozenset(chosen))
            return
        go(k + 1)
        i = order[k]
        if all(j in chosen for j in below[i]):
            chosen.add(i)
            go(k + 1)
            chosen.discard(i)

    go(0)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def is_topology(opens: Sequence[frozenset], n: int) -> bool:
    family = set(opens)
    if frozenset() not in family or frozenset(range(n)) not in family:
        return False
    return all(u | v in family and u & v in family for u in family for v in family)


def format_opens(p: ClosurePoset, opens: Iterable[frozenset[int]]) -> list[str]:
    names = p.names
    out = []
    for s in opens:
        if not s:
            out.append("∅")
        else:
            out.append("{" + ",".join(names[i] for i in sorted(s)) + "}")
    return out
