import itertools

from hypothesis import strategies as st

from fortdyn import FiniteDynSystem, Kind


@st.composite
def finite_systems(draw, max_size=6, max_gens=3):
    m = draw(st.integers(1, max_size))
    kind = draw(st.sampled_from([Kind.GROUP, Kind.MONOID]))
    k = draw(st.integers(1, max_gens))
    if kind is Kind.GROUP:
        gen = st.permutations(list(range(m)))
    else:
        gen = st.lists(st.integers(0, m - 1), min_size=m, max_size=m)
    gens = draw(st.lists(gen, min_size=k, max_size=k))
    return FiniteDynSystem(m, tuple(map(tuple, gens)), kind)


def word_orbit(sys, x):
    """Reachability oracle: apply every generator word of length < size."""
    maps = [list(g) for g in sys.generators]
    if sys.kind is Kind.GROUP:
        for g in sys.generators:
            inv = [0] * sys.size
            for a, b in enumerate(g):
                inv[b] = a
            maps.append(inv)
    seen = {x}
    for length in range(1, sys.size):
        for word in itertools.product(maps, repeat=length):
            y = x
            for g in word:
                y = g[y]
            seen.add(y)
    return frozenset(seen)


def subset_oracle(sys):
    """Every nonempty subset closed under every generator, by direct image check."""
    out = []
    for r in range(1, sys.size + 1):
        for c in itertools.combinations(range(sys.size), r):
            s = set(c)
            if all(g[x] in s for g in sys.generators for x in s):
                out.append(frozenset(s))
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
