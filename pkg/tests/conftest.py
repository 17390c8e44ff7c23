"""Shared hypothesis strategies for sock-sorting objects."""

from hypothesis import strategies as st

from sockpath import DyckPath, KTuple, Sock


@st.composite
def valid_ktuples(draw, max_n: int = 8) -> KTuple:
    """A tuple some Dyck path realizes, built directly from the rules."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    entries = []
    prev = None
    for i in range(1, n + 1):
        if i == n:
            entries.append(1)
            break
        lo = 1 if prev is None else max(1, prev - 1)
        hi = n - i + 1
        prev = draw(st.integers(min_value=lo, max_value=hi))
        entries.append(prev)
    return KTuple(entries)


@st.composite
def dyck_path_heights(draw, max_n: int = 8) -> DyckPath:
    """A Dyck path built by feasible random steps."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    heights = []
    h = 0
    for i in range(2 * n):
        remaining = 2 * n - i - 1
        can_up = h + 1 <= remaining
        can_down = h >= 1
        if can_up and can_down:
            h += draw(st.sampled_from((-1, 1)))
        elif can_up:
            h += 1
        else:
            h -= 1
        heights.append(h)
    return DyckPath(heights)


@st.composite
def sock_orders(draw, max_n: int = 4) -> tuple:
    """A uniform-ish draw order of all socks of up to max_n pairs."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    socks = [Sock(t, s) for t in range(1, n + 1) for s in (0, 1)]
    return tuple(draw(st.permutations(socks)))
