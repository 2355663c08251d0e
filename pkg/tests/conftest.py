"""Shared hypothesis strategies for exact-arithmetic tests."""

from fractions import Fraction

from hypothesis import strategies as st

from freeclt.algebra import QSqrt2
from freeclt.cumulants import Sequence


def rationals(max_num: int = 30, max_den: int = 12) -> st.SearchStrategy[Fraction]:
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def qsqrt2s() -> st.SearchStrategy[QSqrt2]:
    return st.builds(QSqrt2, rationals(), rationals())


def sequences(
    kind: str, min_len: int = 1, max_len: int = 10
) -> st.SearchStrategy[Sequence]:
    return st.builds(
        Sequence,
        st.sampled_from(["free", "classical"]),
        st.just(kind),
        st.lists(qsqrt2s(), min_size=min_len, max_size=max_len),
    )
