from fractions import Fraction

import pytest
from hypothesis import strategies as st

from routh.core import CycleRatios

positive_ratio = st.fractions(min_value=Fraction(1, 12), max_value=12, max_denominator=12).filter(lambda f: f > 0)


def ratio_vectors(min_n=3, max_n=6):
    return st.lists(positive_ratio, min_size=min_n, max_size=max_n).map(CycleRatios.of)


@pytest.fixture
def mixed6():
    return CycleRatios.of([Fraction(3, 2), 2, 1, Fraction(5, 3), 3, Fraction(1, 4)])
