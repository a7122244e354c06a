from fractions import Fraction

from hypothesis import strategies as st

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
weights = st.integers(0, 60).map(lambda k: Fraction(k, 60))
