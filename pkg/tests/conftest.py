from hypothesis import strategies as st

from uqsl2.laurent import LaurentPoly

small_polys = st.dictionaries(
    st.integers(min_value=-6, max_value=6), st.integers(min_value=-5, max_value=5), max_size=5
).map(LaurentPoly)

nonzero_polys = small_polys.filter(bool)
