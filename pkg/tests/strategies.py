from __future__ import annotations

from hypothesis import strategies as st

from bumpless.enumeration import all_diagrams

SMALL = [d for n in range(1, 6) for d in all_diagrams(n)]
diagrams = st.sampled_from(SMALL)
