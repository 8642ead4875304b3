import hypothesis.strategies as st
from hypothesis import settings

from kcompact.laurent import Laurent

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def laurents(nvars=2, lo=-3, hi=3, max_terms=5, coeff=5):
    exps = st.tuples(*[st.integers(lo, hi)] * nvars)
    terms = st.dictionaries(exps, st.integers(-coeff, coeff), max_size=max_terms)
    return terms.map(lambda d: Laurent(nvars, d))

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
