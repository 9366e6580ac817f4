import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from kstab.exactnum import AlgNum, Field

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = [Field.rational(), Field.quad(2), Field.quad(6), Field.biquad(2, 3)]

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def algnums(draw, field=None):
    f = field if field is not None else draw(st.sampled_from(FIELDS))
    return AlgNum([draw(small_fractions) for _ in range(f.dim)], f)


@st.composite
def same_field_triples(draw):
    f = draw(st.sampled_from(FIELDS))
    return f, draw(algnums(f)), draw(algnums(f)), draw(algnums(f))


def frac(x) -> Fraction:
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
