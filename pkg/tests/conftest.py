import random
import sys
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")


def rand_q(rng, span=1, den=12):
    """Random rational in [-span, span] with denominator dividing ``den``."""
    return Fraction(rng.randint(-span * den, span * den), den)


@pytest.fixture
def rng():
    return random.Random(20260117)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
