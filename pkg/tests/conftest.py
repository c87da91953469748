from fractions import Fraction
from pathlib import Path

import pytest

from emdenseries import Mode, Series

REPO_ROOT = Path(__file__).resolve().parent.parent


def rational(values):
    return Series([Fraction(v) for v in values], Mode.RATIONAL)


def floating(values):
    return Series([float(v) for v in values], Mode.FLOAT)


def relclose(a, b, rel=1e-12):
    a, b = float(a), float(b)
    if a == b:
        return True
    return abs(a - b) <= rel * max(abs(a), abs(b))


@pytest.fixture
def problems_dir():
    return REPO_ROOT / "problems"
