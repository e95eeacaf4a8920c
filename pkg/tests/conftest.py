import pytest

from weakirv.core import Profile3


@pytest.fixture
def table1():
    """19-voter worked example: 6 A>B>C, 8 B>C>A, 4 C>A>B, 1 C>B>A."""
    return Profile3((6, 0, 0, 8, 4, 1))


@pytest.fixture
def table5():
    """2021 Minneapolis ward-2 profile reduced to Arab/Gordon/Worlobah.

    Canonical labels by descending first-place tally: A=Arab (3236),
    B=Worlobah (2879), C=Gordon (2800); 8915 ballots in total.
    """
    return Profile3(
        full_counts=(756, 908, 1088, 1299, 801, 1177),
        bullet_counts=(1572, 492, 822),
    )


MINNEAPOLIS_NAMES = {"A": "Arab", "B": "Worlobah", "C": "Gordon"}
