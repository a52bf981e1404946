import pytest

from schubertq.spaces import space
from schubertq.verify import run_suite


@pytest.mark.parametrize(
    "label",
    ["A1/P1", "A2/P1", "A3/P2", "A4/P2", "B2/P1", "B3/P1", "C2/P2", "C3/P3",
     "D3/P3", "D4/P4", "D5/P5", "E6/P1", "E7/P7"],
)
def test_full_suite(label):
    res = run_suite(space(label), "all")
    bad = [(r.name, r.detail) for r in res.records if not r.passed]
    assert res.passed, bad


@pytest.mark.parametrize(
    "label",
    ["B2/P2", "B3/P3", "C3/P1", "D4/P3", "D6/P6", "A5/P1"],
)
def test_wider_families(label):
    res = run_suite(space(label), "all")
    bad = [(r.name, r.detail) for r in res.records if not r.passed]
    assert res.passed, bad
