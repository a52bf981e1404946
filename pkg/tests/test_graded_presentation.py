import pytest

from schubertq.graded_presentation import (
    GradedPresentation,
    PresentationError,
    degree_slice,
    e6_degree17_determinant,
    e7_degree28_determinant,
    exceptional_presentation,
    format_poly,
    parse_poly,
    rank_sequence,
    verify_isomorphism,
    verify_quantum_presentation,
)
from schubertq.schubert_algebra import giambelli_expand


def test_parser():
    assert parse_poly("3*h*s^2-6*h^5*s+2*h^9", ["h", "s"]) == {
        (1, 2): 3,
        (5, 1): -6,
        (9, 0): 2,
    }
    assert parse_poly("-q+s^3", ["s", "q"]) == {(0, 1): -1, (3, 0): 1}
    with pytest.raises(PresentationError):
        parse_poly("(h+s)^2", ["h", "s"])
    with pytest.raises(PresentationError):
        parse_poly("h**2", ["h", "s"])
    with pytest.raises(PresentationError):
        parse_poly("x+1", ["h", "s"])
    p = parse_poly("2*s*t-12*s*h^9+2*t*h^5+5*h^14", ["h", "s", "t"])
    assert format_poly(p, ["h", "s", "t"]) == "5*h^14-12*h^9*s+2*h^5*t+2*s*t"


def test_homogeneity_enforced():
    with pytest.raises(PresentationError):
        GradedPresentation.from_strings([("h", 1), ("s", 4)], ["h+s"])


def test_trivial_projective_plane():
    pres = GradedPresentation.from_strings([("h", 1)], ["h^3"])
    assert [r for r, f in rank_sequence(pres, 5)] == [1, 1, 1, 0, 0, 0]
    assert all(f for _, f in rank_sequence(pres, 5))


def test_e6_slices(e6):
    pres, _ = exceptional_presentation(e6)
    s9 = degree_slice(pres, 9)
    assert len(s9.monomials) == 3 and s9.quotient_rank == 2 and s9.is_free
    assert degree_slice(pres, 0).quotient_rank == 1
    s17 = degree_slice(pres, 17)
    assert s17.quotient_rank == 0 and s17.is_free
    seq = rank_sequence(pres, 16)
    assert [r for r, _ in seq] == e6.cosets.betti()
    rows, d = e6_degree17_determinant(pres)
    assert abs(d) == 1
    assert rows == [
        [0, 0, 3, -6, 2],
        [0, 3, -6, 2, 0],
        [3, -6, 2, 0, 0],
        [0, 1, 0, -12, 5],
        [1, 0, -12, 5, 0],
    ]


def test_e7_slices(e7):
    pres, _ = exceptional_presentation(e7)
    seq = rank_sequence(pres, 28)
    assert [r for r, _ in seq[:28]] == e7.cosets.betti()
    assert all(f for _, f in seq)
    assert seq[28] == (0, True)
    rows, d = e7_degree28_determinant(pres)
    assert d == 1
    assert rows == [
        [2, 2, -12, 5],
        [22, -776, 3573, -1492],
        [384, 4089, -19514, 8146],
        [7929, -114572, 521102, -217624],
    ]


def _giambelli_map(sp, assign, pres):
    gens = [(nm, assign[nm]) for nm in pres.names]
    table = sp.classical_table()
    return {
        w.id: giambelli_expand(sp, gens, w.id, table) for w in sp.cosets.indices
    }


def test_isomorphisms(e6, e7):
    for sp in (e6, e7):
        pres, assign = exceptional_presentation(sp)
        giam = _giambelli_map(sp, assign, pres)
        rep = verify_isomorphism(pres, sp.classical_table(), giam, assign)
        assert rep.passed, rep.detail
        presq, assignq = exceptional_presentation(sp, quantum=True)
        repq = verify_quantum_presentation(presq, sp.quantum_table(), pres, assignq)
        assert repq.passed, repq.detail


def test_payload_round_trip(e6):
    pres, _ = exceptional_presentation(e6)
    again = GradedPresentation.from_payload(pres.to_payload())
    assert again == pres
