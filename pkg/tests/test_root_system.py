import pytest

from schubertq.root_system import (
    UnsupportedSpaceError,
    build_marked_space,
    build_root_system,
    classify_marked_node,
)


@pytest.mark.parametrize(
    "label,rank,node,dim,c1,dmax",
    [
        ("A", 1, 1, 1, 2, 1),
        ("A", 2, 1, 2, 3, 1),
        ("A", 4, 2, 6, 5, 2),
        ("B", 2, 1, 3, 3, 2),
        ("B", 3, 1, 5, 5, 2),
        ("C", 2, 2, 3, 3, 2),
        ("C", 3, 3, 6, 4, 3),
        ("D", 4, 4, 6, 6, 2),
        ("D", 5, 5, 10, 8, 2),
        ("D", 5, 1, 8, 8, 2),
        ("E6", None, 1, 16, 12, 2),
        ("E6", None, 6, 16, 12, 2),
        ("E7", None, 7, 27, 18, 3),
    ],
)
def test_marked_space_table(label, rank, node, dim, c1, dmax):
    rs = build_root_system(label, rank)
    sp = build_marked_space(rs, node)
    assert (sp.dimension, sp.index_c1, sp.d_max) == (dim, c1, dmax)


def test_cartan_invariants():
    for label, rank in [("A", 4), ("B", 3), ("C", 3), ("D", 5), ("E", 6), ("E", 7)]:
        rs = build_root_system(label, rank)
        A = rs.cartan_matrix
        assert all(A[i][i] == 2 for i in range(rs.rank))
        assert all(
            A[i][j] in (0, -1, -2, -3)
            for i in range(rs.rank)
            for j in range(rs.rank)
            if i != j
        )
        rs.check_invariants()


def test_rank_one_trivial():
    rs = build_root_system("A", 1)
    assert rs.cartan_matrix == ((2,),)
    assert rs.weyl_involution == (1,)


def test_weyl_involution_from_orbit():
    # independent oracle: the lowest weight of each fundamental orbit is
    # minus the mirrored fundamental weight
    for label, rank, expected in [
        ("E", 6, (6, 2, 5, 4, 3, 1)),
        ("E", 7, (1, 2, 3, 4, 5, 6, 7)),
        ("A", 4, (4, 3, 2, 1)),
        ("D", 5, (1, 2, 3, 5, 4)),
        ("D", 4, (1, 2, 3, 4)),
    ]:
        rs = build_root_system(label, rank)
        assert rs.weyl_involution == expected
        for i in range(1, rs.rank + 1):
            lo = rs.fundamental_weight(i)
            # greedy descent to the bottom of the orbit
            changed = True
            while changed:
                changed = False
                for j in range(1, rs.rank + 1):
                    if lo[j - 1] > 0:
                        lo = rs.reflect_weight(j, lo)
                        changed = True
            assert lo == tuple(
                -1 if k == rs.iota(i) - 1 else 0 for k in range(rs.rank)
            )


def test_classification():
    assert classify_marked_node(build_root_system("B", 3), 1) == "cominuscule-only"
    assert classify_marked_node(build_root_system("B", 3), 3) == "minuscule"
    assert classify_marked_node(build_root_system("C", 3), 3) == "cominuscule-only"
    assert classify_marked_node(build_root_system("C", 3), 1) == "minuscule"
    assert classify_marked_node(build_root_system("E6"), 1) == "minuscule"
    assert classify_marked_node(build_root_system("E6"), 2) == "neither"
    assert classify_marked_node(build_root_system("E7"), 7) == "minuscule"
    assert classify_marked_node(build_root_system("A", 4), 3) == "minuscule"


def test_highest_root():
    rs = build_root_system("E7")
    assert rs.highest_root == (2, 2, 3, 4, 3, 2, 1)
    A = rs.cartan_matrix
    hr = rs.highest_root
    assert all(sum(hr[j] * A[i][j] for j in range(7)) >= 0 for i in range(7))


def test_rejections():
    with pytest.raises(UnsupportedSpaceError):
        build_root_system("E", 8)
    with pytest.raises(UnsupportedSpaceError):
        build_root_system("F", 4)
    with pytest.raises(UnsupportedSpaceError):
        build_root_system("B", 1)
    with pytest.raises(UnsupportedSpaceError):
        build_marked_space(build_root_system("E6"), 2)
    with pytest.raises(UnsupportedSpaceError):
        classify_marked_node(build_root_system("A", 2), 5)


def test_minuscule_index_is_coxeter_number():
    # for minuscule spaces the index is one more than the height of the
    # highest root (the largest exponent plus one)
    for label, rank, node in [
        ("A", 4, 2), ("D", 5, 5), ("D", 5, 1), ("E", 6, 1), ("E", 7, 7),
        ("B", 3, 3), ("C", 3, 1),
    ]:
        rs = build_root_system(label, rank)
        sp = build_marked_space(rs, node)
        assert sp.kind == "minuscule"
        assert sp.index_c1 == sum(rs.highest_root) + 1


def test_fundamental_weights_rational():
    rs = build_root_system("E6")
    fw = rs.fundamental_weights
    # <omega_i, alpha_j^vee> = delta_ij after converting back
    for i in range(6):
        for j in range(6):
            pair = sum(fw[i][k] * rs.cartan_matrix[j][k] for k in range(6))
            assert pair == (1 if i == j else 0)


def test_short_root_marking_redirect():
    from schubertq.spaces import space

    sp = space("C3/P1")  # projective five-space under the symplectic group
    assert sp.marked.kind == "minuscule"
    assert not sp.marked.marked_root_is_long
    assert sp.marked.simply_laced_model() == "A5/P1"
    with pytest.raises(UnsupportedSpaceError):
        sp.quivers.geometry(1)
    spin = space("B3/P3")
    assert spin.marked.simply_laced_model() == "D4/P4"
    # the classical side still works fine
    assert len(spin.cosets) == 8
    assert not spin.classical_table().underdetermined
