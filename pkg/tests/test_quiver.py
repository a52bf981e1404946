import pytest

from schubertq.quiver import (
    build_degree_d_geometry,
    build_line_geometry,
    build_quiver,
    delta_occurrences,
    higher_dual,
    ideal_of,
    min_q_power,
    one_dual_partner,
    peaks,
    quiver_dual,
)
from schubertq.root_system import build_root_system
from schubertq.spaces import space
from schubertq.weyl import NonReducedWordError


def test_basic_quivers():
    a3 = build_root_system("A", 3)
    q = build_quiver(a3, (2, 1, 3, 2))  # the 2x2 grid
    assert len(q.vertices) == 4
    assert len(q.maximal_elements()) == 1
    assert len(q.all_ideals()) == 6
    single = build_quiver(a3, (1,))
    assert len(single.vertices) == 1 and not single.arrows
    with pytest.raises(NonReducedWordError):
        build_quiver(a3, (1, 1))


def test_grid_is_product_of_chains():
    # the Grassmannian quiver is order-isomorphic to the Hasse diagram of
    # a product of two projective spaces (computed by this library)
    for label, p, m in [("A3/P2", 2, 2), ("A4/P2", 2, 3)]:
        sp = space(label)
        q = sp.quivers.qx
        # rank function: length of the longest chain below each vertex
        def height(v, q):
            below = q.down[v] - {v}
            return 0 if not below else 1 + max(height(u, q) for u in below)

        heights = sorted(height(v, q) for v in q.vertices)
        expected = sorted(i + j for i in range(p) for j in range(m))
        assert heights == expected


def test_e6_quiver_shape(e6):
    q = e6.quivers.qx
    assert len(q.vertices) == 16
    assert q.m == {1: 2, 2: 2, 3: 3, 4: 4, 5: 3, 6: 2}
    assert q.maximal_elements() == frozenset({(6, 1)})
    # ideals of length 4 carry the two letter sets from the worked example
    l4 = [s for s in q.all_ideals() if len(s) == 4]
    assert sorted(sorted(v[0] for v in s) for s in l4) == [
        [1, 2, 3, 4],
        [1, 3, 4, 5],
    ]


def test_ideals_and_peaks(e6):
    ctx = e6.quivers
    cs = e6.cosets
    assert ideal_of(e6, cs.identity).vertex_subset == frozenset()
    assert ideal_of(e6, cs.w_x).vertex_subset == frozenset(ctx.qx.vertices)
    for w in cs.indices:
        assert len(ctx.ideal_of(w)) == w.length
    # the degree-8 quadric class has a single peak
    s8 = e6.naming.parse("s8")
    assert len(peaks(ideal_of(e6, s8))) == 1
    assert peaks(ideal_of(e6, cs.identity)) == frozenset()
    g24 = space("A3/P2")
    assert len(peaks(ideal_of(g24, g24.cosets.w_x))) == 1


@pytest.mark.parametrize(
    "label",
    ["A1/P1", "A2/P1", "A3/P2", "A4/P2", "B2/P1", "B3/P1", "C3/P3", "D4/P4", "D5/P5", "E6/P1", "E7/P7"],
)
def test_quiver_dual_matches_word_dual(label):
    sp = space(label)
    for w in sp.cosets.indices:
        assert quiver_dual(sp, w).id == sp.cosets.dual_of[w.id]


def test_line_geometry_dimensions():
    for label, dimf in [
        ("A2/P1", 2),
        ("E6/P1", 25),
        ("E7/P7", 42),
        ("A1/P1", 0),
    ]:
        sp = space(label)
        geo = build_line_geometry(sp)
        assert len(geo.f_vertices) == dimf == sp.dimension + sp.index_c1 - 3


def test_f_hat(e6):
    ctx = e6.quivers
    geo = ctx.geometry(1)
    # lines meeting the whole space sweep all of F
    assert geo.f_hat(ctx.ideal_of(e6.cosets.w_x)) == geo.f_vertices
    # lines meeting a hyperplane section also sweep all of F
    h = e6.naming.parse("H")
    assert geo.f_hat(ctx.ideal_of(h)) == geo.f_vertices
    w = e6.naming.parse("s''12")
    assert len(geo.f_hat(ctx.ideal_of(w))) == len(geo.f_vertices) - 11


def test_degree_d_geometry(e6, e7):
    g2 = build_degree_d_geometry(e6, 2)
    assert len(g2.y_ideal) == 8 and len(g2.f_vertices) == 16 and not g2.t_ideal
    assert e6.naming.name_of[e6.quivers.index_of_ideal(g2.y_ideal).id] == "s8"
    g3 = build_degree_d_geometry(e7, 3)
    assert len(g3.y_ideal) == 27 and not g3.f_vertices and not g3.t_ideal
    g0 = build_degree_d_geometry(e6, 0)
    assert not g0.y_ideal and g0.t_ideal == frozenset(e6.quivers.qx.vertices)
    # T_1 of the Cayley plane is a five-chain (a linear space)
    t1 = build_degree_d_geometry(e6, 1).t_ideal
    assert len(t1) == 5
    q = e6.quivers.qx
    assert all(a in q.down[b] or b in q.down[a] for a in t1 for b in t1)
    assert e6.naming.name_of[e6.quivers.index_of_ideal(t1).id] == "s''11"
    # T_d table for the Freudenthal variety: Q^10, P^1, point
    sizes = [len(build_degree_d_geometry(e7, d).t_ideal) for d in range(4)]
    assert sizes == [27, 10, 1, 0]
    assert e7.naming.name_of[e7.quivers.index_of_ideal(
        build_degree_d_geometry(e7, 1).t_ideal).id] == "s17"


def test_one_dual_partner(e6):
    n = e6.naming
    p = one_dual_partner(e6, n.parse("s''12"))
    assert p is not None and n.name_of[p.id] == "s1"
    assert one_dual_partner(e6, n.parse("s'12")) is None
    assert one_dual_partner(e6, e6.cosets.w_x) is None
    # the domain is exactly the six-element interval below the T_1 class
    have = [w for w in e6.cosets.indices if one_dual_partner(e6, w) is not None]
    assert sorted(n.name_of[w.id] for w in have) == [
        "s''11", "s''12", "s13", "s14", "s15", "s16",
    ]


def test_higher_dual(e6):
    cs = e6.cosets
    n = e6.naming
    for w in cs.indices:  # degree zero is ordinary duality
        assert higher_dual(e6, 0, w).id == cs.dual_of[w.id]
    vq = higher_dual(e6, 1, cs.identity)
    assert n.name_of[vq.id] == "s''11"
    assert higher_dual(e6, 2, cs.identity).id == cs.identity.id
    assert higher_dual(e6, 1, n.parse("s'4")) is None
    # involution with complementary lengths on its domain
    t1 = e6.quivers.geometry(1).t_ideal
    for w in cs.indices:
        if e6.quivers.ideal_of(w) <= t1:
            vq = higher_dual(e6, 1, w)
            assert vq.length + w.length == len(t1)
            assert higher_dual(e6, 1, vq).id == w.id


def test_delta_and_min_q(e6, e7):
    assert delta_occurrences(e6, e6.cosets.identity) == 0
    assert delta_occurrences(e7, e7.cosets.w_x) == 3
    # the class of the eight-dimensional quadric uses the marked letter twice
    assert delta_occurrences(e6, e6.naming.parse("s8")) == 2
    assert min_q_power(e6, e6.cosets.w_x, e6.cosets.w_x) == 0
    pt = e6.cosets.identity
    assert min_q_power(e6, pt, pt) == 2
    assert min_q_power(e6, pt, e6.naming.parse("s8")) == 2
    # containment in the dual of Y_d matches the mirrored letter count
    for sp in (e6, e7):
        ctx = sp.quivers
        for w in sp.cosets.indices:
            for d in range(1, sp.d_max + 1):
                dual = sp.cosets.indices[sp.cosets.dual_of[w.id]]
                assert ctx.contained_in_ydual(w, d) == (
                    d <= ctx.delta_occurrences(dual)
                )


def test_commutation_invariance_spot(e6):
    rs = e6.rs
    word = list(e6.quivers.qx.word)
    # swap one commuting adjacent pair and rebuild
    for i in range(len(word) - 1):
        if rs.cartan_matrix[word[i] - 1][word[i + 1] - 1] == 0 and word[i] != word[i + 1]:
            word[i], word[i + 1] = word[i + 1], word[i]
            break
    q2 = build_quiver(rs, tuple(word), check_reduced=False)
    assert q2.arrows == e6.quivers.qx.arrows
