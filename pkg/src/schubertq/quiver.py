"""Quivers of reduced words, order ideals, and the duality involutions.

The quiver of a reduced word s_{b_1} ... s_{b_N} has one vertex per letter
occurrence (b, i) and an arrow (b, i) -> (c, j) whenever the nodes b, c are
linked and r(c, j-1) < r(b, i) < r(c, j) < r(b, i+1), positions counted
from the front.  Arrows point from earlier letters to later ones; the
partial order puts later letters below, so order ideals correspond to
subwords that are suffixes up to commutation, i.e. to Schubert classes.

For a marked space X this module builds Q_X together with, for each curve
degree d, the auxiliary quivers of the incidence construction: Q_{Z_d}
attached below Q_X gives Q_{I_d}; dropping the top copy of the dual of
Y_d leaves Q_{F_d}, whose letter-reversing symmetry i_F realizes Poincare
duality on the relevant Schubert classes of F_d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .root_system import InternalConsistencyError, MarkedSpace, UnsupportedSpaceError
from .weyl import CosetSystem, NonReducedWordError, SchubertIndex, is_reduced

Vertex = tuple[int, int]  # (node, occurrence), both 1-based


@dataclass(frozen=True)
class Quiver:
    word: tuple[int, ...]
    vertices: tuple[Vertex, ...]  # in word order
    arrows: frozenset[tuple[Vertex, Vertex]]
    pos: dict  # Vertex -> 1-based position in word
    m: dict  # node -> occurrence count
    down: dict  # Vertex -> frozenset of vertices <= v (reflexive)
    up: dict  # Vertex -> frozenset of vertices >= v (reflexive)

    def is_ideal(self, subset: frozenset[Vertex]) -> bool:
        return all(self.down[v] <= subset for v in subset)

    def peaks(self, subset: frozenset[Vertex]) -> frozenset[Vertex]:
        """Maximal elements of an order ideal."""
        return frozenset(
            v for v in subset if not any(a in subset for a, b in self.arrows if b == v)
        )

    def maximal_elements(self) -> frozenset[Vertex]:
        return self.peaks(frozenset(self.vertices))

    def subword(self, subset: frozenset[Vertex]) -> tuple[int, ...]:
        return tuple(v[0] for v in sorted(subset, key=lambda v: self.pos[v]))

    def all_ideals(self) -> list[frozenset[Vertex]]:
        seen = {frozenset()}
        frontier = [frozenset()]
        full = frozenset(self.vertices)
        while frontier:
            nxt = []
            for s in frontier:
                comp = full - s
                for v in comp:
                    if self.down[v] - {v} <= s:
                        t = s | {v}
                        if t not in seen:
                            seen.add(t)
                            nxt.append(t)
            frontier = nxt
        return sorted(seen, key=lambda s: (len(s), sorted(self.pos[v] for v in s)))


def build_quiver(rs, word, check_reduced: bool = True) -> Quiver:
    word = tuple(word)
    if check_reduced and not is_reduced(rs, word):
        raise NonReducedWordError(f"word {word} is not reduced")
    occ: dict[int, int] = {}
    vertices: list[Vertex] = []
    pos: dict[Vertex, int] = {}
    r: dict[tuple[int, int], int] = {}
    for p, b in enumerate(word, start=1):
        occ[b] = occ.get(b, 0) + 1
        v = (b, occ[b])
        vertices.append(v)
        pos[v] = p
        r[v] = p
    m = dict(occ)
    big = len(word) + 1

    def rpos(b: int, i: int) -> int:
        if i == 0:
            return 0
        return r.get((b, i), big)

    arrows = set()
    for b, i in vertices:
        for c in range(1, rs.rank + 1):
            if c == b or rs.cartan_matrix[c - 1][b - 1] == 0:
                continue
            for j in range(1, m.get(c, 0) + 1):
                if rpos(c, j - 1) < rpos(b, i) < rpos(c, j) < rpos(b, i + 1):
                    arrows.add(((b, i), (c, j)))

    # reflexive down/up closures; arrows go from earlier to later positions,
    # later positions are smaller in the partial order.
    out: dict[Vertex, list[Vertex]] = {v: [] for v in vertices}
    inc: dict[Vertex, list[Vertex]] = {v: [] for v in vertices}
    for a, b in arrows:
        out[a].append(b)
        inc[b].append(a)
    down: dict[Vertex, frozenset] = {}
    for v in reversed(vertices):  # later positions first
        s = {v}
        for w in out[v]:
            s |= down[w]
        down[v] = frozenset(s)
    up: dict[Vertex, frozenset] = {}
    for v in vertices:
        s = {v}
        for w in inc[v]:
            s |= up[w]
        up[v] = frozenset(s)
    return Quiver(
        word=word,
        vertices=tuple(vertices),
        arrows=frozenset(arrows),
        pos=pos,
        m=m,
        down=down,
        up=up,
    )


@dataclass(frozen=True)
class IdealSubquiver:
    parent: Quiver
    vertex_subset: frozenset[Vertex]

    def __post_init__(self):
        if not self.parent.is_ideal(self.vertex_subset):
            raise InternalConsistencyError("vertex set is not an order ideal")


def _occurrence_involution(
    vertices: frozenset[Vertex], iota, all_positions: dict
) -> dict[Vertex, Vertex]:
    """The map (b, k-th occurrence within the set) -> (iota(b), mirror rank)."""
    by_node: dict[int, list[Vertex]] = {}
    for v in vertices:
        by_node.setdefault(v[0], []).append(v)
    for vs in by_node.values():
        vs.sort(key=lambda v: all_positions[v])
    inv: dict[Vertex, Vertex] = {}
    for b, vs in by_node.items():
        target = by_node.get(iota(b), [])
        if len(target) != len(vs):
            raise InternalConsistencyError("occurrence counts break the symmetry")
        for k, v in enumerate(vs):
            inv[v] = target[len(vs) - 1 - k]
    return inv


class DegreeGeometry:
    """Quiver data of the degree-d incidence construction for one space."""

    def __init__(self, ctx: "QuiverContext", d: int):
        space = ctx.space
        rs = space.rs
        if not 0 <= d <= space.d_max:
            raise UnsupportedSpaceError(f"degree {d} outside 0..{space.d_max}")
        self.ctx = ctx
        self.d = d
        alpha = space.node
        marked = _f_marked_nodes(space, d)

        word_x = ctx.qx.word
        weight = tuple(
            1 if (j + 1) == alpha or (j + 1) in marked else 0 for j in range(rs.rank)
        )
        word_i_greedy = _greedy_word(rs, weight)
        rev = tuple(reversed(word_x))
        from .weyl import reduce_word

        word_z = reduce_word(rs, rev + word_i_greedy)
        if len(word_z) != len(word_i_greedy) - len(word_x):
            raise InternalConsistencyError("w_Z = w_X^-1 w_I is not length-additive")
        self.word_Z = word_z
        self.word_I = word_x + word_z
        if self.word_I[0] != rs.iota(alpha):
            raise InternalConsistencyError("w_I does not begin with the mirror of the marked node")
        self.quiver_I = build_quiver(rs, self.word_I, check_reduced=(len(self.word_I) < 40))
        qi = self.quiver_I
        n = len(word_x)
        self.x_vertices = frozenset(qi.vertices[:n])
        self.z_vertices = frozenset(qi.vertices[n:])

        # Y_d and its dual inside Q_X
        if d == 0:
            self.y_ideal = frozenset()
            self.ydual_ideal = frozenset(self.x_vertices)
        else:
            top_y = (alpha, space.d_max + 1 - d)
            self.y_ideal = frozenset(qi.down[top_y] & self.x_vertices)
            self.ydual_ideal = frozenset(
                self.x_vertices - qi.up[(rs.iota(alpha), d)]
            )
            if self.ydual_ideal != ctx.dual_ideal(self.y_ideal):
                raise InternalConsistencyError("two descriptions of Y_d^* disagree")

        self.f_vertices = frozenset(self.ydual_ideal | self.z_vertices)
        if len(self.word_Z) != d * space.index_c1 - 2 * len(self.y_ideal):
            raise InternalConsistencyError("dim F_d + 3 dim Y_d != dim X + d c_1")

        # quiver of F_d built from its own word, with a position map into Q_I
        f_sorted = sorted(self.f_vertices, key=lambda v: qi.pos[v])
        self.word_F = tuple(v[0] for v in f_sorted)
        self.quiver_F = build_quiver(rs, self.word_F, check_reduced=False)
        self._f_to_i = dict(zip(self.quiver_F.vertices, f_sorted))
        self._i_to_f = {v: k for k, v in self._f_to_i.items()}

        self.i_f = _occurrence_involution(self.f_vertices, rs.iota, qi.pos)
        for a, b in self.quiver_F.arrows:
            ia, ib = self.i_f[self._f_to_i[a]], self.i_f[self._f_to_i[b]]
            if (self._i_to_f[ib], self._i_to_f[ia]) not in self.quiver_F.arrows:
                raise InternalConsistencyError("i_F is not arrow-reversing")

        self.t_ideal = frozenset(
            self.ydual_ideal & {self.i_f[v] for v in self.ydual_ideal}
        )
        if not ctx.qx.is_ideal(self.t_ideal):
            raise InternalConsistencyError("Q_T is not an order ideal of Q_X")
        self.i_t = {v: self.i_f[v] for v in self.t_ideal}
        if set(self.i_t.values()) != set(self.t_ideal):
            raise InternalConsistencyError("i_F does not preserve Q_T")
        # the subquiver-involution image of Q_{Z_d} inside Q_{F_d}
        self.zdual_in_f = frozenset(self.i_f[v] for v in self.ydual_ideal)

    # --- subquiver operations on F_d --------------------------------------
    def f_hat(self, ideal_x: frozenset[Vertex]) -> frozenset[Vertex]:
        """Quiver of F_d(w-hat), lines/Y_d's meeting X(w)."""
        return frozenset((ideal_x & self.ydual_ideal) | self.z_vertices)

    def f_dual(self, sub_f: frozenset[Vertex]) -> frozenset[Vertex]:
        """Poincare duality on Schubert subquivers of Q_{F_d}."""
        return frozenset(self.i_f[v] for v in self.f_vertices - sub_f)

    def is_f_ideal(self, sub_f: frozenset[Vertex]) -> bool:
        s = frozenset(self._i_to_f[v] for v in sub_f)
        return self.quiver_F.is_ideal(s)


def _greedy_word(rs, weight) -> tuple[int, ...]:
    v = weight
    word = []
    while True:
        i = next((k for k in range(1, rs.rank + 1) if v[k - 1] > 0), None)
        if i is None:
            break
        word.append(i)
        v = rs.reflect_weight(i, v)
    return tuple(reversed(word))


def _f_marked_nodes(space: MarkedSpace, d: int) -> tuple[int, ...]:
    """Marked nodes of the parabolic of F_d (the space of Y_d's)."""
    rs = space.rs
    node = space.node
    if d == 0:
        return (node,)
    if d == 1:
        return rs.neighbors(node)
    t, n = rs.type_label, rs.rank
    if t == "A":
        return tuple(k for k in (node - d, node + d) if 1 <= k <= n)
    if t == "B" and node == 1:
        return ()  # F_2 of an odd quadric is a point
    if t == "D" and node == 1:
        return ()
    if t == "C" and node == n:
        return (n - d,) if n - d >= 1 else ()
    if t == "B" and node == n:
        # odd spinor variety, same shadow pattern as the even one rank up
        return (n + 1 - 2 * d,) if n + 1 - 2 * d >= 1 else ()
    if t == "D" and node in (n - 1, n):
        return (n - 2 * d,) if n - 2 * d >= 1 else ()
    if t == "E" and n == 6 and node in (1, 6):
        return (rs.iota(node),) if d == 2 else ()
    if t == "E" and n == 7 and node == 7:
        return (1,) if d == 2 else ()
    raise UnsupportedSpaceError(f"no F_d data for {space.name} at degree {d}")


class QuiverContext:
    """Q_X plus the ideal <-> Schubert class dictionary for one space."""

    def __init__(self, space: MarkedSpace, cosets: CosetSystem):
        self.space = space
        self.cosets = cosets
        rs = space.rs
        self.qx = build_quiver(rs, cosets.w_x.reduced_word, check_reduced=False)
        tops = self.qx.maximal_elements()
        if len(tops) != 1 or next(iter(tops)) != (rs.iota(space.node), 1):
            raise InternalConsistencyError("Q_X does not have the mirror-node top vertex")
        self.i_x = _occurrence_involution(
            frozenset(self.qx.vertices), rs.iota, self.qx.pos
        )
        for a, b in self.qx.arrows:
            if (self.i_x[b], self.i_x[a]) not in self.qx.arrows:
                raise InternalConsistencyError("i_X is not arrow-reversing")

        # ideal <-> class bijection
        lam = rs.fundamental_weight(space.node)
        self._ideal_by_id: list[frozenset[Vertex]] = [frozenset()] * len(cosets)
        self._id_by_ideal: dict[frozenset[Vertex], int] = {}
        for s in self.qx.all_ideals():
            w = rs.act_word_weight(self.qx.subword(s), lam)
            wid = cosets.by_weight.get(w)
            if wid is None or cosets.indices[wid].length != len(s):
                raise InternalConsistencyError("ideal does not match a coset")
            if s in self._id_by_ideal or self._ideal_by_id[wid]:
                if wid != 0:  # the empty ideal maps to the identity once
                    raise InternalConsistencyError("ideal/class map is not injective")
            self._id_by_ideal[s] = wid
            self._ideal_by_id[wid] = s
        if len(self._id_by_ideal) != len(cosets):
            raise InternalConsistencyError("#ideals != #Schubert classes")
        self._geometries: dict[int, DegreeGeometry] = {}

    # --- ideals ----------------------------------------------------------
    def ideal_of(self, w: SchubertIndex | int) -> frozenset[Vertex]:
        wid = w if isinstance(w, int) else w.id
        return self._ideal_by_id[wid]

    def index_of_ideal(self, s: frozenset[Vertex]) -> SchubertIndex:
        return self.cosets.indices[self._id_by_ideal[frozenset(s)]]

    def dual_ideal(self, s: frozenset[Vertex]) -> frozenset[Vertex]:
        """Subquiver involution: the ideal of the Poincare dual class."""
        return frozenset(self.i_x[v] for v in set(self.qx.vertices) - set(s))

    def quiver_dual(self, w: SchubertIndex | int) -> SchubertIndex:
        return self.index_of_ideal(self.dual_ideal(self.ideal_of(w)))

    def delta_occurrences(self, w: SchubertIndex | int) -> int:
        return sum(1 for v in self.ideal_of(w) if v[0] == self.space.node)

    def geometry(self, d: int) -> DegreeGeometry:
        if not self.space.marked_root_is_long:
            # the space of lines is not homogeneous under this group; the
            # variety itself is isomorphic to a long-root model that is
            model = self.space.simply_laced_model()
            raise UnsupportedSpaceError(
                f"{self.space.name} is marked at a short root; use the "
                f"isomorphic model {model} for line and curve geometry"
            )
        if d not in self._geometries:
            self._geometries[d] = DegreeGeometry(self, d)
        return self._geometries[d]

    # --- predicates and duality maps --------------------------------------
    def contained_in_ydual(self, w: SchubertIndex | int, d: int) -> bool:
        """X(w) subset of Y_d^*, i.e. the ideal avoids (iota(alpha), d)."""
        if d == 0:
            return True
        v = (self.space.rs.iota(self.space.node), d)
        return v not in self.ideal_of(w)

    def one_dual_partner(self, w: SchubertIndex | int) -> SchubertIndex | None:
        """The class contributed with coefficient one to the q-term of
        [X(w)] * H, or None when there is no quantum contribution."""
        geo = self.geometry(1)
        qw = self.ideal_of(w)
        if not qw <= geo.t_ideal:
            return None
        dual_f = geo.f_dual(geo.f_hat(qw))
        if not geo.z_vertices <= dual_f:
            raise InternalConsistencyError("1-dual exists but F-quiver misses Q_Z")
        wq = self.index_of_ideal(dual_f - geo.z_vertices)
        other = self.higher_dual(1, w)
        if other is None or other.id != wq.id:
            raise InternalConsistencyError("F-route and T_1-route 1-duals disagree")
        return self.cosets.indices[self.cosets.dual_of[wq.id]]

    def higher_dual(self, d: int, v: SchubertIndex | int) -> SchubertIndex | None:
        """v_{q^d}: Poincare duality inside T_d; None when X(v) !<= T_d."""
        geo = self.geometry(d)
        qv = self.ideal_of(v)
        if not qv <= geo.t_ideal:
            return None
        image = frozenset(geo.i_t[x] for x in geo.t_ideal - qv)
        return self.index_of_ideal(image)

    def min_q_power(self, u: SchubertIndex | int, v: SchubertIndex | int) -> int:
        """Smallest d with q^d appearing in [X(u)] * [X(v)]."""
        qu, qv = self.ideal_of(u), self.ideal_of(v)
        for d in range(self.space.d_max + 1):
            if not (self.contained_in_ydual(u, d) and self.contained_in_ydual(v, d)):
                continue
            geo = self.geometry(d)
            ubar_dualized = frozenset(geo.i_t[x] for x in geo.t_ideal - (qu & geo.t_ideal))
            if ubar_dualized <= qv:
                return d
        raise InternalConsistencyError("no power of q satisfies the minimality test")

    def build_line_geometry(self) -> DegreeGeometry:
        return self.geometry(1)

    def gw_certainly_zero(self, d: int, u_id: int, v_id: int, w_id: int) -> bool:
        """Sound vanishing test for the degree-d invariant of three classes
        (dimension-convention indices): containment in Y_d^* plus the
        necessary quiver condition for inclusions of Schubert varieties of
        F_d applied to all pairs."""
        ids = (u_id, v_id, w_id)
        if any(not self.contained_in_ydual(i, d) for i in ids):
            return True
        geo = self.geometry(d)
        hats = [geo.f_hat(self.ideal_of(i)) for i in ids]
        duals = [geo.f_dual(h) for h in hats]
        dd = geo.zdual_in_f
        for a in range(3):
            for b in range(3):
                if a == b:
                    continue
                # F_d(a-hat)* must be contained in F_d(b-hat); necessary
                # condition: the traces on the dual of Q_{Z_d} are nested.
                if not (duals[a] & dd) <= (hats[b] & dd):
                    return True
        return False


# free-function views of the per-space operations, for API symmetry
def ideal_of(space, w) -> IdealSubquiver:
    ctx = space.quivers
    return IdealSubquiver(ctx.qx, ctx.ideal_of(w))


def peaks(ideal: IdealSubquiver) -> frozenset[Vertex]:
    return ideal.parent.peaks(ideal.vertex_subset)


def quiver_dual(space, w):
    return space.quivers.quiver_dual(w)


def build_line_geometry(space) -> DegreeGeometry:
    return space.quivers.geometry(1)


def build_degree_d_geometry(space, d: int) -> DegreeGeometry:
    return space.quivers.geometry(d)


def one_dual_partner(space, w):
    return space.quivers.one_dual_partner(w)


def higher_dual(space, d: int, v):
    return space.quivers.higher_dual(d, v)


def delta_occurrences(space, u) -> int:
    return space.quivers.delta_occurrences(u)


def min_q_power(space, u, v) -> int:
    return space.quivers.min_q_power(u, v)
