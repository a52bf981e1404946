"""Minimal coset representatives, the Hasse diagram, duality, word reduction.

Cosets W/W_P are enumerated as the Weyl orbit of the marked fundamental
weight: the orbit weight w.omega_P identifies the coset uniquely (the
stabilizer of omega_P is exactly W_P).  A simple reflection s_i applied on
the left either fixes the weight or moves it up/down by <mu, alpha_i^vee>
copies of alpha_i; each productive step changes the coset length by one,
and for (co)minuscule spaces these steps generate the full Bruhat order,
so the cover graph of the orbit walk is the Hasse diagram.
"""

from __future__ import annotations

from dataclasses import dataclass

from .root_system import InternalConsistencyError, MarkedSpace, RootSystem, Vec


@dataclass(frozen=True)
class SchubertIndex:
    """One Schubert class; length is the dimension of its Schubert variety."""

    id: int
    length: int
    orbit_weight: Vec  # w . omega_P in fundamental-weight coordinates
    reduced_word: tuple[int, ...]  # w = s_{w[0]} ... s_{w[-1]}

    def __repr__(self) -> str:  # keep pytest output readable
        return f"<w{self.id} len={self.length}>"


@dataclass(frozen=True)
class HasseEdge:
    lower: int  # id with smaller length
    upper: int  # id with length + 1
    node: int  # upper = s_node . lower as cosets
    coeff: int  # Chevalley coefficient <omega_P, alpha^vee>


@dataclass(frozen=True)
class HasseDiagram:
    nodes: tuple[SchubertIndex, ...]
    edges: tuple[HasseEdge, ...]


class CosetSystem:
    """The enumerated set W_X with its Hasse diagram and duality."""

    def __init__(self, space: MarkedSpace):
        self.space = space
        rs = space.rs
        lam = rs.fundamental_weight(space.node)
        indices: list[SchubertIndex] = [
            SchubertIndex(id=0, length=0, orbit_weight=lam, reduced_word=())
        ]
        by_weight: dict[Vec, int] = {lam: 0}
        edges: list[HasseEdge] = []
        frontier = [0]
        while frontier:
            nxt: list[int] = []
            for wid in frontier:
                mu = indices[wid].orbit_weight
                for i in range(1, rs.rank + 1):
                    c = mu[i - 1]
                    if c <= 0:
                        continue
                    nu = rs.reflect_weight(i, mu)
                    vid = by_weight.get(nu)
                    if vid is None:
                        vid = len(indices)
                        by_weight[nu] = vid
                        indices.append(
                            SchubertIndex(
                                id=vid,
                                length=indices[wid].length + 1,
                                orbit_weight=nu,
                                reduced_word=(i,) + indices[wid].reduced_word,
                            )
                        )
                        nxt.append(vid)
                    edges.append(HasseEdge(lower=wid, upper=vid, node=i, coeff=c))
            frontier = nxt

        self.indices: tuple[SchubertIndex, ...] = tuple(indices)
        self.by_weight = by_weight
        self.hasse = HasseDiagram(nodes=self.indices, edges=tuple(edges))
        self.by_length: dict[int, list[int]] = {}
        for w in indices:
            self.by_length.setdefault(w.length, []).append(w.id)
        lengths = sorted(self.by_length)
        if lengths != list(range(max(lengths) + 1)):
            raise InternalConsistencyError("orbit lengths are not contiguous")
        if len(self.by_length[0]) != 1 or len(self.by_length[max(lengths)]) != 1:
            raise InternalConsistencyError("identity or w_X is not unique")
        if max(lengths) != space.dimension:
            raise InternalConsistencyError("l(w_X) != dim X")

        # covers up/down, by id
        self.covers_up: list[list[HasseEdge]] = [[] for _ in indices]
        self.covers_down: list[list[HasseEdge]] = [[] for _ in indices]
        for e in edges:
            self.covers_up[e.lower].append(e)
            self.covers_down[e.upper].append(e)

        iota = rs.weyl_involution
        self.dual_of: tuple[int, ...] = tuple(
            by_weight[tuple(-w.orbit_weight[iota[j] - 1] for j in range(rs.rank))]
            for w in indices
        )
        for w in indices:
            if indices[self.dual_of[w.id]].length != space.dimension - w.length:
                raise InternalConsistencyError("duality does not complement lengths")

        # descendant bitmask per id: u <= v iff bit u set in _below[v]
        below = [0] * len(indices)
        for length in lengths:
            for wid in self.by_length[length]:
                mask = 1 << wid
                for e in self.covers_down[wid]:
                    mask |= below[e.lower]
                below[wid] = mask
        self._below = below

    # --- queries ---------------------------------------------------------
    def __len__(self) -> int:
        return len(self.indices)

    @property
    def identity(self) -> SchubertIndex:
        return self.indices[0]

    @property
    def w_x(self) -> SchubertIndex:
        return self.indices[self.by_length[self.space.dimension][0]]

    def codim(self, w: SchubertIndex | int) -> int:
        wid = w if isinstance(w, int) else w.id
        return self.space.dimension - self.indices[wid].length

    def betti(self) -> list[int]:
        return [len(self.by_length[l]) for l in range(self.space.dimension + 1)]

    def index_by_weight(self, weight: Vec) -> SchubertIndex:
        return self.indices[self.by_weight[weight]]


def enumerate_cosets(space: MarkedSpace) -> CosetSystem:
    return CosetSystem(space)


def longest_element(cs: CosetSystem) -> SchubertIndex:
    return cs.w_x


def poincare_dual(cs: CosetSystem, w: SchubertIndex | int) -> SchubertIndex:
    wid = w if isinstance(w, int) else w.id
    return cs.indices[cs.dual_of[wid]]


def bruhat_leq(cs: CosetSystem, u: SchubertIndex | int, v: SchubertIndex | int) -> bool:
    uid = u if isinstance(u, int) else u.id
    vid = v if isinstance(v, int) else v.id
    return bool(cs._below[vid] >> uid & 1)


class NonReducedWordError(ValueError):
    pass


def word_action_on_root(rs: RootSystem, word: tuple[int, ...], root: Vec) -> Vec:
    """Apply s_{word[0]} ... s_{word[-1]} to a root-coordinate vector."""
    for i in reversed(word):
        root = rs.reflect_root(i, root)
    return root


def reduce_word(rs: RootSystem, word: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """A reduced word for the same Weyl element, via the exchange condition.

    Letters are appended one at a time; when a new letter s_j lowers the
    length, the unique letter whose deletion realizes the exchange is found
    by tracking the partial action on alpha_j.
    """
    reduced: list[int] = []
    for j in word:
        alpha = tuple(1 if k == j - 1 else 0 for k in range(rs.rank))
        img = word_action_on_root(rs, tuple(reduced), alpha)
        if all(c >= 0 for c in img):
            reduced.append(j)
            continue
        # find p with s_{u_{p+1}} ... s_{u_m}(alpha_j) = alpha_{u_p}
        v = alpha
        p_found = None
        for p in range(len(reduced) - 1, -1, -1):
            if v == tuple(1 if k == reduced[p] - 1 else 0 for k in range(rs.rank)):
                p_found = p
                break
            v = rs.reflect_root(reduced[p], v)
        if p_found is None:
            raise InternalConsistencyError("exchange condition failed")
        del reduced[p_found]
    return tuple(reduced)


def is_reduced(rs: RootSystem, word: tuple[int, ...]) -> bool:
    return len(reduce_word(rs, word)) == len(word)
