"""Dynkin data, roots, weights and (co)minuscule marked nodes.

Node numbering follows Bourbaki throughout the package.  Weights are kept
in fundamental-weight coordinates (integer tuples; coordinate i is the
pairing with the i-th simple coroot), roots additionally in simple-root
coordinates.  The Cartan matrix convention is

    cartan[i][j] = <alpha_j, alpha_i^vee>

with 0-based storage for 1-based nodes.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

Vec = tuple[int, ...]


class UnsupportedSpaceError(ValueError):
    """Raised for Dynkin types, ranks or marked nodes we do not handle."""


class InternalConsistencyError(AssertionError):
    """A computed quantity disagrees with an independent cross-check."""


def _cartan_matrix(type_label: str, rank: int) -> list[list[int]]:
    A = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j):  # single bond, 1-based
        A[i - 1][j - 1] = A[j - 1][i - 1] = -1

    if type_label == "A":
        if rank < 1:
            raise UnsupportedSpaceError("type A needs rank >= 1")
        for i in range(1, rank):
            link(i, i + 1)
    elif type_label in ("B", "C"):
        if rank < 2:
            raise UnsupportedSpaceError(f"type {type_label} needs rank >= 2")
        for i in range(1, rank):
            link(i, i + 1)
        # B: alpha_n short (<alpha_{n-1}, alpha_n^vee> = -2); C: alpha_n long.
        if type_label == "B":
            A[rank - 1][rank - 2] = -2
        else:
            A[rank - 2][rank - 1] = -2
    elif type_label == "D":
        if rank < 3:
            raise UnsupportedSpaceError("type D needs rank >= 3")
        for i in range(1, rank - 1):
            link(i, i + 1)
        A[rank - 3][rank - 1] = A[rank - 1][rank - 3] = -1
        A[rank - 2][rank - 1] = A[rank - 1][rank - 2] = 0
        if rank == 3:
            # D3: fork at node 1 with arms {2, 3}
            A = [[2, -1, -1], [-1, 2, 0], [-1, 0, 2]]
    elif type_label == "E":
        if rank not in (6, 7):
            raise UnsupportedSpaceError("type E supported for ranks 6 and 7 only")
        for i in range(3, rank):
            link(i, i + 1)
        link(1, 3)
        link(2, 4)
    else:
        raise UnsupportedSpaceError(f"unknown type label {type_label!r}")
    return A


def _symmetrizer(cartan: list[list[int]]) -> tuple[int, ...]:
    """Positive integers d with d_i * a_ij == d_j * a_ji (co-prime overall)."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if i != j and cartan[i][j] and d[j] is None:
                d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                stack.append(j)
    if any(x is None for x in d):
        raise UnsupportedSpaceError("Dynkin diagram is not connected")
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    out = [int(x * lcm) for x in d]
    g = 0
    for x in out:
        g = _gcd(g, x)
    return tuple(x // g for x in out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class RootSystem:
    """Immutable root-system data for one simple type."""

    type_label: str
    rank: int
    cartan_matrix: tuple[Vec, ...]
    sym: Vec  # symmetrizer d_i, so B(a_i, a_j) = d_i * a_ij is symmetric
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    # --- basic linear algebra -------------------------------------------
    @property
    def simple_roots(self) -> tuple[Vec, ...]:
        """Simple roots as unit vectors in simple-root coordinates."""
        return tuple(
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        )

    def alpha_in_weight_coords(self, i: int) -> Vec:
        """Simple root alpha_i written in fundamental-weight coordinates."""
        return tuple(self.cartan_matrix[j][i - 1] for j in range(self.rank))

    def reflect_weight(self, i: int, v: Vec) -> Vec:
        """s_i acting on a weight in fundamental-weight coordinates."""
        c = v[i - 1]
        if not c:
            return v
        col = self.alpha_in_weight_coords(i)
        return tuple(v[j] - c * col[j] for j in range(self.rank))

    def reflect_root(self, i: int, v: Vec) -> Vec:
        """s_i acting on a vector in simple-root coordinates."""
        c = sum(v[j] * self.cartan_matrix[i - 1][j] for j in range(self.rank))
        if not c:
            return v
        return tuple(v[j] - (c if j == i - 1 else 0) for j in range(self.rank))

    def act_word_weight(self, word: tuple[int, ...], v: Vec) -> Vec:
        """Apply s_{word[0]} ... s_{word[-1]} to a weight (rightmost first)."""
        for i in reversed(word):
            v = self.reflect_weight(i, v)
        return v

    def fundamental_weight(self, i: int) -> Vec:
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def bilinear_root(self, u: Vec, v: Vec) -> int:
        """Invariant form on root coordinates: u^T (D A) v."""
        n = self.rank
        A = self.cartan_matrix
        d = self.sym
        return sum(u[i] * d[i] * A[i][j] * v[j] for i in range(n) for j in range(n))

    def coroot_pairing_with_weight(self, weight: Vec, root: Vec) -> int:
        """<omega, gamma^vee> for `weight` in weight coords, `root` in root coords."""
        # B(omega_k, gamma) = d_k * gamma_k, extended linearly over weights.
        num = 2 * sum(weight[k] * self.sym[k] * root[k] for k in range(self.rank))
        den = self.bilinear_root(root, root)
        if num % den:
            raise InternalConsistencyError("non-integral weight/coroot pairing")
        return num // den

    # --- derived, cached ------------------------------------------------
    @property
    def positive_roots(self) -> tuple[Vec, ...]:
        """All positive roots in simple-root coordinates."""
        if "pos_roots" not in self._cache:
            seen: set[Vec] = set()
            frontier = [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
            seen.update(frontier)
            while frontier:
                nxt = []
                for g in frontier:
                    for i in range(1, self.rank + 1):
                        h = self.reflect_root(i, g)
                        if h not in seen:
                            seen.add(h)
                            nxt.append(h)
                frontier = nxt
            pos = sorted(v for v in seen if all(c >= 0 for c in v))
            if 2 * len(pos) != len(seen):
                raise InternalConsistencyError("root count mismatch")
            self._cache["pos_roots"] = tuple(pos)
        return self._cache["pos_roots"]

    @property
    def highest_root(self) -> Vec:
        """The highest root: the dominant long root."""
        if "highest" not in self._cache:
            dominant = [
                g
                for g in self.positive_roots
                if all(
                    sum(g[j] * self.cartan_matrix[i][j] for j in range(self.rank)) >= 0
                    for i in range(self.rank)
                )
            ]
            top = max(dominant, key=lambda g: self.bilinear_root(g, g))
            norms = {self.bilinear_root(g, g) for g in dominant}
            longs = [g for g in dominant if self.bilinear_root(g, g) == max(norms)]
            if len(longs) != 1:
                raise InternalConsistencyError("highest root is not unique")
            self._cache["highest"] = top
        return self._cache["highest"]

    @property
    def longest_word(self) -> tuple[int, ...]:
        """A reduced word for w_0, recorded by a greedy descent from rho."""
        if "w0" not in self._cache:
            rho = tuple(1 for _ in range(self.rank))
            word: list[int] = []
            v = rho
            while True:
                i = next((k for k in range(1, self.rank + 1) if v[k - 1] > 0), None)
                if i is None:
                    break
                word.append(i)
                v = self.reflect_weight(i, v)
            if v != tuple(-1 for _ in range(self.rank)):
                raise InternalConsistencyError("descent from rho did not reach -rho")
            # v = s_{i_k} ... s_{i_1} rho, so w0 = s_{i_k} ... s_{i_1}
            self._cache["w0"] = tuple(reversed(word))
        return self._cache["w0"]

    @property
    def weyl_involution(self) -> Vec:
        """The permutation iota with w_0(alpha_i) = -alpha_{iota(i)} (1-based)."""
        if "iota" not in self._cache:
            iota = [0] * self.rank
            for i in range(1, self.rank + 1):
                img = tuple(1 if j == i - 1 else 0 for j in range(self.rank))
                for k in reversed(self.longest_word):
                    img = self.reflect_root(k, img)
                neg = tuple(-c for c in img)
                j = next(
                    (
                        k
                        for k in range(1, self.rank + 1)
                        if neg == tuple(1 if l == k - 1 else 0 for l in range(self.rank))
                    ),
                    None,
                )
                if j is None:
                    raise InternalConsistencyError("w_0 does not permute simple roots")
                iota[i - 1] = j
            self._cache["iota"] = tuple(iota)
        return self._cache["iota"]

    def iota(self, i: int) -> int:
        return self.weyl_involution[i - 1]

    @property
    def fundamental_weights(self) -> tuple[tuple[Fraction, ...], ...]:
        """Fundamental weights in simple-root coordinates (rational).

        omega_i = sum_k x_k alpha_k with <omega_i, alpha_j^vee> = delta_ij,
        i.e. the solution of A x = e_i with A the Cartan matrix."""
        if "fw" not in self._cache:
            n = self.rank
            cols = []
            for i in range(n):
                aug = [
                    [Fraction(self.cartan_matrix[j][k]) for k in range(n)]
                    + [Fraction(1 if j == i else 0)]
                    for j in range(n)
                ]
                for c in range(n):
                    p = next(r for r in range(c, n) if aug[r][c])
                    aug[c], aug[p] = aug[p], aug[c]
                    inv = 1 / aug[c][c]
                    aug[c] = [v * inv for v in aug[c]]
                    for r in range(n):
                        if r != c and aug[r][c]:
                            f = aug[r][c]
                            aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
                cols.append(tuple(aug[k][n] for k in range(n)))
            self._cache["fw"] = tuple(cols)
        return self._cache["fw"]

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(
            j + 1 for j in range(self.rank) if j != i - 1 and self.cartan_matrix[i - 1][j]
        )

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def check_invariants(self) -> None:
        A = self.cartan_matrix
        for i in range(self.rank):
            if A[i][i] != 2:
                raise InternalConsistencyError("Cartan diagonal entry != 2")
            for j in range(self.rank):
                if i != j and A[i][j] not in (0, -1, -2, -3):
                    raise InternalConsistencyError("bad off-diagonal Cartan entry")
                if i != j and (A[i][j] == 0) != (A[j][i] == 0):
                    raise InternalConsistencyError("asymmetric Cartan support")
        iota = self.weyl_involution
        for i in range(1, self.rank + 1):
            if iota[iota[i - 1] - 1] != i:
                raise InternalConsistencyError("iota is not an involution")
            for j in range(1, self.rank + 1):
                if A[iota[i - 1] - 1][iota[j - 1] - 1] != A[i - 1][j - 1]:
                    raise InternalConsistencyError("iota does not preserve the Cartan matrix")


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    """Construct a root system; accepts ("E6", None) or ("E", 6) style input."""
    label = type_label.upper()
    if label in ("E6", "E7"):
        if rank is not None and rank != int(label[1]):
            raise UnsupportedSpaceError(f"{label} has fixed rank {label[1]}")
        rank = int(label[1])
        label = "E"
    if label == "E" and rank == 8:
        raise UnsupportedSpaceError("E8 has no minuscule or cominuscule node")
    if label in ("F", "G"):
        raise UnsupportedSpaceError(f"type {label} has no minuscule or cominuscule node")
    if rank is None:
        raise UnsupportedSpaceError("rank is required for classical types")
    A = _cartan_matrix(label, rank)
    rs = RootSystem(
        type_label=label,
        rank=rank,
        cartan_matrix=tuple(tuple(r) for r in A),
        sym=_symmetrizer(A),
    )
    rs.check_invariants()
    return rs


def root_system_from_cartan(cartan: tuple[Vec, ...], label: str = "sub") -> RootSystem:
    """Internal constructor for connected sub-diagrams (Fano fibres etc.)."""
    A = [list(r) for r in cartan]
    rs = RootSystem(
        type_label=label,
        rank=len(A),
        cartan_matrix=tuple(tuple(r) for r in A),
        sym=_symmetrizer(A),
    )
    rs.check_invariants()
    return rs


def classify_marked_node(rs: RootSystem, node: int) -> str:
    """Return 'minuscule', 'cominuscule-only' or 'neither' for the node."""
    if not 1 <= node <= rs.rank:
        raise UnsupportedSpaceError(f"node {node} out of range 1..{rs.rank}")
    omega = rs.fundamental_weight(node)
    minuscule = all(
        abs(rs.coroot_pairing_with_weight(omega, g)) <= 1 for g in rs.positive_roots
    )
    if minuscule:
        return "minuscule"
    if rs.coroot_pairing_with_weight(omega, rs.highest_root) == 1:
        return "cominuscule-only"
    return "neither"


@dataclass(frozen=True)
class MarkedSpace:
    """A (co)minuscule homogeneous space G/P, P the parabolic of one node."""

    rs: RootSystem
    node: int
    dimension: int
    index_c1: int
    d_max: int
    kind: str  # 'minuscule' or 'cominuscule-only'

    @property
    def name(self) -> str:
        return f"{self.rs.name}/P{self.node}"

    @property
    def marked_root_is_long(self) -> bool:
        return self.rs.sym[self.node - 1] == max(self.rs.sym)

    def simply_laced_model(self) -> str | None:
        """The isomorphic long-root realization of a short-root marking."""
        t, n = self.rs.type_label, self.rs.rank
        if t == "C" and self.node == 1:
            return f"A{2 * n - 1}/P1"
        if t == "B" and self.node == n:
            return f"D{n + 1}/P{n + 1}"
        return None


def _greedy_longest_coset_word(rs: RootSystem, weight: Vec) -> tuple[int, ...]:
    """Reduced word for the longest minimal coset representative w with
    stabilizer(weight) = W_P, read left-to-right (w = s_{w1} ... s_{wk})."""
    v = weight
    word: list[int] = []
    while True:
        i = next((k for k in range(1, rs.rank + 1) if v[k - 1] > 0), None)
        if i is None:
            break
        word.append(i)
        v = rs.reflect_weight(i, v)
    return tuple(reversed(word))


def _table_dimension(rs: RootSystem, node: int) -> int | None:
    """Closed-form dimension for the named families (None if no formula)."""
    n = rs.rank
    t = rs.type_label
    if t == "A":
        return node * (n + 1 - node)
    if t == "B" and node == 1:
        return 2 * n - 1
    if t == "C" and node == n:
        return n * (n + 1) // 2
    if t == "D" and node == 1:
        return 2 * n - 2
    if t == "D" and node in (n - 1, n):
        return n * (n - 1) // 2
    if t == "E" and n == 6 and node in (1, 6):
        return 16
    if t == "E" and n == 7 and node == 7:
        return 27
    return None


def _table_index(rs: RootSystem, node: int) -> int | None:
    n = rs.rank
    t = rs.type_label
    if t == "A":
        return n + 1
    if t == "B" and node == 1:
        return 2 * n - 1
    if t == "C" and node == n:
        return n + 1
    if t == "D" and node == 1:
        return 2 * n - 2
    if t == "D" and node in (n - 1, n):
        return 2 * n - 2
    if t == "E" and n == 6 and node in (1, 6):
        return 12
    if t == "E" and n == 7 and node == 7:
        return 18
    return None


def _table_dmax(rs: RootSystem, node: int) -> int | None:
    n = rs.rank
    t = rs.type_label
    if t == "A":
        return min(node, n + 1 - node)
    if t == "B" and node == 1:
        return 2
    if t == "C" and node == n:
        return n
    if t == "D" and node == 1:
        return 2
    if t == "D" and node in (n - 1, n):
        return n // 2
    if t == "E" and n == 6 and node in (1, 6):
        return 2
    if t == "E" and n == 7 and node == 7:
        return 3
    return None


def build_marked_space(rs: RootSystem, node: int) -> MarkedSpace:
    kind = classify_marked_node(rs, node)
    if kind == "neither":
        raise UnsupportedSpaceError(
            f"node {node} of {rs.name} is neither minuscule nor cominuscule"
        )
    omega = rs.fundamental_weight(node)
    dimension = sum(
        1 for g in rs.positive_roots if rs.coroot_pairing_with_weight(omega, g) > 0
    )
    # c_1 = <sum of roots in the nilradical, alpha_node^vee>
    tot = [0] * rs.rank
    for g in rs.positive_roots:
        if g[node - 1] > 0:
            for j in range(rs.rank):
                tot[j] += g[j]
    alpha_node = tuple(1 if j == node - 1 else 0 for j in range(rs.rank))
    index_c1 = (
        2
        * rs.bilinear_root(tuple(tot), alpha_node)
        // rs.bilinear_root(alpha_node, alpha_node)
    )
    word = _greedy_longest_coset_word(rs, omega)
    if len(word) != dimension:
        raise InternalConsistencyError("l(w_X) disagrees with the root count")
    d_max = sum(1 for i in word if i == node)

    for value, table in (
        (dimension, _table_dimension(rs, node)),
        (index_c1, _table_index(rs, node)),
        (d_max, _table_dmax(rs, node)),
    ):
        if table is not None and value != table:
            raise InternalConsistencyError(
                f"{rs.name}/P{node}: computed {value} != table value {table}"
            )
    return MarkedSpace(
        rs=rs, node=node, dimension=dimension, index_c1=index_c1, d_max=d_max, kind=kind
    )
