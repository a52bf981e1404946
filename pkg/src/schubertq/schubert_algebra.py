"""The Chow ring in the Schubert basis: Chevalley operator, degrees, and
completion of the full multiplication table from a short list of seeds.

Completion works degree by degree.  Writing h for the hyperplane class
and picking generator classes g where multiplication by h fails to span a
degree slice, every Schubert class gets an exact rational expression as a
combination of evaluated monomials in (h, generators).  The product of
two classes is then evaluated by applying the corresponding operator
chains; the few genuinely unknown operator columns (products of two
generator-degree classes) are pinned by the seed products, Poincare
duality, and associativity instances, solved as a small exact linear
system.  The same machinery, with q-graded vectors and extra vanishing
and duality pins, performs the quantum completion (see quantum.py).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import solve_int_rowspan, solve_rational_rowspan, rational_rank
from .root_system import InternalConsistencyError
from .spaces import Space
from .weyl import SchubertIndex


class ContradictionError(ArithmeticError):
    """Seeds or pins are mutually inconsistent; payload names the culprit."""


class CompletionStallError(ArithmeticError):
    def __init__(self, message, unresolved):
        super().__init__(message)
        self.unresolved = unresolved


# ---------------------------------------------------------------------------
# graded elements
# ---------------------------------------------------------------------------

class GradedElement:
    """Finitely supported integer combination of (class, q-power) pairs."""

    __slots__ = ("space", "terms")

    def __init__(self, space: Space, terms: dict | None = None):
        self.space = space
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def unit(cls, space: Space, w: SchubertIndex | int, q_power: int = 0):
        wid = w if isinstance(w, int) else w.id
        return cls(space, {(wid, q_power): 1})

    @classmethod
    def zero(cls, space: Space):
        return cls(space, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GradedElement") -> "GradedElement":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return GradedElement(self.space, t)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) - v
        return GradedElement(self.space, t)

    def scaled(self, c) -> "GradedElement":
        return GradedElement(self.space, {k: c * v for k, v in self.terms.items()})

    def q_slice(self, d: int) -> dict[int, int]:
        return {wid: v for (wid, qq), v in self.terms.items() if qq == d}

    def max_q(self) -> int:
        return max((qq for (_, qq) in self.terms), default=0)

    def degree(self):
        """Common graded degree (codim + q * c1), or the string 'mixed'."""
        degs = {
            self.space.codim(wid) + qq * self.space.index_c1
            for (wid, qq) in self.terms
        }
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else "mixed"

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda kv: (kv[0][1], self.space.codim(kv[0][0]), kv[0][0])
        )

    def __repr__(self):
        return f"GradedElement({self.terms!r})"


# ---------------------------------------------------------------------------
# Chevalley operator and degrees
# ---------------------------------------------------------------------------

def chevalley_multiply(space: Space, element: GradedElement) -> GradedElement:
    """Multiply by the hyperplane class, classical part only."""
    cs = space.cosets
    out: dict = {}
    for (wid, qq), c in element.terms.items():
        for e in cs.covers_down[wid]:
            k = (e.lower, qq)
            out[k] = out.get(k, 0) + c * e.coeff
    return GradedElement(space, out)


def chevalley_by_peaks(space: Space, w: SchubertIndex | int) -> GradedElement:
    """Independent route for sigma_w * H: remove peaks of the ideal; the
    edge coefficient is recovered from the weight step."""
    ctx = space.quivers
    cs = space.cosets
    rs = space.rs
    wid = w if isinstance(w, int) else w.id
    ideal = ctx.ideal_of(wid)
    out: dict = {}
    for p in ctx.qx.peaks(ideal):
        v = ctx.index_of_ideal(ideal - {p})
        delta = tuple(
            a - b for a, b in zip(v.orbit_weight, cs.indices[wid].orbit_weight)
        )
        col = rs.alpha_in_weight_coords(p[0])
        ratios = {Fraction(d, c) for d, c in zip(delta, col) if c} | {
            Fraction(0) for d, c in zip(delta, col) if not c and d
        }
        if len(ratios) != 1:
            raise InternalConsistencyError("peak step is not a root step")
        coeff = ratios.pop()
        if coeff.denominator != 1 or coeff <= 0:
            raise InternalConsistencyError("bad Chevalley coefficient from peak")
        out[(v.id, 0)] = out.get((v.id, 0), 0) + int(coeff)
    return GradedElement(space, out)


def schubert_degree(space: Space, w: SchubertIndex | int) -> int:
    """deg X(w): weighted count of maximal chains below w in the Hasse diagram."""
    cs = space.cosets
    wid = w if isinstance(w, int) else w.id
    memo = {0: 1}
    for length in range(1, cs.indices[wid].length + 1):
        for vid in cs.by_length[length]:
            memo[vid] = sum(e.coeff * memo[e.lower] for e in cs.covers_down[vid])
    return memo[wid]


# ---------------------------------------------------------------------------
# completion engine
# ---------------------------------------------------------------------------

# an Unknown is a scalar: one entry of one generator column
# key = (gen_id, source_id, target_id, q_power)


class _Deferred(Exception):
    """A chain referenced a column left unresolved by an earlier batch."""


class _LinForm:
    """Symbolic graded vector: const maps components (wid, q) -> value and
    terms maps (unknown_key, component) -> coefficient."""

    __slots__ = ("const", "terms")

    def __init__(self, const=None, terms=None):
        self.const = dict(const or {})
        self.terms = dict(terms or {})

    def add_scaled(self, other: "_LinForm", c) -> None:
        for k, v in other.const.items():
            self.const[k] = self.const.get(k, 0) + c * v
        for k, v in other.terms.items():
            self.terms[k] = self.terms.get(k, 0) + c * v


class _Engine:
    """Shared classical/quantum completion; max_d = 0 gives the Chow ring."""

    def __init__(self, space: Space, max_d: int, pins, entry_zero, slice_pins,
                 gen_candidates, chev):
        self.space = space
        self.max_d = max_d
        self.cs = space.cosets
        self.n = space.dimension
        self.c1 = space.index_c1
        self.pins = pins  # dict[(g,z) sorted pair] -> GradedElement (full column)
        self.entry_zero = entry_zero  # callable(g, z, t, d) -> bool
        self.slice_pins = slice_pins  # dict[((g,z),d)] -> dict target->int
        self.gen_candidates = gen_candidates  # ids preferred as generators, by codim
        self.chev = chev  # operator on raw dicts: dict -> dict
        self.codim_of = {w.id: space.codim(w) for w in self.cs.indices}
        self.by_codim = {
            c: sorted(w.id for w in self.cs.indices if self.codim_of[w.id] == c)
            for c in range(self.n + 1)
        }
        self.generators: list[int] = []
        self.columns: dict[tuple[int, int], dict] = {}  # resolved product dicts
        self.column_route: dict[tuple[int, int], str] = {}
        self.vvalues: dict[tuple, dict] = {}  # monomial -> element dict
        self.decomp: dict[int, list[tuple[tuple, Fraction]]] = {}
        self.unresolved: set[tuple] = set()  # scalar unknown keys
        self.residual_eqs: list[tuple[dict, Fraction]] = []

    # monomials: (q_exp, h_exp, (e_1, ..., e_k)) over current generators
    def _monomials_of_degree(self, deg: int):
        gens = self.generators
        gdeg = [self.codim_of[g] for g in gens]
        out = []

        def rec(i, rem, exps):
            if i == len(gens):
                out.append((rem, tuple(exps)))  # rem = h exponent
                return
            e = 0
            while e * gdeg[i] <= rem:
                rec(i + 1, rem - e * gdeg[i], exps + [e])
                e += 1
            return

        for qq in range(0, self.max_d + 1):
            rem_total = deg - qq * self.c1
            if rem_total < 0:
                continue
            base = len(out)
            rec(0, rem_total, [])
            out[base:] = [(qq, h, exps) for (h, exps) in out[base:]]
        # prefer q-free, hyperplane-heavy monomials as decomposition pivots
        out.sort(key=lambda m: (m[0], -m[1], m[2]))
        return out

    # --- element helpers --------------------------------------------------
    def _flatten(self, elem: dict, deg: int) -> list:
        """Coordinates of a graded element in the degree-`deg` slice."""
        coords = []
        for qq in range(self.max_d + 1):
            c = deg - qq * self.c1
            if 0 <= c <= self.n:
                for wid in self.by_codim[c]:
                    coords.append(elem.get((wid, qq), 0))
        return coords

    def _slice_dim(self, deg: int) -> int:
        return sum(
            len(self.by_codim[deg - qq * self.c1])
            for qq in range(self.max_d + 1)
            if 0 <= deg - qq * self.c1 <= self.n
        )

    # --- operator application ---------------------------------------------
    def _apply_gen(self, g: int, arg) -> _LinForm:
        """L_g applied to an element dict or _LinForm.

        Unresolved column entries become symbolic unknowns; applying an
        unresolved column to an already-symbolic part would be quadratic
        and raises _Deferred instead."""
        if not isinstance(arg, _LinForm):
            arg = _LinForm(const=arg)
        out = _LinForm()
        for (zid, qq), c in arg.const.items():
            if not c:
                continue
            col = self._column_or_none(g, zid)
            if col is not None:
                for (tid, qq2), v in col.items():
                    k = (tid, qq + qq2)
                    out.const[k] = out.const.get(k, 0) + c * v
                continue
            # unresolved column: expand entry-wise into unknowns
            pair = self._pairkey(g, zid)
            deg = self.codim_of[g] + self.codim_of[zid]
            for d2 in range(self.max_d + 1):
                tc = deg - d2 * self.c1
                if not 0 <= tc <= self.n:
                    continue
                for tid in self.by_codim[tc]:
                    key = (pair[0], pair[1], tid, d2)
                    if key in self.resolved_entries:
                        v = self.resolved_entries[key]
                        if v:
                            k = (tid, qq + d2)
                            out.const[k] = out.const.get(k, 0) + c * v
                    else:
                        tk = (key, (tid, qq + d2))
                        out.terms[tk] = out.terms.get(tk, 0) + c
        for (ukey, (tid, qq)), c in arg.terms.items():
            if not c:
                continue
            col = self._column_or_none(g, tid)
            if col is None:
                raise _Deferred((g, tid))
            for (t2, q2), v in col.items():
                tk = (ukey, (t2, qq + q2))
                out.terms[tk] = out.terms.get(tk, 0) + c * v
        return out

    def _apply_chev(self, arg) -> _LinForm:
        if not isinstance(arg, _LinForm):
            return _LinForm(const=self.chev(arg))
        out = _LinForm(const=self.chev(arg.const))
        for (ukey, (tid, qq)), c in arg.terms.items():
            if not c:
                continue
            for (t2, q2), v in self.chev({(tid, qq): 1}).items():
                tk = (ukey, (t2, q2))
                out.terms[tk] = out.terms.get(tk, 0) + c * v
        return out

    def _pairkey(self, a: int, b: int):
        return (a, b) if (self.codim_of[a], a) <= (self.codim_of[b], b) else (b, a)

    def _column_or_none(self, g: int, z: int):
        if z == self.cs.w_x.id:
            return {(g, 0): 1}
        if g == self.cs.w_x.id:
            return {(z, 0): 1}
        pair = self._pairkey(g, z)
        col = self.columns.get(pair)
        if col is not None:
            return col
        # fall back to entry-level resolution
        deg = self.codim_of[g] + self.codim_of[z]
        out = {}
        for d2 in range(self.max_d + 1):
            tc = deg - d2 * self.c1
            if not 0 <= tc <= self.n:
                continue
            for tid in self.by_codim[tc]:
                v = self.resolved_entries.get((pair[0], pair[1], tid, d2))
                if v is None:
                    return None
                if v:
                    out[(tid, d2)] = v
        return out

    def _chain(self, mono, start: dict) -> _LinForm:
        """Apply q^qq * h^a * g_k^{e_k} ... g_1^{e_1} to `start`."""
        qq, a, exps = mono
        cur: dict | _LinForm = dict(start)
        for gi, e in zip(self.generators, exps):
            for _ in range(e):
                cur = self._apply_gen(gi, cur)
        for _ in range(a):
            cur = self._apply_chev(cur)
        lf = cur if isinstance(cur, _LinForm) else _LinForm(const=cur)
        if qq:
            lf = _LinForm(
                const={(w, d + qq): v for (w, d), v in lf.const.items()},
                terms={(u, (w, d + qq)): v for (u, (w, d)), v in lf.terms.items()},
            )
        return lf

    # --- main sweep ---------------------------------------------------------
    def run(self):
        self.resolved_entries: dict[tuple, Fraction] = {}
        self._pending_final: set[tuple[int, int]] = set()
        max_deg = self.n + self.max_d * self.c1
        self._registered: set[tuple[int, int]] = set()
        pending_pairs: dict[int, list[tuple[int, int]]] = {}

        def register_pairs():
            for g in self.generators:
                for w in self.cs.indices:
                    z = w.id
                    if z == self.cs.w_x.id:
                        continue
                    pair = self._pairkey(g, z)
                    if pair in self._registered:
                        continue
                    target = self.codim_of[g] + self.codim_of[z]
                    if target <= max_deg:
                        self._registered.add(pair)
                        pending_pairs.setdefault(target, []).append(pair)

        for deg in range(max_deg + 1):
            self._compute_vvalues(deg)
            register_pairs()
            batch = sorted(set(pending_pairs.get(deg, [])))
            if batch:
                self._solve_batch(deg, batch)
            self._compute_vvalues(deg)
            if deg <= self.n:
                self._pick_generators(deg)
                self._compute_vvalues(deg)  # new generators add monomials
                self._decompose_classes(deg)

        # stalled batches may be unblocked by equations found later; retry
        for _ in range(4):
            if not self._pending_final:
                break
            before = len(self._pending_final)
            for deg in sorted(
                {self.codim_of[a] + self.codim_of[b] for a, b in self._pending_final}
            ):
                batch = sorted(
                    p
                    for p in self._pending_final
                    if self.codim_of[p[0]] + self.codim_of[p[1]] == deg
                )
                self._solve_batch(deg, batch)
                for d2 in range(deg, max_deg + 1):
                    self._compute_vvalues(d2)
            if len(self._pending_final) == before:
                break
        for pair in self._pending_final:
            g, z = pair
            deg = self.codim_of[g] + self.codim_of[z]
            for d2 in range(self.max_d + 1):
                tc = deg - d2 * self.c1
                if not 0 <= tc <= self.n:
                    continue
                for tid in self.by_codim[tc]:
                    key = (g, z, tid, d2)
                    if key not in self.resolved_entries:
                        self.unresolved.add(key)
        return self

    def _compute_vvalues(self, deg: int):
        for mono in self._monomials_of_degree(deg):
            if mono in self.vvalues:
                continue
            qq, a, exps = mono
            if all(e == 0 for e in exps) and a == 0:
                self.vvalues[mono] = {(self.cs.w_x.id, qq): 1}
                continue
            # evaluate via one operator applied to a smaller monomial
            if a > 0:
                sub = (qq, a - 1, exps)
                if sub in self.vvalues:
                    self.vvalues[mono] = self.chev(self.vvalues[sub])
            else:
                gi = max(
                    (i for i, e in enumerate(exps) if e),
                    key=lambda i: self.codim_of[self.generators[i]],
                )
                sub_exps = list(exps)
                sub_exps[gi] -= 1
                sub = (qq, 0, tuple(sub_exps))
                if sub in self.vvalues:
                    lf = self._apply_gen_if_known(self.generators[gi], self.vvalues[sub])
                    if lf is not None:
                        self.vvalues[mono] = lf

    def _apply_gen_if_known(self, g: int, arg: dict):
        out: dict = {}
        for (zid, qq), c in arg.items():
            if not c:
                continue
            col = self._column_or_none(g, zid)
            if col is None:
                return None  # deferred until the relevant batch resolves
            for (tid, qq2), v in col.items():
                k = (tid, qq + qq2)
                out[k] = out.get(k, 0) + c * v
        return out

    def _pick_generators(self, deg: int):
        if deg == 0 or deg > self.n:
            return
        while True:
            rows = [
                self._flatten(self.vvalues[m], deg)
                for m in self._monomials_of_degree(deg)
                if m in self.vvalues
            ]
            missing = None
            if rational_rank(rows) < self._slice_dim(deg):
                for wid in self.gen_candidates.get(deg, []) + self.by_codim[deg]:
                    if wid in self.generators:
                        continue
                    target = self._flatten({(wid, 0): 1}, deg)
                    if solve_rational_rowspan(rows, target) is None:
                        missing = wid
                        break
            if missing is None:
                return
            self.generators.append(missing)
            self.generators.sort(key=lambda g: (self.codim_of[g], g))
            # monomial keys embed the generator layout, so re-key everything
            self.vvalues = {}
            self.decomp.clear()
            for d2 in range(deg + 1):
                self._compute_vvalues(d2)
                if d2 < deg:
                    self._decompose_classes(d2)

    def _decompose_classes(self, deg: int):
        if deg > self.n:
            return
        monos = [m for m in self._monomials_of_degree(deg) if m in self.vvalues]
        rows = [self._flatten(self.vvalues[m], deg) for m in monos]
        for wid in self.by_codim[deg]:
            if wid in self.decomp:
                continue
            target = self._flatten({(wid, 0): 1}, deg)
            sol = solve_rational_rowspan(rows, target)
            if sol is None:
                raise CompletionStallError(
                    f"{self.space.name}: no monomial expression for a class of "
                    f"codimension {deg}; missing generators or seeds",
                    [("decompose", wid)],
                )
            self.decomp[wid] = [
                (m, c) for m, c in zip(monos, sol) if c
            ]

    # --- batch solving ------------------------------------------------------
    def _register_pins(self, pair: tuple[int, int]):
        g, z = pair
        deg = self.codim_of[g] + self.codim_of[z]
        pin = self.pins.get(pair)
        for d2 in range(self.max_d + 1):
            tc = deg - d2 * self.c1
            if not 0 <= tc <= self.n:
                continue
            sp = self.slice_pins.get((pair, d2))
            for tid in self.by_codim[tc]:
                key = (g, z, tid, d2)
                if key in self.resolved_entries:
                    continue
                if pin is not None:
                    self.resolved_entries[key] = Fraction(pin.terms.get((tid, d2), 0))
                elif self.entry_zero(g, z, tid, d2):
                    self.resolved_entries[key] = Fraction(0)
                elif sp is not None:
                    self.resolved_entries[key] = Fraction(sp.get(tid, 0))

    def _column_linform(self, pair) -> _LinForm:
        g, z = pair
        deg = self.codim_of[g] + self.codim_of[z]
        lhs = _LinForm()
        for d2 in range(self.max_d + 1):
            tc = deg - d2 * self.c1
            if not 0 <= tc <= self.n:
                continue
            for tid in self.by_codim[tc]:
                key = (g, z, tid, d2)
                if key in self.resolved_entries:
                    v = self.resolved_entries[key]
                    if v:
                        lhs.const[(tid, d2)] = lhs.const.get((tid, d2), 0) + v
                else:
                    lhs.terms[(key, (tid, d2))] = 1
        return lhs

    def _solve_batch(self, deg: int, batch: list[tuple[int, int]]):
        eqs: list[tuple[dict, Fraction]] = []
        for pair in batch:
            self._register_pins(pair)
        # fully pinned pairs become usable columns before equation building
        self._pending_final.update(batch)
        self._finalize_pending()

        def lin_minus(a: _LinForm, b: _LinForm):
            out = _LinForm(const=a.const, terms=a.terms)
            out.add_scaled(b, -1)
            return out

        def add_equation(diff: _LinForm):
            bycomp: dict[tuple, dict] = {}
            for (ukey, comp), c in diff.terms.items():
                if not c:
                    continue
                bycomp.setdefault(comp, {})
                bycomp[comp][ukey] = bycomp[comp].get(ukey, 0) + c
            comps = set(bycomp) | {k for k, v in diff.const.items() if v}
            for comp in comps:
                terms = {k: v for k, v in bycomp.get(comp, {}).items() if v}
                const = -diff.const.get(comp, 0)
                if terms:
                    eqs.append((terms, Fraction(const)))
                elif const:
                    raise ContradictionError(
                        f"{self.space.name}: inconsistent constraints in degree {deg} "
                        f"at component {comp}"
                    )

        # route equations from both factors:
        #   column(pair) = sum_M lambda^{(src)}_M chain_M(e_other)
        for pair in batch:
            g, z = pair
            lhs = self._column_linform(pair)
            for src, other in ((z, g), (g, z)):
                if src not in self.decomp:
                    continue
                try:
                    rhs = _LinForm()
                    for mono, c in self.decomp[src]:
                        lf = self._chain(mono, {(other, 0): 1})
                        rhs.add_scaled(lf, c)
                except _Deferred:
                    continue
                add_equation(lin_minus(lhs, rhs))

        # associativity instances between pairs of generators
        for gi in self.generators:
            for gj in self.generators:
                if (self.codim_of[gi], gi) < (self.codim_of[gj], gj):
                    cz = deg - self.codim_of[gi] - self.codim_of[gj]
                    if cz < 0:
                        continue
                    for z in self.by_codim[cz]:
                        try:
                            lf1 = self._apply_gen(
                                gj, self._apply_gen(gi, {(z, 0): 1})
                            )
                            lf2 = self._apply_gen(
                                gi, self._apply_gen(gj, {(z, 0): 1})
                            )
                        except _Deferred:
                            continue
                        add_equation(lin_minus(lf1, lf2))

        # associativity with the hyperplane class: g * (H z) = H * (g z)
        for g in self.generators:
            cz = deg - self.codim_of[g] - 1
            if cz < 0 or cz > self.n:
                continue
            for z in self.by_codim[cz]:
                try:
                    lf1 = self._apply_gen(g, self.chev({(z, 0): 1}))
                    lf2 = self._apply_chev(self._apply_gen(g, {(z, 0): 1}))
                except _Deferred:
                    continue
                add_equation(lin_minus(lf1, lf2))

        # full symmetry of the triple pairing: the coefficient of t in g*z
        # equals the coefficient of dual(z) in g*dual(t), at every q-power
        dual = self.cs.dual_of
        for pair in batch:
            g, z = pair
            for d2 in range(self.max_d + 1):
                tc = deg - d2 * self.c1
                if not 0 <= tc <= self.n:
                    continue
                for tid in self.by_codim[tc]:
                    key = (g, z, tid, d2)
                    if key in self.resolved_entries:
                        continue
                    p2 = self._pairkey(g, dual[tid])
                    key2 = (p2[0], p2[1], dual[z], d2)
                    if key2 == key:
                        continue
                    self._register_pins(p2)
                    if key2 in self.resolved_entries:
                        eqs.append(({key: 1}, self.resolved_entries[key2]))
                    else:
                        eqs.append(({key: 1, key2: -1}, Fraction(0)))

        self._gauss_solve(eqs, deg)
        self._pending_final.update(batch)
        self._finalize_pending()

    def _finalize_pending(self):
        done = []
        for pair in self._pending_final:
            g, z = pair
            deg = self.codim_of[g] + self.codim_of[z]
            col: dict = {}
            ok = True
            for d2 in range(self.max_d + 1):
                tc = deg - d2 * self.c1
                if not 0 <= tc <= self.n:
                    continue
                for tid in self.by_codim[tc]:
                    key = (g, z, tid, d2)
                    v = self.resolved_entries.get(key)
                    if v is None:
                        ok = False
                        continue
                    if v:
                        if v.denominator != 1:
                            raise ContradictionError(
                                f"{self.space.name}: non-integral structure constant "
                                f"for pair {pair} at ({tid}, q^{d2}): {v}"
                            )
                        col[(tid, d2)] = int(v)
            if ok:
                self.columns[pair] = col
                done.append(pair)
        for pair in done:
            self._pending_final.discard(pair)

    def _gauss_solve(self, eqs, deg):
        # sparse exact Gaussian elimination with a non-negativity pass
        rows = [(dict(t), Fraction(c)) for t, c in eqs]
        pivots: dict[tuple, tuple[dict, Fraction]] = {}

        def reduce_row(terms, const):
            changed = True
            while changed:
                changed = False
                for k in list(terms):
                    if k in pivots and terms[k]:
                        pt, pc = pivots[k]
                        f = terms[k]
                        terms[k] = 0
                        for k2, v2 in pt.items():
                            terms[k2] = terms.get(k2, 0) - f * v2
                        const -= f * pc
                        changed = True
                terms2 = {k: v for k, v in terms.items() if v}
                terms.clear()
                terms.update(terms2)
            return terms, const

        queue = rows
        while queue:
            nxt = []
            for terms, const in queue:
                terms, const = reduce_row(dict(terms), const)
                if not terms:
                    if const:
                        raise ContradictionError(
                            f"{self.space.name}: contradictory associativity "
                            f"instance in degree {deg}"
                        )
                    continue
                k = min(terms)
                f = Fraction(terms.pop(k))
                pt = {k2: Fraction(v) / f for k2, v in terms.items()}
                pc = Fraction(const) / f
                pivots[k] = (pt, pc)
                # re-reduce existing pivots against the new one
                for k0 in list(pivots):
                    if k0 == k:
                        continue
                    t0, c0 = pivots[k0]
                    if k in t0:
                        f0 = t0.pop(k)
                        for k2, v2 in pt.items():
                            t0[k2] = t0.get(k2, 0) - f0 * v2
                        c0 -= f0 * pc
                        pivots[k0] = ({a: b for a, b in t0.items() if b}, c0)
            queue = nxt

        # substitute fully determined unknowns, then the non-negativity pass:
        # a sum of unknowns with positive coefficients equal to zero forces
        # every unknown in it to vanish (all structure constants are >= 0).
        progress = True
        while progress:
            progress = False
            for k in list(pivots):
                t, c = pivots[k]
                t = {a: b for a, b in t.items() if a not in self.resolved_entries or b}
                solved_c = c - sum(
                    b * self.resolved_entries[a]
                    for a, b in t.items()
                    if a in self.resolved_entries
                )
                t = {a: b for a, b in t.items() if a not in self.resolved_entries}
                if not t:
                    if k in self.resolved_entries:
                        if self.resolved_entries[k] != solved_c:
                            raise ContradictionError(
                                f"{self.space.name}: pin conflicts with deduction "
                                f"for {k}"
                            )
                    else:
                        self.resolved_entries[k] = solved_c
                        progress = True
                    del pivots[k]
                else:
                    pivots[k] = (t, solved_c)
            if not progress and self.max_d > 0:
                # non-negativity forcing: a pivot row x_k + sum(c_i x_i) = 0
                # with all c_i > 0 and every unknown a GW coefficient >= 0
                # forces x_k and all the x_i to vanish.
                for k in list(pivots):
                    t, c = pivots[k]
                    if c == 0 and t and all(v > 0 for v in t.values()):
                        self.resolved_entries[k] = Fraction(0)
                        for a in t:
                            if a not in self.resolved_entries:
                                self.resolved_entries[a] = Fraction(0)
                        del pivots[k]
                        progress = True
                        break


# ---------------------------------------------------------------------------
# driving the engine: classical table
# ---------------------------------------------------------------------------

@dataclass
class StructureTable:
    space: Space
    max_q: int
    products: dict = field(default_factory=dict)  # sorted (uid, vid) -> GradedElement
    status: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    underdetermined: list = field(default_factory=list)

    def pair(self, u, v):
        uid = u if isinstance(u, int) else u.id
        vid = v if isinstance(v, int) else v.id
        cu, cv = self.space.codim(uid), self.space.codim(vid)
        return (uid, vid) if (cu, uid) <= (cv, vid) else (vid, uid)

    def product(self, u, v) -> GradedElement:
        key = self.pair(u, v)
        if key not in self.products:
            raise CompletionStallError(
                f"{self.space.name}: product of pair {key} is underdetermined",
                [key],
            )
        return self.products[key]

    def multiply(self, a: GradedElement, b: GradedElement) -> GradedElement:
        out: dict = {}
        for (u, d1), c1 in a.terms.items():
            for (v, d2), c2 in b.terms.items():
                prod = self.product(u, v)
                for (w, d3), c3 in prod.terms.items():
                    k = (w, d1 + d2 + d3)
                    out[k] = out.get(k, 0) + c1 * c2 * c3
        return GradedElement(self.space, out)

    def power(self, a: GradedElement, k: int) -> GradedElement:
        out = GradedElement.unit(self.space, self.space.cosets.w_x)
        for _ in range(k):
            out = self.multiply(out, a)
        return out


def _duality_pins(space: Space) -> dict:
    """Exact products for pairs with complementary or excessive codimension."""
    pins = {}
    cs = space.cosets
    n = space.dimension
    pt = cs.identity
    for u in cs.indices:
        for v in cs.indices:
            if (space.codim(u), u.id) > (space.codim(v), v.id):
                continue
            s = space.codim(u) + space.codim(v)
            if s == n:
                val = (
                    GradedElement.unit(space, pt)
                    if cs.dual_of[u.id] == v.id
                    else GradedElement.zero(space)
                )
                pins[(u.id, v.id)] = val
    return pins


def complete_table(space: Space, seeds) -> StructureTable:
    """Complete the classical multiplication table from Chevalley, duality
    and the given seed products; see the module docstring for the method."""
    cs = space.cosets
    n = space.dimension

    def chev(elem: dict) -> dict:
        out: dict = {}
        for (wid, qq), c in elem.items():
            for e in cs.covers_down[wid]:
                k = (e.lower, qq)
                out[k] = out.get(k, 0) + c * e.coeff
        return out

    pins: dict = {}
    gen_candidates: dict[int, list[int]] = {}
    seed_list = []
    for u, v, val in seeds:
        uid = u if isinstance(u, int) else u.id
        vid = v if isinstance(v, int) else v.id
        key = (uid, vid) if (space.codim(uid), uid) <= (space.codim(vid), vid) else (vid, uid)
        elem = val if isinstance(val, GradedElement) else GradedElement(space, val)
        if key in pins and pins[key] != elem:
            raise ContradictionError(f"{space.name}: duplicate conflicting seed {key}")
        pins[key] = elem
        seed_list.append((key, elem))
        for wid in key:
            gen_candidates.setdefault(space.codim(wid), []).append(wid)
    pins.update({k: v for k, v in _duality_pins(space).items() if k not in pins})

    def entry_zero(g, z, tid, d):
        # classical vanishing beyond the top degree
        return space.codim(g) + space.codim(z) > n

    eng = _Engine(
        space,
        max_d=0,
        pins=pins,
        entry_zero=entry_zero,
        slice_pins={},
        gen_candidates={c: sorted(set(v)) for c, v in gen_candidates.items()},
        chev=chev,
    )
    eng.run()

    table = StructureTable(space, max_q=0)
    h = space.h_class if n >= 1 else None
    for u in cs.indices:
        for v in cs.indices:
            if (space.codim(u), u.id) > (space.codim(v), v.id):
                continue
            key = (u.id, v.id)
            elem = _assemble_product(space, eng, u.id, v.id)
            if elem is None:
                table.underdetermined.append(key)
                continue
            table.products[key] = elem
            if u.id == cs.w_x.id:
                table.status[key] = "unit"
            elif h is not None and h.id in key:
                table.status[key] = "chevalley"
            elif key in dict(seed_list):
                table.status[key] = "seed"
            elif space.codim(u) + space.codim(v) >= n:
                table.status[key] = "duality"
            else:
                table.status[key] = "deduced"

    _validate_table(space, table, seed_list)
    return table


def _assemble_product(space: Space, eng: _Engine, uid: int, vid: int):
    cu, cv = space.codim(uid), space.codim(vid)
    if (cu, uid) > (cv, vid):
        uid, vid = vid, uid
        cu, cv = cv, cu
    if cu + cv > space.dimension + eng.max_d * space.index_c1:
        return GradedElement.zero(space)
    if uid not in eng.decomp:
        return None
    out: dict = {}
    for mono, c in eng.decomp[uid]:
        try:
            lf = eng._chain(mono, {(vid, 0): 1})
        except _Deferred:
            return None
        if lf.terms:
            return None
        for k, v in lf.const.items():
            out[k] = out.get(k, 0) + c * v
    elem: dict = {}
    for k, v in out.items():
        if v:
            f = Fraction(v)
            if f.denominator != 1:
                raise ContradictionError(
                    f"{space.name}: non-integral product for pair ({uid},{vid})"
                )
            elem[k] = int(f)
    return GradedElement(space, elem)


def _validate_table(space: Space, table: StructureTable, seed_list):
    cs = space.cosets
    n = space.dimension
    for key, elem in table.products.items():
        for (wid, qq), c in elem.terms.items():
            if c < 0:
                raise ContradictionError(
                    f"{space.name}: negative structure constant in pair {key}"
                )
            if qq == 0:
                if space.codim(key[0]) + space.codim(key[1]) != space.codim(wid):
                    raise ContradictionError(f"{space.name}: grading broken in {key}")
    for key, elem in seed_list:
        if key in table.products and table.products[key] != elem:
            raise ContradictionError(
                f"{space.name}: completed table contradicts seed {key}"
            )
    # duality normalization
    pt = cs.identity.id
    for u in cs.indices:
        for v in cs.indices:
            if space.codim(u) + space.codim(v) != n:
                continue
            key = table.pair(u.id, v.id)
            if key not in table.products:
                continue
            expected = 1 if cs.dual_of[u.id] == v.id else 0
            got = table.products[key].terms.get((pt, 0), 0)
            if got != expected:
                raise ContradictionError(
                    f"{space.name}: duality normalization fails for {key}"
                )


# ---------------------------------------------------------------------------
# Giambelli expressions
# ---------------------------------------------------------------------------

def giambelli_expand(space: Space, generators: list[tuple[str, int]], w,
                     table: StructureTable | None = None) -> dict:
    """Integer polynomial (exponent tuple -> coeff) expressing sigma_w in the
    named generator classes; generators = [(name, class_id), ...]."""
    table = table or space.classical_table()
    wid = w if isinstance(w, int) else w.id
    c = space.codim(wid)
    gens = [(space.codim(g), g) for _, g in generators]
    monos = []

    def rec(i, rem, exps):
        if i == len(gens):
            monos.append(tuple(exps))
            return
        e = 0
        while e * gens[i][0] <= rem:
            if i == len(gens) - 1 and rem - e * gens[i][0] != 0:
                e += 1
                continue
            rec(i + 1, rem - e * gens[i][0], exps + [e])
            e += 1

    # first generator is conventionally h of degree 1, so exponents always fill
    rec(0, c, [])
    rows = []
    ids = sorted(space.cosets.by_length[space.dimension - c])
    one = GradedElement.unit(space, space.cosets.w_x)
    for exps in monos:
        val = one
        for (_, g), e in zip(generators, exps):
            for _ in range(e):
                val = table.multiply(val, GradedElement.unit(space, g))
        rows.append([val.terms.get((i, 0), 0) for i in ids])
    target = [1 if i == wid else 0 for i in ids]
    sol = solve_int_rowspan(rows, target)
    if sol is None:
        raise CompletionStallError(
            f"{space.name}: no integral polynomial expression for class {wid}",
            [("giambelli", wid)],
        )
    return {m: c for m, c in zip(monos, sol) if c}
