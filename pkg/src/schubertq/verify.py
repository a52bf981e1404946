"""Named invariant checks for the CLI verify command and the test suite.

Every check returns a CheckRecord; the classical and quantum suites are
lists of (name, callable).  Checks that need a completed table degrade to
status "skipped" when the table is genuinely underdetermined (classical
families without seed data), which is reported but not a failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb, factorial

from .quantum import (
    CheckRecord,
    dmax_identities,
    higher_duality_check,
    hyperplane_power_identity,
    min_power_consistency,
    quantum_chevalley,
    quantum_corrections_of_degree,
)
from .schubert_algebra import (
    CompletionStallError,
    GradedElement,
    chevalley_by_peaks,
    chevalley_multiply,
    giambelli_expand,
    schubert_degree,
)
from .spaces import Space
from .quiver import build_quiver
from .weyl import bruhat_leq


@dataclass
class SuiteResult:
    records: list

    @property
    def passed(self) -> bool:
        return all(r.passed or r.detail.startswith("skipped") for r in self.records)


def _skip(name, why) -> CheckRecord:
    return CheckRecord(name, True, "skipped: " + why)


def _short_root_skip(space: Space, name: str) -> CheckRecord | None:
    if space.marked.marked_root_is_long:
        return None
    return _skip(
        name,
        f"short-root marking; use {space.marked.simply_laced_model()} for geometry",
    )


# ---------------------------------------------------------------------------
# classical checks
# ---------------------------------------------------------------------------

def check_enumeration(space: Space) -> CheckRecord:
    betti = space.cosets.betti()
    ok = betti == betti[::-1] and sum(betti) == len(space.cosets)
    rs, node = space.rs, space.marked.node
    expected = None
    t, n = rs.type_label, rs.rank
    if t == "A":
        expected = comb(n + 1, node)
    elif t == "B" and node == 1:
        expected = 2 * n
    elif t == "D" and node == 1:
        expected = 2 * n
    elif t == "C" and node == n:
        expected = 2 ** n
    elif t == "D" and node in (n - 1, n):
        expected = 2 ** (n - 1)
    elif t == "E" and n == 6:
        expected = 27
    elif t == "E" and n == 7:
        expected = 56
    if expected is not None:
        ok = ok and len(space.cosets) == expected
    if t == "A":
        # independent oracle: partitions inside a node x (n+1-node) box
        k, m = node, n + 1 - node
        counts = [0] * (k * m + 1)

        def gen(maxpart, rows):
            if rows == 0:
                yield ()
                return
            for first in range(maxpart + 1):
                for rest in gen(first, rows - 1):
                    yield (first,) + rest

        for lam in gen(m, k):
            counts[sum(lam)] += 1
        ok = ok and counts == betti
    return CheckRecord("enumeration", ok, f"betti {betti}")


def check_hasse_coefficients(space: Space) -> CheckRecord:
    coeffs = {e.coeff for e in space.cosets.hasse.edges}
    if space.marked.kind == "minuscule":
        ok = coeffs <= {1}
    else:
        ok = coeffs <= {1, 2} and 2 in coeffs
    return CheckRecord("hasse-edge-coefficients", ok, f"coefficients {sorted(coeffs)}")


def check_duality(space: Space) -> CheckRecord:
    cs = space.cosets
    ok = all(cs.dual_of[cs.dual_of[w.id]] == w.id for w in cs.indices)
    ok = ok and cs.dual_of[0] == cs.w_x.id
    ok = ok and all(
        cs.indices[cs.dual_of[w.id]].length == space.dimension - w.length
        for w in cs.indices
    )
    return CheckRecord("poincare-duality-involution", ok)


def check_quiver_dual(space: Space) -> CheckRecord:
    ctx = space.quivers
    bad = [
        w.id
        for w in space.cosets.indices
        if ctx.quiver_dual(w).id != space.cosets.dual_of[w.id]
    ]
    return CheckRecord("quiver-dual-equals-word-dual", not bad, f"bad: {bad}")


def check_ideal_bijection(space: Space) -> CheckRecord:
    ctx = space.quivers
    ideals = ctx.qx.all_ideals()
    ok = len(ideals) == len(space.cosets)
    ok = ok and all(len(ctx.ideal_of(w)) == w.length for w in space.cosets.indices)
    return CheckRecord("ideal-class-bijection", ok, f"{len(ideals)} ideals")


def check_chevalley_peaks(space: Space) -> CheckRecord:
    bad = []
    for w in space.cosets.indices:
        via_edges = chevalley_multiply(space, GradedElement.unit(space, w))
        via_peaks = chevalley_by_peaks(space, w)
        if via_edges != via_peaks:
            bad.append(w.id)
    return CheckRecord("chevalley-edges-vs-peaks", not bad, f"bad: {bad[:5]}")


def check_commutation_invariance(space: Space, trials: int = 100) -> CheckRecord:
    """Random adjacent commuting swaps of the top word leave the quiver
    (vertices and arrows under the canonical (node, occurrence) labels)
    unchanged."""
    rs = space.rs
    base = list(space.quivers.qx.word)
    reference = space.quivers.qx.arrows
    rng = random.Random(7_2026)
    word = base[:]
    bad = 0
    for _ in range(trials):
        spots = [
            i
            for i in range(len(word) - 1)
            if word[i] != word[i + 1]
            and rs.cartan_matrix[word[i] - 1][word[i + 1] - 1] == 0
        ]
        if not spots:
            break
        i = rng.choice(spots)
        word[i], word[i + 1] = word[i + 1], word[i]
        q = build_quiver(rs, tuple(word), check_reduced=False)
        if q.arrows != reference:
            bad += 1
    return CheckRecord("quiver-commutation-invariance", bad == 0, f"{bad} deviations")


def check_line_geometry(space: Space) -> CheckRecord:
    skip = _short_root_skip(space, "line-geometry")
    if skip:
        return skip
    geo = space.quivers.geometry(1)
    ok = len(geo.f_vertices) == space.dimension + space.index_c1 - 3
    # the 1-dual domain is the interval below the T_1 class
    ctx = space.quivers
    for w in space.cosets.indices:
        has = ctx.one_dual_partner(w) is not None
        inside = ctx.ideal_of(w) <= geo.t_ideal
        if has != inside:
            return CheckRecord("line-geometry", False, f"domain mismatch at {w.id}")
    return CheckRecord("line-geometry", ok, f"dim F = {len(geo.f_vertices)}")


def check_degree_geometries(space: Space) -> CheckRecord:
    skip = _short_root_skip(space, "degree-geometries")
    if skip:
        return skip
    ctx = space.quivers
    rs = space.rs
    for d in range(space.d_max + 1):
        geo = ctx.geometry(d)  # construction asserts the dimension relations
        if d >= 1:
            below = ctx.qx.down[(rs.iota(space.marked.node), d)] & frozenset(
                ctx.qx.vertices
            )
            if ctx.geometry(d - 1).t_ideal != below:
                return CheckRecord(
                    "degree-geometries", False, f"T_(d-1) mismatch at d={d}"
                )
    return CheckRecord("degree-geometries", True, f"d = 0..{space.d_max}")


def check_bruhat_vs_ideals(space: Space) -> CheckRecord:
    cs = space.cosets
    ctx = space.quivers
    bad = 0
    for u in cs.indices:
        for v in cs.indices:
            if bruhat_leq(cs, u, v) != (ctx.ideal_of(u) <= ctx.ideal_of(v)):
                bad += 1
    return CheckRecord("bruhat-order-vs-ideal-containment", bad == 0, f"{bad} mismatches")


def _degree_oracle(space: Space):
    rs, node = space.rs, space.marked.node
    t, n = rs.type_label, rs.rank
    if t == "A":
        k, m = node, n + 1 - node
        num = factorial(k * m)
        den = 1
        for i in range(k):
            den *= factorial(m + i) // factorial(i) * 1
        # deg G(k, n+1) = (km)! * prod_{i=0}^{k-1} i! / (m+i)!
        deg = factorial(k * m)
        for i in range(k):
            deg = deg * factorial(i) // factorial(m + i)
        return deg
    if (t == "B" and node == 1) or (t == "D" and node == 1):
        return 2
    if t == "E" and n == 6:
        return 78
    if t == "E" and n == 7:
        return 13110
    return None


def check_degrees(space: Space) -> CheckRecord:
    got = schubert_degree(space, space.cosets.w_x)
    want = _degree_oracle(space)
    if want is None:
        return _skip("space-degree", "no closed form stored for this family")
    return CheckRecord("space-degree", got == want, f"deg = {got}, expected {want}")


def _classical_table_or_none(space: Space):
    try:
        table = space.classical_table()
    except CompletionStallError:
        return None
    return None if table.underdetermined else table


def check_classical_table(space: Space, full_limit: int = 40000) -> CheckRecord:
    table = _classical_table_or_none(space)
    if table is None:
        return _skip("classical-table", "completion is underdetermined without seeds")
    cs = space.cosets
    ids = [w.id for w in cs.indices]
    prod = {}
    for (u, v), e in table.products.items():
        prod[(u, v)] = e.terms
        prod[(v, u)] = e.terms

    def mul(t1, t2):
        out = {}
        for (u, d1), c1 in t1.items():
            for (v, d2), c2 in t2.items():
                for (w, d3), c3 in prod[(u, v)].items():
                    k = (w, d1 + d2 + d3)
                    out[k] = out.get(k, 0) + c1 * c2 * c3
        return {k: v for k, v in out.items() if v}

    if len(ids) ** 3 <= full_limit:
        triples = [(a, b, c) for a in ids for b in ids for c in ids]
    else:
        rng = random.Random(2026)
        triples = [tuple(rng.choice(ids) for _ in range(3)) for _ in range(2000)]
    bad = sum(
        1
        for a, b, c in triples
        if mul(prod[(a, b)], {(c, 0): 1}) != mul({(a, 0): 1}, prod[(b, c)])
    )
    nonneg = all(c >= 0 for e in table.products.values() for c in e.terms.values())
    return CheckRecord(
        "classical-table",
        bad == 0 and nonneg,
        f"{len(triples)} associativity triples, {bad} failures",
    )


def check_classical_presentation(space: Space) -> CheckRecord:
    rs = space.rs
    if rs.type_label != "E":
        return _skip("classical-presentation", "stored only for the exceptional spaces")
    from .graded_presentation import (
        e6_degree17_determinant,
        e7_degree28_determinant,
        exceptional_presentation,
        rank_sequence,
        verify_isomorphism,
    )

    pres, assign = exceptional_presentation(space)
    seq = rank_sequence(pres, space.dimension + 1)
    betti = space.cosets.betti()
    ok = [r for r, _ in seq[: space.dimension + 1]] == betti
    ok = ok and all(f for _, f in seq) and seq[space.dimension + 1][0] == 0
    if rs.rank == 6:
        _, d = e6_degree17_determinant(pres)
    else:
        _, d = e7_degree28_determinant(pres)
    ok = ok and abs(d) == 1
    gens = [(nm, assign[nm]) for nm in pres.names]
    giam = {
        w.id: giambelli_expand(space, gens, w.id, space.classical_table())
        for w in space.cosets.indices
    }
    rep = verify_isomorphism(pres, space.classical_table(), giam, assign)
    return CheckRecord(
        "classical-presentation",
        ok and rep.passed,
        f"rank sequence ok={ok}, isomorphism={rep.passed} {rep.detail[:2]}",
    )


# ---------------------------------------------------------------------------
# quantum checks
# ---------------------------------------------------------------------------

def _quantum_table_or_none(space: Space):
    from .root_system import UnsupportedSpaceError

    try:
        table = space.quantum_table()
    except (CompletionStallError, UnsupportedSpaceError):
        return None
    return None if table.underdetermined else table


def check_quantum_chevalley(space: Space) -> CheckRecord:
    table = _quantum_table_or_none(space)
    if table is None:
        return _skip("quantum-chevalley", "quantum table unavailable")
    if space.dimension < 1:
        return CheckRecord("quantum-chevalley", True)
    h = space.h_class
    bad = []
    for w in space.cosets.indices:
        if table.product(h.id, w.id) != quantum_chevalley(space, w):
            bad.append(w.id)
    return CheckRecord("quantum-chevalley", not bad, f"bad: {bad[:5]}")


def check_q0_slice(space: Space) -> CheckRecord:
    qt = _quantum_table_or_none(space)
    ct = _classical_table_or_none(space)
    if qt is None or ct is None:
        return _skip("q0-slice", "table unavailable")
    bad = [
        key
        for key, e in qt.products.items()
        if e.q_slice(0) != ct.products[key].q_slice(0)
        and space.codim(key[0]) + space.codim(key[1]) <= space.dimension
    ]
    return CheckRecord("q0-slice-equals-classical", not bad, f"bad: {bad[:5]}")


def check_quantum_associativity(space: Space, sample: int = 10000) -> CheckRecord:
    table = _quantum_table_or_none(space)
    if table is None:
        return _skip("quantum-associativity", "quantum table unavailable")
    ids = [w.id for w in space.cosets.indices]
    prod = {}
    for (u, v), e in table.products.items():
        prod[(u, v)] = e.terms
        prod[(v, u)] = e.terms

    def mul(t1, t2):
        out = {}
        for (u, d1), c1 in t1.items():
            for (v, d2), c2 in t2.items():
                for (w, d3), c3 in prod[(u, v)].items():
                    k = (w, d1 + d2 + d3)
                    out[k] = out.get(k, 0) + c1 * c2 * c3
        return {k: v for k, v in out.items() if v}

    if len(ids) ** 3 <= 30000:
        triples = [(a, b, c) for a in ids for b in ids for c in ids]
    else:
        rng = random.Random(20240810)
        triples = [tuple(rng.choice(ids) for _ in range(3)) for _ in range(sample)]
        special = [space.h_class.id]
        if hasattr(space, "_seed_cache") and space._seed_cache:
            special += sorted({k for u, v, _ in space._seed_cache for k in (u, v)})
        triples += [(a, g, c) for g in sorted(set(special)) for a in ids for c in ids]
    bad = sum(
        1
        for a, b, c in triples
        if mul(prod[(a, b)], {(c, 0): 1}) != mul({(a, 0): 1}, prod[(b, c)])
    )
    nonneg = all(c >= 0 for e in table.products.values() for c in e.terms.values())
    return CheckRecord(
        "quantum-associativity",
        bad == 0 and nonneg,
        f"{len(triples)} triples, {bad} failures, nonneg={nonneg}",
    )


def check_hyperplane_power(space: Space) -> CheckRecord:
    skip = _short_root_skip(space, "hyperplane-power-identity")
    if skip:
        return skip
    return hyperplane_power_identity(space)


def check_dmax(space: Space) -> CheckRecord:
    if _quantum_table_or_none(space) is None:
        return _skip("dmax-identities", "quantum table unavailable")
    return dmax_identities(space)


def check_min_power(space: Space) -> CheckRecord:
    if _quantum_table_or_none(space) is None:
        return _skip("min-q-power-consistency", "quantum table unavailable")
    skip = _short_root_skip(space, "min-q-power-consistency")
    if skip:
        return skip
    return min_power_consistency(space)


def check_higher_duality(space: Space) -> CheckRecord:
    if _quantum_table_or_none(space) is None:
        return _skip("higher-poincare-duality", "quantum table unavailable")
    return higher_duality_check(space)


def check_exceptional_corrections(space: Space) -> CheckRecord:
    rs = space.rs
    if rs.type_label != "E":
        return _skip("exceptional-corrections", "exceptional spaces only")
    naming = space.naming
    qt = space.quantum_table()
    corr = quantum_corrections_of_degree(space, space.index_c1, qt)
    named = {
        tuple(sorted((naming.name_of[a], naming.name_of[b]))) for a, b in corr
    }
    if rs.rank == 6:
        pairs_48 = {p for p in named if {int(x.lstrip("s'")) for x in p} == {4, 8}}
        want = {("s''8", "s'4"), ("s''4", "s'8")}
        want = {tuple(sorted(p)) for p in want}
        ok = pairs_48 == want
        # sigma^{*3} = sigma^3 + q
        s = GradedElement.unit(space, naming.parse("s'4"))
        cube = qt.multiply(qt.multiply(s, s), s)
        qpart = {k: v for k, v in cube.terms.items() if k[1] >= 1}
        ok = ok and qpart == {(space.cosets.w_x.id, 1): 1}
        return CheckRecord("exceptional-corrections", ok, f"(4,8) pairs: {sorted(pairs_48)}")
    # E7: corrected pairs among the generator-degree splits (1,17), (5,13), (9,9)
    split = {
        p
        for p in named
        if sorted(int(x.lstrip("s'")) for x in p) in ([1, 17], [5, 13], [9, 9])
    }
    want = {
        ("s1", "s17"),
        ("s'13", "s'5"),
        ("s''5", "s13"),
        ("s9", "s9"),
        ("s'9", "s'9"),
        ("s''9", "s''9"),
    }
    want = {tuple(sorted(p)) for p in want}
    ok = split == want
    ok = ok and all(
        e.terms == {(space.cosets.w_x.id, 1): 1}
        for (a, b), e in corr.items()
        if tuple(sorted((naming.name_of[a], naming.name_of[b]))) in want
    )
    return CheckRecord("exceptional-corrections", ok, f"pairs: {sorted(split)}")


def check_quantum_presentation(space: Space) -> CheckRecord:
    rs = space.rs
    if rs.type_label != "E":
        return _skip("quantum-presentation", "stored only for the exceptional spaces")
    from .graded_presentation import (
        exceptional_presentation,
        verify_quantum_presentation,
    )

    pres, _ = exceptional_presentation(space)
    presq, assignq = exceptional_presentation(space, quantum=True)
    rep = verify_quantum_presentation(presq, space.quantum_table(), pres, assignq)
    return CheckRecord("quantum-presentation", rep.passed, str(rep.detail[:2]))


CLASSICAL_CHECKS = [
    check_enumeration,
    check_hasse_coefficients,
    check_duality,
    check_quiver_dual,
    check_ideal_bijection,
    check_bruhat_vs_ideals,
    check_chevalley_peaks,
    check_commutation_invariance,
    check_line_geometry,
    check_degree_geometries,
    check_degrees,
    check_classical_table,
    check_classical_presentation,
]

QUANTUM_CHECKS = [
    check_quantum_chevalley,
    check_q0_slice,
    check_quantum_associativity,
    check_hyperplane_power,
    check_dmax,
    check_min_power,
    check_higher_duality,
    check_exceptional_corrections,
    check_quantum_presentation,
]


def run_suite(space: Space, which: str = "all") -> SuiteResult:
    checks = []
    if which in ("classical", "all"):
        checks += CLASSICAL_CHECKS
    if which in ("quantum", "all"):
        checks += QUANTUM_CHECKS
    return SuiteResult([c(space) for c in checks])
