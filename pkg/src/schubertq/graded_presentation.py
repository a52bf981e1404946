"""Graded quotients of integer polynomial rings, degree by degree.

A presentation is a list of named generators with positive degrees and a
list of homogeneous integer relations.  Each degree slice is the cokernel
of the lattice spanned by (monomial x relation) products inside the free
module on the degree-d monomials; Smith normal form certifies its rank
and freeness exactly.  The only polynomial machinery needed is dict-based
arithmetic on exponent vectors, so there is no Groebner step anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .linalg import det, smith_invariants
from .schubert_algebra import GradedElement, StructureTable

Poly = dict  # exponent tuple -> int coefficient


class PresentationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomial helpers
# ---------------------------------------------------------------------------

def poly_add(a: Poly, b: Poly, c: int = 1) -> Poly:
    out = dict(a)
    for m, v in b.items():
        out[m] = out.get(m, 0) + c * v
        if not out[m]:
            del out[m]
    return out


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for m1, v1 in a.items():
        for m2, v2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + v1 * v2
    return {m: v for m, v in out.items() if v}


def monomial(nvars: int, i: int, e: int = 1) -> tuple:
    return tuple(e if j == i else 0 for j in range(nvars))


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-)")


def parse_poly(text: str, generators: list[str]) -> Poly:
    """Strict parser: integers, generator names, +, -, *, ^ and nothing else."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PresentationError(f"unexpected character at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    n = len(generators)
    index = {g: i for i, g in enumerate(generators)}
    out: Poly = {}
    i = 0

    def parse_factor():
        nonlocal i
        tok = tokens[i]
        i += 1
        if tok.isdigit():
            return int(tok), tuple(0 for _ in range(n))
        if tok not in index:
            raise PresentationError(f"unknown generator {tok!r}")
        e = 1
        if i < len(tokens) and tokens[i] == "^":
            i += 1
            if i >= len(tokens) or not tokens[i].isdigit():
                raise PresentationError("exponent must be a positive integer")
            e = int(tokens[i])
            i += 1
        return 1, monomial(n, index[tok], e)

    sign = 1
    first = True
    while i < len(tokens):
        if tokens[i] in "+-":
            sign = 1 if tokens[i] == "+" else -1
            i += 1
        elif not first:
            raise PresentationError("terms must be separated by + or -")
        coeff, mono = parse_factor()
        while i < len(tokens) and tokens[i] == "*":
            i += 1
            c2, m2 = parse_factor()
            coeff *= c2
            mono = tuple(x + y for x, y in zip(mono, m2))
        out[mono] = out.get(mono, 0) + sign * coeff
        sign = 1
        first = False
    return {m: v for m, v in out.items() if v}


def format_poly(p: Poly, generators: list[str]) -> str:
    parts = []
    for mono, c in sorted(p.items(), reverse=True):
        factors = []
        if abs(c) != 1 or not any(mono):
            factors.append(str(abs(c)))
        for g, e in zip(generators, mono):
            if e == 1:
                factors.append(g)
            elif e > 1:
                factors.append(f"{g}^{e}")
        term = "*".join(factors)
        parts.append(("-" if c < 0 else ("+" if parts else "")) + term)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedPresentation:
    generators: tuple  # of (name, degree)
    relations: tuple  # of Poly (dicts frozen by convention: do not mutate)

    def __post_init__(self):
        for r in self.relations:
            degs = {self.mono_degree(m) for m in r}
            if len(degs) > 1:
                raise PresentationError(f"relation is not homogeneous: {degs}")

    @property
    def names(self) -> list[str]:
        return [g for g, _ in self.generators]

    def mono_degree(self, mono: tuple) -> int:
        return sum(e * d for e, (_, d) in zip(mono, self.generators))

    def monomials_of_degree(self, d: int) -> list[tuple]:
        n = len(self.generators)
        out = []

        def rec(i, rem, exps):
            if i == n:
                if rem == 0:
                    out.append(tuple(exps))
                return
            step = self.generators[i][1]
            e = 0
            while e * step <= rem:
                rec(i + 1, rem - e * step, exps + [e])
                e += 1

        rec(0, d, [])
        # graded lexicographic with the later generators heavier
        return sorted(out)

    @classmethod
    def from_strings(cls, generators, relation_strings):
        names = [g for g, _ in generators]
        rels = tuple(parse_poly(s, names) for s in relation_strings)
        return cls(tuple(generators), rels)

    def to_payload(self) -> dict:
        return {
            "schema_version": 1,
            "generators": [{"name": g, "degree": d} for g, d in self.generators],
            "relations": [format_poly(r, self.names) for r in self.relations],
        }

    @classmethod
    def from_payload(cls, payload: dict):
        gens = [(g["name"], int(g["degree"])) for g in payload["generators"]]
        return cls.from_strings(gens, payload["relations"])


@dataclass
class DegreeSlice:
    degree: int
    monomials: list
    lattice_rows: list
    quotient_rank: int
    torsion: list  # smith invariants > 1

    @property
    def is_free(self) -> bool:
        return not self.torsion


def degree_slice(pres: GradedPresentation, d: int) -> DegreeSlice:
    monos = pres.monomials_of_degree(d)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for rel in pres.relations:
        rdeg = pres.mono_degree(next(iter(rel))) if rel else 0
        if rdeg > d:
            continue
        for m in pres.monomials_of_degree(d - rdeg):
            prod = poly_mul({m: 1}, rel)
            rows.append([prod.get(mono, 0) for mono in monos])
    if rows:
        inv = smith_invariants(rows)
        rank = len(inv)
        torsion = [x for x in inv if x != 1]
    else:
        rank, torsion = 0, []
    return DegreeSlice(
        degree=d,
        monomials=monos,
        lattice_rows=rows,
        quotient_rank=len(monos) - rank,
        torsion=torsion,
    )


def rank_sequence(pres: GradedPresentation, up_to_degree: int):
    """Per-degree quotient ranks with freeness flags."""
    out = []
    for d in range(up_to_degree + 1):
        s = degree_slice(pres, d)
        out.append((s.quotient_rank, s.is_free))
    return out


# ---------------------------------------------------------------------------
# verification against a structure table
# ---------------------------------------------------------------------------

@dataclass
class IsomorphismReport:
    space_name: str
    relations_vanish: bool
    surjective: bool
    ranks_match: bool
    detail: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.relations_vanish and self.surjective and self.ranks_match


def _monomial_values(space, table: StructureTable, assignment, pres, degree):
    """Evaluate every presentation monomial of one degree through a table.

    assignment maps generator names to (class id | None); None means the
    formal quantum parameter, which evaluates to q times the unit."""
    values = []
    for mono in pres.monomials_of_degree(degree):
        val = GradedElement.unit(space, space.cosets.w_x)
        for (gname, _), e in zip(pres.generators, mono):
            target = assignment[gname]
            for _ in range(e):
                if target is None:
                    val = GradedElement(
                        space, {(wid, qq + 1): c for (wid, qq), c in val.terms.items()}
                    )
                else:
                    val = table.multiply(val, GradedElement.unit(space, target))
        values.append((mono, val))
    return values


def _slice_coords(space, elem: GradedElement, degree: int, max_q: int):
    coords = []
    for qq in range(max_q + 1):
        c = degree - qq * space.index_c1
        if 0 <= c <= space.dimension:
            ids = sorted(space.cosets.by_length[space.dimension - c])
            coords.extend(elem.terms.get((wid, qq), 0) for wid in ids)
    return coords


def verify_isomorphism(
    pres: GradedPresentation,
    table: StructureTable,
    giambelli: dict,
    assignment: dict,
) -> IsomorphismReport:
    """Checks that mapping generators to the assigned Schubert classes is a
    well-defined surjection with the right per-degree ranks.  `giambelli`
    (class id -> polynomial) is round-tripped through the table as part of
    the surjectivity evidence."""
    space = table.space
    max_q = table.max_q
    report = IsomorphismReport(space.name, True, True, True)

    for rel in pres.relations:
        acc = GradedElement.zero(space)
        for mono, coeff in rel.items():
            val = GradedElement.unit(space, space.cosets.w_x)
            for (gname, _), e in zip(pres.generators, mono):
                target = assignment[gname]
                for _ in range(e):
                    if target is None:
                        val = GradedElement(
                            space,
                            {(wid, qq + 1): c for (wid, qq), c in val.terms.items()},
                        )
                    else:
                        val = table.multiply(val, GradedElement.unit(space, target))
            acc = acc + val.scaled(coeff)
        if not acc.is_zero():
            report.relations_vanish = False
            report.detail.append(
                ("relation", format_poly(rel, pres.names), sorted(acc.terms.items()))
            )

    for d in range(space.dimension + 1):
        vals = _monomial_values(space, table, assignment, pres, d)
        rows = [_slice_coords(space, v, d, max_q) for _, v in vals]
        dim = len(rows[0]) if rows else 0
        if dim == 0:
            continue
        inv = smith_invariants([r for r in rows if any(r)] or [[0] * dim])
        if len(inv) < dim or any(x != 1 for x in inv):
            report.surjective = False
            report.detail.append(("not surjective over Z in degree", d, inv))
        s = degree_slice(pres, d)
        want = len(space.cosets.by_length[space.dimension - d]) if d <= space.dimension else 0
        if max_q > 0:
            want = sum(
                len(space.cosets.by_length[space.dimension - (d - qq * space.index_c1)])
                for qq in range(max_q + 1)
                if 0 <= d - qq * space.index_c1 <= space.dimension
            )
        if s.quotient_rank != want or not s.is_free:
            report.ranks_match = False
            report.detail.append(("rank mismatch in degree", d, s.quotient_rank, want))

    for wid, poly in giambelli.items():
        acc = GradedElement.zero(space)
        for mono, coeff in poly.items():
            val = GradedElement.unit(space, space.cosets.w_x)
            for (gname, _), e in zip(pres.generators, mono):
                if assignment[gname] is None:
                    continue
                for _ in range(e):
                    val = table.multiply(val, GradedElement.unit(space, assignment[gname]))
            acc = acc + val.scaled(coeff)
        if acc != GradedElement.unit(space, wid):
            report.surjective = False
            report.detail.append(("giambelli round-trip failed for class", wid))
    return report


def verify_quantum_presentation(
    pres_q: GradedPresentation,
    qtable: StructureTable,
    classical: GradedPresentation,
    assignment: dict,
) -> IsomorphismReport:
    """Same checks with q as a formal degree-c1 generator, plus the shape
    constraint: the quantum relations differ from the classical ones only
    by the q-deformation of the unique top-degree relation."""
    space = qtable.space
    report = verify_isomorphism(pres_q, qtable, {}, assignment)
    names = pres_q.names
    if "q" not in names:
        report.detail.append(("missing q generator",))
        report.relations_vanish = False
        return report
    qi = names.index("q")
    top = max(classical.relations, key=lambda r: classical.mono_degree(next(iter(r))))
    deformed = 0
    for rel_c, rel_q in zip(classical.relations, pres_q.relations):
        lifted = {_pad(m, len(names)): c for m, c in rel_c.items()}
        diff = poly_add(dict(rel_q), lifted, -1)
        if not diff:
            continue
        deformed += 1
        if rel_c != top or set(diff) != {monomial(len(names), qi)}:
            report.ranks_match = False
            report.detail.append(("unexpected deformation", format_poly(diff, names)))
    if deformed != 1:
        report.ranks_match = False
        report.detail.append(("deformed relations", deformed))
    return report


def _pad(mono: tuple, n: int) -> tuple:
    return mono + tuple(0 for _ in range(n - len(mono)))


# ---------------------------------------------------------------------------
# the exceptional presentations and the determinant fixtures
# ---------------------------------------------------------------------------

def exceptional_presentation(space, quantum: bool = False):
    """Returns (presentation, assignment name -> class id or None for q)."""
    naming = space.naming
    rs = space.rs
    if rs.type_label == "E" and rs.rank == 6:
        gens = [("h", 1), ("s", 4)]
        rels = ["3*h*s^2-6*h^5*s+2*h^9", "s^3-12*h^8*s+5*h^12"]
        assign = {"h": naming.parse("H").id, "s": naming.parse("s'4").id}
        if quantum:
            gens.append(("q", 12))
            rels[1] = "s^3-12*h^8*s+5*h^12-q"
    elif rs.type_label == "E" and rs.rank == 7:
        gens = [("h", 1), ("s", 5), ("t", 9)]
        rels = [
            "s^2-10*s*h^5+2*t*h+4*h^10",
            "2*s*t-12*s*h^9+2*t*h^5+5*h^14",
            "t^2+922*s*h^13-198*t*h^9-385*h^18",
        ]
        assign = {
            "h": naming.parse("H").id,
            "s": naming.parse("s'5").id,
            "t": naming.parse("s9").id,
        }
        if quantum:
            gens.append(("q", 18))
            rels[2] = "t^2+922*s*h^13-198*t*h^9-385*h^18-q"
    else:
        raise PresentationError(f"no stored presentation for {space.name}")
    if quantum:
        assign["q"] = None
    return GradedPresentation.from_strings(gens, rels), assign


def e6_degree17_determinant(pres: GradedPresentation) -> tuple[list, int]:
    """The five-by-five integer system eliminating the top degree of the
    degree-16 quotient; its determinant must be +-1."""
    r9, r12 = pres.relations
    multipliers = [
        ({(8, 0): 1}, r9),
        ({(4, 1): 1}, r9),
        ({(0, 2): 1}, r9),
        ({(5, 0): 1}, r12),
        ({(1, 1): 1}, r12),
    ]
    monos = [(1, 4), (5, 3), (9, 2), (13, 1), (17, 0)]
    rows = []
    for m, rel in multipliers:
        prod = poly_mul(m, rel)
        rows.append([prod.get(mono, 0) for mono in monos])
    return rows, det(rows)


def e7_degree28_determinant(pres: GradedPresentation) -> tuple[list, int]:
    """Multiply the middle relation by h^14, h^9 s, h^5 t, s t and rewrite
    s^2 and t^2 away; the resulting four-by-four system has determinant 1."""
    r10, r14, r18 = pres.relations
    # rewrite rules from the outer relations, solved for s^2 and t^2
    s2 = {m: -c for m, c in r10.items() if m != (0, 2, 0)}
    t2 = {m: -c for m, c in r18.items() if m != (0, 0, 2)}

    def reduce(p: Poly) -> Poly:
        p = dict(p)
        changed = True
        while changed:
            changed = False
            for m, c in list(p.items()):
                if m[1] >= 2:
                    rest = (m[0], m[1] - 2, m[2])
                    del p[m]
                    for m2, c2 in poly_mul({rest: c}, s2).items():
                        p[m2] = p.get(m2, 0) + c2
                    changed = True
                    break
                if m[2] >= 2:
                    rest = (m[0], m[1], m[2] - 2)
                    del p[m]
                    for m2, c2 in poly_mul({rest: c}, t2).items():
                        p[m2] = p.get(m2, 0) + c2
                    changed = True
                    break
            p = {m: c for m, c in p.items() if c}
        return p

    multipliers = [(14, 0, 0), (9, 1, 0), (5, 0, 1), (0, 1, 1)]
    monos = [(14, 1, 1), (19, 0, 1), (23, 1, 0), (28, 0, 0)]
    rows = []
    for m in multipliers:
        prod = reduce(poly_mul({m: 1}, r14))
        if set(prod) - set(monos):
            raise PresentationError("rewriting did not reach the reduced basis")
        rows.append([prod.get(mono, 0) for mono in monos])
    return rows, det(rows)
