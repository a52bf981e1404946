"""Byte-deterministic DOT and JSON exports of diagrams, quivers, tables."""

from __future__ import annotations

from .spaces import Space

SCHEMA_VERSION = 1


def _sorted_nodes(space: Space):
    naming = space.naming
    return sorted(
        space.cosets.indices, key=lambda w: (space.codim(w), naming.name_of[w.id])
    )


def hasse_dot(space: Space) -> str:
    naming = space.naming
    lines = ["digraph hasse {", "  rankdir=LR;", "  node [shape=circle];"]
    for w in _sorted_nodes(space):
        lines.append(f'  n{w.id} [label="{naming.name_of[w.id]}"];')
    edges = sorted(
        space.cosets.hasse.edges,
        key=lambda e: (naming.name_of[e.lower], naming.name_of[e.upper]),
    )
    for e in edges:
        attr = f' [label="{e.coeff}"]' if e.coeff != 1 else ""
        lines.append(f"  n{e.upper} -> n{e.lower}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_json(space: Space) -> dict:
    naming = space.naming
    return {
        "schema_version": SCHEMA_VERSION,
        "space": space.name,
        "nodes": [
            {
                "id": w.id,
                "name": naming.name_of[w.id],
                "length": w.length,
                "codim": space.codim(w),
                "word": list(w.reduced_word),
                "orbit_weight": list(w.orbit_weight),
            }
            for w in _sorted_nodes(space)
        ],
        "edges": sorted(
            (
                {
                    "lower": e.lower,
                    "upper": e.upper,
                    "node": e.node,
                    "coeff": e.coeff,
                }
                for e in space.cosets.hasse.edges
            ),
            key=lambda d: (d["lower"], d["upper"], d["node"]),
        ),
    }


def _quiver_parts(space: Space, target: str, d: int | None, class_name: str | None):
    ctx = space.quivers
    if target == "quiver":
        q = ctx.qx
        flags = {v: "x" for v in q.vertices}
        ideal = None
        if class_name is not None:
            ideal = ctx.ideal_of(space.naming.parse(class_name))
        return q, flags, ideal
    if class_name is not None:
        raise ValueError("--class applies to the plain quiver export only")
    dd = 1 if target == "quiver-F" else d
    geo = ctx.geometry(dd)
    q = geo.quiver_F
    flags = {}
    for v in q.vertices:
        iv = geo._f_to_i[v]
        flags[v] = "z" if iv in geo.z_vertices else "x"
    return q, flags, None


def quiver_dot(
    space: Space,
    target: str = "quiver",
    d: int | None = None,
    class_name: str | None = None,
) -> str:
    """DOT rendering, arrows downward; with a class, its order ideal is
    black and the complement red, as in the usual figures."""
    q, flags, ideal = _quiver_parts(space, target, d, class_name)

    def is_red(v):
        if ideal is not None:
            return v not in ideal
        return flags[v] == "z"

    lines = ["digraph quiver {", "  rankdir=TB;", "  node [shape=point, width=0.12];"]
    for v in q.vertices:
        style = ' color="red"' if is_red(v) else ""
        lines.append(f'  "v{q.pos[v]}" [xlabel="({v[0]},{v[1]})"{style}];')
    for a, b in sorted(q.arrows, key=lambda ab: (q.pos[ab[0]], q.pos[ab[1]])):
        style = ' [color="red", style=dashed]' if is_red(a) or is_red(b) else ""
        lines.append(f'  "v{q.pos[a]}" -> "v{q.pos[b]}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_json(
    space: Space,
    target: str = "quiver",
    d: int | None = None,
    class_name: str | None = None,
) -> dict:
    q, flags, ideal = _quiver_parts(space, target, d, class_name)
    vertices = []
    for v in q.vertices:
        rec = {
            "node": v[0],
            "occurrence": v[1],
            "position": q.pos[v],
            "part": flags[v],
        }
        if ideal is not None:
            rec["in_ideal"] = v in ideal
        vertices.append(rec)
    return {
        "schema_version": SCHEMA_VERSION,
        "space": space.name,
        "target": target if d is None else f"{target}:{d}",
        "word": list(q.word),
        "vertices": vertices,
        "arrows": sorted(
            [q.pos[a], q.pos[b]] for a, b in q.arrows
        ),
    }


def table_json(space: Space, quantum: bool = False, provenance: bool = False) -> dict:
    naming = space.naming
    table = space.quantum_table() if quantum else space.classical_table()
    products = []
    for (u, v), elem in sorted(
        table.products.items(),
        key=lambda kv: (
            space.codim(kv[0][0]) + space.codim(kv[0][1]),
            naming.name_of[kv[0][0]],
            naming.name_of[kv[0][1]],
        ),
    ):
        rec = {
            "u": naming.name_of[u],
            "v": naming.name_of[v],
            "terms": [
                {"w": naming.name_of[wid], "q": qq, "coeff": c}
                for (wid, qq), c in elem.sorted_terms()
            ],
        }
        if provenance:
            rec["provenance"] = table.provenance.get((u, v), table.status.get((u, v), ""))
        products.append(rec)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "space": space.name,
        "max_q": table.max_q,
        "basis": [naming.name_of[w.id] for w in _sorted_nodes(space)],
        "products": products,
    }
    if table.underdetermined:
        payload["underdetermined"] = [
            [naming.name_of[u], naming.name_of[v]] for u, v in table.underdetermined
        ]
    return payload
