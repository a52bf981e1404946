"""Command line interface.

Exit codes: 0 success, 1 failed verification or unavailable (partial)
table, 2 usage errors.  All output is deterministic: identical invocations
produce byte-identical results.
"""

from __future__ import annotations

import json
import sys

import click

from .naming import UnknownClassError
from .root_system import UnsupportedSpaceError
from .schubert_algebra import CompletionStallError, schubert_degree
from .spaces import Space, parse_space_label


def _space(label: str) -> Space:
    try:
        return Space(*parse_space_label(label))
    except UnsupportedSpaceError as ex:
        raise click.UsageError(str(ex))


def _parse_class(space: Space, name: str):
    try:
        return space.naming.parse(name)
    except UnknownClassError as ex:
        raise click.UsageError(str(ex))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


@click.group()
def main():
    """Exact Schubert calculus for minuscule and cominuscule spaces."""


@main.command()
@click.argument("space_label", metavar="SPACE")
@click.argument("u")
@click.argument("v")
@click.option("--quantum", is_flag=True, help="use the small quantum product")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def product(space_label, u, v, quantum, fmt):
    """Product of two Schubert classes, e.g. `product E6/P1 s'4 s'4`."""
    sp = _space(space_label)
    cu, cv = _parse_class(sp, u), _parse_class(sp, v)
    try:
        table = sp.quantum_table() if quantum else sp.classical_table()
        elem = table.product(cu.id, cv.id)
    except UnsupportedSpaceError as ex:
        raise click.UsageError(str(ex))
    except CompletionStallError as ex:
        click.echo(f"error: partial table: {ex}", err=True)
        sys.exit(1)
    if fmt == "text":
        click.echo(sp.naming.format_element(elem))
    else:
        payload = {
            "schema_version": 1,
            "space": sp.name,
            "u": sp.naming.name_of[cu.id],
            "v": sp.naming.name_of[cv.id],
            "quantum": bool(quantum),
            "terms": [
                {"w": sp.naming.name_of[wid], "q": qq, "coeff": c}
                for (wid, qq), c in elem.sorted_terms()
            ],
        }
        click.echo(_json_text(payload), nl=False)


@main.command()
@click.argument("space_label", metavar="SPACE")
@click.argument("suite", type=click.Choice(["classical", "quantum", "all"]), default="all")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--jobs", type=int, default=1, help="reserved; checks run sequentially")
def verify(space_label, suite, fmt, jobs):
    """Run the invariant suites; non-zero exit on any failure."""
    if jobs < 1:
        raise click.UsageError("--jobs must be a positive integer")
    sp = _space(space_label)
    from .verify import run_suite

    result = run_suite(sp, suite)
    if fmt == "json":
        payload = {
            "schema_version": 1,
            "space": sp.name,
            "suite": suite,
            "passed": result.passed,
            "checks": [
                {"name": r.name, "status": "pass" if r.passed else "fail", "detail": r.detail}
                for r in result.records
            ],
        }
        click.echo(_json_text(payload), nl=False)
    else:
        for r in result.records:
            mark = "PASS" if r.passed else "FAIL"
            detail = f"  ({r.detail})" if r.detail else ""
            click.echo(f"{mark} {r.name}{detail}")
        click.echo(("ok: " if result.passed else "FAILED: ") + sp.name)
    if not result.passed:
        sys.exit(1)


@main.command()
@click.argument("space_label", metavar="SPACE")
@click.argument(
    "target", type=click.Choice(["hasse", "quiver", "quiver-F", "quiver-Fd"])
)
@click.option("--d", "degree_d", type=int, default=None, help="curve degree for quiver-Fd")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot")
@click.option("--out", type=click.Path(), default=None)
def export(space_label, target, degree_d, fmt, out):
    """Write a Hasse diagram or quiver in DOT or JSON form."""
    sp = _space(space_label)
    from . import export as ex

    if target == "quiver-Fd":
        if degree_d is None:
            raise click.UsageError("quiver-Fd requires --d")
        if not 0 <= degree_d <= sp.d_max:
            raise click.UsageError(f"--d must be in 0..{sp.d_max} for {sp.name}")
    elif degree_d is not None:
        raise click.UsageError("--d only applies to quiver-Fd")
    try:
        if target == "hasse":
            text = ex.hasse_dot(sp) if fmt == "dot" else _json_text(ex.hasse_json(sp))
        else:
            text = (
                ex.quiver_dot(sp, target, degree_d)
                if fmt == "dot"
                else _json_text(ex.quiver_json(sp, target, degree_d))
            )
    except UnsupportedSpaceError as err:
        raise click.UsageError(str(err))
    _emit(text, out)


@main.command()
@click.argument("space_label", metavar="SPACE")
@click.argument("class_name", metavar="CLASS")
def degree(space_label, class_name):
    """Degree of a Schubert variety (weighted chain count)."""
    sp = _space(space_label)
    w = _parse_class(sp, class_name)
    click.echo(str(schubert_degree(sp, w)))


@main.command()
@click.argument("space_label", metavar="SPACE")
@click.argument("class_name", metavar="CLASS")
@click.option("--q-degree", "qd", type=int, default=None, help="higher duality degree d")
def dual(space_label, class_name, qd):
    """Poincare dual, or the degree-d dual inside T_d with --q-degree."""
    sp = _space(space_label)
    w = _parse_class(sp, class_name)
    if qd is None:
        click.echo(sp.naming.name_of[sp.cosets.dual_of[w.id]])
        return
    if not 0 <= qd <= sp.d_max:
        raise click.UsageError(f"--q-degree must be in 0..{sp.d_max} for {sp.name}")
    try:
        res = sp.quivers.higher_dual(qd, w)
    except UnsupportedSpaceError as ex:
        raise click.UsageError(str(ex))
    if res is None:
        click.echo("undefined (class does not lie in T_d)")
        sys.exit(1)
    click.echo(sp.naming.name_of[res.id])


@main.command(name="min-q")
@click.argument("space_label", metavar="SPACE")
@click.argument("u")
@click.argument("v")
def min_q(space_label, u, v):
    """Smallest power of q in the quantum product of two classes."""
    sp = _space(space_label)
    cu, cv = _parse_class(sp, u), _parse_class(sp, v)
    try:
        click.echo(str(sp.quivers.min_q_power(cu, cv)))
    except UnsupportedSpaceError as ex:
        raise click.UsageError(str(ex))


@main.command()
@click.argument("space_label", metavar="SPACE")
@click.argument("u")
def delta(space_label, u):
    """Number of marked-node letters in a reduced word for the class."""
    sp = _space(space_label)
    cu = _parse_class(sp, u)
    click.echo(str(sp.quivers.delta_occurrences(cu)))


@main.command()
@click.argument("space_label", metavar="SPACE")
@click.option("--quantum", is_flag=True)
@click.option("--provenance", is_flag=True, help="include inference provenance per pair")
@click.option("--out", type=click.Path(), default=None)
def table(space_label, quantum, provenance, out):
    """Full multiplication table as JSON."""
    sp = _space(space_label)
    from .export import table_json

    try:
        payload = table_json(sp, quantum=quantum, provenance=provenance)
    except UnsupportedSpaceError as ex:
        raise click.UsageError(str(ex))
    except CompletionStallError as ex:
        click.echo(f"error: partial table: {ex}", err=True)
        sys.exit(1)
    _emit(_json_text(payload), out)


if __name__ == "__main__":
    main()
