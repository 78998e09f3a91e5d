"""Command-line interface.

Exit codes: 0 success (or the checked relation holds), 1 invalid input,
2 mathematical obstruction, 3 relation violated (``verify`` only).
"""

from __future__ import annotations

import click

from . import io
from .bracket import assemble, bracket, colored_state_sum, kuperberg
from .double import drinfeld_double
from .errors import ArtifactError, InputError, RelationViolated, RepCheckFailure
from .groups import cyclic, load_table, parse_group_spec, symmetric
from .heegaard import apply_move, from_planar_link, parse_move, sort_link_crossings, surgery, surgery_all
from .heegaard.surgery import _link
from .hennings import hkr_invariant
from .hopf import check_axioms, build_group_algebra, solve_integrals
from .reps import abelian_double_irreps, check_trace, make_regular_rep, make_rho_R, trivial_rep, verify_double_rep
from .scalars import QQ, PrimeField
from .tensor import plan_contraction
from .verify import JOBS, run_job


class _Fail(Exception):
    def __init__(self, code: int):
        self.code = code


def _run(fn, verify: bool = False):
    """Run ``fn`` and turn package errors into exit codes."""
    try:
        fn()
    except RelationViolated as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(3 if verify else 1)
    except ArtifactError as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(exc.exit_code)
    except _Fail as f:
        raise SystemExit(f.code)


# ----------------------------------------------------------------------
# algebra loading


class _Algebra:
    """An algebra file: plain Hopf algebra or a double with its R-matrix."""

    def __init__(self, path):
        obj = io.read_json(path)
        self.double_file = io.double_from_json(obj) if io.is_double_json(obj) else None
        self.hopf = self.double_file.hopf if self.double_file else io.hopf_from_json(obj)
        report = self.double_file.check() if self.double_file else check_axioms(self.hopf)
        if not report.ok:
            names = ", ".join(str(r) for r in report.failures)
            raise InputError(f"{path} fails verification: {names}")
        self.integrals = self.double_file.integrals if self.double_file else solve_integrals(self.hopf)
        self._double = None

    @property
    def double(self):
        if self._double is None:
            self._double = drinfeld_double(self.hopf, solve_integrals(self.hopf), verify=True)
        return self._double


def _rep_from_spec(spec, alg: _Algebra, name: str):
    if isinstance(spec, str):
        if spec == "regular":
            return [make_regular_rep(alg.double, solve_integrals(alg.hopf))]
        if spec == "trivial":
            return [trivial_rep(alg.hopf)]
        if spec == "rho_R":
            if alg.double_file is None:
                raise InputError("rho_R needs a quasitriangular algebra (a double file)")
            return [make_rho_R(alg.double_file.quasitriangular, alg.integrals)]
        raise InputError(f"unknown built-in representation {spec!r}")
    if isinstance(spec, dict) and "abelian_irreps" in spec:
        G = parse_group_spec(str(spec["abelian_irreps"]))
        return abelian_double_irreps(G, alg.hopf)
    if isinstance(spec, dict):
        return [io.rep_from_json(spec, alg.hopf.field, name)]
    raise InputError(f"cannot read representation {name}")


def _verified(rep, alg: _Algebra):
    verify_double_rep(alg.hopf, rep)
    tr = check_trace(alg.hopf, rep)
    if not tr.get("trace property").ok:
        raise RepCheckFailure(f"trace of {rep!r} fails:\n{tr}", tr)
    if not tr.get("antipode invariance").ok:
        click.echo(f"note: the trace of {rep.name} is not antipode invariant", err=True)
    return rep


def _load_colors(path, E, alg: _Algebra) -> dict:
    ids = E.link_ids()
    if path is None:
        obj = "regular"
    else:
        obj = io.read_json(path)
    if isinstance(obj, str) or (isinstance(obj, dict) and "dimV" in obj):
        reps = _rep_from_spec(obj, alg, "color")
        if len(reps) != 1:
            raise InputError("a uniform coloring needs exactly one representation")
        rep = _verified(reps[0], alg)
        return {i: rep for i in ids}
    if not isinstance(obj, dict):
        raise InputError("colors file must map link ids to representations")
    out = {}
    for lid, spec in obj.items():
        reps = _rep_from_spec(spec, alg, lid)
        if len(reps) != 1:
            raise InputError(f"color of {lid} must be a single representation")
        out[lid] = _verified(reps[0], alg)
    return out


def _load_palette(path, alg: _Algebra) -> list:
    obj = io.read_json(path)
    entries = obj if isinstance(obj, list) else [obj]
    out = []
    for k, spec in enumerate(entries):
        for rep in _rep_from_spec(spec, alg, f"palette[{k}]"):
            out.append(_verified(rep, alg))
    if not out:
        raise InputError("palette is empty")
    return out


def _fmt(alg_field, x) -> str:
    return alg_field.format(x)


# ----------------------------------------------------------------------


@click.group()
def main():
    """Exact Kuperberg, bracket and Hennings invariants over finite-dimensional Hopf algebras."""


@main.group()
def algebra():
    """Build and check Hopf algebras."""


@algebra.command("group")
@click.option("--cyclic", "cyc", type=int, help="cyclic group of this order")
@click.option("--symmetric", "sym", type=int, help="symmetric group on this many letters")
@click.option("--table", "table", type=click.Path(), help="JSON multiplication table")
@click.option("--spec", "spec", help="group spec such as product:cyclic:2,cyclic:2")
@click.option("--prime", type=int, default=None, help="work over GF(p) instead of the rationals")
@click.option("--out", required=True, type=click.Path())
def algebra_group(cyc, sym, table, spec, prime, out):
    """Write the group algebra of a finite group."""

    def go():
        chosen = [x is not None for x in (cyc, sym, table, spec)]
        if sum(chosen) != 1:
            raise InputError("give exactly one of --cyclic, --symmetric, --table, --spec")
        if cyc is not None:
            G = cyclic(cyc)
        elif sym is not None:
            G = symmetric(sym)
        elif table is not None:
            G = load_table(table)
        else:
            G = parse_group_spec(spec)
        field = PrimeField(prime) if prime else QQ
        io.write_json(out, io.hopf_to_json(build_group_algebra(G, field)))
        click.echo(f"wrote {out} (dimension {G.order})")

    _run(go)


@algebra.command("check")
@click.argument("file", type=click.Path())
def algebra_check(file):
    """Check every axiom of a Hopf algebra or double file."""

    def go():
        obj = io.read_json(file)
        if io.is_double_json(obj):
            report = io.double_from_json(obj).check()
        else:
            report = check_axioms(io.hopf_from_json(obj))
        click.echo(str(report))
        if not report.ok:
            for r in report.failures:
                click.echo(f"failing axiom: {r}", err=True)
            raise _Fail(1)

    _run(go)


@algebra.command("double")
@click.argument("file", type=click.Path())
@click.option("--out", required=True, type=click.Path())
def algebra_double(file, out):
    """Build and verify the Drinfeld double of a Hopf algebra."""

    def go():
        H = io.load_hopf(file)
        report = check_axioms(H)
        if not report.ok:
            raise InputError(f"{file} is not a Hopf algebra: {', '.join(map(str, report.failures))}")
        D = drinfeld_double(H, solve_integrals(H), verify=True)
        io.write_json(out, io.double_to_json(D))
        click.echo(f"wrote {out} (dimension {D.dim})")

    _run(go)


# ----------------------------------------------------------------------


@main.group()
def diagram():
    """Heegaard-Link diagrams."""


@diagram.command("validate")
@click.argument("file", type=click.Path())
def diagram_validate(file):
    """Check a diagram file and summarize it."""
    _run(lambda: click.echo(io.load_diagram(file).summary()))


@diagram.command("from-link")
@click.argument("file", type=click.Path())
@click.option("--out", required=True, type=click.Path())
def diagram_from_link(file, out):
    """Diagram of a framed braid closure in the three-sphere."""

    def go():
        E = from_planar_link(io.load_planar(file))
        io.write_json(out, io.diagram_to_json(E))
        click.echo(E.summary())

    _run(go)


@diagram.command("move")
@click.argument("file", type=click.Path())
@click.option("--move", "moves", required=True, multiple=True, help="move spec, e.g. reverse:a0 or JSON")
@click.option("--out", required=True, type=click.Path())
def diagram_move(file, moves, out):
    """Apply one or more moves in order."""

    def go():
        E = io.load_diagram(file)
        for m in moves:
            E = apply_move(E, parse_move(m))
        io.write_json(out, io.diagram_to_json(E))
        click.echo(E.summary())

    _run(go)


@diagram.command("surgery")
@click.argument("file", type=click.Path())
@click.option("--component", default=None, help="link id or 0-based index; all components if omitted")
@click.option("--out", required=True, type=click.Path())
def diagram_surgery(file, component, out):
    """Sort a link component's crossings and do surgery along it."""

    def go():
        E = io.load_diagram(file)
        if component is None:
            E = surgery_all(E)
        else:
            comp = int(component) if component.lstrip("-").isdigit() else component
            cid = _link(E, comp)
            E = surgery(sort_link_crossings(E, cid), cid)
        io.write_json(out, io.diagram_to_json(E))
        click.echo(E.summary())

    _run(go)


# ----------------------------------------------------------------------


@main.group()
def invariant():
    """Evaluate invariants."""


def _stats(net) -> dict:
    plan = plan_contraction(net)
    return {"nodes": len(net.nodes), "edges": len(net.edges), "plan_cost": plan.cost}


@invariant.command("bracket")
@click.argument("diagram_file", type=click.Path())
@click.argument("algebra_file", type=click.Path())
@click.option("--colors", type=click.Path(), default=None,
              help="JSON: one representation for every component, or a map from link id to representation")
@click.option("--json", "as_json", is_flag=True, help="print a JSON report")
def invariant_bracket(diagram_file, algebra_file, colors, as_json):
    """Bracket of a diagram colored by representations of the double."""

    def go():
        E = io.load_diagram(diagram_file)
        alg = _Algebra(algebra_file)
        cols = _load_colors(colors, E, alg)
        net = assemble(E, alg.hopf, alg.integrals, cols)
        val = bracket(E, alg.hopf, cols, alg.integrals)
        if as_json:
            click.echo(io.dumps({"value": _fmt(alg.hopf.field, val), **_stats(net)}), nl=False)
        else:
            click.echo(_fmt(alg.hopf.field, val))

    _run(go)


@invariant.command("kuperberg")
@click.argument("diagram_file", type=click.Path())
@click.argument("algebra_file", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="print a JSON report")
def invariant_kuperberg(diagram_file, algebra_file, as_json):
    """Kuperberg's invariant of a link-free diagram."""

    def go():
        E = io.load_diagram(diagram_file)
        alg = _Algebra(algebra_file)
        val = kuperberg(E, alg.hopf, alg.integrals)
        if as_json:
            net = assemble(E, alg.hopf, alg.integrals, {})
            click.echo(io.dumps({"value": _fmt(alg.hopf.field, val), **_stats(net)}), nl=False)
        else:
            click.echo(_fmt(alg.hopf.field, val))

    _run(go)


@invariant.command("hennings")
@click.argument("link_file", type=click.Path())
@click.argument("double_file", type=click.Path())
def invariant_hennings(link_file, double_file):
    """HKR invariant of surgery on a framed link, over a ribbon double."""

    def go():
        P = io.load_planar(link_file)
        alg = _Algebra(double_file)
        if alg.double_file is None:
            raise InputError(f"{double_file} has no R-matrix; build one with 'algebra double'")
        res = hkr_invariant(P, alg.double_file.ribbon)
        click.echo(io.dumps(res.to_json(lambda x: _fmt(alg.hopf.field, x))), nl=False)

    _run(go)


@invariant.command("colored")
@click.argument("diagram_file", type=click.Path())
@click.argument("algebra_file", type=click.Path())
@click.option("--palette", required=True, type=click.Path(), help="JSON list of representations")
@click.option("--sum", "total", is_flag=True, help="print only the sum over all colorings")
def invariant_colored(diagram_file, algebra_file, palette, total):
    """Brackets for every coloring of the link components from a palette."""

    def go():
        E = io.load_diagram(diagram_file)
        alg = _Algebra(algebra_file)
        pal = _load_palette(palette, alg)
        res = colored_state_sum(E, alg.hopf, pal, alg.integrals)
        F = alg.hopf.field
        if total:
            click.echo(_fmt(F, res.total))
            return
        ids = E.link_ids()
        for coloring, val in res.terms.items():
            label = ", ".join(f"{i}={pal[k].name}" for i, k in zip(ids, coloring))
            click.echo(f"{label}: {_fmt(F, val)}")

    _run(go)


# ----------------------------------------------------------------------


@main.command("verify")
@click.argument("job", type=click.Choice(JOBS))
@click.option("--link", "link_file", required=True, type=click.Path())
@click.option("--group", "group_spec", required=True, help="cyclic:n, symmetric:n, product:A,B or table:FILE")
def verify_cmd(job, link_file, group_spec):
    """Compare the invariant pipelines on surgery along a framed link."""

    def go():
        P = io.load_planar(link_file)
        G = parse_group_spec(group_spec)
        outcome = run_job(job, P, G)
        click.echo(outcome.line())
        if not outcome.holds:
            raise _Fail(3)

    _run(go, verify=True)


if __name__ == "__main__":  # pragma: no cover
    main()
