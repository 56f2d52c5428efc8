"""Command-line front end.

Exit codes: 0 = success, 1 = mathematical failure entries present
(an undistinguished pair, a cross-check violation, a suite FAIL),
2 = usage error (bad flags or a germ expression that does not parse).
Output is deterministic: identical invocations produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from .classifier import ade_table, distinguish, nonsimple_report, verify_paper_suite
from .germs import CrossCheckError, GermSpec, analytic_equiv, oracle_cell, zeta_table
from .parser import GermParseError, parse_germ
from .quadric import beta_Y, beta_Y_compl, beta_Y_fiber, beta_Y_star

_FORMATS = click.Choice(["text", "csv", "json"])
_SOURCES = click.Choice(["formulas", "oracle", "hybrid", "auto"])


def _parse(expr: str) -> GermSpec:
    try:
        return parse_germ(expr)
    except GermParseError as exc:
        raise click.UsageError(f"{expr!r}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


@click.group()
def main() -> None:
    """Exact zeta tables and blow-Nash classification for germ normal forms."""


@main.command()
@click.argument("germ_expr")
@click.option("--N", "n_max", type=int, default=6, show_default=True, help="Largest arc order.")
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--source", type=_SOURCES, default="hybrid", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--trace", is_flag=True, help="Append engine traces for oracle-computed cells.")
def zeta(germ_expr: str, n_max: int, fmt: str, source: str, out: str | None, trace: bool) -> None:
    """Zeta table of one germ expression up to order N."""
    g = _parse(germ_expr)
    if n_max < 2:
        raise click.UsageError("--N must be at least 2")
    try:
        table = zeta_table(g, n_max, source)
    except CrossCheckError as exc:
        click.echo(f"cross-check failure: {exc}", err=True)
        sys.exit(1)
    if fmt == "json":
        text = table.to_json() + "\n"
    elif fmt == "csv":
        text = table.to_csv()
    else:
        text = table.to_text()
    if trace:
        blocks = [text]
        for n, cells in table.rows:
            for channel in ("plus", "minus", "naive"):
                if cells[channel].provenance in ("oracle", "unavailable"):
                    outcome = oracle_cell(g, n, channel, collect_trace=True)
                    blocks.append(
                        f"# trace n={n}/{channel} "
                        f"({'ok' if outcome.ok else outcome.failure}, "
                        f"{outcome.strata} strata)\n"
                    )
                    blocks.extend(line + "\n" for line in outcome.trace)
        text = "".join(blocks)
    _emit(text, out)


@main.command(name="distinguish")
@click.argument("germ1")
@click.argument("germ2")
@click.option("--N", "n_max", type=int, default=9, show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--source", type=_SOURCES, default="auto", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def distinguish_cmd(germ1: str, germ2: str, n_max: int, fmt: str, source: str, out: str | None) -> None:
    """First zeta-table cell where two germs differ, if any up to N."""
    g1, g2 = _parse(germ1), _parse(germ2)
    if g1.d != g2.d:
        raise click.UsageError(
            f"germs live in different ambient dimensions ({g1.d} vs {g2.d})"
        )
    dist = distinguish(g1, g2, n_max, source)
    equivalent = g1.is_simple and g2.is_simple and analytic_equiv(g1, g2)
    if fmt == "json":
        payload = dist.to_json_dict()
        payload["analytic_equiv"] = equivalent
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["germ1", "germ2", "verdict", "n", "channel", "value1", "value2"])
        w.writerow(
            [
                dist.germ1,
                dist.germ2,
                dist.verdict,
                dist.n if dist.separated else "",
                dist.channel if dist.separated else "",
                str(dist.value1) if dist.separated else "",
                str(dist.value2) if dist.separated else "",
            ]
        )
        text = buf.getvalue()
    else:
        lines = [f"{dist.germ1}  vs  {dist.germ2}", f"verdict: {dist.verdict}"]
        if dist.separated:
            lines.append(f"value1: {dist.value1}")
            lines.append(f"value2: {dist.value2}")
        else:
            lines.append(f"analytically equivalent: {'yes' if equivalent else 'no'}")
        if dist.unavailable:
            lines.append("unavailable cells: " + ", ".join(dist.unavailable))
        text = "\n".join(lines) + "\n"
    _emit(text, out)
    if not dist.separated and not equivalent:
        sys.exit(1)


@main.command()
@click.option("--d", "dim", type=int, required=True, help="Ambient dimension.")
@click.option("--kmax", type=int, default=8, show_default=True)
@click.option("--N", "n_max", type=int, default=9, show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--source", type=_SOURCES, default="auto", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def table(dim: int, kmax: int, n_max: int, fmt: str, source: str, out: str | None) -> None:
    """Pairwise classification of all simple germs at ambient dimension d."""
    if dim < 2:
        raise click.UsageError("--d must be at least 2")
    report = ade_table(dim, kmax, n_max, source)
    if fmt == "json":
        text = report.to_json() + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["germ1", "germ2", "relation", "n", "channel", "value1", "value2"])
        for e in report.entries:
            c = e.certificate
            if c is not None and c.separated:
                w.writerow([e.germ1, e.germ2, e.relation, c.n, c.channel, str(c.value1), str(c.value2)])
            else:
                w.writerow([e.germ1, e.germ2, e.relation, "", "", "", ""])
        text = buf.getvalue()
    else:
        text = report.to_text()
    _emit(text, out)
    if not report.ok:
        sys.exit(1)


@main.command()
@click.argument("instances", nargs=-1, required=True)
@click.option("--N", "n_max", type=int, default=5, show_default=True)
@click.option("--kmax", type=int, default=8, show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def nonsimple(instances: tuple[str, ...], n_max: int, kmax: int, fmt: str, out: str | None) -> None:
    """Separate J-family instances from every simple corank-2 class."""
    germs = [_parse(expr) for expr in instances]
    for g in germs:
        if g.family != "JKI":
            raise click.UsageError(f"{g.render()!r} is not a J-family instance")
    report = nonsimple_report(germs, n_max, kmax)
    if fmt == "json":
        text = report.to_json() + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["instance", "versus", "verdict"])
        for e in report.entries:
            if e.skipped:
                w.writerow([e.instance, "", f"skipped: {e.reason}"])
                continue
            for s in e.separations:
                w.writerow([e.instance, s.germ2, s.verdict])
        text = buf.getvalue()
    else:
        text = report.to_text()
    _emit(text, out)
    if not report.ok:
        sys.exit(1)


@main.command()
@click.option("--suite", type=click.Choice(["paper"]), default="paper", show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def verify(suite: str, fmt: str, out: str | None) -> None:
    """Run the verification suite: grids, frozen values, adjudications."""
    report = verify_paper_suite()
    if fmt == "json":
        text = report.to_json() + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["section", "status", "line"])
        for s in report.sections:
            for line in s.lines:
                w.writerow([s.name, s.status, line])
        text = buf.getvalue()
    else:
        text = report.to_text()
    _emit(text, out)
    if not report.ok:
        sys.exit(1)


@main.command()
@click.option("--max", "top", type=int, default=4, show_default=True, help="Largest p and q.")
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def catalog(top: int, fmt: str, out: str | None) -> None:
    """Virtual Poincaré polynomials of the diagonal quadric sets."""
    rows = []
    for p in range(top + 1):
        for q in range(top + 1):
            sig = (p, q)
            rows.append(
                {
                    "p": p,
                    "q": q,
                    "beta_Y": str(beta_Y(sig)),
                    "beta_Y_star": str(beta_Y_star(sig)),
                    "fiber_plus": str(beta_Y_fiber(sig, 1)),
                    "fiber_minus": str(beta_Y_fiber(sig, -1)),
                    "complement": str(beta_Y_compl(sig)),
                }
            )
    if fmt == "json":
        text = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["p", "q", "beta_Y", "beta_Y_star", "fiber_plus", "fiber_minus", "complement"])
        for r in rows:
            w.writerow([r["p"], r["q"], r["beta_Y"], r["beta_Y_star"], r["fiber_plus"], r["fiber_minus"], r["complement"]])
        text = buf.getvalue()
    else:
        cols = ["p", "q", "beta_Y", "beta_Y_star", "fiber_plus", "fiber_minus", "complement"]
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
        lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
        for r in rows:
            lines.append("  ".join(str(r[c]).ljust(widths[c]) for c in cols))
        text = "\n".join(lines) + "\n"
    _emit(text, out)


if __name__ == "__main__":
    main()
