"""Command line: tables, transition matrices, one-column polynomials and verification suites."""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from . import checks, conjecture
from .exactalg import SubstitutionError
from .koornwinder import (
    KoornwinderParams,
    P_one_column_fourfold,
    P_one_column_twofold,
    P_one_column_via_C,
    P_one_column_via_E,
    hall_littlewood_P,
    kostka_expansion,
    oracle_P,
    schur_one_column,
)
from .symfunc import Partition
from .transition import build_matrices, kostka, max_size, named_spec

FORMATS = click.Choice(["pretty", "json", "csv"])


def _parse_params(text: str | None) -> KoornwinderParams | None:
    if text is None:
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 6:
        raise click.BadParameter("expected six rationals a,b,c,d,q,t", param_hint="--params")
    try:
        return KoornwinderParams(*(Fraction(p) for p in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(str(exc), param_hint="--params") from exc


def _spec(name: str):
    try:
        return named_spec(name)
    except (ValueError, SyntaxError) as exc:
        raise click.BadParameter(str(exc), param_hint="--spec") from exc


def _check_size(size: int):
    if size < 1 or size > max_size():
        raise click.BadParameter(f"size must be between 1 and {max_size()} (MCK_MAX_SIZE)", param_hint="--size")


def _emit_table(doc: dict, rows: list, fmt: str, numeric: bool):
    if fmt == "json":
        click.echo(json.dumps(doc, indent=2))
    elif fmt == "csv":
        if not numeric:
            raise click.UsageError("csv output is only available for integer tables")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        click.echo(buf.getvalue(), nl=False)
    else:
        for row in rows:
            click.echo("  ".join(str(v) for v in row))


@click.group()
def main():
    """Exact one-column Koornwinder and Macdonald computations."""


@main.command()
@click.argument("kind", type=click.Choice(["catalan", "pascal", "kostka-c", "kostka-d"]))
@click.option("--size", default=4, show_default=True, help="Number of rows.")
@click.option("--width", default=5, show_default=True, help="Entries per row.")
@click.option("--format", "fmt", type=FORMATS, default="pretty", show_default=True)
def table(kind, size, width, fmt):
    """Row m lists the entries at columns m, m+2, m+4, ..."""
    _check_size(size)
    if width < 1 or size + 2 * width > 2 * max_size() + 2:
        raise click.BadParameter("width out of range", param_hint="--width")
    rows, entries = [], []
    if kind in ("catalan", "pascal"):
        spec = _spec("schur-c" if kind == "catalan" else "schur-d")
        matrix = build_matrices("C", size + 2 * (width - 1), spec)
        for m in range(size):
            row = [matrix[(m, m + 2 * j)].constant_value() for j in range(width)]
            rows.append([int(v) for v in row])
        spec_name, numeric = spec.describe(), True
    else:
        family = "C" if kind == "kostka-c" else "D"
        for m in range(size):
            n = m + 2 * width
            rows.append([kostka(family, n, n - m, j).text() for j in range(width)])
        spec_name, numeric = "q=0", False
    for m, row in enumerate(rows):
        entries += [{"row": m, "col": m + 2 * j, "value": str(v)} for j, v in enumerate(row)]
    doc = {"kind": kind, "size": size, "orientation": "upper-even", "spec": spec_name, "entries": entries}
    _emit_table(doc, rows, fmt, numeric)


@main.command()
@click.argument("kind", type=click.Choice(["C", "B", "Btilde"]))
@click.option("--size", default=6, show_default=True)
@click.option("--spec", "spec_name", default="generic", show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="pretty", show_default=True)
def matrix(kind, size, spec_name, fmt):
    """Transition matrix truncated to size rows (entries as canonical strings)."""
    _check_size(size)
    spec = _spec(spec_name)
    try:
        mat = build_matrices(kind, size, spec)
    except SubstitutionError as exc:
        raise click.ClickException(f"spec {spec_name}: {exc}") from exc
    if fmt == "json":
        click.echo(mat.to_json())
    elif fmt == "csv":
        try:
            click.echo(mat.to_csv(), nl=False)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    else:
        for (r, k), v in sorted(mat.entries.items()):
            click.echo(f"[{r},{k}] {v.text()}")


ROUTES = ["fourfold", "twofold", "via-E", "via-C", "oracle", "hall-littlewood", "schur", "kostka"]


@main.command()
@click.option("--route", type=click.Choice(ROUTES), default="via-C", show_default=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--spec", "spec_name", default="generic", show_default=True)
@click.option("--params", default=None, help="a,b,c,d,q,t as rationals p/q; omitted means symbolic.")
@click.option("--family", type=click.Choice(["C", "D"]), default="C", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["pretty", "json"]), default="pretty", show_default=True)
def poly(route, n, r, spec_name, params, family, fmt):
    """One-column polynomial P_(1^r) in n variables, expanded in monomial symmetric functions."""
    if not 0 <= r <= n or n > max_size():
        raise click.BadParameter(f"need 0 <= r <= n <= {max_size()}")
    point = _parse_params(params)
    try:
        if route in ("via-E", "via-C"):
            fn = P_one_column_via_E if route == "via-E" else P_one_column_via_C
            result = fn(n, r, _spec(spec_name))
        elif route in ("fourfold", "twofold", "oracle"):
            chosen = point or KoornwinderParams.symbolic()
            if route == "twofold":
                chosen = KoornwinderParams(chosen.a, -chosen.a, chosen.c, -chosen.c, chosen.q, chosen.t)
            if route == "fourfold":
                result = P_one_column_fourfold(n, r, chosen)
            elif route == "twofold":
                result = P_one_column_twofold(n, r, chosen)
            else:
                if point is None:
                    raise click.UsageError("the oracle route needs --params")
                result = oracle_P(Partition.column(r), n, chosen)
        elif route == "hall-littlewood":
            result = hall_littlewood_P(family, n, r)
        elif route == "schur":
            result = schur_one_column(family, n, r)
        else:
            result = kostka_expansion(family, n, r)
    except (ZeroDivisionError, ArithmeticError) as exc:
        raise click.ClickException(f"degenerate parameters: {exc}") from exc
    text = result.text()
    if fmt == "json":
        terms = [{"partition": str(lam), "coeff": _text(result.coeffs[lam])} for lam in result.support()]
        click.echo(json.dumps({"route": route, "n": n, "r": r, "spec": spec_name, "polynomial": text, "terms": terms}, indent=2))
    else:
        click.echo(text)


def _text(c) -> str:
    return c.text() if hasattr(c, "text") else str(c)


def _run_suite(name: str, size, n, trials, seed, window, order, workers):
    if name == "inverse":
        return checks.check_inverse(size or 12) + checks.check_bressoud_krattenthaler(min(size or 8, 8), max(trials, 5), seed)
    if name == "recursion":
        return checks.check_recursion(size or 12)
    if name == "fourterm":
        return checks.check_fourterm(size or 8)
    if name == "sears":
        return checks.check_sears(size or 8)
    if name == "paths":
        return checks.check_paths(size or 6, (size or 6) + 1)
    if name == "oracle":
        return checks.check_oracle(tuple(range(1, n + 1)) if n else (1, 2, 3), trials, seed)
    if name == "interp":
        return checks.check_interp(n or 3, max(1, trials // 2), seed)
    if name == "kostka":
        return checks.check_kostka(size or 12)
    if name == "conjecture":
        return conjecture.run_conjecture_suite(
            points=max(trials, 3) if trials else 3, seed=seed, slack=window, workers=workers, folded_order=order
        )
    raise click.BadParameter(f"unknown suite {name}")


def _line(item) -> tuple:
    if isinstance(item, conjecture.ConjectureReport):
        lam = ",".join(str(x) for x in item.lam) or "-"
        label = f"{item.conjecture} lambda=({lam}) window={item.window}"
        return item.verdict, label, item.detail
    return ("PASS" if item.passed else "FAIL"), item.name, item.detail


@main.command()
@click.argument("suite", type=click.Choice(list(checks.SUITES) + ["all"]))
@click.option("--size", type=int, default=None, help="Matrix size or index bound (suite default if omitted).")
@click.option("--n", "n", type=int, default=None)
@click.option("--trials", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--window", type=int, default=2, show_default=True, help="Conjecture window margin past the support.")
@click.option("--order", type=int, default=None, help="Truncation order of the folded checks.")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["pretty", "json"]), default="pretty", show_default=True)
def verify(suite, size, n, trials, seed, window, order, workers, fmt):
    """Run a verification suite; exit status 1 iff some check fails."""
    names = list(checks.SUITES) if suite == "all" else [suite]
    lines = []
    for name in names:
        try:
            items = _run_suite(name, size, n, trials, seed, window, order, workers)
        except ValueError as exc:
            raise click.BadParameter(str(exc)) from exc
        lines += [(name,) + _line(item) for item in items]
    failed = [x for x in lines if x[1] == "FAIL"]
    unsure = [x for x in lines if x[1] == conjecture.INCONCLUSIVE]
    if fmt == "json":
        doc = [{"suite": s, "verdict": v, "check": label, "detail": d} for s, v, label, d in lines]
        if any(s == "conjecture" for s in names):
            doc = {"header": conjecture.PARAMETER_NOTE, "results": doc}
        click.echo(json.dumps(doc, indent=2))
    else:
        if "conjecture" in names:
            click.echo(f"# {conjecture.PARAMETER_NOTE}")
        for s, v, label, d in lines:
            click.echo(f"{v:<12} {s:<10} {label}" + (f"  ({d})" if d else ""))
        click.echo(f"{len(lines) - len(failed) - len(unsure)} passed, {len(failed)} failed, {len(unsure)} inconclusive")
    if unsure:
        click.echo("warning: inconclusive results; rerun with a larger --window or --order", err=True)
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
