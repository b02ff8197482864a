"""
Command-line interface for eigentope.

Usage:
    eigentope convert f:4,3,3                     # f-, E-, H- and rho-forms of a symbol
    eigentope transform A e:0.25,0.5 --trace      # orbit of a word
    eigentope matrix D e:0.25,0.25,0.5            # frame matrix of a 4-D word
    eigentope order AEH                           # period of a word
    eigentope relations rrp3                      # verify a relation suite
    eigentope eigen C --context e3                # fixed points of a word
    eigentope spin AGA --evec 0.5,0.281,0.5       # spin of an eigentope
    eigentope scan --max-len 3                    # word scan, appended to the catalog
    eigentope tessellate e:phi2,0.25              # honeycomb statistics / star transform
    eigentope tables --format csv                 # recompute the printed tables

Exit status: 0 on success, 1 on a computational failure, 2 on a usage error.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click
import numpy as np

from eigentope.algebra.metric import classify_signature
from eigentope.algebra.symbols import (
    e_to_f,
    e_to_h,
    f_to_e,
    h_to_rho,
    is_real_symbol,
    rho_to_e,
    rho_to_e_general,
)
from eigentope.core.config import LOG_LEVELS, OUTPUT_FORMATS, load_config
from eigentope.core.errors import ConfigError, EigentopeError, NoFiniteQ, ParseError, SymbolError
from eigentope.core.models import Context, ESymbol, FSymbol
from eigentope.core.orchestrator import EigentopeEngine
from eigentope.eigen.solver import find_fixed_points
from eigentope.groups.words import apply_word, as_word, gram_residual, orbit, word_matrix
from eigentope.reporting.reporting_service import ReportingService, jsonable
from eigentope.tessellation.honeycomb import (
    honeycomb3_residual,
    mu5,
    solve_honeycomb3,
    star_transform,
    stats_report,
)
from eigentope.utils.io_utils import NAMED_CONSTANTS, parse_symbol, parse_vector
from eigentope.utils.logger import setup_logger

__all__ = ["cli"]

CONSTANTS_HELP = "Named constants: " + ", ".join(NAMED_CONSTANTS) + "; rationals as a/b."
VERDICT_TAGS = {"passed": "PASS", "failed": "FAIL", "known-discrepancy": "KNOWN"}


def handle_errors(fn):
    """Map expected failures to exit codes without a traceback."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ParseError, ConfigError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(2)
        except EigentopeError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(1)

    return wrapper


def common_options(fn):
    options = [
        click.option(
            "--format", "fmt", type=click.Choice(OUTPUT_FORMATS), default=None, help="Output format"
        ),
        click.option("--seed", type=int, default=None, help="Random seed for sample points"),
        click.option("--tolerance", type=float, default=None, help="Relation residual tolerance"),
        click.option("--catalog", type=click.Path(), default=None, help="Eigentope catalog file"),
        click.option("--log-level", type=click.Choice(LOG_LEVELS), default=None),
        click.option("--log-dir", type=click.Path(), default=None, help="Also log to this folder"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _engine(fmt, seed, tolerance, catalog, log_level, log_dir, **extra) -> EigentopeEngine:
    config = load_config(
        output_format=fmt,
        seed=seed,
        tolerance=tolerance,
        catalog_path=catalog,
        log_level=log_level,
        log_dir=log_dir,
        **extra,
    )
    logger = setup_logger(config.log_level, config.log_dir)
    return EigentopeEngine(config, logger)


def _emit(text: str):
    click.echo(text.rstrip("\n"))


def _emit_rows(engine: EigentopeEngine, rows, text_lines=None):
    fmt = engine.config.output_format
    if fmt == "text" and text_lines is not None:
        _emit("\n".join(text_lines))
    else:
        _emit(ReportingService(rows).render(fmt))


def _esymbol(text: str) -> ESymbol:
    kind, values = parse_symbol(text, default_kind="e")
    if kind != "e":
        raise ParseError(f"expected an E-symbol (e:...), got a {kind}-symbol", position=0)
    return ESymbol(values)


def _context_for(e: ESymbol, context: str | None) -> Context:
    if context:
        return Context.parse(context)
    return Context.E3 if len(e) == 2 else Context.E4


def _fsym(e) -> FSymbol | None:
    return e_to_f(e) if is_real_symbol(e) else None


def _render(obj) -> str:
    return "-" if obj is None else obj.render()


@click.group(epilog=CONSTANTS_HELP)
@click.version_option(version="0.1.0", prog_name="eigentope")
def cli():
    """
    Generalized regular polytopes: symbols, reflections, eigentopes.

    Symbols are comma-separated numbers with a kind prefix (f:, e:, h:, rho:).
    """
    pass


# -- symbols ------------------------------------------------------------------


@cli.command()
@click.argument("symbol")
@common_options
@handle_errors
def convert(symbol, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Convert a symbol between f-, E-, H- and rho-forms."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir)
    kind, values = parse_symbol(symbol)
    if kind == "f":
        e = f_to_e(FSymbol(values))
    elif kind == "e":
        e = ESymbol(values)
    elif kind == "h":
        e = rho_to_e(h_to_rho(values))
    else:
        e = rho_to_e_general(values)

    forms = {"f": _fsym(e), "e": e, "h": None, "rho": None}
    signature = None
    if len(e) == 3:
        try:
            h = e_to_h(e)
        except SymbolError as err:
            engine.logger.warning(f"[Convert] no H-symbol: {err}")
        else:
            forms["h"], forms["rho"] = h, h_to_rho(h)
            signature = classify_signature(h)

    row = {k: None if v is None else list(v) for k, v in forms.items()}
    row["signature"] = None if signature is None else signature.pattern
    row["label"] = None if signature is None else signature.label.value
    line = " ".join(f"{k}:{_render(v)}" for k, v in forms.items())
    if signature is not None:
        line += f" signature:{signature.pattern} {signature.label.value}"
    _emit_rows(engine, [row], [line])


# -- words --------------------------------------------------------------------


@cli.command()
@click.argument("word")
@click.argument("esymbol")
@click.option("--context", type=click.Choice(["e3", "e4"]), default=None)
@click.option("--trace", is_flag=True, help="Print every intermediate E-symbol")
@common_options
@handle_errors
def transform(word, esymbol, context, trace, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Apply WORD to ESYMBOL (letters applied left to right)."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir)
    e = _esymbol(esymbol)
    w = as_word(word, _context_for(e, context))
    if trace:
        points = orbit(w, e, w.context)
        labels = ["start"] + [g.symbol for g in w]
    else:
        points = [e, apply_word(w, e, w.context)]
        labels = ["start", w.render()]
    rows = [
        {"step": k, "letter": lab, "e": list(p), "f": None if _fsym(p) is None else list(_fsym(p))}
        for k, (lab, p) in enumerate(zip(labels, points))
    ]
    lines = [
        f"{k:>3} {lab:<6} e:{_render(p)} f:{_render(_fsym(p))}"
        for k, (lab, p) in enumerate(zip(labels, points))
    ]
    _emit_rows(engine, rows, lines)


@cli.command()
@click.argument("word")
@click.argument("esymbol")
@common_options
@handle_errors
def matrix(word, esymbol, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Frame matrix of a 4-D WORD at ESYMBOL, its determinant and Gram cross-check."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir)
    e = _esymbol(esymbol)
    w = as_word(word, Context.P4)
    x = word_matrix(w, e)
    det = float(np.linalg.det(x))
    residual = gram_residual(w, e)
    row = {
        "word": w.render(),
        "e": list(e),
        "matrix": x.tolist(),
        "det": det,
        "gram_residual": residual,
    }
    lines = [np.array2string(x, precision=8, suppress_small=True)]
    lines.append(f"det={det:.10g} gram_residual={residual:.3g}")
    _emit_rows(engine, [row], lines)


@cli.command()
@click.argument("word")
@click.option("--context", type=click.Choice(["e3", "e4"]), default="e4")
@click.option("--samples", type=int, default=None, help="Random sample points")
@click.option("--max-q", type=int, default=None, help="Largest period tried")
@common_options
@handle_errors
def order(word, context, samples, max_q, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Least q with WORD^q = identity on random generic points."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir)
    report = engine.order(word, context, samples, max_q)
    row = report.rows[0]
    text = f"{row['word']}: order {row['order'] if row['order'] is not None else 'not found'}"
    _emit_rows(engine, report.rows, [text + f" (singular samples: {row['singular']})"])


@cli.command()
@click.argument("suite", type=click.Choice(["rrp3", "rrp4", "arp4"]))
@click.option("--samples", type=int, default=None, help="Random sample points per relation")
@common_options
@handle_errors
def relations(suite, samples, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Verify every relation of SUITE; exits 1 when any relation fails."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir, samples=samples)
    report = engine.relations(suite)
    lines = [
        f"{VERDICT_TAGS.get(r['verdict'], 'FAIL')} {r['relation']:<24} "
        f"residual={r['max_residual']:.3g} excluded={r['singular']}"
        + (f" error={r['error']}" if r["error"] else "")
        for r in report.rows
    ]
    _emit_rows(engine, report.rows, lines)
    if report.summary().get("failed"):
        sys.exit(1)


# -- eigentopes ---------------------------------------------------------------


@cli.command()
@click.argument("word")
@click.option("--context", type=click.Choice(["e3", "e4"]), default="e4")
@click.option("--oracle", is_flag=True, help="Cross-check with a brute-force residual grid")
@common_options
@handle_errors
def eigen(word, context, oracle, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Fixed points (eigenvectors) of WORD in the search box."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir)
    report = engine.eigen(word, context, oracle)
    lines = []
    for r in report.rows:
        e = ESymbol(tuple(r["evec"]))
        if r.get("oracle_miss"):
            lines.append(f"grid minimum without Newton root near {e.render()}")
        else:
            tag = "" if r["isolated"] else " (on a fixed curve)"
            lines.append(f"{e.render(9)} residual={r['residual']:.2e}{tag}")
    _emit_rows(engine, report.rows, lines or ["no fixed points in the search box"])


@cli.command()
@click.argument("word")
@click.option("--evec", default=None, help="Eigenvector a,b,c (refined from the word otherwise)")
@click.option("--max-q", type=int, default=None, help="Largest q tried")
@click.option("--strict", is_flag=True, help="Reject even q with negative lambda")
@common_options
@handle_errors
def spin(word, evec, max_q, strict, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Spin q, J = (q-1)/2 and lambda_q of WORD at its eigenvector(s)."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir, max_q=max_q)
    if evec is not None:
        seeds = [parse_vector(evec)]
    else:
        roots = find_fixed_points(word, engine.config, Context.P4)
        seeds = [r.evec for r in roots if r.isolated]
        if not seeds:
            raise NoFiniteQ(f"{word} has no isolated eigenvector in the search box")

    rows, lines = [], []
    for e in seeds:
        try:
            rows.extend(engine.spin(word, e, strict=strict).rows)
        except NoFiniteQ as err:
            if evec is not None:
                raise
            engine.logger.debug(f"[Spin] {err}")
    if not rows:
        raise NoFiniteQ(f"no eigenvector of {word} has a finite spin up to q={engine.config.max_q}")
    for r in rows:
        lines.append(
            f"q={r['q']} lambda={r['lambda_q']:.4g} J={r['J']}"
            + (" orientation-reversing" if r["orientation_reversing"] else "")
            + f" mu={r['mu']:.6g} ortho_residual={r['ortho_residual']:.2e}"
            + ("" if evec is not None else f" evec={ESymbol(tuple(r['evec'])).render()}")
        )
    _emit_rows(engine, rows, lines)


@cli.command()
@click.option("--context", type=click.Choice(["e3", "e4"]), default="e4")
@click.option("--max-len", type=int, default=None, help="Longest word scanned")
@click.option("--prune/--no-prune", default=True, help="Skip words equal to shorter ones")
@click.option("--workers", type=int, default=None, help="Parallel worker processes")
@common_options
@handle_errors
def scan(context, max_len, prune, workers, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Scan all words up to --max-len and append the eigentopes to the catalog."""
    engine = _engine(
        fmt, seed, tolerance, catalog, log_level, log_dir, max_len=max_len, workers=workers
    )
    report, summary = engine.scan(context, engine.config.max_len, prune)
    info = summary.as_dict()
    fmt = engine.config.output_format
    if fmt == "json":
        _emit(json.dumps(jsonable({"summary": info, "records": report.rows}), indent=2))
    elif fmt == "csv":
        _emit(report.to_csv())
    else:
        _emit(
            "\n".join(
                [
                    f"words: {info['words_scanned']} scanned of {info['words_enumerated']}",
                    f"eigentope records: {len(report.rows)}",
                    f"observed periods: {info['observed_periods']}",
                    f"observed spins: {info['observed_spins']}",
                    info["claim"],
                ]
            )
        )


# -- tessellation and tables ----------------------------------------------------


@cli.command()
@click.argument("esymbol", required=False)
@click.option("--solve", nargs=2, type=float, default=None, metavar="I U", help="Solve {m,I,U}")
@common_options
@handle_errors
def tessellate(esymbol, solve, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Honeycomb tests: statistics ([e,d]), residual and star ([e,d,h]) or mu ([e,d,h,n])."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir)
    if solve:
        i, u = solve
        m = solve_honeycomb3(i, u)
        e = f_to_e((m, i, u)) if m > 1 else None
        row = {"i": i, "U": u, "m": m, "e": None if e is None else list(e)}
        _emit_rows(engine, [row], [f"m={m:.10g} for {{m,{i:g},{u:g}}}"])
        return
    if esymbol is None:
        raise ParseError("tessellate needs an E-symbol or --solve I U")

    e = _esymbol(esymbol)
    if len(e) == 2:
        report = stats_report(e)
        s = report["stats"]
        lines = [
            f"{{m,i}} = {{{s['m']:.6g},{s['i']:.6g}}}: y={s['y']:.4g} x={s['x']:.4g} n={s['n']:.5g}",
            f"covering factors: vertex={report['covering']['vertex']:.5g} "
            f"face={report['covering']['face']:.5g}",
        ]
        for c in report["comparisons"]:
            lines.append(
                f"  {c['source']:<10} max relative difference {c['max_rel']:.2%}"
                + (" (match)" if c["match"] else "")
            )
        rows = [{**s, **c} for c in report["comparisons"]]
        _emit_rows(engine, rows, lines)
    elif len(e) == 3:
        residual = honeycomb3_residual(e)
        row = {"e": list(e), "honeycomb3_residual": residual}
        lines = [f"honeycomb residual (1-e)(1-h)-d = {residual:.10g}"]
        try:
            star = star_transform(e)
        except EigentopeError as err:
            lines.append(f"star transform: {err}")
        else:
            row.update(star=list(star.star), mu_residual=star.mu_residual)
            lines.append(
                f"star: e:{star.star.render()} f:{_render(_fsym(star.star))} "
                f"mu_residual={star.mu_residual:.2e}"
            )
        _emit_rows(engine, [row], lines)
    elif len(e) == 4:
        mu = mu5(e)
        _emit_rows(engine, [{"e": list(e), "mu": mu}], [f"mu={mu:.12g}"])
    else:
        raise ParseError(f"tessellate expects 2 to 4 E-components, got {len(e)}")


@cli.command()
@click.option("--which", type=click.Choice(["all", "h", "spin", "claims"]), default="all")
@click.option("--output", type=click.Path(), default=None, help="Write CSV/JSON/HTML here")
@common_options
@handle_errors
def tables(which, output, fmt, seed, tolerance, catalog, log_level, log_dir):
    """Recompute the H-symbol tables, the spin table and the published eigentopes."""
    engine = _engine(fmt, seed, tolerance, catalog, log_level, log_dir)
    names = {
        "all": ["h_tables", "spin_table", "eigen_claims"],
        "h": ["h_tables"],
        "spin": ["spin_table"],
        "claims": ["eigen_claims"],
    }[which]
    reports = engine.tables(names)
    fmt = engine.config.output_format
    chunks = []
    for name in names:
        report = reports[name]
        if output:
            out = Path(output)
            report.to_csv(out / f"{name}.csv")
            report.to_json(out / f"{name}.json")
            report.to_html(out / f"{name}.html")
        if fmt == "text":
            chunks.append(f"{report.title}\n{report.to_text()}")
        else:
            chunks.append(report.render(fmt).rstrip("\n"))
    _emit("\n\n".join(chunks))


if __name__ == "__main__":
    cli()
