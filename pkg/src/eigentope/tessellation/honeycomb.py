"""Honeycomb conditions, the 4-to-5 star transform and honeycomb statistics.

A regular polytope tessellates its space when its circumcentre is infinitely
far away. For 3-space this reads (1 - epsilon)(1 - eta) - delta = 0; for
4-space the companion ratio mu of the 5-D E-symbol must equal 1.
"""

from __future__ import annotations

import io
import math
from importlib import resources
from typing import Optional, Sequence

import pandas as pd

from eigentope.algebra.symbols import SINGULAR_EPS, e_to_f, honeycomb_counts
from eigentope.core.errors import NoRealSolution, SingularTransform, SymbolError
from eigentope.core.models import ESymbol, HoneycombStats, RhoVector, StarResult

# literature agreement threshold (largest relative difference over reported fields)
MATCH_TOL = 0.02
STAT_FIELDS = ("y", "x", "n", "m")


def honeycomb3_residual(e: ESymbol | Sequence[float], U: Optional[float] = None) -> float:
    """(1 - epsilon)(1 - eta) - delta; zero for a honeycomb of 3-space.

    A two-component ``e`` is completed with eta = cos^2(pi/U).
    """
    values = list(e)
    if U is not None:
        values = values[:2] + [math.cos(math.pi / U) ** 2]
    if len(values) != 3:
        raise SymbolError(f"3-space honeycomb test needs [epsilon, delta, eta], got {values}")
    eps, dlt, eta = values
    return (1.0 - eps) * (1.0 - eta) - dlt


def solve_honeycomb3(i: float, U: float) -> float:
    """m such that {m, i, U} tiles 3-space: cos(pi/i) = sin(pi/m) sin(pi/U)."""
    s = math.sin(math.pi / U)
    if abs(s) < SINGULAR_EPS:
        raise NoRealSolution(f"honeycomb {{m,{i:g},{U:g}}}: sin(pi/U) vanished")
    ratio = math.cos(math.pi / i) / s
    if abs(ratio) > 1.0 + 1e-12:
        raise NoRealSolution(
            f"honeycomb {{m,{i:g},{U:g}}}: cos(pi/i)/sin(pi/U) = {ratio:.6g} is outside [-1, 1]"
        )
    angle = math.asin(max(-1.0, min(1.0, ratio)))
    return math.inf if abs(angle) < SINGULAR_EPS else math.pi / angle


def mu5(e5: ESymbol | Sequence[float]) -> float:
    """Companion ratio mu = rho0/rho1 of a 5-D E-symbol [epsilon, delta, eta, nu]."""
    eps, dlt, eta, nu = e5
    den = 1.0 - eta - nu
    if abs(den) < SINGULAR_EPS or abs(eps) < SINGULAR_EPS:
        factor = "1-eta-nu" if abs(den) < SINGULAR_EPS else "epsilon"
        raise SingularTransform(
            f"5-D companion ratio mu: factor {factor} vanished", factor=factor
        )
    return (1.0 - dlt * (1.0 - nu) / den) / eps


def mu_from_rho(rho: RhoVector | Sequence[float]) -> float:
    """rho0/rho1 of a 5-D rho-vector; one iff the vertex and edge centres are equidistant
    from the centre, i.e. the centre is infinitely far (a 4-space tessellation)."""
    rho = list(rho)
    if abs(rho[1]) < SINGULAR_EPS:
        raise SingularTransform("5-D companion ratio mu: factor rho1 vanished", factor="rho1")
    return rho[0] / rho[1]


def star_transform(e: ESymbol | Sequence[float]) -> StarResult:
    """Vertex star of a 4-space tessellation by the 4-D cell ``e``.

    (epsilon', delta', eta') = (delta, eta, 1 - eta(1 - epsilon)/(1 - epsilon - delta));
    this undoes the vertex reflection A of E4.
    """
    eps, dlt, eta = e
    den = 1.0 - eps - dlt
    if abs(den) < SINGULAR_EPS:
        raise SingularTransform(
            "star transform: factor 1-epsilon-delta vanished",
            factor="1-epsilon-delta",
        )
    nu = 1.0 - eta * (1.0 - eps) / den
    star = ESymbol((dlt, eta, nu))
    return StarResult(star=star, mu_residual=abs(mu5((eps, dlt, eta, nu)) - 1.0))


def load_literature() -> pd.DataFrame:
    """Published honeycomb statistics, one row per source."""
    text = (
        resources.files("eigentope.tessellation")
        .joinpath("data", "literature.csv")
        .read_text(encoding="utf-8")
    )
    return pd.read_csv(io.StringIO(text))


def stats_report(e: ESymbol | Sequence[float]) -> dict:
    """Counts of the polyhedron ``e`` = [epsilon, delta] against literature averages.

    Relative differences are reported per field; ``match`` is set when the
    largest one stays below 2%.
    """
    values = tuple(e)
    if len(values) != 2:
        raise SymbolError(f"honeycomb statistics need a 3-D E-symbol [epsilon, delta], got {values}")
    m, i = e_to_f(values).entries
    stats: HoneycombStats = honeycomb_counts(m, i)
    ours = stats.as_dict()

    comparisons = []
    for row in load_literature().to_dict(orient="records"):
        diffs = {
            f: (ours[f] - row[f]) / row[f]
            for f in STAT_FIELDS
            if row.get(f) is not None and not pd.isna(row[f])
        }
        worst = max(abs(v) for v in diffs.values())
        comparisons.append(
            {
                "source": row["source"],
                "model": row["model"],
                **{f"rel_{f}": diffs.get(f) for f in STAT_FIELDS},
                "max_rel": worst,
                "match": bool(worst < MATCH_TOL),
            }
        )

    return {
        "esymbol": list(values),
        "stats": ours,
        "covering": {"vertex": stats.n, "face": stats.y},
        "comparisons": comparisons,
    }


__all__ = [
    "honeycomb3_residual",
    "solve_honeycomb3",
    "mu5",
    "mu_from_rho",
    "star_transform",
    "load_literature",
    "stats_report",
]
