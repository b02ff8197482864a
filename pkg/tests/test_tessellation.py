import math
import sys
from pathlib import Path

import numpy as np
import pytest


def _setup_paths():
    repo = Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(repo))
    sys.path.insert(0, str(repo / "src"))
    return repo


_setup_paths()

from eigentope.algebra.symbols import f_to_e  # noqa: E402
from eigentope.core.errors import NoRealSolution, SingularTransform, SymbolError  # noqa: E402
from eigentope.groups.generators4 import apply4  # noqa: E402
from eigentope.tessellation.honeycomb import (  # noqa: E402
    honeycomb3_residual,
    load_literature,
    mu5,
    mu_from_rho,
    solve_honeycomb3,
    star_transform,
    stats_report,
)


@pytest.mark.parametrize("f", [(4, 3, 3, 4), (3, 4, 3, 3), (3, 3, 4, 3)])
def test_mu5_is_one_for_euclidean_honeycombs(f):
    assert mu5(f_to_e(f)) == pytest.approx(1.0, abs=1e-12)


def test_mu5_off_one_for_spherical_polytope():
    assert abs(mu5(f_to_e((3, 3, 3, 3))) - 1.0) > 1e-3


def test_mu5_singular():
    with pytest.raises(SingularTransform) as info:
        mu5((0.3, 0.3, 0.5, 0.5))
    assert info.value.factor == "1-eta-nu"


def test_mu_from_rho():
    assert mu_from_rho((1.0, 0.8, 0.5, 0.3, 0.1)) == pytest.approx(1.25)
    with pytest.raises(SingularTransform):
        mu_from_rho((1.0, 0.0, 0.5, 0.3, 0.1))


@pytest.mark.parametrize(
    "cell, star",
    [((4, 3, 3), (3, 3, 4)), ((3, 4, 3), (4, 3, 3))],
)
def test_star_of_tessellation(cell, star):
    result = star_transform(f_to_e(cell))
    assert tuple(result.star) == pytest.approx(tuple(f_to_e(star)), abs=1e-12)
    assert result.mu_residual < 1e-12


def test_star_inverts_vertex_reflection():
    rng = np.random.default_rng(11)
    for e in rng.uniform(0.05, 0.95, size=(100, 3)):
        if abs(1.0 - e[1] - e[2]) < 1e-2:
            continue
        try:
            image = apply4("A", e)
            back = star_transform(image).star
        except SingularTransform:
            continue
        assert np.max(np.abs(np.asarray(back) - e)) < 1e-9


def test_star_singular():
    with pytest.raises(SingularTransform):
        star_transform((0.5, 0.5, 0.3))


def test_cubic_honeycomb_residual():
    assert honeycomb3_residual(f_to_e((4, 3, 4))) == pytest.approx(0.0, abs=1e-12)
    assert honeycomb3_residual(f_to_e((4, 3)), U=4) == pytest.approx(0.0, abs=1e-12)
    assert honeycomb3_residual(f_to_e((3, 3, 3))) != pytest.approx(0.0)


def test_honeycomb3_residual_needs_three_components():
    with pytest.raises(SymbolError):
        honeycomb3_residual((0.5, 0.25))


@pytest.mark.parametrize("i, U, m", [(3, 3, 5.10430), (3, 4, 4.0), (4, 4, 2.0)])
def test_solve_honeycomb3(i, U, m):
    assert solve_honeycomb3(i, U) == pytest.approx(m, abs=1e-4)


def test_solve_honeycomb3_edge_cases():
    assert math.isinf(solve_honeycomb3(2, 3))
    with pytest.raises(NoRealSolution):
        solve_honeycomb3(6, 6)


def test_literature_table():
    df = load_literature()
    assert list(df.columns) == ["source", "model", "y", "x", "n", "m"]
    assert "Meijering" in set(df["source"])


def test_stats_report_matches_aggregate_models():
    report = stats_report((2.0 / 3.0, 0.25))
    assert report["stats"]["y"] == pytest.approx(22.79, abs=0.01)
    assert report["covering"]["vertex"] == pytest.approx(report["stats"]["n"])
    verdict = {c["source"]: c["match"] for c in report["comparisons"]}
    assert verdict["Meijering"] and verdict["Coxeter"]
    assert verdict["Bernal"] and verdict["Smith"]
    assert not verdict["Gilbert"]


def test_stats_report_partial_rows_leave_gaps():
    report = stats_report((2.0 / 3.0, 0.25))
    bernal = next(c for c in report["comparisons"] if c["source"] == "Bernal")
    assert bernal["rel_y"] is None
    assert bernal["rel_n"] == pytest.approx(13.397 / 13.3 - 1, abs=1e-3)


def test_stats_report_needs_polyhedron():
    with pytest.raises(SymbolError):
        stats_report((0.5, 0.25, 0.25))
