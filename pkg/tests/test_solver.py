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

from eigentope.core.config import Config  # noqa: E402
from eigentope.core.models import Context  # noqa: E402
from eigentope.eigen.solver import (  # noqa: E402
    _dedupe,
    find_fixed_points,
    grid_oracle,
    oracle_misses,
    refine_fixed_point,
    seed_grid,
)
from eigentope.groups.generators3 import PHI2  # noqa: E402

FAST = Config().with_overrides(grid_step=0.1)


def _isolated(word, context):
    return [r for r in find_fixed_points(word, FAST, context) if r.isolated]


def _contains(roots, point, tol=1e-8):
    return any(np.max(np.abs(np.asarray(r.evec) - point)) < tol for r in roots)


@pytest.mark.parametrize(
    "word, context, expected",
    [
        ("A", Context.E3, [(PHI2, PHI2)]),
        ("C", Context.E3, [(1 / 3, 1 / 3)]),
        ("A", Context.E4, [(1 / 3, 1 / 3, 1 / 3), (1.0, 1.0, 1.0)]),
        ("D", Context.E4, [(0.25, 0.25, 0.5)]),
        ("E", Context.E4, [(0.0, 0.5, 0.5), (1.5, 0.5, 0.5)]),
    ],
)
def test_generator_eigenvectors(word, context, expected):
    roots = _isolated(word, context)
    assert len(roots) == len(expected)
    for point in expected:
        assert _contains(roots, point)
    assert all(r.residual < 1e-10 for r in roots)


def test_roots_sorted_and_deduplicated():
    roots = find_fixed_points("A", FAST, Context.E4)
    evecs = [r.evec for r in roots]
    assert evecs == sorted(evecs)
    assert len(evecs) == len({tuple(round(v, 6) for v in e) for e in evecs})


def test_fixed_curve_reported_as_not_isolated():
    roots = find_fixed_points("B", FAST, Context.E3)
    assert roots
    assert not any(r.isolated for r in roots)
    for r in roots:
        eps, dlt = r.evec
        assert dlt == pytest.approx(1 - 2 * eps, abs=1e-8)


def test_word_eigenvector_of_composite():
    roots = _isolated("CDB", Context.E3)
    assert _contains(roots, (0.25, 0.25))


@pytest.mark.parametrize(
    "word, context, step",
    [("C", Context.E3, 0.01), ("A", Context.E3, 0.01), ("D", Context.E4, 0.05)],
)
def test_grid_oracle_finds_nothing_new(word, context, step):
    roots = find_fixed_points(word, FAST, context)
    minima = grid_oracle(word, FAST, context, step=step)
    assert len(oracle_misses(roots, minima, step)) == 0


def test_oracle_misses_without_roots():
    minima = np.array([[0.1, 0.2]])
    assert len(oracle_misses([], minima, 0.01)) == 1


def test_refine_from_rounded_seed():
    result = refine_fixed_point("A", (0.382, 0.382), FAST, Context.E3)
    assert result.converged
    assert result.isolated
    assert result.evec == pytest.approx((PHI2, PHI2), abs=1e-10)


def test_refine_reports_failure_without_raising():
    result = refine_fixed_point("E", (5.0, 5.0, 5.0), FAST.with_overrides(newton_max_iter=2))
    assert not result.converged
    assert result.evec == (5.0, 5.0, 5.0)


def test_seed_grid_covers_box():
    grid = seed_grid(2, (0.0, 1.0), 0.5)
    assert grid.shape == (9, 2)
    assert grid.min() == 0.0 and grid.max() == 1.0


def test_dedupe_collapses_many_copies_of_one_root():
    rng = np.random.default_rng(3)
    root = np.array([0.25, 0.25, 0.5])
    copies = root + rng.uniform(-1e-9, 1e-9, size=(200_000, 3))
    far = np.array([[1.0, 1.0, 1.0]])
    points = np.vstack([copies, far])
    reps = _dedupe(points, 1e-6)
    assert len(reps) == 2
    assert reps[-1] == len(points) - 1


def test_dedupe_chains_neighbouring_cells():
    points = np.array([[0.0, 0.0], [0.7e-6, 0.0], [1.4e-6, 0.0], [5.0e-6, 0.0]])
    assert list(_dedupe(points, 1e-6)) == [0, 3]


def test_default_grid_finds_sixteen_cell_eigenvector():
    roots = [r for r in find_fixed_points("D", Config(), Context.E4) if r.isolated]
    assert _contains(roots, (0.25, 0.25, 0.5))
    assert all(r.residual < 1e-10 for r in roots)


def test_roots_on_singular_set_are_rejected():
    roots = find_fixed_points("E", FAST, Context.E4)
    assert not any(abs(1.0 - r.evec[0]) < 1e-3 for r in roots)
