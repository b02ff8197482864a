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
from eigentope.core.errors import SingularTransform, SymbolError  # noqa: E402
from eigentope.core.models import Context  # noqa: E402
from eigentope.groups.generators3 import (  # noqa: E402
    EIGENSPACES3,
    PHI2,
    apply3,
    dual3,
    eigenspace3,
    reflect_vertex_f,
)
from eigentope.groups.words import apply_word, period  # noqa: E402


def test_vertex_reflection_octahedron_to_cube():
    assert tuple(apply3("A", f_to_e((3, 4)))) == pytest.approx(tuple(f_to_e((4, 3))))


def test_vertex_reflection_of_tetrahedron():
    assert tuple(apply3("A", f_to_e((3, 3)))) == pytest.approx((2.0 / 3.0, 0.25))


def test_vertex_reflection_in_f_form():
    assert tuple(reflect_vertex_f((3, 4))) == pytest.approx((4.0, 3.0))


@pytest.mark.parametrize("letter, order", [("A", 5), ("B", 2), ("C", 3), ("D", 2)])
def test_generator_periods(letter, order):
    assert period(letter, Context.E3) == order


def test_inverse_letter_undoes_generator():
    e = (0.3, 0.2)
    assert tuple(apply_word("Aa", e, Context.E3)) == pytest.approx(e)
    assert tuple(apply_word("cC", e, Context.E3)) == pytest.approx(e)


@pytest.mark.parametrize("e", [(0.3, 0.2), (0.25, 0.5), (0.6, 0.1)])
def test_ad_is_dual(e):
    assert tuple(apply_word("AD", e, Context.E3)) == pytest.approx(tuple(dual3(e)))


@pytest.mark.parametrize("letter", sorted(EIGENSPACES3))
def test_eigenspace_samples_are_fixed(letter):
    space = eigenspace3(letter)
    for point in space.samples():
        assert np.allclose(apply3(letter, point).values, point, atol=1e-12)
        if space.constraint is not None:
            assert space.constraint(point) == pytest.approx(0.0, abs=1e-12)


def test_golden_fixed_point_of_vertex_reflection():
    assert tuple(apply3("A", (PHI2, PHI2))) == pytest.approx((PHI2, PHI2))


def test_unknown_letter_and_dimension():
    with pytest.raises(SymbolError):
        apply3("E", (0.3, 0.3))
    with pytest.raises(SymbolError):
        apply3("A", (0.3, 0.3, 0.3))
    with pytest.raises(SymbolError):
        eigenspace3("Q")


def test_singular_vertex_reflection_names_factor():
    with pytest.raises(SingularTransform) as info:
        apply3("A", (0.3, 1.0))
    assert info.value.factor == "1-delta"
    assert info.value.letter == "A"
