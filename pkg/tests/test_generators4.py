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

from eigentope.algebra.metric import is_natural_form  # noqa: E402
from eigentope.algebra.symbols import f_to_e  # noqa: E402
from eigentope.core.errors import EigentopeError, SingularTransform, SymbolError  # noqa: E402
from eigentope.core.models import Context  # noqa: E402
from eigentope.eigen.spin import lambda_sixfold_A  # noqa: E402
from eigentope.groups.generators4 import (  # noqa: E402
    EIGENSPACES4,
    GENERATORS4,
    apply4,
    dual4,
    eigenspace4,
    gram_image,
    inverse4,
    matrix4,
)
from eigentope.groups.words import apply_word, period, word_matrix  # noqa: E402

LETTERS = sorted(GENERATORS4)


def _points(n=100, seed=2024):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.05, 0.95, size=(n, 3))


@pytest.mark.parametrize("letter", LETTERS)
def test_gram_image_matches_e_basis_map(letter):
    checked = 0
    for e in _points():
        try:
            expected = apply4(letter, e)
            image, derived = gram_image(letter, e)
        except EigentopeError:
            continue
        expected = np.asarray(expected)
        scale = max(1.0, float(np.max(np.abs(expected))))
        assert is_natural_form(image, tol=1e-8)
        assert np.max(np.abs(np.asarray(derived) - expected)) < 1e-8 * scale
        checked += 1
    assert checked >= 90


@pytest.mark.parametrize("letter, order", [("A", 6), ("B", 2), ("C", 3), ("D", 4), ("H", 2)])
def test_generator_periods(letter, order):
    assert period(letter, Context.E4) == order


@pytest.mark.parametrize("letter", ["E", "F", "G"])
def test_analytic_inverses(letter):
    for e in _points(10, seed=5):
        image = apply4(letter, e)
        assert np.allclose(inverse4(letter, image).values, e, atol=1e-10)


def test_inverse_only_for_infinite_order_letters():
    with pytest.raises(SymbolError):
        inverse4("A", (0.3, 0.3, 0.3))


def test_tesseract_to_sixteen_cell():
    assert tuple(apply4("A", f_to_e((3, 3, 4)))) == pytest.approx(tuple(f_to_e((4, 3, 3))))


def test_ah_is_dual():
    e = (0.3, 0.2, 0.4)
    assert tuple(apply_word("AH", e, Context.E4)) == pytest.approx(tuple(dual4(e)))


@pytest.mark.parametrize("letter", LETTERS)
def test_eigenspace_samples_are_fixed(letter):
    space = eigenspace4(letter)
    for point in space.samples():
        try:
            image = apply4(letter, point)
        except SingularTransform:
            continue
        assert np.allclose(image.values, point, atol=1e-10)
        if space.constraint is not None:
            assert space.constraint(point) == pytest.approx(0.0, abs=1e-10)


def test_eigenspace_descriptors_cover_all_letters():
    assert sorted(EIGENSPACES4) == LETTERS
    assert eigenspace4("d").points == ((0.25, 0.25, 0.5),)


def test_sixfold_vertex_reflection_scales_frame():
    e = (1 / 3, 1 / 3, 1 / 3)
    x = word_matrix("AAAAAA", e)
    assert np.max(np.abs(x + 27.0 * np.eye(4))) < 1e-7
    assert lambda_sixfold_A(e) == pytest.approx(-27.0)


def test_sixfold_scalar_is_one_at_unit_vector():
    assert lambda_sixfold_A((1.0, 1.0, 1.0)) == pytest.approx(1.0)


def test_inverted_matrix_is_true_inverse():
    e = (0.3, 0.2, 0.4)
    forward = matrix4("E", apply4("e", e))
    assert np.allclose(matrix4("e", e) @ forward, np.eye(4), atol=1e-10)


def test_singular_map_names_factor():
    with pytest.raises(SingularTransform) as info:
        apply4("A", (0.3, 0.5, 0.5))
    assert info.value.factor == "1-delta-eta"


def test_singular_word_reports_step():
    with pytest.raises(SingularTransform) as info:
        apply_word("BA", (0.3, 0.5, 0.5), Context.E4)
    assert info.value.step == 2


def test_wrong_dimension():
    with pytest.raises(SymbolError):
        apply4("A", (0.3, 0.3))


def test_edge_reflection_frame_reproduces_e_basis():
    e = (0.3, 0.2, 0.35)
    image, derived = gram_image("B", e)
    assert is_natural_form(image, tol=1e-10)
    assert tuple(derived) == pytest.approx((1 - 0.3 - 0.2 / 0.65, 0.2, 0.35), abs=1e-10)


def test_edge_reflection_frame_is_involution():
    checked = 0
    for e in _points(50, seed=11):
        try:
            image = apply4("B", e)
            back = matrix4("B", image) @ matrix4("B", e)
        except EigentopeError:
            continue
        assert np.allclose(back, np.eye(4), atol=1e-8)
        checked += 1
    assert checked >= 40


def test_descriptor_kinds_use_known_vocabulary():
    assert {s.kind for s in EIGENSPACES4.values()} <= {"point", "curve", "surface"}
    surface = eigenspace4("B")
    assert surface.kind == "surface"
    assert surface.constraint((0.2, 0.6 * 0.5, 0.5)) == pytest.approx(0.0, abs=1e-12)
