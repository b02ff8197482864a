import math
import sys
from pathlib import Path

import pytest


def _setup_paths():
    repo = Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(repo))
    sys.path.insert(0, str(repo / "src"))
    return repo


_setup_paths()

from eigentope.algebra.symbols import (  # noqa: E402
    angle_uncertainty,
    e_to_f,
    e_to_h,
    e_to_rho,
    f_to_e,
    h_to_rho,
    honeycomb_counts,
    is_real_symbol,
    nearest_integer_deviation,
    rho_to_e,
    rho_to_e_general,
)
from eigentope.core.errors import (  # noqa: E402
    DegenerateSymbol,
    ParseError,
    InfiniteHoneycomb,
    NonRealSymbol,
    SymbolError,
)
from eigentope.core.models import ESymbol, FSymbol  # noqa: E402
from eigentope.utils.io_utils import parse_scalar, parse_symbol  # noqa: E402

SQRT5 = math.sqrt(5.0)


def test_f_to_e_integer_polytopes():
    assert tuple(f_to_e((4, 3, 3))) == pytest.approx((0.5, 0.25, 0.25))
    assert tuple(f_to_e((3, 4))) == pytest.approx((0.25, 0.5))
    assert tuple(f_to_e((5, 3))) == pytest.approx(((3 + SQRT5) / 8, 0.25))


def test_f_to_e_infinite_entry_maps_to_one():
    assert tuple(f_to_e((math.inf, 3))) == pytest.approx((1.0, 0.25))


def test_polygon_has_no_esymbol():
    with pytest.raises(SymbolError):
        f_to_e((5,))


def test_fsymbol_rejects_entries_not_above_one():
    with pytest.raises(SymbolError):
        FSymbol((1.0, 3.0))


def test_e_to_f_non_integer_polyhedron():
    m, i = e_to_f((2.0 / 3.0, 0.25))
    assert m == pytest.approx(5.10430, abs=1e-4)
    assert i == pytest.approx(3.0)


def test_e_to_f_one_is_infinite():
    assert math.isinf(e_to_f((1.0, 0.25))[0])


@pytest.mark.parametrize("e", [(1.5, 0.5, 0.5), (0.0, 0.5, 0.5), (-0.1, 0.25)])
def test_e_to_f_non_real(e):
    assert not is_real_symbol(e)
    with pytest.raises(NonRealSymbol):
        e_to_f(e)


@pytest.mark.parametrize(
    "f",
    [(3, 3, 3), (4, 3, 3), (3, 3, 4), (3, 4, 3), (5, 3, 3), (3, 3, 5), (5, 3, 4), (3, 5, 3)],
)
def test_f_e_round_trip_on_tables(f):
    assert tuple(e_to_f(f_to_e(f))) == pytest.approx(f)


def test_e_to_h_cube_family():
    h = e_to_h((0.5, 0.25, 0.25))
    assert (h.alpha, h.beta, h.gamma) == pytest.approx((4.0, 2.0, 4.0 / 3.0))


def test_e_to_h_icositetrachoron():
    h = e_to_h(f_to_e((3, 4, 3)))
    assert tuple(h) == pytest.approx((2.0, 1.5, 4.0 / 3.0))


def test_e_to_h_600_cell_beta():
    h = e_to_h(f_to_e((3, 3, 5)))
    assert h.beta == pytest.approx((9 - 3 * SQRT5) / 2, rel=1e-12)
    assert h.alpha == pytest.approx(4 * (7 - 3 * SQRT5), rel=1e-9)


@pytest.mark.parametrize(
    "e, factor",
    [((0.0, 0.3, 0.3), "epsilon"), ((0.3, 0.0, 0.3), "delta"), ((0.3, 0.3, 1.0), "1-eta")],
)
def test_e_to_h_degenerate(e, factor):
    with pytest.raises(DegenerateSymbol) as info:
        e_to_h(e)
    assert info.value.factor == factor


def test_h_to_rho_and_back():
    rho = h_to_rho((4.0, 2.0, 4.0 / 3.0))
    assert tuple(rho) == pytest.approx((1.0, 0.75, 0.5, 0.25))
    assert tuple(rho_to_e(rho)) == pytest.approx((0.5, 0.25, 0.25))


def test_e_to_rho_scales_with_rho0():
    rho = e_to_rho((0.25, 0.5, 0.25), rho0=2.0)
    assert rho.rho0 == pytest.approx(2.0)
    assert tuple(rho_to_e(rho)) == pytest.approx((0.25, 0.5, 0.25))


def test_rho_to_e_general_cube():
    # vertex, edge-centre and face-centre distances of the unit-half-edge cube
    assert tuple(rho_to_e_general((3.0, 2.0, 1.0))) == pytest.approx((0.5, 0.25))


def test_rho_to_e_general_five_dimensions():
    e = rho_to_e_general((1.0, 0.8, 0.5, 0.3, 0.1))
    assert tuple(e) == pytest.approx((0.6, 0.16, 0.3, 1.0 / 6.0))


def test_rho_to_e_degenerate():
    with pytest.raises(DegenerateSymbol):
        rho_to_e((1.0, 0.5, 1.0, 0.2))


def test_honeycomb_counts_non_integer_polyhedron():
    m, i = e_to_f((2.0 / 3.0, 0.25))
    stats = honeycomb_counts(m, i)
    assert stats.y == pytest.approx(22.79, abs=0.01)
    assert stats.x == pytest.approx(34.19, abs=0.01)
    assert stats.n == pytest.approx(13.397, abs=0.01)
    assert stats.y - stats.x + stats.n == pytest.approx(2.0)


@pytest.mark.parametrize(
    "m, i, expected",
    [(4, 3, (8, 12, 6)), (3, 4, (6, 12, 8)), (3, 3, (4, 6, 4)), (5, 3, (20, 30, 12))],
)
def test_honeycomb_counts_platonic(m, i, expected):
    stats = honeycomb_counts(m, i)
    assert (stats.y, stats.x, stats.n) == pytest.approx(expected)


@pytest.mark.parametrize("m, i", [(4, 4), (6, 3), (5, 4)])
def test_honeycomb_counts_infinite(m, i):
    with pytest.raises(InfiniteHoneycomb):
        honeycomb_counts(m, i)


def test_angle_uncertainty():
    m = 5.104299
    assert nearest_integer_deviation(m) == pytest.approx(0.104299)
    assert angle_uncertainty(m) == pytest.approx(math.pi * 0.104299 / m)
    assert angle_uncertainty(4.0, 0.5) == pytest.approx(math.pi / 8)


def test_esymbol_requires_finite_components():
    with pytest.raises(SymbolError):
        ESymbol((0.5, math.nan))


@pytest.mark.parametrize(
    "token, value",
    [
        ("0.25", 0.25),
        ("1/3", 1 / 3),
        ("phi2", (3 - SQRT5) / 2),
        ("-c5", -(3 + SQRT5) / 8),
        ("inf", math.inf),
    ],
)
def test_parse_scalar(token, value):
    assert parse_scalar(token) == pytest.approx(value)


def test_parse_symbol_kinds():
    assert parse_symbol("f:4,3,3") == ("f", (4.0, 3.0, 3.0))
    kind, values = parse_symbol("e:[c5,1/4]")
    assert kind == "e"
    assert values == pytest.approx(((3 + SQRT5) / 8, 0.25))
    assert parse_symbol("0.5,0.25", default_kind="e") == ("e", (0.5, 0.25))


def test_parse_symbol_reports_position():
    with pytest.raises(ParseError) as info:
        parse_symbol("f:4,abc,3")
    assert info.value.position == 4
    with pytest.raises(ParseError):
        parse_symbol("x:1,2")
    with pytest.raises(ParseError):
        parse_symbol("4,3")
