"""Conversions among f-symbols, E-symbols, H-symbols and rho-vectors.

All functions are pure. Angles are in radians, rho components in units of
squared length. The E-basis coordinates are

    epsilon = cos^2(pi/f1), delta = cos^2(pi/f2), eta = cos^2(pi/f3)

and the H-basis ratios are alpha = rho0/rho3, beta = rho0/rho2, gamma = rho0/rho1.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from eigentope.core.errors import (
    DegenerateSymbol,
    InfiniteHoneycomb,
    NonRealSymbol,
    SymbolError,
)
from eigentope.core.models import ESymbol, FSymbol, HoneycombStats, HSymbol, RhoVector

# denominators closer to zero than this are treated as vanished
SINGULAR_EPS = 1e-14


def _as_fsymbol(f: FSymbol | Sequence[float]) -> FSymbol:
    return f if isinstance(f, FSymbol) else FSymbol(tuple(f))


def _as_esymbol(e: ESymbol | Sequence[float]) -> ESymbol:
    return e if isinstance(e, ESymbol) else ESymbol(tuple(e))


def _nonzero(value: float, factor: str, context: str) -> float:
    if abs(value) < SINGULAR_EPS:
        raise DegenerateSymbol(f"{context}: factor {factor} vanished", factor=factor)
    return value


def f_to_e(f: FSymbol | Sequence[float]) -> ESymbol:
    """Componentwise cos^2(pi/f_i); an infinite entry maps to 1."""
    f = _as_fsymbol(f)
    if len(f) < 2:
        raise SymbolError(f"polygon {f.render()} has no E-symbol (need at least 2 entries)")
    return ESymbol(tuple(1.0 if math.isinf(fi) else math.cos(math.pi / fi) ** 2 for fi in f))


def e_to_f(e: ESymbol | Sequence[float]) -> FSymbol:
    """f_i = pi / arccos(sqrt(e_i)); requires every component in (0, 1]."""
    e = _as_esymbol(e)
    entries = []
    for k, ek in enumerate(e):
        if not 0.0 < ek <= 1.0:
            raise NonRealSymbol(
                f"E-component {k + 1} = {ek!r} outside (0, 1]: f-symbol entry would be complex"
            )
        angle = math.acos(math.sqrt(ek))
        entries.append(math.inf if angle == 0.0 else math.pi / angle)
    return FSymbol(tuple(entries))


def is_real_symbol(e: ESymbol | Sequence[float]) -> bool:
    return all(0.0 < ek <= 1.0 for ek in e)


def e_to_h(e: ESymbol | Sequence[float]) -> HSymbol:
    """H-symbol of a 4-D polytope from its E-symbol.

    alpha = (1-e-d)(1-d-h)/(e d h), beta = (1-e)(1-d-h)/(e d), gamma = (1-d-h)/(e(1-h)).
    """
    e = _as_esymbol(e)
    if len(e) != 3:
        raise SymbolError(f"H-symbol is defined for 4-D polytopes; got {len(e)} E-components")
    eps, dlt, eta = e
    ctx = "E to H conversion"
    _nonzero(eps, "epsilon", ctx)
    _nonzero(dlt, "delta", ctx)
    _nonzero(eta, "eta", ctx)
    _nonzero(1.0 - eta, "1-eta", ctx)
    num = 1.0 - dlt - eta
    alpha = (1.0 - eps - dlt) * num / (eps * dlt * eta)
    beta = (1.0 - eps) * num / (eps * dlt)
    gamma = num / (eps * (1.0 - eta))
    return HSymbol(alpha, beta, gamma)


def rho_to_e_general(rho: RhoVector | Sequence[float]) -> ESymbol:
    """E-symbol of an n-polytope from rho_0..rho_(n-1), with rho_n = 0 at the centre.

    Uses (iR_j)^2 = rho_j - rho_i for the constituting vectors, so
    e_1 = (rho1-rho2)/(rho0-rho2) and, for i >= 2,
    e_i = (rho_i - rho_(i+1))(rho_(i-2) - rho_(i-1)) / ((rho_(i-1) - rho_(i+1))(rho_(i-2) - rho_i)).
    """
    rho = rho if isinstance(rho, RhoVector) else RhoVector(tuple(rho))
    r = list(rho.values) + [0.0]
    n = len(rho)
    if n < 3:
        raise SymbolError(f"need at least rho0..rho2 for an E-symbol, got {n} components")
    ctx = "rho to E conversion"
    comps = [(r[1] - r[2]) / _nonzero(r[0] - r[2], "rho0-rho2", ctx)]
    for i in range(2, n):
        den = _nonzero(r[i - 1] - r[i + 1], f"rho{i - 1}-rho{i + 1}", ctx) * _nonzero(
            r[i - 2] - r[i], f"rho{i - 2}-rho{i}", ctx
        )
        comps.append((r[i] - r[i + 1]) * (r[i - 2] - r[i - 1]) / den)
    return ESymbol(tuple(comps))


def rho_to_e(rho: RhoVector | Sequence[float]) -> ESymbol:
    """(epsilon, delta, eta) from (rho0, rho1, rho2, rho3)."""
    rho = rho if isinstance(rho, RhoVector) else RhoVector(tuple(rho))
    if len(rho) != 4:
        raise SymbolError(f"rho_to_e expects rho0..rho3, got {len(rho)} components")
    return rho_to_e_general(rho)


def h_to_rho(h: HSymbol | Sequence[float], rho0: float = 1.0) -> RhoVector:
    """(rho0, rho0/gamma, rho0/beta, rho0/alpha)."""
    alpha, beta, gamma = h
    ctx = "H to rho conversion"
    _nonzero(rho0, "rho0", ctx)
    _nonzero(alpha, "alpha", ctx)
    _nonzero(beta, "beta", ctx)
    _nonzero(gamma, "gamma", ctx)
    return RhoVector((rho0, rho0 / gamma, rho0 / beta, rho0 / alpha))


def e_to_rho(e: ESymbol | Sequence[float], rho0: float = 1.0) -> RhoVector:
    return h_to_rho(e_to_h(e), rho0)


def nearest_integer_deviation(m: float) -> float:
    """Deviation of m from the nearest integer."""
    return m - round(m)


def angle_uncertainty(m: float, dm: Optional[float] = None) -> float:
    """Uncertainty pi*|dm|/m of the angle coordinate of a non-integer polygon {m}.

    When ``dm`` is omitted, the deviation of m from the nearest integer is used.
    """
    if not m > 0:
        raise SymbolError(f"angle uncertainty needs m > 0, got {m!r}")
    if dm is None:
        dm = nearest_integer_deviation(m)
    return math.pi * abs(dm) / m


def honeycomb_counts(m: float, i: float) -> HoneycombStats:
    """Vertex, edge and face counts of the polyhedron {m, i}.

    From i*y = 2*x = m*n and y - x + n = 2:
    y = 4m/D, x = 2mi/D, n = 4i/D with D = 4 - (m-2)(i-2).
    """
    d = 4.0 - (m - 2.0) * (i - 2.0)
    if d <= SINGULAR_EPS:
        kind = "Euclidean" if abs(d) <= SINGULAR_EPS else "hyperbolic"
        raise InfiniteHoneycomb(
            f"{{{m:g},{i:g}}} is an infinite {kind} mosaic: 4-(m-2)(i-2) = {d:.6g} <= 0"
        )
    return HoneycombStats(y=4.0 * m / d, x=2.0 * m * i / d, n=4.0 * i / d, m=m, i=i)


__all__ = [
    "f_to_e",
    "e_to_f",
    "is_real_symbol",
    "e_to_h",
    "rho_to_e",
    "rho_to_e_general",
    "h_to_rho",
    "e_to_rho",
    "nearest_integer_deviation",
    "angle_uncertainty",
    "honeycomb_counts",
]
