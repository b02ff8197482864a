"""RRP(3): the four reflections of 3-D polyhedra acting on [epsilon, delta].

    A  vertex reflection        (1 - e/(1-d), e)
    B  edge reflection, I type  (1 - e - d, d)
    C  edge reflection, II type (1 - e - d, e)
    D  face reflection          (1 - d/(1-e), d)

Words are read left to right: ``DCBA`` applies D first.
"""

from __future__ import annotations

import math
from typing import Dict, Sequence

import numpy as np

from eigentope.algebra.symbols import e_to_f, f_to_e
from eigentope.core.errors import SymbolError
from eigentope.core.models import (
    Context,
    EigenspaceDescriptor,
    ESymbol,
    FSymbol,
    Generator,
)
from eigentope.groups.maps import MapSpec, join, split, step

SQRT5 = math.sqrt(5.0)
PHI2 = (3.0 - SQRT5) / 2.0
PHI2P = (3.0 + SQRT5) / 2.0


def _a(x):
    e, d = split(x)
    return join(1.0 - e / (1.0 - d), e)


def _b(x):
    e, d = split(x)
    return join(1.0 - e - d, d)


def _c(x):
    e, d = split(x)
    return join(1.0 - e - d, e)


def _d(x):
    e, d = split(x)
    return join(1.0 - d / (1.0 - e), d)


def _no_factors(x) -> Dict[str, np.ndarray]:
    return {}


GENERATORS3: Dict[str, MapSpec] = {
    "A": MapSpec(
        "A", Context.E3, "vertex reflection", _a, lambda x: {"1-delta": 1.0 - x[..., 1]}, order=5
    ),
    "B": MapSpec("B", Context.E3, "edge reflection (I type)", _b, _no_factors, order=2),
    "C": MapSpec("C", Context.E3, "edge reflection (II type)", _c, _no_factors, order=3),
    "D": MapSpec(
        "D", Context.E3, "face reflection", _d, lambda x: {"1-epsilon": 1.0 - x[..., 0]}, order=2
    ),
}


def _coerce(g: Generator | str) -> Generator:
    if isinstance(g, Generator):
        return g
    if len(g) != 1 or g.upper() not in GENERATORS3:
        raise SymbolError(f"unknown RRP(3) generator {g!r}; expected one of A, B, C, D")
    return Generator(g.upper(), g.islower())


def apply3(g: Generator | str, e: ESymbol | Sequence[float]) -> ESymbol:
    """Apply one RRP(3) generator (a lowercase letter means its inverse)."""
    g = _coerce(g)
    if len(e) != 2:
        raise SymbolError(f"RRP(3) acts on 2-component E-symbols, got {len(e)}")
    return ESymbol(tuple(step(GENERATORS3[g.letter], e, g.inverted)))


def dual3(e: ESymbol | Sequence[float]) -> ESymbol:
    """Reciprocal polytope: (epsilon, delta) -> (delta, epsilon), equal to A then D."""
    eps, dlt = e
    return ESymbol((dlt, eps))


def reflect_vertex_f(f: FSymbol | Sequence[float]) -> FSymbol:
    """Vertex reflection in f-symbol form: {m, i} -> {m', m} with
    cos^2(pi/m') = 1 - cos^2(pi/m) / (1 - cos^2(pi/i))."""
    m, i = (f.entries if isinstance(f, FSymbol) else tuple(f))
    eps, dlt = f_to_e((m, i))
    return FSymbol((e_to_f((1.0 - eps / (1.0 - dlt), eps))[0], m))


EIGENSPACES3: Dict[str, EigenspaceDescriptor] = {
    "A": EigenspaceDescriptor(
        letter="A",
        context=Context.E3,
        kind="point",
        description="epsilon = delta = (3 -+ sqrt5)/2",
        points=((PHI2, PHI2), (PHI2P, PHI2P)),
        constraint=lambda x: abs(x[0] - x[1]) + abs(x[0] ** 2 - 3.0 * x[0] + 1.0),
    ),
    "B": EigenspaceDescriptor(
        letter="B",
        context=Context.E3,
        kind="curve",
        description="delta = 1 - 2 epsilon",
        curves=(lambda t: (t, 1.0 - 2.0 * t),),
        constraint=lambda x: abs(x[1] - (1.0 - 2.0 * x[0])),
    ),
    "C": EigenspaceDescriptor(
        letter="C",
        context=Context.E3,
        kind="point",
        description="single eigenvector [1/3, 1/3]",
        points=((1.0 / 3.0, 1.0 / 3.0),),
        constraint=lambda x: abs(x[0] - 1.0 / 3.0) + abs(x[1] - 1.0 / 3.0),
    ),
    "D": EigenspaceDescriptor(
        letter="D",
        context=Context.E3,
        kind="curve",
        description="delta = (1 - epsilon)^2",
        curves=(lambda t: (t, (1.0 - t) ** 2),),
        constraint=lambda x: abs(x[1] - (1.0 - x[0]) ** 2),
    ),
}


def eigenspace3(letter: str) -> EigenspaceDescriptor:
    try:
        return EIGENSPACES3[letter.upper()]
    except KeyError as e:
        raise SymbolError(f"unknown RRP(3) generator {letter!r}") from e


__all__ = [
    "GENERATORS3",
    "EIGENSPACES3",
    "apply3",
    "dual3",
    "eigenspace3",
    "reflect_vertex_f",
    "PHI2",
    "PHI2P",
]
