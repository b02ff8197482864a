"""RRP(4) and ARP(4): the eight reflections of 4-D polytopes.

Each letter has an E-basis map on [epsilon, delta, eta] and an independent
frame map on {p0, p1, p2, p3}. Row i of :func:`matrix4` holds the coefficients
of p'_i on the old frame. The two descriptions are reconciled only through the
Gram cross-check (:func:`gram_image`).

    A  vertices          E  faces, I type
    B  edges, I type     F  faces, II type
    C  edges, II type    G  faces, III type
    D  edges, III type   H  3-faces
"""

from __future__ import annotations

from typing import Dict, Sequence

import numpy as np

from eigentope.algebra.metric import gram_natural
from eigentope.algebra.symbols import SINGULAR_EPS, e_to_h, h_to_rho, rho_to_e
from eigentope.core.errors import SingularTransform, SymbolError
from eigentope.core.models import Context, EigenspaceDescriptor, ESymbol, Generator
from eigentope.groups.maps import MapSpec, join, split, step


def _a(x):
    e, d, h = split(x)
    return join(1.0 - e * (1.0 - h) / (1.0 - d - h), e, d)


def _b(x):
    e, d, h = split(x)
    return join(1.0 - e - d / (1.0 - h), d, h)


def _c(x):
    e, d, h = split(x)
    return join(1.0 - e - d / (1.0 - h), d, e / (e + d))


def _d(x):
    e, d, h = split(x)
    return join(1.0 - e - d / (1.0 - h), e, d / (e + d))


def _e(x):
    e, d, h = split(x)
    return join(1.0 - h - d / (1.0 - e), h, d / (d + h))


def _f(x):
    e, d, h = split(x)
    return join(1.0 - h - d / (1.0 - e), d, h / (d + h))


def _g(x):
    e, d, h = split(x)
    return join(1.0 - h - d / (1.0 - e), d, e)


def _h(x):
    e, d, h = split(x)
    return join(1.0 - h * (1.0 - e) / (1.0 - e - d), h, d)


def _e_inv(x):
    e1, d1, h1 = split(x)
    h = d1
    d = h1 * d1 / (1.0 - h1)
    return join(1.0 - d / (1.0 - d1 - e1), d, h)


def _f_inv(x):
    e1, d1, h1 = split(x)
    d = d1
    h = h1 * d / (1.0 - h1)
    return join(1.0 - d / (1.0 - h - e1), d, h)


def _g_inv(x):
    e1, d1, h1 = split(x)
    return join(h1, d1, 1.0 - e1 - d1 / (1.0 - h1))


def _e_inv_factors(x):
    e1, d1, h1 = split(x)
    return {"1-eta'": 1.0 - h1, "1-delta'-epsilon'": 1.0 - d1 - e1}


def _f_inv_factors(x):
    e1, d1, h1 = split(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = h1 * d1 / (1.0 - h1)
    return {"1-eta'": 1.0 - h1, "1-eta-epsilon'": 1.0 - h - e1}


GENERATORS4: Dict[str, MapSpec] = {
    "A": MapSpec(
        "A",
        Context.E4,
        "vertex reflection",
        _a,
        lambda x: {"1-delta-eta": 1.0 - x[..., 1] - x[..., 2]},
        order=6,
    ),
    "B": MapSpec(
        "B",
        Context.E4,
        "edge reflection (I type)",
        _b,
        lambda x: {"1-eta": 1.0 - x[..., 2]},
        order=2,
    ),
    "C": MapSpec(
        "C",
        Context.E4,
        "edge reflection (II type)",
        _c,
        lambda x: {"1-eta": 1.0 - x[..., 2], "epsilon+delta": x[..., 0] + x[..., 1]},
        order=3,
    ),
    "D": MapSpec(
        "D",
        Context.E4,
        "edge reflection (III type)",
        _d,
        lambda x: {"1-eta": 1.0 - x[..., 2], "epsilon+delta": x[..., 0] + x[..., 1]},
        order=4,
    ),
    "E": MapSpec(
        "E",
        Context.E4,
        "face reflection (I type)",
        _e,
        lambda x: {"1-epsilon": 1.0 - x[..., 0], "delta+eta": x[..., 1] + x[..., 2]},
        backward=_e_inv,
        backward_factors=_e_inv_factors,
    ),
    "F": MapSpec(
        "F",
        Context.E4,
        "face reflection (II type)",
        _f,
        lambda x: {"1-epsilon": 1.0 - x[..., 0], "delta+eta": x[..., 1] + x[..., 2]},
        backward=_f_inv,
        backward_factors=_f_inv_factors,
    ),
    "G": MapSpec(
        "G",
        Context.E4,
        "face reflection (III type)",
        _g,
        lambda x: {"1-epsilon": 1.0 - x[..., 0]},
        backward=_g_inv,
        backward_factors=lambda x: {"1-eta'": 1.0 - x[..., 2]},
    ),
    "H": MapSpec(
        "H",
        Context.E4,
        "3-face reflection",
        _h,
        lambda x: {"1-epsilon-delta": 1.0 - x[..., 0] - x[..., 1]},
        order=2,
    ),
}


def _coerce(g: Generator | str) -> Generator:
    if isinstance(g, Generator):
        return g
    if len(g) != 1 or g.upper() not in GENERATORS4:
        raise SymbolError(f"unknown RRP(4) generator {g!r}; expected one of A..H")
    return Generator(g.upper(), g.islower())


def _check_dim(e) -> None:
    if len(e) != 3:
        raise SymbolError(f"RRP(4) acts on 3-component E-symbols, got {len(e)}")


def apply4(g: Generator | str, e: ESymbol | Sequence[float]) -> ESymbol:
    """Apply one RRP(4) generator; a lowercase letter (or inverted flag) inverts it."""
    g = _coerce(g)
    _check_dim(e)
    return ESymbol(tuple(step(GENERATORS4[g.letter], e, g.inverted)))


def inverse4(letter: str, e: ESymbol | Sequence[float]) -> ESymbol:
    """Analytic inverse of E, F or G (the letters of infinite order)."""
    if letter.upper() not in ("E", "F", "G"):
        raise SymbolError(f"analytic inverse exists for E, F, G only; got {letter!r}")
    return apply4(Generator(letter.upper(), True), e)


def dual4(e: ESymbol | Sequence[float]) -> ESymbol:
    """Reciprocal polytope: (epsilon, delta, eta) -> (eta, delta, epsilon), equal to A then H."""
    _check_dim(e)
    eps, dlt, eta = e
    return ESymbol((eta, dlt, eps))


# -- frame maps -------------------------------------------------------------


def _nz(value: float, factor: str, letter: str) -> float:
    if abs(value) < SINGULAR_EPS:
        raise SingularTransform(
            f"frame map {letter} (P4): factor {factor} vanished", factor=factor, letter=letter
        )
    return value


def _frame_a(e, d, h):
    alpha, beta, gamma = e_to_h((e, d, h))
    return [
        [0.0, 0.0, 0.0, -alpha],
        [1.0, 0.0, 0.0, -alpha],
        [0.0, gamma, 0.0, -alpha],
        [0.0, 0.0, beta, -alpha],
    ]


def _frame_b(e, d, h):
    k = _nz(d + e * (1.0 - h), "delta+epsilon(1-eta)", "B")
    l = _nz(e + h * (d - e), "epsilon+eta(delta-epsilon)", "B")
    return [
        [-1.0, 0.0, 0.0, 0.0],
        [-1.0, 1.0, 0.0, 0.0],
        [-d / k, 0.0, (1.0 - e) * (1.0 - h) / k, 0.0],
        [-d * h / l, 0.0, 0.0, (1.0 - e - d) * (1.0 - h) / l],
    ]


def _cd_rows(e, d, h, letter):
    c = (1.0 - e - d) * (1.0 - h) / _nz(d * h, "delta*eta", letter)
    k = _nz(d + e * (1.0 - h), "delta+epsilon(1-eta)", letter)
    return c, [
        [0.0, 0.0, 0.0, -c],
        [0.0, 1.0, 0.0, -c],
        [e * (1.0 - h) / k, 0.0, (1.0 - e) * (1.0 - h) / k, -c],
    ]


def _frame_c(e, d, h):
    c, rows = _cd_rows(e, d, h, "C")
    l = _nz(e + h * (d - e), "epsilon+eta(delta-epsilon)", "C")
    s = e * (1.0 - h) / l
    return rows + [[s, 0.0, 0.0, -c * s]]


def _frame_d(e, d, h):
    c, rows = _cd_rows(e, d, h, "D")
    s = (1.0 - e) * (1.0 - h) / _nz(d, "delta", "D")
    return rows + [[0.0, 0.0, s, -c]]


def _ef_rows(e, d, h, letter):
    m = _nz(d + h * (1.0 - e), "delta+eta(1-epsilon)", letter)
    return [
        [-1.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 1.0, 0.0],
        [-1.0, d / m, 0.0, (1.0 - e - d) / m],
    ]


def _frame_e(e, d, h):
    return _ef_rows(e, d, h, "E") + [[-1.0, 1.0, 0.0, 0.0]]


def _frame_f(e, d, h):
    n = _nz(h + e * (d - h), "eta+epsilon(delta-eta)", "F")
    return _ef_rows(e, d, h, "F") + [[-h * (1.0 - e) / n, 0.0, 0.0, (1.0 - e - d) / n]]


def _frame_g(e, d, h):
    g0 = (1.0 - e - d) / _nz(h * (1.0 - e), "eta(1-epsilon)", "G")
    m = _nz(d + h * (1.0 - e), "delta+eta(1-epsilon)", "G")
    n = _nz(h + e * (d - h), "eta+epsilon(delta-eta)", "G")
    return [
        [0.0, 0.0, 0.0, -g0],
        [0.0, 0.0, 1.0, -g0],
        [0.0, d / m, 0.0, -g0 * d / m],
        [e * d / n, 0.0, 0.0, -g0 * e * d / n],
    ]


H_MATRIX = np.array(
    [
        [-1.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 1.0, 0.0],
        [-1.0, 1.0, 0.0, 0.0],
    ]
)

_FRAMES = {
    "A": _frame_a,
    "B": _frame_b,
    "C": _frame_c,
    "D": _frame_d,
    "E": _frame_e,
    "F": _frame_f,
    "G": _frame_g,
    "H": lambda e, d, h: H_MATRIX,
}


def _forward_matrix(letter: str, e: Sequence[float]) -> np.ndarray:
    # the E-basis map must be defined wherever the frame map is
    step(GENERATORS4[letter], e, False)
    try:
        return np.array(_FRAMES[letter](*(float(v) for v in e)), dtype=float)
    except SymbolError as err:
        raise SingularTransform(f"frame map {letter} (P4): {err}", letter=letter) from err


def matrix4(g: Generator | str, e: ESymbol | Sequence[float]) -> np.ndarray:
    """4x4 frame matrix W of a generator evaluated at E-symbol ``e``.

    For an inverted letter the true inverse W_g(g^-1(e))^-1 is returned.
    """
    g = _coerce(g)
    _check_dim(e)
    if not g.inverted:
        return _forward_matrix(g.letter, e)
    pre = step(GENERATORS4[g.letter], e, True)
    w = _forward_matrix(g.letter, pre)
    if abs(np.linalg.det(w)) < SINGULAR_EPS:
        raise SingularTransform(
            f"frame map {g.letter} (P4) is not invertible at {tuple(pre)}", letter=g.letter
        )
    return np.linalg.inv(w)


def natural_gram(e: ESymbol | Sequence[float], rho0: float = 1.0) -> np.ndarray:
    """Natural-frame Gram matrix of the polytope ``e`` with (p0)^2 = rho0."""
    return gram_natural(h_to_rho(e_to_h(e), rho0))


def gram_image(g: Generator | str, e: ESymbol | Sequence[float]):
    """Transform the natural Gram matrix of ``e`` by W and read the E-symbol back.

    Returns ``(W G W^T, rho_to_e(diagonal))``.
    """
    w = matrix4(g, e)
    image = w @ natural_gram(e) @ w.T
    return image, rho_to_e(np.diag(image))


def _point(*values: float):
    return tuple(float(v) for v in values)


EIGENSPACES4: Dict[str, EigenspaceDescriptor] = {
    "A": EigenspaceDescriptor(
        letter="A",
        context=Context.E4,
        kind="point",
        description="E-vectors [1/3, 1/3, 1/3] and [1, 1, 1]",
        points=(_point(1 / 3, 1 / 3, 1 / 3), _point(1, 1, 1)),
    ),
    "B": EigenspaceDescriptor(
        letter="B",
        context=Context.E4,
        kind="surface",
        description="delta = (1 - 2 epsilon)(1 - eta)",
        curves=(
            lambda t: _point(t, (1 - 2 * t) * 0.7, 0.3),
            lambda t: _point(t, (1 - 2 * t) * 0.5, 0.5),
        ),
        constraint=lambda x: abs(x[1] - (1 - 2 * x[0]) * (1 - x[2])),
    ),
    "C": EigenspaceDescriptor(
        letter="C",
        context=Context.E4,
        kind="curve",
        description="epsilon = eta/(1 + 2 eta), delta = (1 - eta)/(1 + 2 eta)",
        curves=(lambda t: _point(t / (1 + 2 * t), (1 - t) / (1 + 2 * t), t),),
        constraint=lambda x: abs(x[0] - x[2] / (1 + 2 * x[2]))
        + abs(x[1] - (1 - x[2]) / (1 + 2 * x[2])),
    ),
    "D": EigenspaceDescriptor(
        letter="D",
        context=Context.E4,
        kind="point",
        description="single eigenvector [1/4, 1/4, 1/2]",
        points=(_point(0.25, 0.25, 0.5),),
    ),
    "E": EigenspaceDescriptor(
        letter="E",
        context=Context.E4,
        kind="point",
        description="E-vectors [0, 1/2, 1/2] and [3/2, 1/2, 1/2]",
        points=(_point(0, 0.5, 0.5), _point(1.5, 0.5, 0.5)),
    ),
    "F": EigenspaceDescriptor(
        letter="F",
        context=Context.E4,
        kind="curve",
        description="{eta = 0, delta = (1 - epsilon)^2}, {epsilon = 0, delta = 1 - eta}, "
        "{epsilon = 2 - eta, delta = 1 - eta}",
        curves=(
            lambda t: _point(t, (1 - t) ** 2, 0),
            lambda t: _point(0, 1 - t, t),
            lambda t: _point(2 - t, 1 - t, t),
        ),
        constraint=lambda x: min(
            abs(x[2]) + abs(x[1] - (1 - x[0]) ** 2),
            abs(x[0]) + abs(x[1] - (1 - x[2])),
            abs(x[0] - (2 - x[2])) + abs(x[1] - (1 - x[2])),
        ),
    ),
    "G": EigenspaceDescriptor(
        letter="G",
        context=Context.E4,
        kind="curve",
        description="eta = epsilon, delta = (1 - epsilon)(1 - 2 epsilon)",
        curves=(lambda t: _point(t, (1 - t) * (1 - 2 * t), t),),
        constraint=lambda x: abs(x[2] - x[0]) + abs(x[1] - (1 - x[0]) * (1 - 2 * x[0])),
    ),
    "H": EigenspaceDescriptor(
        letter="H",
        context=Context.E4,
        kind="curve",
        description="{epsilon = 1, delta = eta} and {epsilon = 1 - 2 eta, delta = eta}",
        curves=(lambda t: _point(1, t, t), lambda t: _point(1 - 2 * t, t, t)),
        constraint=lambda x: abs(x[1] - x[2])
        + min(abs(x[0] - 1), abs(x[0] - (1 - 2 * x[2]))),
    ),
}


def eigenspace4(letter: str) -> EigenspaceDescriptor:
    try:
        return EIGENSPACES4[letter.upper()]
    except KeyError as e:
        raise SymbolError(f"unknown RRP(4) generator {letter!r}") from e


__all__ = [
    "GENERATORS4",
    "EIGENSPACES4",
    "H_MATRIX",
    "apply4",
    "inverse4",
    "dual4",
    "matrix4",
    "natural_gram",
    "gram_image",
    "eigenspace4",
]
