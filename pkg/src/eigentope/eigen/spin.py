"""Spin of eigentopes and conformal scaling of their frames.

For a word w with eigenvector x, the frame matrix X = word_matrix(w, x) maps
the natural frame of x onto a scaled and rotated copy of itself. The spin is
the least q with X^q = lambda_q * Id; then J = (q - 1)/2 and
U = lambda_q^(-1/q) X is pseudo-orthogonal for the natural metric G of x.
Steps whose frame is singular at x but whose product stays finite are passed
through by word_matrix_limit.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from eigentope.algebra.symbols import SINGULAR_EPS
from eigentope.core.config import Config
from eigentope.core.errors import EvenQNegativeLambda, NoFiniteQ, SingularTransform
from eigentope.core.models import ConformalReport, Context, ESymbol, SpinResult, Word
from eigentope.groups.generators4 import natural_gram
from eigentope.groups.words import as_word, word_matrix_limit

# loosest proportionality tolerance allowed for high powers
MAX_POWER_TOL = 1e-4


def lambda_sixfold_A(e: ESymbol | Sequence[float]) -> float:
    """Scalar of the sixfold vertex reflection: A^6 acts on the frame as lambda * Id."""
    eps, dlt, eta = e
    den = eps * dlt * eta * (1.0 - eps - dlt - eta + eps * eta)
    if abs(den) < SINGULAR_EPS:
        raise SingularTransform(
            "sixfold vertex reflection A (P4): factor epsilon*delta*eta*(1-e-d-h+e*h) vanished",
            factor="epsilon*delta*eta*(1-epsilon-delta-eta+epsilon*eta)",
            letter="A",
        )
    return -(1.0 - eps - dlt) * (1.0 - dlt - eta) / den


def proportional_to_identity(m: np.ndarray, tol: float) -> bool:
    """Off-diagonal entries and diagonal spread both below ``tol`` relative to max|m|."""
    scale = float(np.max(np.abs(m)))
    if not np.isfinite(scale) or scale == 0.0:
        return False
    diag = np.diag(m)
    off = np.max(np.abs(m - np.diag(diag))) / scale
    spread = (np.max(diag) - np.min(diag)) / scale
    return bool(off < tol and spread < tol)


def power_tolerance(tol: float, q: int, cond: float) -> float:
    """Tolerance for testing y^q against Id: rounding in y^q grows with q and cond(y)."""
    if not np.isfinite(cond):
        return tol
    return min(tol * q * q * max(1.0, cond), MAX_POWER_TOL)


def conformal_scale(x: np.ndarray, g: np.ndarray) -> float:
    """Least-squares mu in X G X^T = mu G."""
    return float(np.sum((x @ g @ x.T) * g) / np.sum(g * g))


def conformal_check(w: Word | str, evec: ESymbol | Sequence[float]) -> ConformalReport:
    """Check X G X^T = mu G and mu^2 = |det X| at an eigenvector."""
    w = as_word(w, Context.P4)
    x = word_matrix_limit(w, evec)
    g = natural_gram(evec)
    mu = conformal_scale(x, g)
    image = x @ g @ x.T
    conformal_residual = float(np.max(np.abs(image - mu * g)) / np.max(np.abs(mu * g)))
    det = abs(float(np.linalg.det(x)))
    det_residual = abs(mu * mu - det) / det if det > 0 else float("inf")
    return ConformalReport(mu=mu, conformal_residual=conformal_residual, det_residual=det_residual)


def spin(
    w: Word | str,
    evec: ESymbol | Sequence[float],
    max_q: Optional[int] = None,
    tol: Optional[float] = None,
    strict: bool = False,
    config: Optional[Config] = None,
) -> SpinResult:
    """Least q <= max_q with X^q proportional to the identity.

    Proportionality is tested on X / |det X|^(1/4) so that tiny and huge
    lambda_q are held to the same relative tolerance. An even q with negative
    lambda_q is reported with ``orientation_reversing`` set, or raised when
    ``strict``.
    """
    config = config or Config()
    max_q = max_q or config.max_q
    tol = tol or config.proportional_tol
    w = as_word(w, Context.P4)

    x = word_matrix_limit(w, evec)
    det = float(np.linalg.det(x))
    if not np.isfinite(det) or abs(det) < SINGULAR_EPS:
        raise NoFiniteQ(f"frame matrix of {w.render()} is singular at {tuple(evec)} (det={det:.3g})")
    unit = abs(det) ** 0.25
    y = x / unit

    cond = float(np.linalg.cond(y))
    power = np.eye(4)
    for q in range(1, max_q + 1):
        power = power @ y
        if proportional_to_identity(power, power_tolerance(tol, q, cond)):
            break
    else:
        raise NoFiniteQ(f"no power X^q of {w.render()} up to q={max_q} is proportional to Id")

    lam_unit = float(np.mean(np.diag(power)))
    lambda_q = lam_unit * abs(det) ** (q / 4.0)
    reversing = lambda_q < 0 and q % 2 == 0
    if reversing and strict:
        raise EvenQNegativeLambda(
            f"{w.render()}: X^{q} = {lambda_q:.6g} Id with even q has no real q-th root"
        )

    root = abs(lambda_q) ** (1.0 / q)
    sign = -1.0 if (lambda_q < 0 and q % 2 == 1) else 1.0
    u = sign * x / root

    g = natural_gram(evec)
    ortho_residual = float(np.max(np.abs(u @ g @ u.T - g)) / np.max(np.abs(g)))
    det_residual = abs(abs(lambda_q) ** (4.0 / q) - abs(det)) / abs(det)

    mu = conformal_scale(x, g)
    image = x @ g @ x.T
    cosine = float((x @ g)[0, 0] / math.sqrt(abs(image[0, 0] * g[0, 0])))

    return SpinResult(
        q=q,
        lambda_q=lambda_q,
        J=Fraction(q - 1, 2),
        ortho_residual=ortho_residual,
        det_residual=det_residual,
        orientation_reversing=reversing,
        mu=mu,
        scale=math.sqrt(abs(mu)),
        frame_cosine=cosine,
    )


__all__ = [
    "lambda_sixfold_A",
    "proportional_to_identity",
    "power_tolerance",
    "conformal_scale",
    "conformal_check",
    "spin",
]
