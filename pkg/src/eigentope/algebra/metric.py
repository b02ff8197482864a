"""Metric tensors of the natural and orthogonal frames, signatures and explicit frames."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from eigentope.algebra.symbols import SINGULAR_EPS, h_to_rho, rho_to_e
from eigentope.core.errors import DegenerateSymbol, UnsupportedSignature
from eigentope.core.models import FrameState, HSymbol, RhoVector, Signature, SignatureLabel

# coordinates change from the natural frame {P} to the orthogonal frame
BASIS_CHANGE = np.array(
    [
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, -1.0],
        [0.0, 1.0, -1.0, 0.0],
        [1.0, -1.0, 0.0, 0.0],
    ]
)

RELATIVE_SIGNATURE_TOL = 1e-9


def gram_natural(rho: RhoVector | Sequence[float]) -> np.ndarray:
    """Metric tensor of the natural frame: G[i, j] = rho_max(i, j)."""
    r = np.asarray(rho, dtype=float)
    idx = np.arange(r.size)
    return r[np.maximum.outer(idx, idx)]


def gram_orthogonal(h: HSymbol | Sequence[float], rho0: float = 1.0) -> np.ndarray:
    """Diagonal metric rho0 * (1/alpha, 1/beta - 1/alpha, 1/gamma - 1/beta, 1 - 1/gamma)."""
    rho = h_to_rho(h, rho0)
    return np.diag(orthogonal_squares(rho))


def orthogonal_squares(rho: RhoVector | Sequence[float]) -> np.ndarray:
    """(rho3, rho2 - rho3, rho1 - rho2, rho0 - rho1): squares of p3, 3R2, 2R1, 1R0."""
    r0, r1, r2, r3 = np.asarray(rho, dtype=float)
    return np.array([r3, r2 - r3, r1 - r2, r0 - r1])


def verify_basis_change(gp: np.ndarray) -> np.ndarray:
    """B . gp . B; diagonal for any natural-form gp."""
    gp = np.asarray(gp, dtype=float)
    return BASIS_CHANGE @ gp @ BASIS_CHANGE


def is_natural_form(g: np.ndarray, tol: float = 1e-8) -> bool:
    """True when g[i, j] == g[max(i, j), max(i, j)] for all entries (relative tol)."""
    g = np.asarray(g, dtype=float)
    pattern = gram_natural(np.diag(g))
    scale = max(1.0, float(np.max(np.abs(g))))
    return bool(np.max(np.abs(g - pattern)) <= tol * scale)


def chain_test(h: HSymbol | Sequence[float]) -> Optional[str]:
    """Direct tests on the H-symbol: alpha > beta > gamma > 1 is Euclidean,
    0 < alpha < beta < gamma < 1 is pseudo-Euclidean (+---)."""
    alpha, beta, gamma = h
    if alpha > beta > gamma > 1:
        return "euclidean"
    if 0 < alpha < beta < gamma < 1:
        return "minkowski"
    return None


def classify_signature(
    g: np.ndarray | HSymbol, tol: Optional[float] = None
) -> Signature:
    """Count eigenvalue signs of a symmetric metric.

    ``tol`` is absolute; by default it is 1e-9 times the largest |eigenvalue|.
    An HSymbol is classified through its orthogonal Gram matrix and the result
    also carries the chain-test verdict.
    """
    chain = None
    if isinstance(g, HSymbol):
        chain = chain_test(g)
        g = gram_orthogonal(g, 1.0)
    g = np.asarray(g, dtype=float)
    eig = np.linalg.eigh(0.5 * (g + g.T))[0]
    if tol is None:
        tol = RELATIVE_SIGNATURE_TOL * max(float(np.max(np.abs(eig))), SINGULAR_EPS)

    plus = int(np.sum(eig > tol))
    minus = int(np.sum(eig < -tol))
    zero = eig.size - plus - minus

    if zero > 0:
        label = SignatureLabel.DEGENERATE
    elif plus == eig.size:
        label = SignatureLabel.EUCLIDEAN
    elif plus == 1 and minus == eig.size - 1:
        label = SignatureLabel.MINKOWSKI
    else:
        label = SignatureLabel.OTHER

    return Signature(
        plus=plus,
        minus=minus,
        zero=zero,
        label=label,
        eigenvalues=tuple(float(v) for v in eig),
        chain=chain,
    )


def build_frame(h: HSymbol | Sequence[float], rho0: float = 1.0) -> FrameState:
    """Explicit coordinates of p0..p3 in an ambient (pseudo-)orthonormal basis.

    The orthogonal frame {p3, 3R2, 2R1, 1R0} is laid on the ambient axes with
    lengths sqrt(|d_k|) and the natural frame recovered by telescoping sums.
    """
    if not isinstance(h, HSymbol):
        h = HSymbol(*h)
    rho = h_to_rho(h, rho0)
    d = orthogonal_squares(rho)
    sig = classify_signature(np.diag(d))
    if sig.label not in (SignatureLabel.EUCLIDEAN, SignatureLabel.MINKOWSKI):
        raise UnsupportedSignature(
            f"explicit frame needs a Euclidean or Minkowski metric; got {sig.label.value} {sig.pattern}"
        )

    ambient = np.diag(np.sign(d))
    axes = np.diag(np.sqrt(np.abs(d)))
    # p3 = a0, p2 = a0 + a1, p1 = a0 + a1 + a2, p0 = a0 + a1 + a2 + a3
    coords = np.cumsum(axes, axis=0)[::-1].copy()
    gram = coords @ ambient @ coords.T
    return FrameState(coords=coords, gram=gram, esym=rho_to_e(rho), ambient=ambient)


def constituting_vector(frame: FrameState, a: int, b: int) -> np.ndarray:
    """aR_b = p_b - p_a, the vector from the a-cell centre to the b-cell centre (p4 = 0)."""
    return frame.vector(b) - frame.vector(a)


def r_vector(frame: FrameState, i: int, j: int, k: int) -> np.ndarray:
    """Complementary vector kR_j minus its component along kR_i.

    Its square is (jR_i)^2 (kR_j)^2 / (kR_i)^2.
    """
    if not 0 <= i < j < k <= 4:
        raise DegenerateSymbol(f"r-vector indices must satisfy 0 <= i < j < k <= 4, got {(i, j, k)}")
    kj = constituting_vector(frame, k, j)
    ki = constituting_vector(frame, k, i)
    ki2 = frame.dot(ki, ki)
    if abs(ki2) < SINGULAR_EPS:
        raise DegenerateSymbol(f"r-vector ({i},{j},{k}): ({k}R{i})^2 vanished", factor=f"{k}R{i}")
    return kj - (frame.dot(kj, kj) / ki2) * ki


__all__ = [
    "BASIS_CHANGE",
    "gram_natural",
    "gram_orthogonal",
    "orthogonal_squares",
    "verify_basis_change",
    "is_natural_form",
    "chain_test",
    "classify_signature",
    "build_frame",
    "constituting_vector",
    "r_vector",
]
