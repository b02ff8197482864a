"""Fixed points of word maps (eigenvectors of a word).

Multi-start Newton iteration on F(x) = T(x) - x from a grid of seeds over the
search box, vectorised over all seeds at once. The Jacobian is a forward finite
difference; steps use the pseudo-inverse so seeds sitting on fixed curves
converge onto the curve instead of diverging.
"""

from __future__ import annotations

import itertools
import logging
from typing import List, Optional, Sequence

import numpy as np
from scipy import ndimage
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from eigentope.core.config import Config
from eigentope.core.models import Context, FixedPointResult, Word
from eigentope.groups.words import SINGULAR_MARGIN, apply_word_batch, as_word

# smallest singular value of the Jacobian of T(x) - x above which a root is isolated
ISOLATION_TOL = 1e-6
# largest Newton step (max-norm)
MAX_STEP = 0.5
# a continuum of fixed points is thinned to this many representatives
MAX_CONTINUUM_ROOTS = 200

log = logging.getLogger("eigentope")


def _dim(w: Word) -> int:
    return 2 if w.context is Context.E3 else 3


def seed_grid(dim: int, box, step: float) -> np.ndarray:
    lo, hi = box
    axis = np.arange(lo, hi + step / 2, step)
    return np.array(list(itertools.product(axis, repeat=dim)), dtype=float)


def residual_map(w: Word, x: np.ndarray) -> np.ndarray:
    """F(x) = T(x) - x, nan where T is singular."""
    image, margin = apply_word_batch(w, x)
    f = image - x
    f[margin <= 0] = np.nan
    return f


def jacobian(w: Word, x: np.ndarray, h: float = 1e-7) -> np.ndarray:
    """Forward-difference Jacobian of F, shape (N, d, d)."""
    f0 = residual_map(w, x)
    d = x.shape[-1]
    jac = np.empty(x.shape + (d,))
    for k in range(d):
        xp = x.copy()
        xp[:, k] += h
        jac[:, :, k] = (residual_map(w, xp) - f0) / h
    return jac


def newton(w: Word, seeds: np.ndarray, config: Config, max_iter: Optional[int] = None):
    """Run batched Newton from ``seeds``; returns ``(points, residuals)``."""
    x = np.array(seeds, dtype=float)
    h = config.newton_step
    for _ in range(max_iter or config.newton_max_iter):
        with np.errstate(invalid="ignore", over="ignore"):
            f = residual_map(w, x)
            ok = np.all(np.isfinite(f), axis=1) & np.all(np.isfinite(x), axis=1)
            x[~ok] = np.nan
            if not ok.any():
                break
            live = ok & (np.max(np.abs(np.nan_to_num(f)), axis=1) > 1e-15)
            if not live.any():
                break
            jac = jacobian(w, x[live], h)
            good = np.all(np.isfinite(jac), axis=(1, 2))
            idx = np.flatnonzero(live)
            x[idx[~good]] = np.nan
            idx = idx[good]
            if idx.size == 0:
                continue
            delta = np.einsum("nij,nj->ni", np.linalg.pinv(jac[good]), f[idx])
            norm = np.max(np.abs(delta), axis=1, keepdims=True)
            delta *= np.minimum(1.0, MAX_STEP / np.maximum(norm, 1e-300))
            x[idx] -= delta
            x[np.max(np.abs(np.nan_to_num(x, nan=np.inf)), axis=1) > 1e6] = np.nan
    with np.errstate(invalid="ignore"):
        res = np.max(np.abs(residual_map(w, np.nan_to_num(x))), axis=1)
    res[~np.all(np.isfinite(x), axis=1)] = np.nan
    return x, res


def _dedupe(points: np.ndarray, tol: float) -> np.ndarray:
    """Index of one representative per cluster of points within ``tol`` (max-norm).

    Candidates are first collapsed onto cells of a ``tol`` grid, so the pair
    search only sees one point per occupied cell.
    """
    if len(points) == 0:
        return np.array([], dtype=int)
    keys = np.round(points / tol).astype(np.int64)
    _, cell_first = np.unique(keys, axis=0, return_index=True)
    cells = points[cell_first]
    n = len(cells)
    pairs = cKDTree(cells).query_pairs(r=tol, p=np.inf, output_type="ndarray")
    if len(pairs):
        graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
    else:
        labels = np.arange(n)
    by_index = np.argsort(cell_first)
    _, first = np.unique(labels[by_index], return_index=True)
    return np.sort(cell_first[by_index][first])


def isolation(w: Word, roots: np.ndarray, h: float = 1e-7) -> np.ndarray:
    """Smallest singular value of the Jacobian of F at each root."""
    if len(roots) == 0:
        return np.array([])
    jac = jacobian(w, roots, h)
    out = np.zeros(len(roots))
    ok = np.all(np.isfinite(jac), axis=(1, 2))
    if ok.any():
        out[ok] = np.linalg.svd(jac[ok], compute_uv=False)[:, -1]
    return out


def _in_box(x: np.ndarray, box, slack: float = 1e-9) -> np.ndarray:
    return np.all((x >= box[0] - slack) & (x <= box[1] + slack), axis=1)


def find_fixed_points(
    w: Word | str,
    config: Optional[Config] = None,
    context: Context | str = Context.E4,
    grid_step: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> List[FixedPointResult]:
    """All fixed points of ``w`` in the search box, sorted lexicographically."""
    config = config or Config()
    w = as_word(w, context)
    seeds = seed_grid(_dim(w), config.box, grid_step or config.grid_step)
    x, res = newton(w, seeds, config, max_iter)

    with np.errstate(invalid="ignore"):
        keep = np.isfinite(res) & (res < config.fixed_point_tol)
    keep &= np.all(np.isfinite(x), axis=1)
    keep[keep] &= _in_box(x[keep], config.box)
    roots, root_res, root_seeds = x[keep], res[keep], seeds[keep]

    # canonical order so the surviving representative is deterministic
    order = np.lexsort(roots.T[::-1])
    roots, root_res, root_seeds = roots[order], root_res[order], root_seeds[order]
    reps = _dedupe(roots, config.dedupe_tol)
    roots, root_res, root_seeds = roots[reps], root_res[reps], root_seeds[reps]

    # re-verify by direct application
    image, margin = apply_word_batch(w, roots)
    verified = np.max(np.abs(image - roots), axis=1) if len(roots) else np.array([])
    ok = (margin > SINGULAR_MARGIN) & (verified < config.fixed_point_tol)
    roots, root_seeds, verified = roots[ok], root_seeds[ok], verified[ok]

    isolated = isolation(w, roots, config.newton_step) > ISOLATION_TOL
    if (~isolated).sum() > MAX_CONTINUUM_ROOTS:
        log.debug(
            f"[Solver] {w.render()}: {(~isolated).sum()} points on a fixed continuum, "
            f"keeping {MAX_CONTINUUM_ROOTS}"
        )
        cont = np.flatnonzero(~isolated)
        stride = max(1, len(cont) // MAX_CONTINUUM_ROOTS)
        sel = np.union1d(np.flatnonzero(isolated), cont[::stride][:MAX_CONTINUUM_ROOTS])
        roots, root_seeds, verified, isolated = (
            roots[sel],
            root_seeds[sel],
            verified[sel],
            isolated[sel],
        )

    return [
        FixedPointResult(
            evec=tuple(float(v) for v in r),
            residual=float(v),
            converged=True,
            seed=tuple(float(s) for s in sd),
            isolated=bool(iso),
        )
        for r, v, sd, iso in zip(roots, verified, root_seeds, isolated)
    ]


def refine_fixed_point(
    w: Word | str,
    seed: Sequence[float],
    config: Optional[Config] = None,
    context: Context | str = Context.E4,
) -> FixedPointResult:
    """Newton from a single seed, e.g. an eigenvector printed to three decimals."""
    config = config or Config()
    w = as_word(w, context)
    seed = np.asarray(seed, dtype=float)
    x, res = newton(w, seed[None, :], config)
    root, r = x[0], float(res[0])
    converged = bool(np.all(np.isfinite(root)) and np.isfinite(r) and r < config.fixed_point_tol)
    iso = bool(converged and isolation(w, root[None, :], config.newton_step)[0] > ISOLATION_TOL)
    return FixedPointResult(
        evec=tuple(float(v) for v in (root if converged else seed)),
        residual=r,
        converged=converged,
        seed=tuple(float(v) for v in seed),
        isolated=iso,
    )


def grid_oracle(
    w: Word | str,
    config: Optional[Config] = None,
    context: Context | str = Context.E4,
    step: float = 0.01,
    threshold: float = 1e-3,
    chunk: int = 250_000,
) -> np.ndarray:
    """Brute-force residual scan of the box.

    Returns grid points that are local minima of max|T(x) - x| with value
    below ``threshold``.
    """
    config = config or Config()
    w = as_word(w, context)
    dim = _dim(w)
    lo, hi = config.box
    axis = np.arange(lo, hi + step / 2, step)
    shape = (axis.size,) * dim
    mesh = np.stack(np.meshgrid(*([axis] * dim), indexing="ij"), axis=-1).reshape(-1, dim)

    res = np.empty(len(mesh))
    for start in range(0, len(mesh), chunk):
        part = mesh[start : start + chunk]
        with np.errstate(invalid="ignore"):
            image, margin = apply_word_batch(w, part)
            r = np.max(np.abs(image - part), axis=1)
        r[(margin <= 0) | ~np.isfinite(r)] = np.inf
        res[start : start + chunk] = r
    res = res.reshape(shape)

    minima = (ndimage.minimum_filter(res, size=3, mode="nearest") == res) & (res < threshold)
    return mesh.reshape(shape + (dim,))[minima]


def oracle_misses(
    roots: Sequence[FixedPointResult], minima: np.ndarray, step: float
) -> np.ndarray:
    """Grid minima farther than two grid steps from every Newton root."""
    if len(minima) == 0:
        return minima
    if not roots:
        return minima
    tree = cKDTree(np.array([r.evec for r in roots]))
    dist, _ = tree.query(minima, p=np.inf)
    return minima[dist > 2 * step]


__all__ = [
    "seed_grid",
    "residual_map",
    "jacobian",
    "newton",
    "isolation",
    "find_fixed_points",
    "refine_fixed_point",
    "grid_oracle",
    "oracle_misses",
]
