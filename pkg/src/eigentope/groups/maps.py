"""Shared machinery for generator maps on E-symbols.

A generator is described by a :class:`MapSpec`: a vectorised forward map over
arrays of shape ``(..., d)``, its named denominators, and either a finite order
(the inverse is then a power) or an analytic backward map. Batch evaluation
never raises; singular points come back as nan/inf together with the smallest
denominator magnitude met along the way. Scalar evaluation raises
:class:`SingularTransform` naming the vanished factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from eigentope.algebra.symbols import SINGULAR_EPS
from eigentope.core.errors import SingularTransform
from eigentope.core.models import Context

ArrayMap = Callable[[np.ndarray], np.ndarray]
FactorMap = Callable[[np.ndarray], Dict[str, np.ndarray]]


@dataclass(frozen=True)
class MapSpec:
    letter: str
    context: Context
    name: str
    forward: ArrayMap
    factors: FactorMap
    order: Optional[int] = None
    backward: Optional[ArrayMap] = None
    backward_factors: Optional[FactorMap] = None

    @property
    def label(self) -> str:
        return f"{self.name} {self.letter} ({self.context.value})"


def split(x: np.ndarray) -> Tuple[np.ndarray, ...]:
    return tuple(x[..., k] for k in range(x.shape[-1]))


def join(*parts: np.ndarray) -> np.ndarray:
    return np.stack(np.broadcast_arrays(*parts), axis=-1)


def _min_abs(factors: Dict[str, np.ndarray], shape) -> np.ndarray:
    out = np.full(shape, np.inf)
    for value in factors.values():
        out = np.minimum(out, np.abs(value))
    return out


def step_batch(spec: MapSpec, x: np.ndarray, inverted: bool = False):
    """Apply one generator to a batch; returns ``(image, margin)``.

    ``margin`` is the smallest |denominator| met, per point.
    """
    x = np.asarray(x, dtype=float)
    shape = x.shape[:-1]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if not inverted:
            margin = _min_abs(spec.factors(x), shape)
            return spec.forward(x), margin
        if spec.backward is not None:
            margin = _min_abs(spec.backward_factors(x), shape)
            return spec.backward(x), margin
        margin = np.full(shape, np.inf)
        for _ in range(spec.order - 1):
            margin = np.minimum(margin, _min_abs(spec.factors(x), shape))
            x = spec.forward(x)
        return x, margin


def _check(spec: MapSpec, factors: Dict[str, np.ndarray], inverse: bool) -> None:
    for factor, value in factors.items():
        if abs(float(value)) < SINGULAR_EPS:
            kind = "inverse of " if inverse else ""
            raise SingularTransform(
                f"{kind}{spec.label}: factor {factor} vanished", factor=factor, letter=spec.letter
            )


def step(spec: MapSpec, e: Sequence[float], inverted: bool = False) -> np.ndarray:
    """Apply one generator to a single point, raising on a vanishing denominator."""
    x = np.asarray(e, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if not inverted:
            _check(spec, spec.factors(x), inverse=False)
            return spec.forward(x)
        if spec.backward is not None:
            _check(spec, spec.backward_factors(x), inverse=True)
            return spec.backward(x)
        for _ in range(spec.order - 1):
            _check(spec, spec.factors(x), inverse=True)
            x = spec.forward(x)
        return x
