"""Domain types shared by all eigentope modules."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple

import numpy as np

from eigentope.core.errors import SymbolError


class Context(str, Enum):
    """Where a word acts: E-symbols in 2 or 3 coordinates, or 4x4 frames."""

    E3 = "E3"
    E4 = "E4"
    P4 = "P4"

    @classmethod
    def parse(cls, value: "Context | str") -> "Context":
        if isinstance(value, Context):
            return value
        try:
            return cls(str(value).upper())
        except ValueError as e:
            raise SymbolError(f"unknown context {value!r}; expected E3, E4 or P4") from e

    @property
    def alphabet(self) -> str:
        return "ABCD" if self is Context.E3 else "ABCDEFGH"

    @property
    def dimension(self) -> int:
        """Number of E-coordinates the context acts on."""
        return 2 if self is Context.E3 else 3


@dataclass(frozen=True)
class FSymbol:
    """Schläfli symbol {f1, ..., f(n-1)}; entries may be non-integer or +inf."""

    entries: Tuple[float, ...]

    def __post_init__(self):
        entries = tuple(float(f) for f in self.entries)
        object.__setattr__(self, "entries", entries)
        if not 1 <= len(entries) <= 4:
            raise SymbolError(f"f-symbol needs 1 to 4 entries, got {len(entries)}")
        for k, f in enumerate(entries):
            if math.isnan(f) or (math.isfinite(f) and f <= 1) or f == -math.inf:
                raise SymbolError(f"f-symbol entry f{k + 1}={f!r}: angle pi/f undefined (need f > 1)")

    @property
    def dimension(self) -> int:
        return len(self.entries) + 1

    def __iter__(self) -> Iterator[float]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def render(self, digits: int = 6) -> str:
        parts = ["inf" if math.isinf(f) else f"{round(f, digits):g}" for f in self.entries]
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class ESymbol:
    """Coordinates of a polytope in the relative basis [E].

    Two coordinates describe a 3-D polytope, three a 4-D one, four the degenerate
    5-D case used by the star transform. Components are unrestricted reals.
    """

    values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not 2 <= len(values) <= 4:
            raise SymbolError(f"E-symbol needs 2 to 4 components, got {len(values)}")
        if not all(math.isfinite(v) for v in values):
            raise SymbolError(f"E-symbol components must be finite, got {values!r}")

    @classmethod
    def of(cls, *values: float) -> "ESymbol":
        return cls(tuple(values))

    @property
    def dimension(self) -> int:
        """Dimension of the polytope (number of components + 1)."""
        return len(self.values) + 1

    @property
    def epsilon(self) -> float:
        return self.values[0]

    @property
    def delta(self) -> float:
        return self.values[1]

    @property
    def eta(self) -> float:
        if len(self.values) < 3:
            raise AttributeError("3-D E-symbol has no eta component")
        return self.values[2]

    @property
    def nu(self) -> float:
        if len(self.values) < 4:
            raise AttributeError("only 5-D E-symbols carry a nu component")
        return self.values[3]

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype or float)

    def close_to(self, other: Sequence[float], tol: float = 1e-9) -> bool:
        other = np.asarray(other, dtype=float)
        return other.shape == (len(self.values),) and bool(
            np.max(np.abs(np.asarray(self) - other)) < tol
        )

    def render(self, digits: int = 6) -> str:
        return "[" + ",".join(f"{round(v, digits):g}" for v in self.values) + "]"


@dataclass(frozen=True)
class HSymbol:
    """Ratios alpha = rho0/rho3, beta = rho0/rho2, gamma = rho0/rho1."""

    alpha: float
    beta: float
    gamma: float

    def __iter__(self) -> Iterator[float]:
        return iter((self.alpha, self.beta, self.gamma))

    def __array__(self, dtype=None, copy=None):
        return np.asarray((self.alpha, self.beta, self.gamma), dtype=dtype or float)

    def render(self, digits: int = 6) -> str:
        return "[" + ",".join(f"{round(v, digits):g}" for v in self) + "]"


@dataclass(frozen=True)
class RhoVector:
    """Scalar squares rho_i = (p_i)^2 of the constituting vectors."""

    values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not 2 <= len(values) <= 5:
            raise SymbolError(f"rho-vector needs 2 to 5 components, got {len(values)}")

    @classmethod
    def of(cls, *values: float) -> "RhoVector":
        return cls(tuple(values))

    @property
    def rho0(self) -> float:
        return self.values[0]

    @property
    def rho1(self) -> float:
        return self.values[1]

    @property
    def rho2(self) -> float:
        return self.values[2]

    @property
    def rho3(self) -> float:
        return self.values[3]

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype or float)

    def render(self, digits: int = 6) -> str:
        return "[" + ",".join(f"{round(v, digits):g}" for v in self.values) + "]"


@dataclass(frozen=True)
class HoneycombStats:
    """Vertices y, edges x, faces n of a {m, i} polyhedron (real-valued counts)."""

    y: float
    x: float
    n: float
    m: float
    i: float

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


class SignatureLabel(str, Enum):
    EUCLIDEAN = "EUCLIDEAN"
    MINKOWSKI = "MINKOWSKI"
    DEGENERATE = "DEGENERATE"
    OTHER = "OTHER"


@dataclass(frozen=True)
class Signature:
    plus: int
    minus: int
    zero: int
    label: SignatureLabel
    eigenvalues: Tuple[float, ...] = ()
    chain: Optional[str] = None

    @property
    def pattern(self) -> str:
        """Sign pattern such as ``(+---)``; zeros render as ``0``."""
        return "(" + "+" * self.plus + "-" * self.minus + "0" * self.zero + ")"


@dataclass(frozen=True)
class FrameState:
    """Explicit natural frame {p0..p3}: row i of ``coords`` is p_i."""

    coords: np.ndarray
    gram: np.ndarray
    esym: ESymbol
    ambient: np.ndarray

    def vector(self, k: int) -> np.ndarray:
        """Natural-frame vector p_k, with p_4 the polytope centre (zero vector)."""
        if k == 4:
            return np.zeros(4)
        return self.coords[k]

    def dot(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(u @ self.ambient @ v)


@dataclass(frozen=True)
class Generator:
    letter: str
    inverted: bool = False

    @property
    def symbol(self) -> str:
        return self.letter.lower() if self.inverted else self.letter

    def inverse(self) -> "Generator":
        return Generator(self.letter, not self.inverted)


@dataclass(frozen=True)
class EigenspaceDescriptor:
    """Fixed-point locus of a single generator.

    ``points`` lists isolated fixed points; ``curves`` are parametrisations
    t -> E-symbol of one-parameter fixed families. ``constraint`` returns the
    residual of the closed-form predicate (zero on the locus).
    """

    letter: str
    context: Context
    kind: str
    description: str
    points: Tuple[Tuple[float, ...], ...] = ()
    curves: Tuple[Callable[[float], Tuple[float, ...]], ...] = ()
    constraint: Optional[Callable[[Sequence[float]], float]] = None

    def samples(self, ts: Sequence[float] = (0.2, 0.3, 0.4)) -> list:
        """Concrete members: every point plus each curve evaluated at ``ts``."""
        out = [tuple(p) for p in self.points]
        for curve in self.curves:
            out.extend(tuple(curve(t)) for t in ts)
        return out


@dataclass(frozen=True)
class Word:
    context: Context
    letters: Tuple[Generator, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.context, self.letters + other.letters)

    def power(self, n: int) -> "Word":
        if n < 0:
            return self.inverse().power(-n)
        return Word(self.context, self.letters * n)

    def inverse(self) -> "Word":
        return Word(self.context, tuple(g.inverse() for g in reversed(self.letters)))

    def render(self) -> str:
        return "".join(g.symbol for g in self.letters) or "1"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Relation:
    """Claim ``word ** exponent`` is the identity in ``context``.

    ``expected`` is ``"fail"`` for a printed relation kept as a documented
    discrepancy: it is checked like any other, but failing is its expected outcome.
    """

    word: Word
    exponent: int = 1
    source: str = ""
    note: str = ""
    expected: str = "pass"

    def __post_init__(self):
        if self.exponent < 1:
            raise SymbolError(f"relation exponent must be >= 1, got {self.exponent}")
        if self.expected not in ("pass", "fail"):
            raise SymbolError(f"relation outcome must be pass or fail, got {self.expected!r}")

    @property
    def text(self) -> str:
        base = self.word.render()
        return base if self.exponent == 1 else f"<{base}>^{self.exponent}"

    def expanded(self) -> Word:
        return self.word.power(self.exponent)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one relation check.

    ``singular`` counts draws rejected as near-singular and redrawn; they never
    decide the verdict. ``verdict`` is passed, failed or known-discrepancy.
    """

    relation: str
    context: str
    samples: int
    max_residual: float
    singular: int
    verdict: str
    source: str = ""
    error: Optional[str] = None
    expected: str = "pass"

    @property
    def passed(self) -> bool:
        return self.verdict == "passed"

    @property
    def as_expected(self) -> bool:
        return self.verdict in ("passed", "known-discrepancy")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class FixedPointResult:
    evec: Tuple[float, ...]
    residual: float
    converged: bool
    seed: Tuple[float, ...]
    isolated: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SpinResult:
    """Least q with X^q = lambda_q * Id, plus conformal diagnostics."""

    q: int
    lambda_q: float
    J: Fraction
    ortho_residual: float
    det_residual: float
    orientation_reversing: bool = False
    mu: float = float("nan")
    scale: float = float("nan")
    frame_cosine: float = float("nan")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["J"] = str(self.J)
        return d


@dataclass(frozen=True)
class ConformalReport:
    mu: float
    conformal_residual: float
    det_residual: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class StarResult:
    star: ESymbol
    mu_residual: float


RECORD_FIELDS = (
    "word",
    "context",
    "evec",
    "q",
    "lambda_q",
    "J",
    "signature",
    "residual",
    "ortho_residual",
    "det_residual",
    "fsymbol",
    "spin_error",
)


@dataclass(frozen=True)
class EigentopeRecord:
    word: str
    context: str
    evec: Tuple[float, ...]
    q: Optional[int] = None
    lambda_q: Optional[float] = None
    J: Optional[str] = None
    signature: Optional[str] = None
    residual: float = 0.0
    ortho_residual: Optional[float] = None
    det_residual: Optional[float] = None
    fsymbol: Optional[Tuple[float, ...]] = None
    spin_error: Optional[str] = None

    def to_dict(self) -> dict:
        d = {name: getattr(self, name) for name in RECORD_FIELDS}
        d["evec"] = list(self.evec)
        d["fsymbol"] = None if self.fsymbol is None else list(self.fsymbol)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "EigentopeRecord":
        missing = [k for k in ("word", "context", "evec") if k not in data]
        if missing:
            raise SymbolError(f"eigentope record missing field(s): {', '.join(missing)}")
        kwargs = {k: data.get(k) for k in RECORD_FIELDS if k in data}
        kwargs["evec"] = tuple(float(v) for v in data["evec"])
        if kwargs.get("fsymbol") is not None:
            kwargs["fsymbol"] = tuple(float(v) for v in kwargs["fsymbol"])
        return cls(**kwargs)

    def key(self, digits: int = 6) -> Tuple[str, Tuple[float, ...]]:
        """Catalog identity: word text and evec rounded to ``digits``."""
        return self.word, tuple(round(v, digits) + 0.0 for v in self.evec)


__all__ = [
    "Context",
    "FSymbol",
    "ESymbol",
    "HSymbol",
    "RhoVector",
    "HoneycombStats",
    "SignatureLabel",
    "Signature",
    "FrameState",
    "Generator",
    "EigenspaceDescriptor",
    "Word",
    "Relation",
    "VerificationReport",
    "FixedPointResult",
    "SpinResult",
    "ConformalReport",
    "StarResult",
    "EigentopeRecord",
    "RECORD_FIELDS",
]

