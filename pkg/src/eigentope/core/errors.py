"""Exception hierarchy for eigentope.

Every message names the equation context it failed in, so the CLI can print it
verbatim on stderr.
"""

from typing import Optional


class EigentopeError(Exception):
    """Root of all expected computational failures."""


class SymbolError(EigentopeError):
    """A symbol cannot be converted or is not a valid polytope symbol."""


class NonRealSymbol(SymbolError):
    """The f-symbol would be complex (E-component outside (0, 1])."""


class DegenerateSymbol(SymbolError):
    """A denominator of a symbol conversion vanished."""

    def __init__(self, message: str, factor: Optional[str] = None):
        super().__init__(message)
        self.factor = factor


class SingularTransform(EigentopeError):
    """A reflection map hit a vanishing denominator."""

    def __init__(
        self,
        message: str,
        factor: Optional[str] = None,
        letter: Optional[str] = None,
        step: Optional[int] = None,
    ):
        super().__init__(message)
        self.factor = factor
        self.letter = letter
        self.step = step

    def at_step(self, step: int) -> "SingularTransform":
        """Return a copy tagged with the word position where it occurred."""
        return SingularTransform(
            f"step {step}: {self}", factor=self.factor, letter=self.letter, step=step
        )


class InfiniteHoneycomb(EigentopeError):
    """Incidence counts diverge (Euclidean or hyperbolic mosaic)."""


class NoRealSolution(EigentopeError):
    """An equation has no real solution for the supplied parameters."""


class UnsupportedSignature(EigentopeError):
    """Explicit frames exist only for Euclidean and Minkowski metrics."""


class ParseError(EigentopeError):
    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message if position is None else f"{message} (position {position})")
        self.position = position


class NoFiniteQ(EigentopeError):
    """No power of the frame matrix is proportional to the identity."""


class EvenQNegativeLambda(EigentopeError):
    """X^q = lambda*Id with even q and lambda < 0 has no real normalising root."""


class ConfigError(EigentopeError):
    pass
