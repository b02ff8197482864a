"""Words over the reflection generators: parsing, application, periods and relations.

Composition is read left to right, so ``DCBA`` applies D first. Uppercase
letters are generators and lowercase letters their inverses; a number after a
letter (ASCII or superscript) repeats it. The identity is the empty word,
rendered ``1``.
"""

from __future__ import annotations

import re
from importlib import resources
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from eigentope.algebra.symbols import rho_to_e
from eigentope.core.config import Config
from eigentope.core.errors import ParseError, SingularTransform
from eigentope.core.models import (
    Context,
    ESymbol,
    Generator,
    Relation,
    VerificationReport,
    Word,
)
from eigentope.core.registry import REGISTRY
from eigentope.groups.generators4 import GENERATORS4, matrix4, natural_gram
from eigentope.groups.maps import MapSpec, step, step_batch
from eigentope.utils.logger import get_logger

SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")

# sample points closer than this to a step singularity are excluded
SINGULAR_MARGIN = 1e-3
SAMPLE_LOW, SAMPLE_HIGH = 0.05, 0.95
# bound on redraw batches when collecting non-singular samples
MAX_REDRAW_ROUNDS = 50
# step and relative agreement for frame matrices through removable singularities
LIMIT_STEP = 1e-6
LIMIT_AGREEMENT = 1e-3
LIMIT_STEP_SCALE = 1e6

SUITES = {"rrp3": Context.E3, "rrp4": Context.E4, "arp4": Context.P4}


def generator_spec(context: Context, letter: str) -> MapSpec:
    return REGISTRY.spec(context, letter)


# -- parsing ----------------------------------------------------------------


def parse_word(text: str, context: Context | str = Context.E4) -> Word:
    """Parse ``text`` such as ``"aEGAdg"`` or ``"ABE²F"`` into a :class:`Word`."""
    context = Context.parse(context)
    src = text.strip().translate(SUPERSCRIPTS)
    if src in ("", "1"):
        return Word(context)

    alphabet = context.alphabet
    letters: List[Generator] = []
    pos = 0
    while pos < len(src):
        ch = src[pos]
        if ch.isdigit():
            match = re.match(r"\d+", src[pos:])
            count = int(match.group())
            if not letters:
                raise ParseError(f"repeat count {count} has no preceding letter", position=pos)
            if count == 0:
                raise ParseError("repeat count must be positive", position=pos)
            letters.extend([letters[-1]] * (count - 1))
            pos += len(match.group())
            continue
        if ch.upper() not in alphabet:
            raise ParseError(
                f"invalid character {ch!r} for context {context.value} (alphabet {alphabet})",
                position=pos,
            )
        letters.append(Generator(ch.upper(), ch.islower()))
        pos += 1
    return Word(context, tuple(letters))


def as_word(w: Word | str, context: Context | str = Context.E4) -> Word:
    return w if isinstance(w, Word) else parse_word(w, context)


def _e_context(context: Context) -> Context:
    return Context.E4 if context is Context.P4 else context


# -- application --------------------------------------------------------------


def apply_word(w: Word | str, e: ESymbol | Sequence[float], context=None) -> ESymbol:
    """Chain the generators of ``w`` left to right starting from ``e``."""
    w = as_word(w, context or (Context.E3 if len(e) == 2 else Context.E4))
    ctx = _e_context(w.context)
    x = np.asarray(e, dtype=float)
    if x.shape != (ctx.dimension,):
        raise ParseError(f"{ctx.value} words act on {ctx.dimension}-component E-symbols")
    for k, g in enumerate(w, start=1):
        try:
            x = step(generator_spec(ctx, g.letter), x, g.inverted)
        except SingularTransform as err:
            raise err.at_step(k) from err
    return ESymbol(tuple(x))


def apply_word_batch(w: Word, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised application; returns ``(images, margin)`` and never raises."""
    ctx = _e_context(w.context)
    x = np.asarray(x, dtype=float)
    margin = np.full(x.shape[:-1], np.inf)
    for g in w:
        x, m = step_batch(generator_spec(ctx, g.letter), x, g.inverted)
        margin = np.minimum(margin, m)
    bad = ~np.all(np.isfinite(x), axis=-1) | np.isnan(margin)
    margin = np.where(bad, 0.0, margin)
    return x, margin


def orbit(w: Word | str, e: ESymbol | Sequence[float], context=None) -> List[ESymbol]:
    """Per-step trace of :func:`apply_word`: the start point followed by each image."""
    w = as_word(w, context or (Context.E3 if len(e) == 2 else Context.E4))
    points = [ESymbol(tuple(e))]
    for k in range(len(w)):
        points.append(apply_word(Word(w.context, w.letters[k : k + 1]), points[-1]))
    return points


def word_matrix(w: Word | str, e: ESymbol | Sequence[float]) -> np.ndarray:
    """Frame matrix X = W_k(e_(k-1)) ... W_1(e_0) of a 4-D word."""
    w = as_word(w, Context.P4)
    if w.context is Context.E3:
        raise ParseError("frame matrices exist for 4-D words only")
    x = ESymbol(tuple(e))
    total = np.eye(4)
    for k, g in enumerate(w, start=1):
        try:
            total = matrix4(g, x) @ total
            x = ESymbol(tuple(step(GENERATORS4[g.letter], x, g.inverted)))
        except SingularTransform as err:
            raise err.at_step(k) from err
    return total


def _largest_step_entry(w: Word, e: np.ndarray) -> float:
    x = ESymbol(tuple(e))
    largest = 0.0
    for g in w:
        largest = max(largest, float(np.max(np.abs(matrix4(g, x)))))
        x = ESymbol(tuple(step(GENERATORS4[g.letter], x, g.inverted)))
    return largest


def word_matrix_limit(
    w: Word | str, e: ESymbol | Sequence[float], h: float = LIMIT_STEP
) -> np.ndarray:
    """Frame matrix that also passes through removable singularities of its steps.

    When a step is singular at ``e`` (or one step matrix has entries above
    LIMIT_STEP_SCALE, so the plain product has lost its digits) the result is
    the mean of word_matrix at e +- h along each axis. The one-sided values must
    agree to LIMIT_AGREEMENT (relative); otherwise the singularity is genuine.
    """
    w = as_word(w, Context.P4)
    e = np.asarray(tuple(e), dtype=float)
    # a singular E-basis step means the word is undefined at e
    apply_word(w, e)
    plain, original = None, None
    try:
        plain = word_matrix(w, e)
        if _largest_step_entry(w, e) < LIMIT_STEP_SCALE:
            return plain
    except SingularTransform as err:
        original = err

    pairs = []
    for k in range(e.size):
        shift = np.zeros_like(e)
        shift[k] = h
        try:
            pairs.append((word_matrix(w, e + shift), word_matrix(w, e - shift)))
        except SingularTransform:
            continue
    if pairs:
        sides = np.array([m for pair in pairs for m in pair])
        mean = sides.mean(axis=0)
        scale = max(1.0, float(np.max(np.abs(mean))))
        if np.all(np.isfinite(sides)) and np.max(np.abs(sides - mean)) <= LIMIT_AGREEMENT * scale:
            return mean
    if original is not None:
        raise original
    return plain


def gram_residual(w: Word | str, e: ESymbol | Sequence[float]) -> float:
    """Max difference between apply_word and the E-symbol read back from X G X^T."""
    w = as_word(w, Context.P4)
    x = word_matrix(w, e)
    image = x @ natural_gram(e) @ x.T
    return float(np.max(np.abs(np.asarray(rho_to_e(np.diag(image))) - np.asarray(apply_word(w, e)))))


def step_determinants(w: Word | str, e: ESymbol | Sequence[float]) -> List[float]:
    w = as_word(w, Context.P4)
    x = ESymbol(tuple(e))
    dets = []
    for g in w:
        dets.append(float(np.linalg.det(matrix4(g, x))))
        x = ESymbol(tuple(step(GENERATORS4[g.letter], x, g.inverted)))
    return dets


# -- sampling and periods -----------------------------------------------------


def sample_points(context: Context, n: int, rng: np.random.Generator) -> np.ndarray:
    """Generic points uniform in (0.05, 0.95)^d."""
    return rng.uniform(SAMPLE_LOW, SAMPLE_HIGH, size=(n, _e_context(context).dimension))


def _residual(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.max(np.abs(a - b), axis=-1)


def period_report(
    w: Word | str,
    context: Context | str = Context.E4,
    samples: Optional[int] = None,
    max_q: Optional[int] = None,
    config: Optional[Config] = None,
) -> Tuple[Optional[int], int]:
    """Least q <= max_q with w^q = identity on all non-singular samples.

    Returns ``(q or None, singular_sample_count)``.
    """
    config = config or Config()
    w = as_word(w, context)
    n = samples or config.samples
    max_q = max_q or config.max_q
    rng = np.random.default_rng(config.seed)
    x0 = sample_points(w.context, n, rng)

    if len(w) == 0:
        return 1, 0

    alive = np.ones(n, dtype=bool)
    x = x0
    for q in range(1, max_q + 1):
        x, margin = apply_word_batch(w, x)
        alive &= margin >= SINGULAR_MARGIN
        if not alive.any():
            return None, n
        if np.max(_residual(x[alive], x0[alive])) < config.tolerance:
            return q, int(n - alive.sum())
    return None, int(n - alive.sum())


def period(
    w: Word | str,
    context: Context | str = Context.E4,
    samples: Optional[int] = None,
    max_q: Optional[int] = None,
    config: Optional[Config] = None,
) -> Optional[int]:
    return period_report(w, context, samples, max_q, config)[0]


# -- relations ----------------------------------------------------------------


def _parse_relation_line(line: str, context: Context) -> Relation:
    body, _, comment = line.partition("#")
    parts = body.split()
    expected = "pass"
    if len(parts) == 3 and parts[2].startswith("expected="):
        expected = parts.pop().split("=", 1)[1]
    if len(parts) != 2:
        raise ParseError(
            f"relation line must be '<word> <exponent> [expected=fail]', got {line.strip()!r}"
        )
    return Relation(
        word=parse_word(parts[0], context),
        exponent=int(parts[1]),
        source=comment.strip(),
        expected=expected,
    )


def load_relations(suite: str) -> List[Relation]:
    """Read a relation suite (``rrp3``, ``rrp4`` or ``arp4``) from package data."""
    key = suite.lower()
    if key not in SUITES:
        raise ParseError(f"unknown relation suite {suite!r}; expected one of {', '.join(SUITES)}")
    text = (
        resources.files("eigentope.groups")
        .joinpath("relations", f"{key}.txt")
        .read_text(encoding="utf-8")
    )
    context = SUITES[key]
    relations = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@context"):
            context = Context.parse(line.split()[1])
            continue
        relations.append(_parse_relation_line(line, context))
    return relations


class SuiteRunner:
    """Checks every relation of a suite on random generic points.

    E-context relations must return each sample to itself; P4 relations must
    chain to the exact identity matrix. Draws that come within SINGULAR_MARGIN
    of a step singularity are discarded and redrawn. Failures become report
    rows instead of exceptions.
    """

    def __init__(self, config: Optional[Config] = None, logger=None):
        self.config = config or Config()
        self.logger = get_logger(logger)

    def valid_samples(self, word: Word, samples: int) -> Tuple[np.ndarray, np.ndarray, int]:
        """Draw until ``samples`` non-singular points are found.

        Returns ``(points, images, excluded)``; after MAX_REDRAW_ROUNDS batches
        the points collected so far are returned.
        """
        rng = np.random.default_rng(self.config.seed)
        kept, images, excluded = [], [], 0
        need = samples
        for _ in range(MAX_REDRAW_ROUNDS):
            x0 = sample_points(word.context, need, rng)
            image, margin = apply_word_batch(word, x0)
            alive = margin >= SINGULAR_MARGIN
            excluded += int(need - alive.sum())
            kept.append(x0[alive])
            images.append(image[alive])
            need -= int(alive.sum())
            if need == 0:
                break
        return np.concatenate(kept), np.concatenate(images), excluded

    def check(self, relation: Relation, samples: Optional[int] = None, tol: Optional[float] = None):
        samples = samples or self.config.samples
        ctx = relation.word.context
        if tol is None:
            tol = self.config.tolerance if ctx is not Context.P4 else max(self.config.tolerance, 1e-8)
        word = relation.expanded()

        error = None
        try:
            x0, image, singular = self.valid_samples(word, samples)
            if len(x0) == 0:
                raise SingularTransform(f"every draw for {relation.text} was near-singular")
            if ctx is Context.P4:
                residuals = [float(np.max(np.abs(word_matrix(word, x) - np.eye(4)))) for x in x0]
            else:
                residuals = list(_residual(image, x0))
            max_residual = float(max(residuals))
            holds = max_residual < tol
        except Exception as err:  # a failed sample must not abort the suite
            max_residual, singular, holds, error = float("nan"), samples, False, str(err)

        if relation.expected == "fail":
            verdict = "failed" if holds else "known-discrepancy"
            if holds:
                error = "holds although marked expected=fail"
        else:
            verdict = "passed" if holds else "failed"

        return VerificationReport(
            relation=relation.text,
            context=ctx.value,
            samples=samples,
            max_residual=max_residual,
            singular=singular,
            verdict=verdict,
            source=relation.source,
            error=error,
            expected=relation.expected,
        )

    def run(self, suite: str, samples: Optional[int] = None, tol: Optional[float] = None):
        relations = load_relations(suite)
        self.logger.info(f"[Relations] Verifying {len(relations)} relations of {suite.upper()}")
        reports = [self.check(r, samples, tol) for r in relations]
        failed = [r for r in reports if not r.as_expected]
        for r in reports:
            if r.verdict == "known-discrepancy":
                self.logger.info(
                    f"[Relations] {r.relation} fails as documented: residual={r.max_residual:.3g}"
                )
        for r in failed:
            self.logger.warning(
                f"[Relations] {r.relation} failed: residual={r.max_residual:.3g}, "
                f"excluded={r.singular}{'' if r.error is None else ', ' + r.error}"
            )
        self.logger.info(f"[Relations] {len(reports) - len(failed)}/{len(reports)} as expected")
        return reports


def verify_suite(
    suite: str,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    config: Optional[Config] = None,
    logger=None,
) -> List[VerificationReport]:
    return SuiteRunner(config, logger).run(suite, samples, tol)


# -- isotropy and subgroup enumeration ----------------------------------------


def isotropy_check(
    w: Word | str, e: ESymbol | Sequence[float], tol: float = 1e-10
) -> Tuple[bool, bool]:
    """Return ``(member, singular)``: member iff w fixes e; singular if a step blew up."""
    try:
        image = apply_word(w, e)
    except SingularTransform:
        return False, True
    return image.close_to(np.asarray(e, dtype=float), tol), False


def is_isotropy_member(w: Word | str, e: ESymbol | Sequence[float], tol: float = 1e-10) -> bool:
    return isotropy_check(w, e, tol)[0]


def isotropy_generators(
    e: ESymbol | Sequence[float], words: Iterable[Word | str], tol: float = 1e-10
) -> List[Word]:
    """Filter ``words`` down to members of the isotropy subgroup of ``e``."""
    ctx = Context.E3 if len(e) == 2 else Context.E4
    return [as_word(w, ctx) for w in words if is_isotropy_member(as_word(w, ctx), e, tol)]


def point_period(
    w: Word | str, e: ESymbol | Sequence[float], max_q: int = 12, tol: float = 1e-10
) -> Optional[int]:
    """Least k <= max_q with w^k(e) = e; 1 means e is a true eigenvector of w.

    A point returned to only after k > 1 applications lies on a k-cycle of w.
    Singular steps raise :class:`SingularTransform`.
    """
    start = np.asarray(e, dtype=float)
    w = as_word(w, Context.E3 if len(start) == 2 else Context.E4)
    x = ESymbol(tuple(start))
    for k in range(1, max_q + 1):
        x = apply_word(w, x)
        if x.close_to(start, tol):
            return k
    return None


FINGERPRINT_POINTS = 8
FINGERPRINT_TOL = 1e-8


def fingerprint_points(context: Context, seed: int = 7) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(0.15, 0.85, size=(FINGERPRINT_POINTS, _e_context(context).dimension))


def fingerprint(w: Word, points: Optional[np.ndarray] = None) -> np.ndarray:
    """Images of the fixed fingerprint points under ``w``."""
    points = fingerprint_points(w.context) if points is None else points
    return apply_word_batch(w, points)[0]


def same_map(fa: np.ndarray, fb: np.ndarray, tol: float = FINGERPRINT_TOL) -> bool:
    return bool(np.all(np.isfinite(fa)) and np.allclose(fa, fb, rtol=tol, atol=tol))


def subgroup_order(
    generators: Sequence[Word | str], context: Context | str = Context.E4, cap: int = 500
) -> Optional[int]:
    """Order of the subgroup generated by ``generators``, by fingerprint closure.

    Two elements are equal iff their fingerprints agree; returns ``None`` when
    more than ``cap`` distinct elements appear.
    """
    context = Context.parse(context)
    gens = [as_word(g, context) for g in generators]
    points = fingerprint_points(context)
    elements: List[np.ndarray] = [points.copy()]
    frontier = [points.copy()]
    while frontier:
        nxt = []
        for fp in frontier:
            for g in gens:
                image = apply_word_batch(g, fp)[0]
                if not any(same_map(image, known) for known in elements):
                    elements.append(image)
                    nxt.append(image)
                    if len(elements) > cap:
                        return None
        frontier = nxt
    return len(elements)


__all__ = [
    "parse_word",
    "as_word",
    "apply_word",
    "apply_word_batch",
    "orbit",
    "word_matrix",
    "step_determinants",
    "gram_residual",
    "sample_points",
    "period",
    "period_report",
    "load_relations",
    "SuiteRunner",
    "verify_suite",
    "word_matrix_limit",
    "isotropy_check",
    "is_isotropy_member",
    "isotropy_generators",
    "point_period",
    "fingerprint",
    "fingerprint_points",
    "same_map",
    "subgroup_order",
]
