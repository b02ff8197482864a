"""Systematic word scans: eigenvectors, periods and spins of all short words.

Scans back the negative claims about small reflection groups (no eigenvector
with an f-symbol entry equal to 5; the set of finite periods). Those claims are
reported as "not found up to length L", never as proofs.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Set

import numpy as np

from eigentope.algebra.metric import classify_signature
from eigentope.algebra.symbols import e_to_f, e_to_h, is_real_symbol
from eigentope.core.config import Config
from eigentope.core.errors import EigentopeError
from eigentope.core.models import Context, EigentopeRecord, Generator, Word
from eigentope.eigen.solver import find_fixed_points
from eigentope.eigen.spin import spin
from eigentope.groups.words import fingerprint, fingerprint_points, period, same_map
from eigentope.utils.logger import get_logger

log = get_logger()

# letters available to scans: generators plus the inverses that differ from them
SCAN_ALPHABET = {
    Context.E3: "ABCD",
    Context.E4: "ABCDEFGHacdefg",
}

# f-symbol entry checked by the negative claim
TARGET_F = 5.0
TARGET_F_TOL = 1e-6


@dataclass
class ScanSummary:
    context: str
    max_len: int
    words_enumerated: int = 0
    words_scanned: int = 0
    observed_periods: Set[int] = field(default_factory=set)
    observed_spins: Set[int] = field(default_factory=set)
    f5_found: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "context": self.context,
            "max_len": self.max_len,
            "words_enumerated": self.words_enumerated,
            "words_scanned": self.words_scanned,
            "observed_periods": sorted(self.observed_periods),
            "observed_spins": sorted(self.observed_spins),
            "f5_found": list(self.f5_found),
            "claim": (
                f"no eigenvector with an f-symbol entry within {TARGET_F_TOL:g} of "
                f"{TARGET_F:g} found up to length {self.max_len}"
                if not self.f5_found
                else f"f-symbol entry {TARGET_F:g} found: {', '.join(self.f5_found)}"
            ),
        }


def enumerate_words(context: Context, max_len: int) -> Iterable[Word]:
    """All words of length 1..max_len over the scan alphabet, in shortlex order."""
    alphabet = SCAN_ALPHABET[context]
    for n in range(1, max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            yield Word(context, tuple(Generator(ch.upper(), ch.islower()) for ch in combo))


def reduced_words(context: Context, max_len: int) -> Iterable[Word]:
    """Words that differ, as maps, from the identity and from every earlier word."""
    points = fingerprint_points(context)
    seen = [points]
    for w in enumerate_words(context, max_len):
        fp = fingerprint(w, points)
        if not np.all(np.isfinite(fp)):
            continue
        if any(same_map(fp, known) for known in seen):
            continue
        seen.append(fp)
        yield w


def _f_symbol(evec: Sequence[float]):
    return e_to_f(evec).entries if is_real_symbol(evec) else None


def _signature(evec: Sequence[float]) -> Optional[str]:
    if len(evec) != 3:
        return None
    try:
        return classify_signature(e_to_h(evec)).label.value
    except EigentopeError:
        return None


def records_for_word(w: Word, config: Config) -> List[EigentopeRecord]:
    """Isolated eigenvectors of ``w`` with their spin data (4-D only)."""
    records = []
    roots = find_fixed_points(w, config, grid_step=config.scan_grid_step, max_iter=30)
    for root in roots:
        if not root.isolated:
            continue
        rec = dict(
            word=w.render(),
            context=w.context.value,
            evec=root.evec,
            residual=root.residual,
            signature=_signature(root.evec),
            fsymbol=_f_symbol(root.evec),
        )
        if w.context is not Context.E3:
            try:
                s = spin(w, root.evec, max_q=config.max_q, config=config)
                rec.update(
                    q=s.q,
                    lambda_q=s.lambda_q,
                    J=str(s.J),
                    ortho_residual=s.ortho_residual,
                    det_residual=s.det_residual,
                )
            except EigentopeError as err:
                log.debug(f"[Scan] {w.render()} at {tuple(root.evec)}: no spin ({err})")
                rec.update(spin_error=str(err))
        records.append(EigentopeRecord(**rec))
    return records


def _scan_one(args):
    w, config = args
    return w, period(w, w.context, config=config), records_for_word(w, config)


class EigentopeScanner:
    """Runs a word scan and collects records plus the summary of negative claims."""

    def __init__(self, config: Optional[Config] = None, logger=None):
        self.config = config or Config()
        self.logger = get_logger(logger)

    def run(
        self,
        context: Context | str = Context.E4,
        max_len: Optional[int] = None,
        max_q: Optional[int] = None,
        filters: Sequence[Callable[[EigentopeRecord], bool]] = (),
        prune: bool = True,
    ):
        context = Context.parse(context)
        if context is Context.P4:
            context = Context.E4
        max_len = max_len or self.config.max_len
        config = self.config.with_overrides(max_q=max_q)

        all_words = list(enumerate_words(context, max_len))
        words = list(reduced_words(context, max_len)) if prune else all_words
        summary = ScanSummary(context.value, max_len, words_enumerated=len(all_words))
        self.logger.info(
            f"[Scan] {context.value} up to length {max_len}: "
            f"{len(words)} of {len(all_words)} words after reduction"
        )

        tasks = [(w, config) for w in words]
        if config.workers > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(_scan_one, tasks, chunksize=16))
        else:
            results = [_scan_one(t) for t in tasks]

        records: List[EigentopeRecord] = []
        for w, q, recs in results:
            summary.words_scanned += 1
            if q is not None:
                summary.observed_periods.add(q)
            for rec in recs:
                if filters and not all(f(rec) for f in filters):
                    continue
                records.append(rec)
                if rec.q is not None:
                    summary.observed_spins.add(rec.q)
                if rec.fsymbol and any(
                    math.isfinite(v) and abs(v - TARGET_F) < TARGET_F_TOL for v in rec.fsymbol
                ):
                    summary.f5_found.append(f"{rec.word}@{list(rec.evec)}")

        records.sort(key=lambda r: (r.word, r.evec))
        self.logger.info(
            f"[Scan] {len(records)} eigentope records; periods {sorted(summary.observed_periods)}"
        )
        return records, summary


def scan_words(
    context: Context | str = Context.E4,
    max_len: Optional[int] = None,
    max_q: Optional[int] = None,
    filters: Sequence[Callable[[EigentopeRecord], bool]] = (),
    config: Optional[Config] = None,
    prune: bool = True,
    logger=None,
):
    """Scan all reduced words up to ``max_len``; returns ``(records, summary)``."""
    return EigentopeScanner(config, logger).run(context, max_len, max_q, filters, prune)


__all__ = [
    "SCAN_ALPHABET",
    "ScanSummary",
    "enumerate_words",
    "reduced_words",
    "records_for_word",
    "EigentopeScanner",
    "scan_words",
]
