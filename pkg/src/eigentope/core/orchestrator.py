"""Routing orchestrator for eigentope.

`EigentopeEngine` is the single entry point behind the command line: it holds
one validated `Config` and one logger, dispatches each job (relation suites,
fixed-point searches, spins, scans, reference tables) to the module that does
the work and wraps the result rows in a `ReportingService`.
"""

from pathlib import Path
from typing import List, Optional, Sequence

from eigentope.core.config import Config
from eigentope.core.errors import ConfigError
from eigentope.core.models import Context, ESymbol
from eigentope.eigen.catalog import append_catalog
from eigentope.eigen.scan import scan_words
from eigentope.eigen.solver import find_fixed_points, grid_oracle, oracle_misses
from eigentope.eigen.spin import conformal_check, spin
from eigentope.groups.words import as_word, period_report, verify_suite
from eigentope.reporting.reporting_service import ReportingService
from eigentope.reporting.tables import eigen_claim_rows, h_table_rows, spin_table_rows
from eigentope.utils.logger import get_logger


class EigentopeEngine:
    """Dispatches eigentope jobs and wraps their rows for reporting.

    Parameters
    ----------
    config : Config, optional
        Validated run configuration; defaults are used when omitted.
    logger : logging.Logger, optional
        Receives the tagged progress messages of every service.
    """

    def __init__(self, config: Optional[Config] = None, logger=None):
        self.config = config or Config()
        self.logger = get_logger(logger)

    def _report(self, rows: List[dict], title: str) -> ReportingService:
        return ReportingService(rows, title=title, logger=self.logger)

    # ------------------------------------------------------------------
    def relations(self, suite: str) -> ReportingService:
        reports = verify_suite(suite, config=self.config, logger=self.logger)
        return self._report([r.as_dict() for r in reports], f"relations {suite}")

    def order(self, word: str, context: Context | str = Context.E4, samples=None, max_q=None):
        w = as_word(word, context)
        q, singular = period_report(w, w.context, samples, max_q, self.config)
        row = {"word": w.render(), "context": w.context.value, "order": q, "singular": singular}
        return self._report([row], f"order {w.render()}")

    def eigen(self, word: str, context: Context | str = Context.E4, oracle: bool = False):
        """Fixed points of ``word``; with ``oracle`` the brute-force grid misses are appended."""
        w = as_word(word, context)
        roots = find_fixed_points(w, self.config, w.context)
        rows = [{"word": w.render(), **r.as_dict()} for r in roots]
        if oracle:
            step = 0.01 if w.context is Context.E3 else 0.02
            misses = oracle_misses(roots, grid_oracle(w, self.config, w.context, step=step), step)
            self.logger.info(f"[Eigen] grid oracle: {len(misses)} minima without a Newton root")
            rows.extend(
                {"word": w.render(), "evec": tuple(float(v) for v in m), "oracle_miss": True}
                for m in misses
            )
        return self._report(rows, f"eigenvectors of {w.render()}")

    def spin(self, word: str, evec: Sequence[float], strict: bool = False):
        s = spin(word, evec, strict=strict, config=self.config)
        c = conformal_check(word, evec)
        row = {
            "word": as_word(word, Context.P4).render(),
            "evec": list(ESymbol(tuple(evec))),
            **s.as_dict(),
            "conformal_residual": c.conformal_residual,
            "conformal_det_residual": c.det_residual,
        }
        return self._report([row], f"spin of {row['word']}")

    def scan(
        self,
        context: Context | str = Context.E4,
        max_len: Optional[int] = None,
        prune: bool = True,
        catalog: Optional[str | Path] = None,
    ):
        """Run a word scan and merge its records into the catalog file."""
        records, summary = scan_words(
            context, max_len, config=self.config, prune=prune, logger=self.logger
        )
        path = Path(catalog or self.config.catalog_path)
        merged = append_catalog(records, path)
        self.logger.info(f"[Scan] catalog {path} now holds {len(merged)} records")
        return self._report([r.to_dict() for r in records], "scan"), summary

    def tables(self, names: Sequence[str] = ("h_tables", "spin_table", "eigen_claims")):
        """Recomputed reference tables keyed by name; only the requested ones are built."""
        builders = {
            "h_tables": lambda: self._report(h_table_rows(), "integer polytope H-symbols"),
            "spin_table": lambda: self._report(spin_table_rows(self.config), "spin table"),
            "eigen_claims": lambda: self._report(eigen_claim_rows(), "published eigentopes"),
        }
        unknown = [n for n in names if n not in builders]
        if unknown:
            raise ConfigError(f"unknown table(s): {', '.join(unknown)}")
        return {name: builders[name]() for name in names}
