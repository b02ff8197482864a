import logging
import sys
from pathlib import Path

import pytest


def _setup_paths():
    repo = Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(repo))
    sys.path.insert(0, str(repo / "src"))
    return repo


_setup_paths()

from eigentope.core.config import Config, load_config  # noqa: E402
from eigentope.core.errors import ConfigError  # noqa: E402
from eigentope.utils.logger import ColorFormatter, LOGGER_NAME, setup_logger  # noqa: E402


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("EIGENTOPE_CATALOG", "EIGENTOPE_SEED", "EIGENTOPE_TOLERANCE", "EIGENTOPE_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


@pytest.fixture
def fresh_logger():
    logger = logging.getLogger(LOGGER_NAME)
    saved = list(logger.handlers)
    for h in saved:
        logger.removeHandler(h)
    yield logger
    for h in list(logger.handlers):
        logger.removeHandler(h)
        h.close()
    for h in saved:
        logger.addHandler(h)


def test_defaults_are_valid(clean_env):
    config = load_config()
    assert config == Config().validate()
    assert config.tolerance == 1e-9
    assert config.output_format == "text"


def test_overrides_ignore_none(clean_env):
    config = load_config(seed=None, max_q=12)
    assert config.seed == Config().seed
    assert config.max_q == 12


def test_environment_overrides(clean_env):
    clean_env.setenv("EIGENTOPE_SEED", "7")
    clean_env.setenv("EIGENTOPE_TOLERANCE", "1e-6")
    clean_env.setenv("EIGENTOPE_CATALOG", "/tmp/cat.json")
    config = load_config()
    assert (config.seed, config.tolerance, config.catalog_path) == (7, 1e-6, "/tmp/cat.json")


def test_explicit_override_beats_environment(clean_env):
    clean_env.setenv("EIGENTOPE_SEED", "7")
    assert load_config(seed=11).seed == 11


@pytest.mark.parametrize(
    "env, value",
    [("EIGENTOPE_SEED", "seven"), ("EIGENTOPE_TOLERANCE", "tiny"), ("EIGENTOPE_LOG_LEVEL", "loud")],
)
def test_bad_environment(clean_env, env, value):
    clean_env.setenv(env, value)
    with pytest.raises(ConfigError):
        load_config()


@pytest.mark.parametrize(
    "overrides",
    [
        {"tolerance": 0.0},
        {"max_q": -1},
        {"box": (1.0, 0.0)},
        {"output_format": "xml"},
        {"log_level": "verbose"},
        {"no_such_field": 1},
    ],
)
def test_invalid_config(clean_env, overrides):
    with pytest.raises(ConfigError):
        load_config(**overrides)


def test_setup_logger_writes_file(tmp_path, fresh_logger):
    logger = setup_logger("normal", tmp_path / "logs")
    logger.info("[Scan] hello")
    for h in logger.handlers:
        h.flush()
    text = (tmp_path / "logs" / "eigentope.log").read_text(encoding="utf-8")
    assert "[Scan] hello" in text


def test_setup_logger_is_idempotent(fresh_logger):
    first = setup_logger("normal", None)
    count = len(first.handlers)
    second = setup_logger("silent", None)
    assert second is first
    assert len(second.handlers) == count
    assert all(h.level == logging.ERROR for h in second.handlers)


def test_color_formatter_wraps_message():
    record = logging.LogRecord("x", logging.WARNING, __file__, 1, "careful", None, None)
    text = ColorFormatter("%(message)s").format(record)
    assert text.startswith(ColorFormatter.COLORS["WARNING"])
    assert text.endswith(ColorFormatter.RESET)
    assert "careful" in text


def test_setup_logger_adds_file_after_console_only_run(tmp_path, fresh_logger):
    setup_logger("normal", None)
    logger = setup_logger("normal", tmp_path / "logs")
    setup_logger("debug", tmp_path / "logs")
    files = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
    assert len(files) == 1
    assert len(logger.handlers) == 2
    logger.info("[Relations] written")
    files[0].flush()
    text = (tmp_path / "logs" / "eigentope.log").read_text(encoding="utf-8")
    assert "[Relations] written" in text


def test_setup_logger_one_file_per_directory(tmp_path, fresh_logger):
    setup_logger("normal", tmp_path / "a")
    logger = setup_logger("normal", tmp_path / "b")
    paths = sorted(
        Path(h.baseFilename).parent.name
        for h in logger.handlers
        if isinstance(h, logging.FileHandler)
    )
    assert paths == ["a", "b"]
