import json
import logging

import pytest

from uppertail.config import LogFormat, LPBackendName, get_settings
from uppertail.extremal import HighsBackend, TableauBackend, create_lp_backend
from uppertail.logging_config import configure_logging


def test_defaults():
    settings = get_settings()
    assert settings.threads == 1
    assert settings.lp_backend == LPBackendName.TABLEAU
    assert settings.csv_schema == "uppertail/1"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("UPTAIL_THREADS", "4")
    monkeypatch.setenv("UPTAIL_LP_BACKEND", "highs")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.threads == 4
    assert isinstance(create_lp_backend(), HighsBackend)
    assert isinstance(create_lp_backend("tableau"), TableauBackend)


def test_unknown_backend():
    with pytest.raises(ValueError):
        create_lp_backend("simplex-by-hand")


def test_json_logging(capsys):
    configure_logging("debug", LogFormat.JSON)
    logging.getLogger("uppertail.test").info("search done")
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["message"] == "search done"
    assert record["levelname"] == "INFO"
    assert logging.getLogger().level == logging.DEBUG
