import logging

import pytest

from py_jmfree.logger import LEVEL_NAMES, ROOT_LOGGER, Logger


def test_module_loggers_are_children_of_the_package_logger():
    Logger.for_module("py_jmfree.jm_model")
    root = logging.getLogger(ROOT_LOGGER)
    child = logging.getLogger(f"{ROOT_LOGGER}.jm_model")
    assert len(root.handlers) == 1
    assert not child.handlers
    assert child.parent is root


def test_levels_round_trip():
    logger = Logger()
    previous = logger.get_level()
    try:
        for name in LEVEL_NAMES:
            logger.set_level(name)
            assert logger.get_level() == name
        logger.set_level("WARN")
        assert logger.is_enabled("error")
        assert not logger.is_enabled("info")
    finally:
        logger.set_level(previous)


def test_unknown_level_is_rejected():
    with pytest.raises(ValueError):
        Logger().set_level("verbose")


def test_trace_messages_reach_handlers(caplog):
    logger = Logger.for_module("py_jmfree.tests")
    with caplog.at_level(logging.DEBUG - 5, logger=f"{ROOT_LOGGER}.tests"):
        logger.trace("class counts for %s", "X X")
    assert "class counts for X X" in caplog.text
