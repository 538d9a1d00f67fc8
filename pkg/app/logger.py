#!/usr/bin/env python3
"""
Logging setup
Loggers are named after the component and messages carry a bracketed tag,
e.g. "[Decide] branch=CASE_II". Only the CLI installs handlers.
"""

import logging

import coloredlogs

LOG_FORMAT = "%(asctime)s %(levelname)s %(message)s"


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(f"spectral.{name}")


def setup_logging(level: str = "WARNING") -> None:
    coloredlogs.install(level=level.upper(), fmt=LOG_FORMAT, logger=logging.getLogger("spectral"))
