#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Run configuration files for the CLI.

Flat UTF-8 text, one ``key = value`` per line, ``#`` starts a comment. Keys
mirror the long flags (``burn-in`` or ``burn_in`` for ``--burn-in``); flags given
on the command line override file values.
"""

from chaos_mwu.errors import DomainError, OutputError
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("config_file")


def parse_config_text(text: str) -> dict:
    """
    Parse configuration text.

    Returns:
        dict: option name (dashes turned into underscores) -> raw string value

    Raises:
        DomainError: a line is not of the form key = value
    """
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {number}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise DomainError(f"config line {number}: empty key")
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def read_config(path) -> dict:
    """
    Read a configuration file.

    Raises:
        OutputError: the file cannot be read
        DomainError: malformed content
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise OutputError(f"cannot read config {path}: {e}") from e
    values = parse_config_text(text)
    logger.debug(f"Loaded {len(values)} settings from {path}")
    return values
