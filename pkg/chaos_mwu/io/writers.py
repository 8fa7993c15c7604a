#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
CSV and JSON output with an embedded run manifest.

Payloads are byte-stable: reals are written with 17 significant digits, JSON
keys are sorted and no timestamps are recorded.
"""

import csv
import json
import os
from pathlib import Path

from chaos_mwu import __version__
from chaos_mwu.errors import OutputError
from chaos_mwu.utils.logger import setup_logger
from chaos_mwu.utils.number_format import format_real, to_jsonable

logger = setup_logger("writers")

TOOL_NAME = "chaos-mwu"


def build_manifest(command: str, params: dict, seed=None) -> dict:
    """Manifest recorded in every output file."""
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "params": to_jsonable(params),
        "seed": seed,
    }


def manifest_text(manifest: dict) -> str:
    """Compact sorted JSON of a manifest."""
    return json.dumps(manifest, sort_keys=True, separators=(",", ":"))


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    return format_real(value)


def _prepare(path) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputError(f"cannot create directory {path.parent}: {e}") from e
    return path


def write_csv(path, header, rows, manifest: dict = None) -> int:
    """
    Write rows as CSV, preceded by a ``# manifest: {...}`` comment line.

    Args:
        path: Output file
        header: Column names
        rows: Iterable of row sequences
        manifest: Run manifest, omitted when None

    Returns:
        int: number of data rows written

    Raises:
        OutputError: the file cannot be written
    """
    path = _prepare(path)
    count = 0
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            if manifest is not None:
                handle.write(f"# manifest: {manifest_text(manifest)}\n")
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(v) for v in row])
                count += 1
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote {count} rows to {path}")
    return count


def read_csv(path):
    """
    Read a CSV written by write_csv.

    Returns:
        tuple: (manifest or None, header, rows as lists of strings)
    """
    manifest = None
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            lines = handle.read().splitlines()
    except OSError as e:
        raise OutputError(f"cannot read {path}: {e}") from e
    if lines and lines[0].startswith("# manifest: "):
        manifest = json.loads(lines[0][len("# manifest: "):])
        lines = lines[1:]
    table = list(csv.reader(lines))
    if not table:
        return manifest, [], []
    return manifest, table[0], table[1:]


def dumps_json(payload: dict, manifest: dict = None) -> str:
    body = dict(to_jsonable(payload))
    if manifest is not None:
        body["manifest"] = manifest
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def write_json(path, payload: dict, manifest: dict = None) -> None:
    """
    Write a JSON document with the manifest under ``"manifest"``.

    Raises:
        OutputError: the file cannot be written
    """
    path = _prepare(path)
    text = dumps_json(payload, manifest)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote JSON report to {path} ({os.path.getsize(path)} bytes)")
