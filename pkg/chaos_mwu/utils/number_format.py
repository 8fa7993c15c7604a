#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("number_format")


def format_real(value) -> str:
    """
    Render a real number with 17 significant digits.

    Args:
        value: Number to format (int, float or numpy scalar)

    Returns:
        str: Decimal text that parses back to the same double
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0.0:
        # keep the sign of negative zero out of the output
        return "0"
    return f"{value:.17g}"


def parse_real(value, default=None):
    """
    Parse a number from user text.

    Args:
        value: String or number to parse
        default: Value returned when parsing fails

    Returns:
        float: Parsed value or the default
    """
    if value is None:
        return default
    if isinstance(value, (int, float)):
        return float(value)
    try:
        text = str(value).strip().replace("_", "")
        if not text:
            return default
        return float(text)
    except Exception as e:
        logger.error(f"Error parsing number '{value}': {str(e)}")
        return default


def format_interval(lo, hi) -> dict:
    """Interval as a JSON-ready {"lo", "hi"} mapping."""
    return {"lo": json_real(lo), "hi": json_real(hi)}


def json_real(value):
    """Finite reals as JSON numbers (repr round-trips exactly), others as nan/inf tokens."""
    value = float(value)
    if math.isfinite(value):
        return value if value != 0.0 else 0.0
    return format_real(value)


def to_jsonable(value):
    """
    Recursively convert report values for JSON output.

    Floats stay numbers; NaN and infinities, which JSON cannot carry, become the
    tokens of format_real.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if hasattr(value, "tolist"):
        return to_jsonable(value.tolist())
    if isinstance(value, float):
        return json_real(value)
    return str(value)
