#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exception hierarchy for chaos_mwu.

DomainError covers invalid inputs. AnalysisFailure subclasses are the named
negative outcomes of analyses (nothing found, not absorbed, ...). The analyze
command records them per entry in its report bundle and still exits 0; exit
code 3 is reserved for unexpected exceptions.
"""


class ChaosMWUError(Exception):
    """Base class for all chaos_mwu errors."""


class DomainError(ChaosMWUError, ValueError):
    """Input outside the domain of an operation."""


class NoCriticalPoints(DomainError):
    """The map has no critical points (a <= 4) and is monotone."""

    def __init__(self, rate: float):
        super().__init__(f"a={rate!r} <= 4: the map is monotone and has no critical points")
        self.rate = rate


class AnalysisFailure(ChaosMWUError):
    """An analysis ran to completion without producing its object."""

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context


class NotFound(AnalysisFailure):
    """No periodic orbit, witness or anchor on the search grid."""


class NotAbsorbed(AnalysisFailure):
    """Orbits still outside the absorbing set when the step cap was reached."""


class NotExpanded(AnalysisFailure):
    """Interval images did not cover the target set within the step cap, or left it again."""


class NotTracked(AnalysisFailure):
    """Symbolic tracking refinement stalled."""


class PrecisionExhausted(AnalysisFailure):
    """Working precision cannot resolve the intervals involved."""


class OutputError(ChaosMWUError):
    """An output file could not be written or an input file read."""


class _Unbracketed:
    """Marker for a threshold that never passes on the scanned grid."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBRACKETED"

    def __reduce__(self):
        return (_Unbracketed, ())


UNBRACKETED = _Unbracketed()

__all__ = [
    'ChaosMWUError',
    'DomainError',
    'NoCriticalPoints',
    'AnalysisFailure',
    'NotFound',
    'NotAbsorbed',
    'NotExpanded',
    'NotTracked',
    'PrecisionExhausted',
    'OutputError',
    'UNBRACKETED',
]
