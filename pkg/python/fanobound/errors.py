"""
Error taxonomy shared by every engine and by the command line.

Every error is a ValueError so callers that only know "bad input" keep
working; the CLI reads `exit_code` to pick the process status.
"""
# this_file: python/fanobound/errors.py

from typing import Optional


class FanoboundError(ValueError):
    """Base class for all library errors."""

    exit_code = 1


class UsageError(FanoboundError):
    """Arguments are malformed or outside an operation's domain."""


class ParseError(UsageError):
    """An instance file, flag or literal could not be parsed."""

    def __init__(self, message: str, job_index: Optional[int] = None):
        if job_index is not None:
            message = f"job {job_index}: {message}"
        super().__init__(message)
        self.job_index = job_index


class NonInvertibleError(UsageError):
    """A truncated series with zero constant term was inverted."""


class DegenerateInputError(UsageError):
    """A quadric was given by the zero matrix."""


class TableError(UsageError):
    """A lookup fell outside a classification table row."""


class HypothesisError(FanoboundError):
    """A hypothesis of a cited lemma or theorem does not hold."""

    exit_code = 2

    def __init__(self, message: str, rule: Optional[str] = None):
        if rule is not None:
            message = f"{message} [{rule}]"
        super().__init__(message)
        self.rule = rule


class FormulaInapplicableError(HypothesisError):
    """The residue closed form is undefined for these parameters."""


class ImpossibleIndexError(HypothesisError):
    """A Fano index above dim + 1 was requested."""


# Report status for a suite that found a counterexample (not an exception).
EXIT_COUNTEREXAMPLE = 3
