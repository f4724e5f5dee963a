"""Exception taxonomy shared across the package.

Every error the CLI can surface maps to one of these; exit codes live in cli.py.
"""


class RaagError(Exception):
    """Base class for all package errors."""


class MalformedComplexError(RaagError):
    """Facet list violates the input contract (duplicates, sparse ids, bad types)."""


class NotFlagError(RaagError):
    """Operation requires a flag complex; carries a minimal non-face witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class QuotientDegenerateError(RaagError):
    """A vertex map collapses two vertices of one simplex."""


class FixtureError(RaagError):
    """Unknown fixture name or invalid fixture parameter."""


class CorruptComplexError(RaagError):
    """A chain complex failed the boundary-squared check."""


class CoverSpecError(RaagError):
    """Finite quotient data is inconsistent (moduli, vertices, ordering)."""


class WitnessRejectedError(RaagError):
    """An embedding witness is structurally malformed."""
