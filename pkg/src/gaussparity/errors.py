"""Exception types raised by the gaussparity library."""


class GaussError(Exception):
    """Base class for all gaussparity errors."""


class ParseError(GaussError):
    """A Gauss code or flat code is syntactically malformed."""


class ValidationError(GaussError):
    """A diagram violates a structural invariant (label multiplicity, O/U or
    sign mismatch, non-dense positions)."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UnknownLabel(GaussError):
    """A chord label is not present in the diagram."""


class NotIntersecting(GaussError):
    """An intersection number was requested for two chords that do not cross."""


class BadModulus(GaussError):
    """A modulus below 2 was passed to a mod-n parity projection."""


class ZeroIndex(GaussError):
    """Index 0 is excluded from the signed-cardinality A family."""


class BadIndex(GaussError):
    """An absolute-parity index below 1 was passed to the V family."""


class BadTuple(GaussError):
    """An index tuple is empty, not strictly increasing, or contains entries
    outside the allowed range for its family."""


class InapplicableMove(GaussError):
    """A move instance does not match the diagram it was applied to."""


class SingularChord(GaussError):
    """An operation that requires ordinary chords hit a singular one."""


class IncompleteResolution(GaussError):
    """A resolution assignment does not cover the singular label set exactly."""


class NoSingularChords(GaussError):
    """A resolution expansion was requested on a diagram with no singular chords."""


class InternalCheckError(GaussError):
    """A runtime self-check failed; indicates a bug, not a user error."""
