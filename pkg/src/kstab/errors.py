"""Exceptions shared across modules.

``DomainError`` marks a well-formed request the mathematics cannot serve
(missing curves, a degenerate pair, an invalid weight).  The CLI maps it to
exit status 1.
"""


class DomainError(ValueError):
    pass


class IncompleteCandidates(DomainError):
    """The candidate curves cannot account for the negative part."""
