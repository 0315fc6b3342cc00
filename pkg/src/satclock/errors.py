"""Exception hierarchy shared across the package.

``DomainError`` covers physically or mathematically invalid inputs and
unsolvable requests; ``ScenarioFormatError`` covers malformed scenario
files. The CLI maps them to distinct exit codes.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Invalid parameter value or an unsatisfiable request."""


class UnsatisfiableDistanceError(DomainError):
    """No code distance within the search bound meets the failure target."""


class UnreachableFidelityError(DomainError):
    """The recurrence map cannot reach the requested output fidelity."""


class SimulationBudgetError(DomainError):
    """A simulation would exceed its elementary-draw budget."""


class ScenarioFormatError(ValueError):
    """A scenario document has unknown, missing, or ill-typed fields."""
