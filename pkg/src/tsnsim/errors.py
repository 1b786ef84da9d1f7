"""Exception types raised by the simulator."""


class SimulationError(Exception):
    """Base class for all simulator errors."""


class PlacementError(SimulationError):
    """Scenario geometry could not be realized (e.g. too many small cells)."""


class VisibilityError(SimulationError):
    """A satellite is not visible from the requested terminal."""


class AssignmentError(SimulationError):
    """A rate was requested for a link that is not part of the assignment."""


class ClassificationError(SimulationError):
    """A swap candidate does not match any of the recognized shapes."""


class SwapFeasibilityError(SimulationError):
    """A swap violates the matching feasibility conditions."""


class LoadSplitError(SimulationError):
    """Traffic cannot be split (positive load but no backhaul links)."""


class OracleBoundsError(SimulationError):
    """An exhaustive oracle was called beyond its tractable instance size."""


class ConfigError(SimulationError):
    """A run configuration is malformed."""
