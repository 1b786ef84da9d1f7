"""tsnsim: simulator for LEO-backhauled terrestrial-satellite data offloading."""

from .scenario import (
    Scenario, ScenarioConfig, Cell, User, Satellite,
    generate_scenario, coverage_matrix,
)
from .channel import (
    RadioParams, ChannelRealization, KaGeometry,
    sample_realization, offaxis_gain,
)

__version__ = "0.1.0"

__all__ = [
    "Scenario", "ScenarioConfig", "Cell", "User", "Satellite",
    "generate_scenario", "coverage_matrix",
    "RadioParams", "ChannelRealization", "KaGeometry",
    "sample_realization", "offaxis_gain",
    "__version__",
]
