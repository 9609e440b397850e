from .cohomology import Cohomology
from .euler import Euler
from .obstruction import Obstruction
from .paper import Paper
from .spectral import Spectral

__all__ = [
    "Cohomology",
    "Euler",
    "Obstruction",
    "Paper",
    "Spectral",
]
