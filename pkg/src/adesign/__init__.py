"""adesign - exact t-design and t-adesign constructions, classification and bounds."""

__version__ = "0.1.0"

from adesign.builders import ConstructionReport
from adesign.cli import main
from adesign.errors import AdesignError
from adesign.incidence import Classification, IncidenceStructure, Verdict, classify, from_blocks

__all__ = [
    "AdesignError",
    "Classification",
    "ConstructionReport",
    "IncidenceStructure",
    "Verdict",
    "classify",
    "from_blocks",
    "main",
]
