from .tables import StirlingInstruction, BellInstruction, AuditInstruction
from .spectrum import SpectrumInstruction
from .coherent import CoherentInstruction
from .bargmann import BargmannInstruction
from .calogero import CalogeroInstruction
from .verify import SuiteInstruction, SummaryInstruction

__all__ = [
    "StirlingInstruction",
    "BellInstruction",
    "AuditInstruction",
    "SpectrumInstruction",
    "CoherentInstruction",
    "BargmannInstruction",
    "CalogeroInstruction",
    "SuiteInstruction",
    "SummaryInstruction",
]
