from .interpreter import *
from .dispatcher import *

__all__ = [
    "Interpreter",
    "Instruction",
    "CommandConfig",
    "DispatcherBase",
]
