class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation (negative κ, negative level, ...)."""

class GrassmannParityError(DomainError):
    """Raised when a Grassmann coherent-state label carries an even part."""

class BisectionError(ArithmeticError):
    """Raised when Sturm bisection cannot bracket the requested eigenvalues."""

class SerializationError(ValueError):
    """Raised when a JSON payload does not follow the expected schema."""

class InstructionNotFoundError(Exception):
    """Raised when an unregistered subcommand has been encountered."""

class CommandSyntaxError(Exception):
    """Raised when an Instruction does not have valid arguments."""

class DispatcherError(Exception):
    """Raised when there is a generic problem in a Dispatcher"""

class EmptyDispatchError(DispatcherError):
    """Raised when a DispatcherBase is instantiated directly, without being subclassed."""
