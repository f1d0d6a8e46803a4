from typing import Any, Type

from ..exceptions import EmptyDispatchError, DispatcherError
from ..report import Report
from .interpreter import Instruction


class DispatcherBase(Instruction):
    """Picks one of several instructions by a branch keyword. Only useful subclassed.

    Subclasses register their branches with `register_target` inside their constructor,
    then call `super().__init__()` with the branch keyword followed by the remaining
    tokens. The tokens are parsed by the chosen instruction class and the instance is
    kept as `target`.

    Execution and every renderer are forwarded to `target`, so the interpreter treats a
    dispatcher like the instruction it selected.
    """

    branches: dict[str, tuple[Type[Instruction], list[Any]]]
    target: Instruction

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        return list(args)

    def __init__(self, branch: str, *tokens: Any) -> None:
        branches = getattr(self, "branches", {})
        if len(branches) == 0:
            raise EmptyDispatchError("Dispatcher has no branches to target")
        if branch not in branches:
            raise DispatcherError("'{}' is not a valid dispatch target; choose from {}".format(branch, sorted(branches)))

        klass, args = branches[branch]
        self.target = klass(*args, *klass.parse_arguments(list(tokens)))

    def register_target(self, key: str, instruction: Type[Instruction], *args: Any) -> "DispatcherBase":
        """Registers `instruction` under the branch keyword `key`; `args` lead its constructor arguments."""
        if not hasattr(self, "branches"):
            self.branches = {}
        self.branches[key] = (instruction, list(args))
        return self

    def execute(self) -> Report:
        self.target.config = self.config
        return self.target.execute()

    def payload(self, report: Report) -> Any:
        return self.target.payload(report)

    def as_text(self, report: Report) -> str:
        return self.target.as_text(report)

    def as_rows(self, report: Report) -> list[list[Any]]:
        return self.target.as_rows(report)
