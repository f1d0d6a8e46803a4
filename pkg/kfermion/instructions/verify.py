from typing import Any

from ..interpreter import Instruction
from ..report import Report
from ..suites import run_suite


class SuiteInstruction(Instruction):
    """One verification suite; the suite name is bound at registration."""

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        if args:
            raise ValueError("unexpected token(s) after the suite name: {}".format(args))
        return []

    @staticmethod
    def syntax() -> str:
        return ""

    def __init__(self, name: str) -> None:
        self.name = name

    def execute(self) -> Report:
        parallel = bool(self.config and self.config.parallel)
        return run_suite(self.name, parallel=parallel)


class SummaryInstruction(Instruction):
    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        return len(args) == 0

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        return []

    @staticmethod
    def syntax() -> str:
        return "(no arguments)"

    def __init__(self, interpreter: Any) -> None:
        self.interpreter = interpreter

    def execute(self) -> Report:
        commands = {name: klass.syntax() for name, (klass, _) in self.interpreter.instruction_set.items()}
        return Report("summary", True, {"commands": commands})

    def payload(self, report: Report) -> Any:
        return report.details

    def as_text(self, report: Report) -> str:
        return self.interpreter.summary()

    def as_rows(self, report: Report) -> list[list[Any]]:
        return [["command", "syntax"]] + [[k, v] for k, v in report.details["commands"].items()]
