"""Command-line entry point: wires every subcommand into an `Interpreter`."""
import logging
import sys
from typing import Any

from .interpreter import DispatcherBase, Interpreter
from .interpreter.parsers import expect_options, typed_parser
from .instructions import (
    AuditInstruction,
    BargmannInstruction,
    BellInstruction,
    CalogeroInstruction,
    CoherentInstruction,
    SpectrumInstruction,
    StirlingInstruction,
    SuiteInstruction,
    SummaryInstruction,
)
from .suites import SUITES

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class VerifyDispatcher(DispatcherBase):
    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        try:
            options = expect_options(args, (), ("suite",))
            assert isinstance(options.get("suite", "all"), str)
        except (ValueError, AssertionError):
            return False
        return True

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        return [expect_options(args, (), ("suite",)).get("suite", "all")]

    @staticmethod
    def syntax() -> str:
        return "[--suite all|{}]".format("|".join(SUITES))

    def __init__(self, *args: Any) -> None:
        self.register_target("all", SuiteInstruction, "all")
        for name in SUITES:
            self.register_target(name, SuiteInstruction, name)

        super().__init__(*args)


def build_interpreter() -> Interpreter:
    interpreter = Interpreter(parser=typed_parser)
    interpreter.register("stirling", StirlingInstruction)
    interpreter.register("bell", BellInstruction)
    interpreter.register("audit", AuditInstruction)
    interpreter.register("spectrum", SpectrumInstruction)
    interpreter.register("coherent", CoherentInstruction)
    interpreter.register("bargmann-check", BargmannInstruction)
    interpreter.register("calogero", CalogeroInstruction)
    interpreter.register("verify", VerifyDispatcher)
    interpreter.register("summary", SummaryInstruction, interpreter)
    return interpreter


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT)
    argv = sys.argv[1:] if argv is None else argv
    return build_interpreter().run(argv)


if __name__ == "__main__":
    sys.exit(main())
