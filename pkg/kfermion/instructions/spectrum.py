from fractions import Fraction
from typing import Any

from ..fock import algebraic_spectrum, gap_analysis
from ..interpreter import Instruction
from ..interpreter.parsers import expect_options, is_exact, is_integer
from ..report import Report

OPERATORS = ("f+f-", "f-f+", "plus_minus", "minus_plus")


class SpectrumInstruction(Instruction):
    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        try:
            options = expect_options(args, ("kappa", "operator", "levels"))
            assert is_exact(options["kappa"]) and options["kappa"] >= 0
            assert options["operator"] in OPERATORS
            assert is_integer(options["levels"]) and options["levels"] >= 1
        except (ValueError, AssertionError):
            return False
        return True

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        options = expect_options(args, ("kappa", "operator", "levels"))
        return [options["kappa"], options["operator"], options["levels"]]

    @staticmethod
    def syntax() -> str:
        return "--kappa <p/q> --operator f+f-|f-f+ --levels <n>"

    def __init__(self, kappa: Fraction | int, operator: str, levels: int) -> None:
        self.kappa = Fraction(kappa)
        self.operator = operator
        self.levels = levels

    def execute(self) -> Report:
        eigenvalues = algebraic_spectrum(self.operator, self.kappa, self.levels)
        return Report(
            "spectrum[{} κ={}]".format(self.operator, self.kappa),
            True,
            {
                "kappa": self.kappa,
                "operator": self.operator,
                "eigenvalues": eigenvalues,
                "gaps": gap_analysis(eigenvalues),
            },
        )

    def payload(self, report: Report) -> Any:
        return report.details

    def as_text(self, report: Report) -> str:
        return ", ".join(str(v) for v in report.details["eigenvalues"])

    def as_rows(self, report: Report) -> list[list[Any]]:
        return [["n", "eigenvalue"]] + [[n, v] for n, v in enumerate(report.details["eigenvalues"])]
