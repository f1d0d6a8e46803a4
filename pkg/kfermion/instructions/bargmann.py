from fractions import Fraction
from typing import Any

from ..analytic.bargmann import anticommutator_identities_check, faithfulness_check, intertwining_check
from ..analytic.grassmann import GrassmannElement, grassmann_coherent
from ..interpreter import Instruction
from ..interpreter.parsers import expect_options, is_exact, is_integer
from ..report import Report

DEFAULT_KAPPAS = (Fraction(1, 3), Fraction(1, 2), Fraction(2))


class BargmannInstruction(Instruction):
    """Bargmann calculus checks up to a polynomial degree, for one κ or a default sample."""

    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        try:
            options = expect_options(args, ("max_degree",), ("kappa",))
            assert is_integer(options["max_degree"]) and options["max_degree"] >= 1
            if "kappa" in options:
                assert is_exact(options["kappa"]) and options["kappa"] >= 0
        except (ValueError, AssertionError):
            return False
        return True

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        options = expect_options(args, ("max_degree",), ("kappa",))
        return [options["max_degree"], options.get("kappa")]

    @staticmethod
    def syntax() -> str:
        return "--max-degree <d> [--kappa <p/q>]"

    def __init__(self, max_degree: int, kappa: Fraction | int | None = None) -> None:
        self.max_degree = max_degree
        self.kappas = DEFAULT_KAPPAS if kappa is None else (Fraction(kappa),)

    def execute(self) -> Report:
        children = []
        for kappa0 in self.kappas:
            children.append(anticommutator_identities_check(kappa0, self.max_degree))
            if kappa0 == 0:
                # D^κ is the Fibonacci difference here; its module is the two-state Grassmann one
                children.append(grassmann_coherent(GrassmannElement.generator()))
                continue
            children.append(faithfulness_check(kappa0, self.max_degree))
            children.append(intertwining_check(kappa0, max(self.max_degree, 2)))
        return Report.aggregate("bargmann[max_degree={}]".format(self.max_degree), children)
