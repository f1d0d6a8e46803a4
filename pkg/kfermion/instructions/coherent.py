from fractions import Fraction
from typing import Any

from ..analytic.coherent import DEFAULT_TOLERANCE, coherent_diagnostics, coherent_state
from ..interpreter import Instruction
from ..interpreter.parsers import expect_options
from ..report import Report


def _as_kappa(value: Any) -> Fraction:
    # decimals are read digit for digit, not through their binary float
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


class CoherentInstruction(Instruction):
    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        try:
            options = expect_options(args, ("kappa", "z"), ("tol",))
            assert not isinstance(options["kappa"], (bool, str, list, complex))
            assert _as_kappa(options["kappa"]) > 0
            assert not isinstance(options["z"], (bool, str, list))
            complex(options["z"])
            if "tol" in options:
                assert 0 < float(options["tol"]) < 1
        except (ValueError, TypeError, AssertionError):
            return False
        return True

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        options = expect_options(args, ("kappa", "z"), ("tol",))
        return [_as_kappa(options["kappa"]), complex(options["z"]), float(options.get("tol", DEFAULT_TOLERANCE))]

    @staticmethod
    def syntax() -> str:
        return "--kappa <k> --z <complex> [--tol <tail>]"

    kappa: Fraction
    z: complex
    tol: float

    def __init__(self, kappa: Fraction, z: complex, tol: float = DEFAULT_TOLERANCE) -> None:
        self.kappa = kappa
        self.z = z
        self.tol = tol

    def execute(self) -> Report:
        report = coherent_diagnostics(self.kappa, self.z, self.tol)
        report.details["coefficients"] = coherent_state(self.kappa, self.z, self.tol).coefficients
        return report

    def payload(self, report: Report) -> Any:
        return {"passed": report.ok(), **report.details}

    def as_text(self, report: Report) -> str:
        details = report.details
        lines = report.summary_lines()
        lines.append("D = {}, residual = {:.3e}, norm error = {:.3e}".format(
            details["D"], details["residual"], details["norm_error"]))
        return "\n".join(lines)

    def as_rows(self, report: Report) -> list[list[Any]]:
        return [["n", "re", "im"]] + [[n, c.real, c.imag] for n, c in enumerate(report.details["coefficients"])]
