from fractions import Fraction
from typing import Any

from ..interpreter import Instruction
from ..interpreter.parsers import expect_options, is_exact, is_integer
from ..ordering import (
    PRINTED_TABLE_ROWS,
    bell,
    bell_limit_kappa0,
    bell_pattern_kappa0,
    compare_with_printed,
    stirling,
    wick_verify,
)
from ..report import Report

WICK_N_MAX = 40


class StirlingInstruction(Instruction):
    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        try:
            options = expect_options(args, ("r",), ("kappa",))
            assert is_integer(options["r"]) and options["r"] >= 1
            if "kappa" in options:
                assert is_exact(options["kappa"]) and options["kappa"] >= 0
        except (ValueError, AssertionError):
            return False
        return True

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        options = expect_options(args, ("r",), ("kappa",))
        return [options["r"], options.get("kappa")]

    @staticmethod
    def syntax() -> str:
        return "--r <order> [--kappa <p/q>]"

    r: int
    kappa: Fraction | None

    def __init__(self, r: int, kappa: Fraction | int | None = None) -> None:
        self.r = r
        self.kappa = None if kappa is None else Fraction(kappa)

    def execute(self) -> Report:
        table = stirling(self.r)
        check = wick_verify(table, max(self.r, WICK_N_MAX))
        shown = table if self.kappa is None else table.specialize(self.kappa)
        return Report(
            "stirling[r={}]".format(self.r),
            True,
            {"kappa": self.kappa, "table": shown},
            children=[check],
        )

    def as_text(self, report: Report) -> str:
        table = report.details["table"]
        lines = ["S({},{}) = {}".format(self.r, k, table.entry(k)) for k in range(1, self.r + 1)]
        lines.extend(report.children[0].summary_lines())
        return "\n".join(lines)

    def as_rows(self, report: Report) -> list[list[Any]]:
        table = report.details["table"]
        return [["k", "S"]] + [[k, str(table.entry(k))] for k in range(1, self.r + 1)]


class BellInstruction(Instruction):
    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        try:
            options = expect_options(args, ("max_r",), ("kappa",))
            assert is_integer(options["max_r"]) and options["max_r"] >= 1
            if "kappa" in options:
                assert is_exact(options["kappa"]) and options["kappa"] >= 0
        except (ValueError, AssertionError):
            return False
        return True

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        options = expect_options(args, ("max_r",), ("kappa",))
        return [options["max_r"], options.get("kappa")]

    @staticmethod
    def syntax() -> str:
        return "--max-r <order> [--kappa <p/q>]"

    max_r: int
    kappa: Fraction | None

    def __init__(self, max_r: int, kappa: Fraction | int | None = None) -> None:
        self.max_r = max_r
        self.kappa = None if kappa is None else Fraction(kappa)

    def execute(self) -> Report:
        values = {}
        for r in range(1, self.max_r + 1):
            value = bell(r)
            values[r] = value if self.kappa is None else value.specialize(self.kappa)

        children = []
        if self.kappa == 0:
            mismatches = [r for r in values if bell_limit_kappa0(r) != bell_pattern_kappa0(r)]
            children.append(Report("bell_kappa0_pattern", not mismatches, {"mismatches": mismatches}))
        return Report(
            "bell[max_r={}]".format(self.max_r),
            True,
            {"kappa": self.kappa, "bell": {str(r): v for r, v in values.items()}},
            children=children,
        )

    def as_text(self, report: Report) -> str:
        return "\n".join("B_{} = {}".format(r, v) for r, v in report.details["bell"].items())

    def as_rows(self, report: Report) -> list[list[Any]]:
        return [["r", "B_r"]] + [[int(r), str(v)] for r, v in report.details["bell"].items()]


class AuditInstruction(Instruction):
    """Printed-versus-computed verdicts. Fails only if the computed tables break the diagonal identity."""

    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        try:
            options = expect_options(args, (), ("max_r",))
            if "max_r" in options:
                assert is_integer(options["max_r"]) and 1 <= options["max_r"] <= PRINTED_TABLE_ROWS
        except (ValueError, AssertionError):
            return False
        return True

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        return [expect_options(args, (), ("max_r",)).get("max_r", PRINTED_TABLE_ROWS)]

    @staticmethod
    def syntax() -> str:
        return "[--max-r <order <= {}>]".format(PRINTED_TABLE_ROWS)

    def __init__(self, max_r: int = PRINTED_TABLE_ROWS) -> None:
        self.max_r = max_r

    def execute(self) -> Report:
        audit = compare_with_printed(self.max_r)
        checks = [wick_verify(stirling(r), WICK_N_MAX) for r in range(1, self.max_r + 1)]
        return Report("audit", True, {"audit": audit}, children=checks)

    def payload(self, report: Report) -> Any:
        return {"passed": report.ok(), **report.details["audit"].to_json()}

    def as_text(self, report: Report) -> str:
        audit = report.details["audit"]
        lines = ["{}: {}".format(e.label, e.verdict) for e in audit.entries]
        lines.extend("note: {}".format(n) for n in audit.notes)
        return "\n".join(lines)

    def as_rows(self, report: Report) -> list[list[Any]]:
        audit = report.details["audit"]
        return [["label", "printed", "computed", "verdict"]] + [
            [e.label, str(e.printed), str(e.computed), e.verdict] for e in audit.entries
        ]
