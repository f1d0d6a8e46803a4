from fractions import Fraction
from typing import Any

import numpy as np

from ..interpreter import Instruction
from ..interpreter.parsers import expect_options, is_integer
from ..report import Report
from ..spectral import (
    DEFAULT_GRIDS,
    DEFAULT_LENGTH,
    DEFAULT_LEVELS,
    MAX_LEVELS,
    ConvergenceReport,
    cs_verify,
    partner_isospectrality,
)

POTENTIALS = {"v0": ("V0",), "v1": ("V1",), "both": ("V0", "V1")}


class CalogeroInstruction(Instruction):
    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        try:
            options = expect_options(args, ("potential", "kappa"), ("levels", "grids", "length"))
            assert str(options["potential"]).lower() in POTENTIALS
            assert isinstance(options["kappa"], (int, float, Fraction)) and not isinstance(options["kappa"], bool)
            assert options["kappa"] > 0
            if "levels" in options:
                assert is_integer(options["levels"]) and 1 <= options["levels"] <= MAX_LEVELS
            if "grids" in options:
                grids = options["grids"]
                assert isinstance(grids, list) and len(grids) >= 3
                assert all(b > a for a, b in zip(grids, grids[1:]))
            if "length" in options:
                assert float(options["length"]) > 0
        except (ValueError, TypeError, AssertionError):
            return False
        return True

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        options = expect_options(args, ("potential", "kappa"), ("levels", "grids", "length"))
        return [
            str(options["potential"]).lower(),
            float(options["kappa"]),
            options.get("levels", DEFAULT_LEVELS),
            tuple(options.get("grids", DEFAULT_GRIDS)),
            float(options.get("length", DEFAULT_LENGTH)),
        ]

    @staticmethod
    def syntax() -> str:
        return "--potential v0|v1|both --kappa <k> [--levels <n>] [--grids <m1,m2,m3>] [--length <L>]"

    def __init__(self, potential: str, kappa: float, levels: int, grids: tuple[int, ...], length: float) -> None:
        self.families = POTENTIALS[potential]
        self.kappa = kappa
        self.levels = levels
        self.grids = grids
        self.length = length

    def _parallel(self) -> bool:
        return bool(self.config and self.config.parallel)

    def execute(self) -> Report:
        runs: list[ConvergenceReport] = [
            cs_verify(f, self.kappa, self.levels, self.grids, self.length, parallel=self._parallel())
            for f in self.families
        ]
        children = [run.to_report() for run in runs]
        if len(runs) == 2:
            children.append(partner_isospectrality(*runs))
        return Report.aggregate("calogero[κ={}]".format(self.kappa), children, runs=runs)

    def payload(self, report: Report) -> Any:
        return {"name": report.name, "passed": report.ok(), "checks": [c.to_json() for c in report.children]}

    def as_text(self, report: Report) -> str:
        lines = report.summary_lines()
        for run in report.details["runs"]:
            lines.append("{}: n, extrapolated, target, relative error".format(run.family))
            for n, (value, target, error) in enumerate(zip(run.extrapolated, run.targets, run.relative_errors)):
                lines.append("  {}, {:.10f}, {:.10f}, {:.3e}".format(n, value, target, error))
        return "\n".join(lines)

    def as_rows(self, report: Report) -> list[list[Any]]:
        rows: list[list[Any]] = [["family", "n", "extrapolated", "target", "relative_error"]]
        for run in report.details["runs"]:
            for n, (value, target, error) in enumerate(zip(run.extrapolated, run.targets, run.relative_errors)):
                rows.append([run.family, n, float(value), float(target), float(np.asarray(error))])
        return rows
