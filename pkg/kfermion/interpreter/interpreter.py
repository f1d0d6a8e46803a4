import csv
import io
import logging
import sys

from typing import Callable, Type, Any, TextIO
from dataclasses import dataclass, field

from ..exceptions import *
from ..report import Report, dumps
from .parsers import *

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class CommandConfig:
    """Run-time configuration assembled from argv: one subcommand plus the global options."""
    keyword: str
    tokens: list[str] = field(default_factory=list)
    format: str = "json"
    output: str | None = None
    verbosity: int = 0
    parallel: bool = False

    @property
    def log_level(self) -> int:
        if self.verbosity < 0:
            return logging.ERROR
        return {0: logging.WARNING, 1: logging.INFO}.get(self.verbosity, logging.DEBUG)


class Instruction:
    """Base class for subcommands accepted by Interpreter. Used to implement custom instruction syntax.
    Allows for instruction arguments to be handled before anything is computed, resulting in a
    predictable exit code for bad input.

    Requires subclasses to implement `parse_arguments`, `syntax` and `execute`.

    `validate_arguments` is useful for sanity-checking arguments before execution.
    """
    config: CommandConfig | None = None

    @staticmethod
    def parse_arguments(args: list[Any]) -> list[Any]:
        """Parse arguments provided by the interpreter.

        Takes a list of typed tokens (already passed through the interpreter's parser) and returns a list
        of values those tokens translate to. These values will then be passed to the constructor of the
        Instruction, using the splat (*) operator. The returned list does not need to be the same length
        as the input.
        """
        raise NotImplementedError()

    @staticmethod
    def validate_arguments(args: list[str]) -> bool:
        """Check that given arguments are valid. Returns True by default.

        Implementations can check whether the raw tokens provided by the interpreter are valid,
        before anything is computed.
        """
        return True

    @staticmethod
    def syntax() -> str:
        raise NotImplementedError()

    def execute(self) -> Report:
        raise NotImplementedError()

    def payload(self, report: Report) -> Any:
        """JSON document for the report; defaults to the report itself."""
        return report

    def as_text(self, report: Report) -> str:
        return "\n".join(report.summary_lines())

    def as_rows(self, report: Report) -> list[list[Any]]:
        """CSV rows, header first."""
        rows: list[list[Any]] = [["check", "passed"]]
        rows.extend([child.name, child.ok()] for child in report.children or [report])
        return rows

    def render(self, report: Report, fmt: str) -> str:
        if fmt == "json":
            return dumps(self.payload(report))
        if fmt == "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            for row in self.as_rows(report):
                writer.writerow([_csv_cell(v) for v in row])
            return buffer.getvalue().rstrip("\n")
        return self.as_text(report)


def _csv_cell(value: Any) -> Any:
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value) if not isinstance(value, (int, str)) else value


def _split_global_options(argv: list[str]) -> CommandConfig:
    """Pulls the global options out of argv, wherever they appear; the first remaining token is the keyword."""
    fmt = "json"
    output = None
    verbosity = 0
    parallel = False
    rest: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token == "--json":
            fmt = "json"
        elif token == "--format":
            if i + 1 >= len(argv) or argv[i + 1] not in FORMATS:
                raise CommandSyntaxError("--format expects one of {}".format(", ".join(FORMATS)))
            fmt = argv[i + 1]
            i += 1
        elif token == "--output":
            if i + 1 >= len(argv):
                raise CommandSyntaxError("--output expects a path")
            output = argv[i + 1]
            i += 1
        elif token in ("-v", "--verbose"):
            verbosity = max(verbosity, 0) + 1
        elif token == "-vv":
            verbosity = 2
        elif token in ("-q", "--quiet"):
            verbosity = -1
        elif token == "--parallel":
            parallel = True
        else:
            rest.append(token)
        i += 1
    if not rest:
        raise CommandSyntaxError("no subcommand given")
    keyword, *tokens = rest
    return CommandConfig(keyword, tokens, fmt, output, verbosity, parallel)


class Interpreter:
    """Maps subcommand keywords to Instruction classes and runs one of them per invocation.

    Instruction classes are registered to a unique keyword; `run` splits argv into global options,
    the keyword and its tokens, validates the tokens with the class' `validate_arguments`, builds the
    instruction from the parsed tokens, executes it and writes the rendered report.

    Exit codes: 0 when every requested check passed, 1 when a check failed, 2 for usage errors
    (unknown subcommand, invalid arguments, values outside an operation's domain).
    """
    instruction_set: dict[str, tuple[Type[Instruction], tuple[Any, ...]]]
    errors: list[Exception]

    def __init__(self, parser: Callable[[list[str]], Any] = typed_parser) -> None:
        self.parser = parser
        self.instruction_set = {}
        self.errors = []

    def register(self, keyword: str, instruction: Type[Instruction], *args: Any) -> None:
        """Registers an instruction class to a keyword. Any leading arguments to its constructor can be provided here."""
        self.instruction_set[keyword] = (instruction, args)

    def summarize_commands(self) -> str:
        out = []
        for name in self.instruction_set:
            klass, args = self.instruction_set[name]
            out.append("{}: {}".format(name, klass.syntax()))
        return "\n".join(out)

    def summary(self) -> str:
        return "Commands:\n" + self.summarize_commands() + "\n\n" + \
            "Global options:\n" + \
            "--format json|csv|text | --json | --output <path> | -v | -vv | --quiet | --parallel"

    def check_instruction(self, keyword: str, tokens: list[str]) -> None:
        """Checks if an instruction has been registered, appending an InstructionNotFoundError to `errors` if not.

        If the instruction exists, its arguments are validated according to the class' implementation of
        `validate_arguments`.
        """
        if keyword not in self.instruction_set:
            self.errors.append(InstructionNotFoundError("'{}' is not a registered instruction".format(keyword)))
            return

        klass, _ = self.instruction_set[keyword]
        if not klass.validate_arguments(tokens):
            self.errors.append(CommandSyntaxError("'{}' is not a valid argument set for '{}' (syntax: {})".format(
                " ".join(tokens), keyword, klass.syntax())))

    def current_program_valid(self) -> bool:
        return len(self.errors) == 0

    def _compile_command(self, config: CommandConfig) -> Instruction:
        klass, args = self.instruction_set[config.keyword]
        tokens = self.parser(list(filter(None, config.tokens)))
        tokens = klass.parse_arguments(tokens)
        instruction = klass(*args, *tokens)
        instruction.config = config
        return instruction

    def run(self, argv: list[str], stdout: TextIO | None = None) -> int:
        stdout = stdout if stdout is not None else sys.stdout
        self.errors.clear()
        try:
            config = _split_global_options(list(argv))
        except CommandSyntaxError as err:
            self.errors.append(err)
            logger.error("%s", err)
            sys.stderr.write(self.summary() + "\n")
            return EXIT_USAGE

        logging.getLogger("kfermion").setLevel(config.log_level)
        self.check_instruction(config.keyword, config.tokens)
        if not self.current_program_valid():
            for err in self.errors:
                logger.error("%s", err)
            return EXIT_USAGE

        try:
            instruction = self._compile_command(config)
        except (DomainError, CommandSyntaxError, DispatcherError, ValueError) as err:
            self.errors.append(err)
            logger.error("invalid arguments for '%s': %s", config.keyword, err)
            return EXIT_USAGE

        try:
            report = instruction.execute()
        except DomainError as err:
            self.errors.append(err)
            logger.error("'%s' rejected its input: %s", config.keyword, err)
            return EXIT_USAGE

        text = instruction.render(report, config.format)
        if config.output:
            try:
                with open(config.output, "w", encoding="utf-8") as handle:
                    handle.write(text + "\n")
            except OSError as err:
                self.errors.append(err)
                logger.error("cannot write %s: %s", config.output, err)
                return EXIT_USAGE
        else:
            stdout.write(text + "\n")

        if not report.ok():
            logger.warning("%s failed: %s", config.keyword, ", ".join(report.failures()))
            return EXIT_FAILURE
        return EXIT_SUCCESS
