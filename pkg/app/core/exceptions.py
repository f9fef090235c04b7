"""Domain errors. Each carries the process exit code the CLI maps it to."""
from typing import Optional


class FpaError(Exception):
    exit_code: int = 2

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ParseError(FpaError):
    def __init__(self, detail: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {detail}")
        self.line = line
        self.column = column


class PresentationError(FpaError):
    pass


class AlgebraError(FpaError):
    pass


class TruncationError(FpaError):
    exit_code = 3


class PipelineError(FpaError):
    exit_code = 3
