"""Exception hierarchy shared by all modules."""


class GentleKitError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(GentleKitError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotGentleError(GentleKitError):
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class InfiniteDimensionalError(GentleKitError):
    pass


class ConstructionError(GentleKitError):
    """An intermediate result failed validation; ``dump`` holds it serialized."""

    def __init__(self, message: str, dump: str | None = None):
        self.dump = dump
        super().__init__(message if dump is None else f"{message}\n{dump}")


class GenerationError(GentleKitError):
    pass
