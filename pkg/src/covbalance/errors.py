"""Exception types shared by the parsers and analysis passes."""


class AnalyzerError(Exception):
    """Base class for every error this package raises on bad input."""


class ParseError(AnalyzerError):
    """Syntax error in an input file, with 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(location + message)


class ValidationError(AnalyzerError):
    """Well-formed input that violates a declared constraint."""
