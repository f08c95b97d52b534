from typing import Optional


class IntransicError(Exception):
    """Base class for every error raised by intransic."""


class DatasetError(IntransicError, ValueError):
    def __init__(self, message: str, row: Optional[int] = None) -> None:
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class DatasetFormatError(DatasetError):
    def __init__(self, message: str, path: str, line_number: int) -> None:
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {message}")


class UnknownPlayerError(DatasetError):
    pass


class ModelError(IntransicError, ValueError):
    pass


class TrainingDivergedError(IntransicError, RuntimeError):
    pass


class ConfigurationError(IntransicError, ValueError):
    pass


class EvaluationError(IntransicError, ValueError):
    pass


class SynthSpecError(IntransicError, ValueError):
    pass
