from typing import Iterable


class FaceIdException(Exception):
    """
    Base exception for face identification errors.
    """

    def __init__(self, message: str, **_):
        self.message = message
        super().__init__(message)


class DimensionError(FaceIdException, ValueError):
    """
    Raised when rasters or vectors have incompatible or insufficient
    dimensions.
    """


class ArgumentError(FaceIdException, ValueError):
    """
    Raised on invalid parameter values.
    """


class DegenerateVectorError(FaceIdException, ValueError):
    """
    Raised when a vector cannot be matched because its norm is zero.
    """


class ProtocolError(FaceIdException):
    """
    Raised when a dataset does not satisfy the gallery/probe protocol.

    :param message: The error message
    :param subjects: The subject identifiers that breach the protocol
    """

    def __init__(self, message: str, subjects: Iterable[str] = (), **_):
        self.subjects = sorted(subjects)
        if self.subjects:
            message = f"{message}: {', '.join(self.subjects)}"
        super().__init__(message)


class FormatError(FaceIdException, ValueError):
    """
    Raised when a feature or embedding file cannot be parsed.

    :param message: The error message
    :param path: The offending file
    :param line: The 1-based line number of the offending record
    """

    def __init__(
        self, message: str, path: str | None = None, line: int | None = None, **_
    ):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            location = f"line {line}: "

        super().__init__(f"{location}{message}")
