"""Custom exceptions for the py_jmfree package."""

from __future__ import annotations


class PyJMFreeError(Exception):
    """Base exception for the package."""


class InvalidPermutationError(PyJMFreeError):
    """Raised when a sequence of images is not a bijection of {1..d}."""


class DegreeMismatchError(PyJMFreeError):
    """Raised when two objects that must live in the same S_d do not."""


class InvalidPartitionError(PyJMFreeError):
    """Raised for malformed Young diagrams, set partitions or cycle types."""


class CrossingPartitionError(InvalidPartitionError):
    """Raised when a noncrossing partition is required but a crossing one is given."""


class AdmissibilityError(PyJMFreeError):
    """Raised when an (J, partition) datum has a block with cyclically adjacent positions."""


class EnumerationLimitError(PyJMFreeError):
    """Raised when a requested enumeration exceeds the configured size limits."""


class WordError(PyJMFreeError):
    """Raised for words that use unknown letters or cannot be normalized."""


class ParseError(PyJMFreeError):
    """Raised when a textual form cannot be parsed."""

    def __init__(self, text: str, reason: str) -> None:
        super().__init__(f"Cannot parse '{text}': {reason}")
        self.text = text
        self.reason = reason


class ParameterError(PyJMFreeError):
    """Raised when an experiment or command parameter is out of its domain."""

    def __init__(self, parameter: str, reason: str) -> None:
        super().__init__(f"Invalid parameter '{parameter}': {reason}")
        self.parameter = parameter
        self.reason = reason
