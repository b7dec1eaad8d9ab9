"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HierarchyError(Exception):
    """Base class for input and validation errors.

    ``line`` is set when the error can be traced to a line of an input file.
    """

    def __init__(self, message: str, *, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(HierarchyError):
    pass


class InvalidId(HierarchyError):
    pass


class DuplicateId(HierarchyError):
    pass


class UnknownParent(HierarchyError):
    pass


class UnknownNode(HierarchyError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class CycleDetected(HierarchyError):
    pass


class NegativeCitations(HierarchyError):
    pass


class NonMonotoneRanks(HierarchyError):
    pass


class NotAnAntichain(HierarchyError):
    pass


class SuppliedRanksNotLiftable(HierarchyError):
    pass


class StratumNotAntichain(HierarchyError):
    pass


class TooLargeForEnumeration(HierarchyError):
    pass


class InvalidGeneratorParams(HierarchyError, ValueError):
    pass


class InvalidDistributionParams(InvalidGeneratorParams):
    pass
