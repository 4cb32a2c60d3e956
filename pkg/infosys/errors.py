"""Exception hierarchy. Each family maps onto one CLI exit code."""


class WorkbenchError(Exception):
    """Base class for every error the workbench raises on purpose."""

    exit_code = 2


class PropertyFailure(WorkbenchError):
    """A required property does not hold for the given input."""

    exit_code = 1


class InputError(WorkbenchError):
    """The input is malformed or violates an operation's precondition."""

    exit_code = 2


class SizeLimitExceeded(WorkbenchError):
    """An exhaustive scan would exceed its configured cap."""

    exit_code = 3

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


# Property failures (exit 1)

class InvalidSystem(PropertyFailure):
    pass


class InvalidFrame(PropertyFailure):
    pass


class NotLDomain(PropertyFailure):
    pass


class NoLocalLub(PropertyFailure):
    pass


class NotMonotone(PropertyFailure):
    pass


class BcViolated(PropertyFailure):
    pass


class AlgPlusViolated(PropertyFailure):
    pass


class IsoCheckFailed(PropertyFailure):
    pass


class GenerationFailed(PropertyFailure):
    """A seeded generator found no instance within its attempt budget."""


# Input errors (exit 2)

class DuplicateElem(InputError):
    pass


class UnknownElem(InputError):
    pass


class CycleDetected(InputError):
    def __init__(self, cycle: list[str]):
        super().__init__("order relation has a cycle: " + " <= ".join(cycle + cycle[:1]))
        self.cycle = cycle


class NotAnOrder(InputError):
    """A relation given as an order is not reflexive or not transitive."""


class NotBelowZ(InputError):
    pass


class MalformedSystem(InputError):
    pass


class MalformedFrame(InputError):
    pass


class MalformedMap(InputError):
    pass


class NotConsistent(InputError):
    pass


class NotAState(InputError):
    pass


class NotBounded(InputError):
    pass


class SystemMismatch(InputError):
    pass


class FreshTokenClash(InputError):
    pass


class KindMismatch(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.path = path
