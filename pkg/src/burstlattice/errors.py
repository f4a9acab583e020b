"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class BurstLatticeError(Exception):
    exit_code = 1


class ParameterError(BurstLatticeError, ValueError):
    """Arguments violate an operation's preconditions."""

    exit_code = 2


class UnsupportedParameterError(ParameterError):
    """Parameters are well formed but no construction covers them."""

    exit_code = 2


class PreconditionError(BurstLatticeError):
    """A mathematical precondition failed, e.g. an unsatisfied primitive-element condition."""

    exit_code = 1

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ResourceError(BurstLatticeError):
    """Enumeration, field-size or node budget exceeded."""

    exit_code = 4


class ParseError(BurstLatticeError, ValueError):
    exit_code = 5


class InternalError(BurstLatticeError):
    exit_code = 70
