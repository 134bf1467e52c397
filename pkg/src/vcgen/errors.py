"""Exception types shared across the package."""


class VcgenError(Exception):
    """Base class for all package errors."""


class InputDomainError(VcgenError):
    """An argument is outside the operation's input domain."""


class CapacityError(VcgenError):
    """A size cap was exceeded (oracle size, boundary width, ...)."""


class ContractError(VcgenError):
    """A precondition between cooperating components was violated."""


class CertificateViolation(VcgenError):
    """A certified table failed to behave as its certificate promises.

    Raised at solve time when matching walks off the expansion cover or a
    simplification leaf is reached on a simplification-free instance; both
    indicate a generator or verifier bug, never a property of the input.
    """
