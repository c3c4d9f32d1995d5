"""Exception hierarchy shared by every module of the package."""


class NZCError(Exception):
    """Base class for all errors raised by :mod:`nzcgraph`."""


class NotPrimePower(NZCError, ValueError):
    def __init__(self, q):
        super().__init__(f"{q} is not a prime power")
        self.q = q


class InvalidDimension(NZCError, ValueError):
    def __init__(self, n, reason="dimension must be >= 1"):
        super().__init__(f"invalid dimension n={n}: {reason}")
        self.n = n


class BadSupportSize(NZCError, ValueError):
    def __init__(self, k, n):
        super().__init__(f"support size k={k} outside [1, {n}]")
        self.k = k
        self.n = n


class BadFamilyIndex(NZCError, ValueError):
    pass


class SelfComparison(NZCError, ValueError):
    pass


class BudgetExceeded(NZCError):
    def __init__(self, required, budget, what="vertices"):
        super().__init__(f"{what}: need {required}, budget is {budget}")
        self.required = required
        self.budget = budget


class DisconnectedGraph(NZCError):
    pass


class TooSmall(NZCError, ValueError):
    pass


class VerificationFailed(NZCError):
    pass


class NotMaximal(NZCError, ValueError):
    pass


class EmptySet(NZCError, ValueError):
    pass


class UnknownVertex(NZCError, ValueError):
    pass


class ConfigError(NZCError, ValueError):
    """Invalid sweep or command-line configuration."""
