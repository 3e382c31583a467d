"""Exception hierarchy shared by all modules."""


class LeibnizError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(LeibnizError, ValueError):
    pass


class ClusterAmbiguity(LeibnizError):
    """Eigenvalues cannot be grouped consistently at the given tolerance.

    The clustering tolerance has to be adjusted by the caller.
    """


class NotNilpotent(LeibnizError, ValueError):
    pass


class NotUnipotent(LeibnizError, ValueError):
    pass


class NotUnipotentShift(LeibnizError, ValueError):
    """``P + I`` is not an automorphism."""


class NotLeibniz(LeibnizError, ValueError):
    pass


class NotAnIdeal(LeibnizError, ValueError):
    pass


class NotADerivation(LeibnizError, ValueError):
    pass


class NotAnAutomorphism(LeibnizError, ValueError):
    pass


class OrderMismatch(LeibnizError, ValueError):
    pass


class TheoremViolation(LeibnizError, AssertionError):
    """A proven implication failed numerically.

    This signals a bug or a badly chosen tolerance, never new mathematics.
    """


class DegreeTooHigh(LeibnizError, ValueError):
    pass


class PreconditionViolation(LeibnizError, ValueError):
    pass


class ParameterMismatch(LeibnizError, ValueError):
    pass


class UnknownId(LeibnizError, KeyError):
    def __init__(self, name, valid):
        self.name = name
        self.valid = list(valid)
        super().__init__(f"unknown catalog id {name!r}; valid ids: {', '.join(self.valid)}")

    def __str__(self):
        return self.args[0]
