"""Exception hierarchy shared by every mubqpd module."""


class MubQpdError(Exception):
    """Base class for all errors raised by mubqpd."""

    code = "error"


class NotHermitian(MubQpdError, ValueError):
    code = "not_hermitian"


class NonHermitianInput(NotHermitian):
    code = "non_hermitian_input"


class NoConvergence(MubQpdError, ArithmeticError):
    code = "no_convergence"


class DimMismatch(MubQpdError, ValueError):
    code = "dim_mismatch"


class UnsupportedDimension(MubQpdError, ValueError):
    code = "unsupported_dimension"


class IndexOutOfRange(MubQpdError, IndexError):
    code = "index_out_of_range"


class InvalidQuantumNumbers(MubQpdError, ValueError):
    code = "invalid_quantum_numbers"


class BallViolation(MubQpdError, ValueError):
    code = "ball_violation"


class EmptySubset(MubQpdError, ValueError):
    code = "empty_subset"


class LpUnbounded(MubQpdError, ArithmeticError):
    """The LP objective is unbounded over the feasible region."""

    code = "lp_unbounded"


class NegativeProbability(MubQpdError, ValueError):
    code = "negative_probability"


class EmptyRecord(MubQpdError, ValueError):
    code = "empty_record"
