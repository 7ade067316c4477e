"""Exception hierarchy. Every domain failure carries a stable machine code."""


class DomainError(ValueError):
    code = "domain_error"


class IncompatibleRadicandError(DomainError):
    code = "incompatible_radicands"


class PoleError(DomainError, ZeroDivisionError):
    code = "pole"


class DegenerateLatticeError(DomainError):
    code = "degenerate_lattice"


class NotInUpperHalfPlaneError(DomainError):
    code = "not_upper_half_plane"


class PositivityError(DomainError):
    code = "positivity_violation"


class RationalThetaError(DomainError):
    code = "theta_rational"


class DeterminantError(DomainError):
    code = "bad_determinant"


class PeriodNotClosedError(DomainError):
    code = "max_terms_exhausted"


class MalformedContinuedFractionError(DomainError):
    code = "malformed_cf"


class TailMismatchError(DomainError):
    code = "tail_mismatch"
