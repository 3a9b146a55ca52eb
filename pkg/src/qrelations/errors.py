"""Exception hierarchy shared by the numerical modules."""


class QRelationsError(Exception):
    pass


class ParameterError(QRelationsError, ValueError):
    """A family parameter lies outside its valid domain."""


class ShapeError(QRelationsError, ValueError):
    pass


class SizeError(QRelationsError, ValueError):
    pass


class SymmetryError(QRelationsError, ValueError):
    """Matrix expected to be Hermitian is not, beyond tolerance."""


class PSDError(QRelationsError, ValueError):
    """Matrix expected to be positive semidefinite has a significantly negative eigenvalue."""


class InvariantError(QRelationsError, ValueError):
    """Input violates a density-matrix invariant."""


class DomainError(QRelationsError, ValueError):
    """Argument outside the domain of a boundary curve."""


class ConvergenceError(QRelationsError, ArithmeticError):
    pass
