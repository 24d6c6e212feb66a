"""Exception hierarchy."""


class SuperstrangeError(Exception):
    """Base class for all errors raised by the package."""


class SpectrumNotRational(SuperstrangeError):
    pass


class DegenerateForm(SuperstrangeError):
    pass


class NotDiagonalizable(SuperstrangeError):
    pass


class NotWeightBasis(SuperstrangeError):
    pass


class DecomposableAlgebra(SuperstrangeError):
    """The Casimir operator has more than one eigenvalue."""


class NotCompletelyReducible(SuperstrangeError):
    pass


class IsotropicSeedInvalid(SuperstrangeError):
    pass


class SingularCartanSystem(SuperstrangeError):
    pass


class AlgebraSpecError(SuperstrangeError, ValueError):
    """Unparseable algebra specification string."""
