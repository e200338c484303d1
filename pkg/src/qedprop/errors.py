"""Exception hierarchy for qedprop."""


class QedPropError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZeroFn(QedPropError, ZeroDivisionError):
    pass


class PoleAtPoint(QedPropError, ZeroDivisionError):
    pass


class NegativeQuadraticForm(QedPropError, ValueError):
    """The gauge quadratic form is negative, so its square root is undefined."""


class GaugeFunctionalZero(QedPropError, ZeroDivisionError):
    pass


class MetricMismatch(QedPropError, ValueError):
    pass


class SingularSymbol(QedPropError, ArithmeticError):
    """A rank-2 symbol has a vanishing transverse or longitudinal coefficient."""


class ZeroCoefficient(QedPropError, ValueError):
    pass


class EmptyField(QedPropError, ValueError):
    pass


class NonIntegrableSpectrum(QedPropError, ValueError):
    pass


class QuadratureNotConverged(QedPropError, RuntimeError):
    pass


class ConfigError(QedPropError, ValueError):
    pass
