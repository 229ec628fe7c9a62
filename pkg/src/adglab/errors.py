"""Exceptions raised by samplers, estimators and numeric routines.

Class names double as stable error identifiers: the CLI prints
``type(exc).__name__`` on stderr, so renaming a class here is a breaking
change of the command-line contract.
"""


class AdglabError(Exception):
    """Base class for all errors raised by this package."""


class EmptyPattern(AdglabError):
    """A nearest-point query was made against a pattern with no points."""


class WindowTooSmall(AdglabError):
    """Window side shorter than twice the process interaction radius."""


class SingularAtZero(AdglabError):
    """Singular path loss evaluated at distance zero."""


class QuadratureFailure(AdglabError):
    """Adaptive quadrature did not reach the requested tolerance."""


class NoPolynomialDecay(AdglabError):
    """The fading CDF has no polynomial order at 0 (pure log-normal)."""


class BinStarved(AdglabError):
    """Too few Monte Carlo samples fell into the requested bin."""


class OutOfRange(AdglabError):
    """Target probability outside the observed range of a success curve."""


class InsufficientPoints(AdglabError):
    """Not enough usable grid points for a regression fit."""


class SingularMeanDiverges(AdglabError):
    """Mean SINR requested under a singular path loss model."""
