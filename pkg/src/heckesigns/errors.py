"""Exception types shared across the package.

Everything raised deliberately by this library derives from HeckesignsError,
so callers (and the CLI driver) can catch one base class.  Most of them also
subclass the matching builtin so that generic handling keeps working.
"""


class HeckesignsError(Exception):
    """Base class for all library-specific errors."""


class DomainError(HeckesignsError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class NonFundamentalDiscriminant(HeckesignsError, ValueError):
    """Discriminant is not 1 and not a fundamental discriminant of a real
    quadratic field."""


class WeightMismatch(HeckesignsError, ValueError):
    """Weight list does not match the field degree, or a weight is invalid."""


class RamanujanViolation(HeckesignsError, ValueError):
    """A prime coefficient exceeds the |value| <= 2 bound in a mode that
    promises it."""


class MissingPrime(HeckesignsError, LookupError):
    """A coefficient was requested at a prime ideal the system has no value
    for."""


class DuplicatePrime(HeckesignsError, ValueError):
    """The same prime ideal appears twice in a coefficient file."""


class ParseError(HeckesignsError, ValueError):
    """A coefficient file is malformed or inconsistent with the field."""


class NotSquareFree(HeckesignsError, ValueError):
    """An operation defined only on square-free ideals was handed one with a
    repeated prime factor."""


class BracketError(HeckesignsError, RuntimeError):
    """A root bracket does not have the required sign change."""


class DegenerateFit(HeckesignsError, ValueError):
    """Not enough usable samples for a least-squares exponent fit."""


class ConfigError(HeckesignsError, ValueError):
    """Experiment configuration is invalid."""
