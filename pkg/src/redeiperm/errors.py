"""Exceptions raised by the library and mapped to exit codes by the CLI."""


class RedeiError(Exception):
    """Base class for all library errors."""


class InvalidDegree(RedeiError, ValueError):
    pass


class InvalidModulus(RedeiError, ValueError):
    pass


class DivisionByZero(RedeiError, ZeroDivisionError):
    pass


class PoleEncountered(RedeiError, ZeroDivisionError):
    """A rational map was evaluated where its denominator vanishes."""


class NotOnUnitCircle(RedeiError, ValueError):
    """An element outside the (q+1)-th roots of unity was passed where one is required."""


class RefusedTooLarge(RedeiError):
    """An exhaustive check would exceed the configured element cap."""
