"""Exception types shared across the solver modules."""

from __future__ import annotations


class NumericalError(RuntimeError):
    """A root finder, bisection or fit failed to converge."""


class MultipleRootsError(NumericalError):
    """A bracketed solve expected one root but found several.

    Carries the roots so callers analysing coexistence regimes can proceed.
    """

    def __init__(self, message: str, roots):
        super().__init__(message)
        self.roots = list(roots)


class BadPointError(ValueError):
    """A limiting kernel was requested at a bad empirical measure.

    Carries the competing global minimizers of the effective potential that
    make the conditional limit sequence-dependent.
    """

    def __init__(self, message: str, minima):
        super().__init__(message)
        self.minima = list(minima)
