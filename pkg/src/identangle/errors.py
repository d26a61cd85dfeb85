"""Shared exception types."""


class BasisMismatch(ValueError):
    """Values built over different one-particle bases were combined."""


class StatisticsMismatch(ValueError):
    """Bosonic and fermionic states were mixed in one expression."""


class DegenerateError(ValueError):
    """The requested quantity is undefined at this input.

    Raised for zero-norm states, traces over regions the pair never
    reaches, and parameter points where a closed-form denominator
    vanishes.  These are all the same physical situation: there is no
    amplitude left to normalize.
    """
