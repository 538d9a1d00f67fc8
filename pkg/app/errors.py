#!/usr/bin/env python3
"""
Engine Errors
Exception hierarchy shared by the exact layer, the decision graph and the CLI.

InputError subclasses are precondition failures on user input; the CLI maps
them to exit code 2. Everything else signals an arithmetic condition or a
broken internal invariant.
"""


class EngineError(Exception):
    """Root of every error raised by the engine."""


# ------------------------------------ Input errors ------------------------------------------

class InputError(EngineError, ValueError):
    """Bad user input or a violated precondition."""


class DegenerateInputError(InputError):
    pass


class DuplicateDigitsError(InputError):
    pass


class CollinearDigitsError(InputError):
    pass


class NotExpandingError(InputError):
    def __init__(self, message: str = "matrix is not expanding"):
        super().__init__(message)


class DepthCapError(InputError):
    pass


class ParseError(InputError):
    """Malformed matrix / digit text. `position` is the 0-based offending character."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position}")
        self.text = text
        self.position = position


# --------------------------------- Arithmetic errors ----------------------------------------

class SingularMod3Error(EngineError, ArithmeticError):
    pass


class SingularMatrixError(EngineError, ArithmeticError):
    pass


class NonIntegralConjugateError(EngineError, ArithmeticError):
    pass


# -------------------------------- Decision-flow errors --------------------------------------

class WrongBranchError(EngineError):
    """An operation was called outside the branch whose preconditions it relies on."""


class NotHadamardError(EngineError):
    pass


class CertificateError(EngineError):
    """An internal consistency check failed; no verdict is returned."""
