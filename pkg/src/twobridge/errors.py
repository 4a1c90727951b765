"""Exception hierarchy shared by every module of the package."""


class TwoBridgeError(Exception):
    """Base class for all errors raised by twobridge."""


class NotSymmetrizable(TwoBridgeError):
    pass


class HalfExponentAtNonSquare(TwoBridgeError):
    pass


class HalfExponentPresent(TwoBridgeError):
    pass


class OddLengthWord(TwoBridgeError):
    pass


class DegenerateP(TwoBridgeError):
    pass


class NotCoprime(TwoBridgeError):
    pass


class EvenP(TwoBridgeError):
    pass


class EvenQ(TwoBridgeError):
    pass


class ExpansionFailure(TwoBridgeError):
    """Round trip of an even continued-fraction expansion did not close."""


class BudgetExceeded(TwoBridgeError):
    pass


class PTooLarge(BudgetExceeded):
    pass


class BaseBudgetExceeded(BudgetExceeded):
    pass


class TraceMismatch(TwoBridgeError):
    pass


class SizeTooSmall(TwoBridgeError):
    pass


class TooLarge(TwoBridgeError):
    pass


class UnequalP(TwoBridgeError):
    pass


class ParseError(TwoBridgeError):
    """Malformed textual input; ``position`` is the 0-based character offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
