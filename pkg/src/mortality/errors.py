class MortalityError(Exception):
    """Base class for every error raised by this package."""


class UsageError(MortalityError, ValueError):
    pass


class CapacityError(MortalityError):
    pass


class TooLarge(CapacityError):
    pass


class ParseError(MortalityError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class MissingHeader(ParseError):
    pass


class NotDeterministic(MortalityError, ValueError):
    def __init__(self, letter: str, state: int):
        super().__init__(f"letter {letter!r} is not deterministic at state {state}")
        self.letter = letter
        self.state = state


class IncompleteDfa(MortalityError, ValueError):
    def __init__(self, letter: str, state: int):
        super().__init__(f"letter {letter!r} is undefined at state {state}")
        self.letter = letter
        self.state = state


class BudgetExceeded(MortalityError):
    def __init__(self, size: int, budget: int):
        super().__init__(f"enumeration size {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class StrategyError(MortalityError, RuntimeError):
    """The counting strategy left the shape the construction guarantees."""


class OracleDivergence(MortalityError, RuntimeError):
    pass
