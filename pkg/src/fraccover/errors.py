"""Exception hierarchy shared across the toolkit."""


class FraccoverError(Exception):
    """Base class for all toolkit errors."""


class InvalidVertexError(FraccoverError, ValueError):
    pass


class ParseError(FraccoverError, ValueError):
    pass


class CapError(FraccoverError):
    """Exhaustive enumeration refused because the graph exceeds the cap."""


class RegimeError(FraccoverError, ValueError):
    """Parameters fall outside the range where a formula is meaningful."""


class ConstructionError(FraccoverError, ValueError):
    pass


class PinError(FraccoverError, ValueError):
    pass


class DomainError(FraccoverError, ValueError):
    pass
