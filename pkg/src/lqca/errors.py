class LqcaError(ValueError):
    """Invalid automaton or document."""


class DimensionError(LqcaError):
    pass


class ContractError(LqcaError):
    """A precondition of an operation does not hold."""


class ResourceError(LqcaError):
    """An enumeration or expansion would exceed its configured bound."""


class ConsistencyError(RuntimeError):
    """Two independent computations disagree; indicates a bug."""


class ParseError(LqcaError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)
