"""Exception hierarchy shared by every module of the package."""


class PosetMorseError(Exception):
    """Base class for all errors raised by posetmorse."""


class CycleDetected(PosetMorseError):
    pass


class DuplicateElement(PosetMorseError):
    pass


class UnknownElement(PosetMorseError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ApexCollision(PosetMorseError):
    pass


class DimensionOutOfRange(PosetMorseError):
    pass


class MissingValue(PosetMorseError):
    pass


class NotAMatching(PosetMorseError):
    pass


class NotADownSet(PosetMorseError):
    pass


class CyclicMatching(PosetMorseError):
    pass


class SynthesisFailed(PosetMorseError):
    pass


class NotValidated(PosetMorseError):
    """Input Morse data was rejected by the admissibility validator."""


class InvariantBroken(PosetMorseError):
    pass


class TooLarge(PosetMorseError):
    pass


class ParseError(PosetMorseError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(PosetMorseError):
    pass
