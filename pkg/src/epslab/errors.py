"""Exception hierarchy shared by all epslab modules."""


class EpslabError(Exception):
    """Base class for errors raised by epslab."""


class DomainError(EpslabError, ValueError):
    """An argument lies outside the domain of the operation."""


class PrecisionError(EpslabError, ArithmeticError):
    """A p-adic quantity is zero at the working precision; raise the precision."""


class ConstructionError(EpslabError, ValueError):
    """An algebraic object (group, character, extension) is inconsistent."""


class UnsupportedError(EpslabError, NotImplementedError):
    """The input is outside the tame/abelian range handled here."""


class ConfigError(EpslabError, ValueError):
    """A verification config could not be parsed."""
