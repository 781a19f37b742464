class ConjlabError(Exception):
    """Base class for validation errors raised by conjlab."""


class ParseError(ConjlabError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IndexOutOfRange(ConjlabError):
    pass


class NonAssociative(ConjlabError):
    def __init__(self, a, b, c):
        self.triple = (a, b, c)
        super().__init__(f"(a*b)*c != a*(b*c) for (a, b, c) = {self.triple}")


class AllZeroRowOrColumn(ConjlabError):
    pass


class RelationUnsupported(ConjlabError):
    pass


class InvalidWitness(ConjlabError):
    pass


class SizeMismatch(ConjlabError):
    pass


class KindMismatch(ConjlabError):
    pass


class ZeroElement(ConjlabError):
    pass


class BoundExceeded(ConjlabError):
    """An input is larger than the configured enumeration bound."""


class NotInjective(KindMismatch):
    pass


class NotSurjective(KindMismatch):
    pass


class ImageNotInY(KindMismatch):
    pass


class NotOrderPreserving(KindMismatch):
    pass


class NotOrderPreservingInjective(KindMismatch):
    pass
