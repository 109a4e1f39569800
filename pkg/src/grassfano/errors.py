"""Exception hierarchy shared by all modules."""


class GrassFanoError(Exception):
    pass


class DimensionError(GrassFanoError, ValueError):
    """Shapes or lengths do not match."""


class FieldError(GrassFanoError, ValueError):
    """Bad field descriptor, or an operation the field's characteristic forbids."""


class AmbientError(GrassFanoError, ValueError):
    """Chow classes living on different Grassmannians were combined."""


class NonInvertibleError(GrassFanoError, ZeroDivisionError):
    pass


class ConsistencyError(GrassFanoError, AssertionError):
    """An internal identity that must hold exactly was violated."""


class InputError(GrassFanoError, ValueError):
    pass


class GenericityError(GrassFanoError):
    """Random sampling kept hitting degenerate cases; the input is likely not generic.

    ``certificate`` carries the last offending object, when there is one.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class CenterError(GrassFanoError, ValueError):
    """A projection center lies on a line of the linear section."""


class ParseError(InputError):
    pass
