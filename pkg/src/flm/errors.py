"""Exception hierarchy shared by every module.

Each exception carries a stable ``code`` (the class name) so the model-file
parser can turn library failures into coded diagnostics.
"""


class FlmError(Exception):
    """Base class for all errors raised by the library."""

    @property
    def code(self):
        return type(self).__name__


class InvalidSpace(FlmError):
    pass


class ForeignTerm(FlmError):
    pass


class UnknownTerm(FlmError):
    pass


class NoJoin(FlmError):
    def __init__(self, a, b, where=None):
        self.a, self.b, self.where = a, b, where
        msg = f"no least upper bound for {a} and {b} and no greatest element declared"
        if where is not None:
            msg += f" (at {where})"
        super().__init__(msg)


class UnsignedSpace(FlmError):
    pass


class InvalidPartition(FlmError):
    pass


class MissingPair(FlmError):
    pass


class ShapeMismatch(FlmError):
    pass


class SpaceMismatch(FlmError):
    pass


class SelfLoop(FlmError):
    pass


class ZeroEdge(FlmError):
    pass


class DuplicateEdge(FlmError):
    pass


class EmptyCollection(FlmError):
    pass


class IterationCapExceeded(FlmError):
    pass


class UnknownLabel(FlmError):
    pass


class DuplicateLink(FlmError):
    pass


class InvalidModel(FlmError):
    pass


class InvalidActivation(FlmError):
    pass
