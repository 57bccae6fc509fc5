"""Exception hierarchy shared by every module of the package."""


class GeometryError(ValueError):
    """Base class for all geometric failures raised by prismunfold."""


class ZeroLengthEdge(GeometryError):
    pass


class LengthMismatch(GeometryError):
    pass


class DegenerateEdge(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class NotCCW(GeometryError):
    pass


class NotNested(GeometryError):
    pass


class NonPositiveHeight(GeometryError):
    pass


class DegenerateHull(GeometryError):
    """The band pivot produced an inconsistent facet cycle.

    Unreachable for validated input; seeing it means a tolerance is too
    loose or too tight for the instance at hand.
    """


class CutEdgeMissing(GeometryError):
    """A selected cut edge is not a lateral edge of the band."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class ChainBroken(GeometryError):
    pass


class NonPlanarFacet(GeometryError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.field = field


class GenerationFailed(RuntimeError):
    def __init__(self, message, seed=None):
        super().__init__(f"{message} (seed={seed})")
        self.seed = seed
