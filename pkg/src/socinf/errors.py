"""Exception hierarchy shared by every module of the package."""


class SocinfError(Exception):
    """Base class for all errors raised by socinf."""


class DimensionMismatch(SocinfError, ValueError):
    pass


class NonFiniteCoordinate(SocinfError, ValueError):
    pass


class EmptyInstance(SocinfError, ValueError):
    pass


class FullSupport(SocinfError):
    """Appending a column to a difference matrix that already spans the space."""


class IndexOutOfRange(SocinfError, IndexError):
    pass


class RankDeficient(SocinfError, ArithmeticError):
    pass


class AffinelyDependent(SocinfError, ArithmeticError):
    """The entering point lies in the affine hull of the support set."""


class NoRealPoint(SocinfError, ArithmeticError):
    """The curve has no real point at the requested height."""


class DegenerateWeights(SocinfError, ArithmeticError):
    pass


class NoNegativeSigma(SocinfError, ArithmeticError):
    """Ratio test found no candidate to leave the support set."""


class EmptyIntersection(SocinfError, ValueError):
    pass


class IterationLimit(SocinfError):
    """The solver hit ``max_iterations``; ``state`` holds the last iterate."""

    def __init__(self, message, state=None, stats=None):
        super().__init__(message)
        self.state = state
        self.stats = stats


class NumericalBreakdown(SocinfError, ArithmeticError):
    """An internal invariant failed beyond tolerance, even after refactoring."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ParseError(SocinfError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(message + where)
        self.line = line
        self.column = column
