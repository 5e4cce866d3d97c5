"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`LatticeError`; most also derive from :class:`ValueError` since they
report a bad argument.
"""


class LatticeError(Exception):
    pass


class DegenerateSimplex(LatticeError, ValueError):
    pass


class DimensionMismatch(LatticeError, ValueError):
    pass


class DimensionTooLarge(LatticeError, ValueError):
    pass


class WrongDimension(LatticeError, ValueError):
    pass


class InvalidParameters(LatticeError, ValueError):
    pass


class NoInteriorPoints(LatticeError, ValueError):
    pass


class NotClean(LatticeError, ValueError):
    pass


# triangulation
class NotInterior(LatticeError, ValueError):
    pass


class AlreadyVertex(LatticeError, ValueError):
    pass


class OutsideCarrier(LatticeError, ValueError):
    pass


class FaceNotFound(LatticeError, KeyError):
    pass


class HypothesisFailed(LatticeError, ValueError):
    pass


class InvariantViolation(LatticeError, AssertionError):
    pass


# radon / lawson
class NotSpanning(LatticeError, ValueError):
    pass


class WrongCount(LatticeError, ValueError):
    pass


class NotExterior(LatticeError, ValueError):
    pass


class NotInCellInterior(LatticeError, ValueError):
    pass


class CollinearCase(LatticeError):
    """``w2`` lies on the line through ``w1`` and the apex of its cell.

    Carries the degenerate representation ``w2 = alpha w1 + (1 - alpha) v``
    as ``alphas``: entry 0 belongs to ``w1`` and entry ``1 + i`` to vertex
    ``i`` of the simplex, so only entry 0 and entry ``1 + apex_index`` are
    nonzero.
    """

    def __init__(self, message, alphas, apex_index):
        super().__init__(message)
        self.alphas = alphas
        self.apex_index = apex_index


# unimodular
class NotUnimodular(LatticeError, ValueError):
    pass


class NotUnimodularSimplex(LatticeError, ValueError):
    pass


class NoLatticeBasisExtension(LatticeError, ValueError):
    pass


# picktype / search
class GcdViolation(LatticeError, ValueError):
    pass


class SpaceTooLarge(LatticeError, RuntimeError):
    pass


class PolytopeParseError(LatticeError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
