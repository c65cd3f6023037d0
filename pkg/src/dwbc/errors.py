"""Exception hierarchy shared by every module of the package."""


class DWBCError(Exception):
    """Base class for all errors raised by :mod:`dwbc`."""


class DegenerateRapidities(DWBCError, ValueError):
    """A weight that must be nonzero (usually a ``b`` in a denominator) vanished."""


class IndexOutOfRange(DWBCError, IndexError):
    pass


class DuplicateInversion(DWBCError, ValueError):
    pass


class NotConserving(DWBCError, ValueError):
    """The four arrows around a vertex violate the ice rule."""


class CapExceeded(DWBCError, RuntimeError):
    """The lattice is too large for brute-force enumeration."""


class DimensionMismatch(DWBCError, ValueError):
    pass


class NonSquare(DWBCError, ValueError):
    pass


class RemovalMismatch(DWBCError, ValueError):
    pass


class InvalidOrder(DWBCError, ValueError):
    pass


class ZeroPartition(DWBCError, ZeroDivisionError):
    pass
