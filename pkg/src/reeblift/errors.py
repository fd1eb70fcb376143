"""Exception types raised across the package."""


class ReebLiftError(Exception):
    """Base class for all package errors."""


class UnknownElement(ReebLiftError, KeyError):
    pass


class MissingElement(ReebLiftError, KeyError):
    pass


class CycleDetected(ReebLiftError, ValueError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"directed cycle: {' -> '.join(map(str, self.cycle))}")


class NotAcyclic(CycleDetected):
    pass


class SizeMismatch(ReebLiftError, ValueError):
    pass


class TypeMismatch(ReebLiftError, ValueError):
    pass


class RankTooLarge(ReebLiftError, ValueError):
    pass


class RankTooSmall(ReebLiftError, ValueError):
    pass


class FiberNotChain(ReebLiftError, ValueError):
    def __init__(self, base, pair):
        self.base = base
        self.pair = pair
        super().__init__(f"fiber over {base!r} is not a chain: {pair[0]!r} and {pair[1]!r} incomparable")


class CoverConditionViolated(ReebLiftError, ValueError):
    def __init__(self, cover):
        self.cover = cover
        super().__init__(f"cover {cover[0]!r} -> {cover[1]!r} maps to neither an equality nor a cover")


class NotCylindrical(ReebLiftError, ValueError):
    pass


class HeightNotMonotone(ReebLiftError, ValueError):
    """A height function fails to increase strictly along ``edge``.

    ``edge`` is ``(src, dst, kind)`` with ``kind`` in ``{"vertical", "auxiliary"}``.
    """

    def __init__(self, edge, values=None):
        self.edge = edge
        self.values = values
        src, dst, kind = edge
        msg = f"height not strictly increasing along {kind} edge {src} -> {dst}"
        if values is not None:
            msg += f" ({values[0]} -> {values[1]})"
        super().__init__(msg)


class BaseNotEmbedding(ReebLiftError, ValueError):
    pass


class NotCompatible(ReebLiftError, ValueError):
    pass


class RealizationFailed(ReebLiftError, AssertionError):
    pass


class NotTotalOrder(ReebLiftError, ValueError):
    pass


class SuccessorUndefined(ReebLiftError, ValueError):
    pass


class NotAuxiliaryCase(ReebLiftError, ValueError):
    pass


class NotABox(ReebLiftError, AssertionError):
    pass


class NotBoolean(ReebLiftError, AssertionError):
    pass


class WitnessInvalid(ReebLiftError, AssertionError):
    pass
