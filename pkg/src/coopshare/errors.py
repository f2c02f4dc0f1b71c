class CoopShareError(Exception):
    pass


class InvalidCoalition(CoopShareError, ValueError):
    pass


class TooLarge(CoopShareError, ValueError):
    pass


class DimensionError(CoopShareError, ValueError):
    pass


class DomainError(CoopShareError, ValueError):
    pass


class ZeroWeight(DomainError):
    pass


class EmptyCore(CoopShareError):
    pass


class InfeasibleScaling(CoopShareError):
    pass


class Infeasible(CoopShareError):
    """Raised when an LP that must be feasible is not."""


class UnboundedLexTarget(CoopShareError):
    pass


class NonConvexTieStructure(CoopShareError):
    """The union of all maximal-average coalitions is not itself maximal.

    Cannot happen on convex games, where maximizers are closed under union.
    """


class MalformedInput(CoopShareError, ValueError):
    pass
