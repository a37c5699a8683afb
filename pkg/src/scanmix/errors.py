"""Exception hierarchy shared by every module."""


class ScanMixError(Exception):
    """Base class; the CLI maps these to exit status 1."""


class IndexOutOfRange(ScanMixError, IndexError):
    pass


class DuplicateEdge(ScanMixError, ValueError):
    pass


class SelfLoop(ScanMixError, ValueError):
    pass


class StateSpaceTooLarge(ScanMixError):
    pass


class EmptySupport(ScanMixError):
    """Boundary colours leave no legal colouring of the block."""


class DomainMismatch(ScanMixError, ValueError):
    pass


class NonErgodic(ScanMixError):
    """Total variation distance stalls above the target.

    ``curve`` holds the max-over-starts TV series computed before giving up.
    """

    def __init__(self, message, curve=None):
        super().__init__(message)
        self.curve = list(curve) if curve is not None else []


class DegenerateFunctional(ScanMixError, ValueError):
    pass


class MarginalMismatch(ScanMixError, ValueError):
    pass


class Infeasible(ScanMixError):
    pass


class NotAnEdgeBlock(ScanMixError, ValueError):
    pass


class NotInS_i(ScanMixError, ValueError):
    pass


class StrategyShapeMismatch(ScanMixError, ValueError):
    pass


class NotATreeBlock(ScanMixError, ValueError):
    pass


class CouplingError(ScanMixError):
    """A case construction met a configuration outside its preconditions."""


class EmptyTree(ScanMixError, ValueError):
    pass


class ParamOutOfRange(ScanMixError, ValueError):
    pass


class UnknownDelta(ScanMixError, KeyError):
    pass


class ParseError(ScanMixError, ValueError):
    pass
