"""Exception types shared across the package."""


class AlgExtError(Exception):
    """Base class for every error raised by this package."""


class ParseError(AlgExtError):
    pass


class UsageError(AlgExtError):
    pass


class NotPrime(AlgExtError):
    pass


class ReducibleModulus(AlgExtError):
    pass


class InfiniteField(AlgExtError):
    pass


class InfiniteClassSet(AlgExtError):
    pass


class Unsupported(AlgExtError):
    pass


class UnsupportedOverInfiniteField(Unsupported):
    pass


class DimensionMismatch(AlgExtError):
    pass


class ShapeMismatch(DimensionMismatch):
    pass


class NotASubalgebra(AlgExtError):
    pass


class NotARetraction(AlgExtError):
    pass


class NotAFactorization(AlgExtError):
    pass


class NotACharacter(AlgExtError):
    pass


class NotAnAutomorphism(AlgExtError):
    pass


class NotCommutativeBase(AlgExtError):
    pass


class NotSymmetric(AlgExtError):
    pass


class CocycleConditionFailed(AlgExtError):
    pass


class DimensionBoundExceeded(AlgExtError):
    pass


class BudgetExceeded(AlgExtError):
    pass


class NotAGroup(AlgExtError):
    pass


class AxiomsFailed(AlgExtError):
    def __init__(self, report):
        super().__init__(f"extending datum fails: {report.failed()}")
        self.report = report


class MatchedPairFailed(AlgExtError):
    def __init__(self, report):
        super().__init__(f"matched pair fails: {report.failed()}")
        self.report = report


class FlagCheckFailed(AlgExtError):
    def __init__(self, report):
        super().__init__(f"flag datum fails: {report.failed()}")
        self.report = report
