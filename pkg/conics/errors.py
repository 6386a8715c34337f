from __future__ import annotations


class ConicsError(ValueError):
    """Base class for every input or contract error raised by the toolkit."""

    default_message = "conics error"

    def __init__(self, message: str | None = None):
        super().__init__(message or self.default_message)


class DegenerateLatticeError(ConicsError):
    default_message = "degenerate lattice"


class UnboundedEnumerationError(ConicsError):
    default_message = "unbounded enumeration"


class NotContainedError(ConicsError):
    default_message = "sublattice is not contained in the ambient lattice"


class NotTwoTorsionError(ConicsError):
    default_message = "element is not 2-torsion"


class NotInHypError(ConicsError):
    default_message = "kappa is not in Hyp"


class UnknownCatalogEntryError(ConicsError):
    def __init__(self, name: str, catalog):
        super().__init__(f"unknown entry {name!r}; catalog: {', '.join(sorted(catalog))}")
        self.name = name
        self.catalog = sorted(catalog)


class UnavailableSetError(ConicsError):
    def __init__(self, name: str, reason: str):
        super().__init__(f"{name} is not shipped: {reason}")
        self.name = name


class NotReplantableError(ConicsError):
    default_message = "not replantable"


class EmptyConicSetError(ConicsError):
    default_message = "empty conic set"


class SaturateFirstError(ConicsError):
    default_message = "saturate first"


class UsePatternSearchError(ConicsError):
    default_message = "use pattern_search"


class OverlappingClustersError(ConicsError):
    default_message = "clusters overlap"


class InvariantViolation(ConicsError):
    default_message = "invariant violation"


class BudgetError(ConicsError):
    default_message = "defect budget does not reach the bound"
