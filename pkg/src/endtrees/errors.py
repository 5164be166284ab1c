"""Exception types shared across the package."""


class EndtreesError(Exception):
    """Base class for all package errors."""


class FamilyError(EndtreesError):
    """Unknown family name or invalid family parameters."""


class PayloadError(EndtreesError):
    """Custom graph payload violates the truncation invariants."""


class HorizonSplit(EndtreesError):
    """Removed set touches the horizon or splits it over several components."""


class NotCovering(EndtreesError):
    """Separation sides do not cover the vertex set."""


class CrossEdge(EndtreesError):
    """An edge joins the two strict sides of a would-be separation."""

    def __init__(self, u, v):
        super().__init__(f"edge {u} -- {v} joins the strict sides")
        self.edge = (u, v)


class NoSeparator(EndtreesError):
    """Sources and targets touch directly; no vertex cut exists between them."""


class BudgetExceeded(EndtreesError):
    """A configured enumeration or search cap was hit."""


class DegreeMismatch(EndtreesError):
    """An annulus cut does not match the expected end degree."""


class Exhausted(EndtreesError):
    """The truncation is too small to fit the requested construction."""


class Unstable(EndtreesError):
    """A radius sweep did not stabilise at the largest radius."""


class RelevanceError(EndtreesError):
    """A separation fails one of the relevance conditions."""

    code = "NotRelevant"


class WrongOrder(RelevanceError):
    code = "WrongOrder"


class SideDisconnected(RelevanceError):
    code = "SideDisconnected"


class SeparatorNotAttached(RelevanceError):
    code = "SeparatorNotAttached"


class HorizonOnWrongSide(RelevanceError):
    code = "HorizonOnWrongSide"


class SmallerCutExists(RelevanceError):
    code = "SmallerCutExists"


class CycleDetected(EndtreesError):
    """The comparability relation on a pool is not acyclic (equality bug)."""


class EmptyNiceSet(EndtreesError):
    """No candidate extends the current stage; the truncation is too small."""


class NotEnoughLevels(EndtreesError):
    """Fewer construction stages fit in the truncation than required."""


class NestednessViolation(EndtreesError):
    """Two members of a supposedly nested family cross (logic-bug guard)."""


class OutdegreeViolation(EndtreesError):
    """A non-top tree node has outdegree != 1 (logic-bug guard)."""


class Disconnected(EndtreesError):
    """The constructed tree is not connected (logic-bug guard)."""


class DominatedEnd(EndtreesError):
    """The construction requires an undominated end."""


class ThickEnd(EndtreesError):
    """The construction requires an end of finite vertex degree."""
