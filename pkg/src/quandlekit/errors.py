"""Exception types shared across the package."""


class QuandleError(Exception):
    """Base class for all errors raised by quandlekit."""


class MalformedTable(QuandleError):
    """A table is not square or holds entries outside ``0..N-1``."""


class AxiomViolation(QuandleError):
    """Raised by :func:`quandlekit.core.validate` with every failed axiom instance."""

    def __init__(self, violations):
        self.violations = list(violations)
        kinds = sorted({v.axiom for v in self.violations})
        super().__init__(
            f"{len(self.violations)} axiom violation(s): {', '.join(kinds)}; "
            f"first witness {self.violations[0]}"
        )


class NotAutomorphism(QuandleError):
    pass


class NotCentralizingAutomorphism(QuandleError):
    def __init__(self, side, message="automorphism does not commute with inner symmetries"):
        self.side = side
        super().__init__(f"{message} (side {side})")


class NotSubgroup(QuandleError):
    pass


class NotCentralizing(QuandleError):
    def __init__(self, block=None, message="subgroup is not contained in the centralizer"):
        self.block = block
        super().__init__(message if block is None else f"{message} (block {block})")


class InnTooLarge(QuandleError):
    """The inner automorphism group closure exceeded its cap."""


class CapExceeded(QuandleError):
    pass


class RankMismatch(QuandleError):
    pass


class MembershipHolds(QuandleError):
    """Separation was requested for an element that lies in the subquandle."""


class UnsupportedRelationShape(QuandleError):
    pass


class ParseError(QuandleError):
    pass


class MalformedCrossing(ParseError):
    pass


class ArcCountMismatch(ParseError):
    pass


class BrokenComponentCycle(ParseError):
    pass


class BudgetExhausted(QuandleError):
    """A derivation search ran out of budget; this is not a disproof."""


class CertificateError(QuandleError):
    """A certificate or derivation failed independent re-verification."""
