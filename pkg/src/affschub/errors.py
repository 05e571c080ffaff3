"""Exception hierarchy shared by every module of the toolkit."""


class AffSchubError(Exception):
    """Base class for all toolkit errors."""


class ResidueCollision(AffSchubError, ValueError):
    """Two window entries agree modulo the period."""


class PeriodMismatch(AffSchubError, ValueError):
    """Operands have different periods n."""


class IndexMismatch(AffSchubError, ValueError):
    """Operands live in different components (different index k)."""


class ZeroArgument(AffSchubError, ValueError):
    """An operation undefined at zero received the zero Laurent polynomial."""


class SingularMatrix(AffSchubError, ValueError):
    """The determinant vanishes identically."""


class BoxNotEssential(AffSchubError, ValueError):
    pass


class BandTooNarrow(AffSchubError, ValueError):
    """A search band does not contain the information required."""
