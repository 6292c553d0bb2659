"""Exception types shared across the receiver model."""

from __future__ import annotations


class RaqrError(Exception):
    """Base class for all model errors."""


class ConfigError(RaqrError):
    """Bad configuration text, unknown key, or violated invariant."""


class DegenerateDenominator(RaqrError):
    """The coherence denominator collapsed (the 0/0 point at zero drive and
    zero detunings)."""


class SingularSuperoperator(RaqrError):
    """The constrained steady-state system is rank deficient: the stationary
    density matrix is not unique."""


class WeakLoViolation(RaqrError):
    """The signal Rabi frequency is too large relative to the LO Rabi
    frequency for the separated-envelope form to hold."""


class ZeroReference(RaqrError):
    """The reference waveform of a normalized-error metric has zero norm."""


class InfiniteSnr(RaqrError):
    """All noise contributions vanished; the SNR is unbounded."""


class MissingLifetimeConstants(RaqrError):
    """Neither a direct dephasing rate nor (tau0, u) lifetime constants were
    supplied."""


class ObjectiveUndefined(RaqrError):
    """A sweep objective could not be evaluated at a grid point."""


class BudgetExceeded(RaqrError):
    """A grid search exceeds its configured point budget."""


class EmptyScenario(RaqrError):
    """A scenario produced no curves."""


class ScenarioError(RaqrError):
    """A scenario precondition failed."""
