"""Exception types shared across the package."""


class CvPurifyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CvPurifyError, ValueError):
    """A parameter lies outside its physical or numerical domain."""


class DegenerateStateError(CvPurifyError):
    """Gaussian denominators are too close to singular to condition on."""


class DegenerateOutcomeError(CvPurifyError):
    """A measurement outcome has probability below the degeneracy threshold."""


class FidelityDivergenceError(CvPurifyError):
    """A Gaussian term violates the fidelity-integral convergence condition."""


class ConvergenceError(CvPurifyError):
    """A numerical oracle did not converge to the requested accuracy."""


class TruncationError(CvPurifyError):
    """The Fock-space truncation can no longer represent the evolved state."""


class NoAdmissiblePointError(CvPurifyError):
    """No point in the search window satisfies the probability constraint."""


class ConfigError(CvPurifyError, ValueError):
    """A sweep configuration failed validation."""
