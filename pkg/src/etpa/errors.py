"""Exception hierarchy.

Every error raised by the library derives from :class:`EtpaError`. The two
intermediate bases, :class:`ConfigError` and :class:`DomainError`, map onto
the CLI exit codes 2 and 3.
"""


class EtpaError(Exception):
    """Base class for all library errors."""


class ConfigError(EtpaError):
    """Malformed absorber configuration.

    ``path`` is the dotted key path (``levels[1].d_gm``) and ``line`` the
    1-based line number in the source file when known.
    """

    def __init__(self, message, path=None, line=None, source=None):
        self.path = path
        self.line = line
        self.source = source
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(str(line))
        prefix = ":".join(where)
        if path:
            message = f"{path}: {message}"
        if prefix:
            message = f"{prefix}: {message}"
        super().__init__(message)


class DomainError(EtpaError, ValueError):
    """Argument outside the domain of a formula."""


class ZeroDipoleVector(DomainError):
    """All ground-side or all final-side dipole elements vanish."""


class ZeroCoupling(DomainError):
    """No level carries a nonzero product of dipole elements."""


class BoundaryLevel(DomainError):
    """A level sits exactly on the edge of the physical band, |nu_m| = B."""


class InBandLevelPresent(DomainError):
    """An off-resonant-only formula was requested with a level inside the band."""


class BandViolation(DomainError):
    """A frequency grid extends outside the physical band (-B, B)."""


class PoleOnGrid(DomainError):
    """A frequency grid point coincides with a principal-value pole."""


class PoleInBand(DomainError):
    """A pole inside the integration band cannot be bracketed for a PV integral."""


class NegativeFrequencySupport(DomainError):
    """An input state has non-negligible weight at negative photon frequencies."""


class QuadratureNotConverged(EtpaError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = f"{message} (grid index {index})"
        super().__init__(message)


class VerificationFailed(EtpaError):
    """One or more oracle cross-checks exceeded their tolerance."""
