"""Level structure of a two-photon absorber.

Frequencies are angular frequencies in arbitrary units with hbar = 1. The
absorber is the ground state g, the two-photon final state f and a list of
intermediate levels m, each with two complex dipole amplitudes:

* ``d_gm``, the ground-to-level element <m|d|g>;
* ``d_mf``, the level-to-final amplitude as it enters the dipole
  correlation, <f|d|m>. For a Hermitian dipole operator this is the complex
  conjugate of <m|d|f>. The two elements of a level are independent inputs
  and Hermiticity is never imposed.

Everything downstream works with the detunings ``nu_m = omega_m - omega_av``
and the couplings ``c_m = sigma_tp <Phi_muf|m><m|Phi_gmu>``.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryLevel, DomainError, ZeroCoupling, ZeroDipoleVector

#: Levels closer than this (relative to omega_gf) to a band edge trigger a warning.
BOUNDARY_WARN_FRACTION = 1e-9


@dataclass(frozen=True)
class IntermediateLevel:
    omega_m: float
    d_gm: complex
    d_mf: complex

    def __post_init__(self):
        object.__setattr__(self, "omega_m", float(self.omega_m))
        object.__setattr__(self, "d_gm", complex(self.d_gm))
        object.__setattr__(self, "d_mf", complex(self.d_mf))
        if not np.isfinite(self.omega_m):
            raise DomainError(f"omega_m must be finite, got {self.omega_m}")


@dataclass(frozen=True)
class AbsorberSpec:
    """Ground/final frequencies plus intermediate levels.

    ``sigma_tp`` is the absorption cross-section scale. If ``j_q`` is given
    it takes precedence and the scale is derived as ``j_q * d_gmu * d_muf``.
    """

    omega_g: float
    omega_f: float
    levels: tuple[IntermediateLevel, ...]
    sigma_tp: float = 1.0
    j_q: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "omega_g", float(self.omega_g))
        object.__setattr__(self, "omega_f", float(self.omega_f))
        object.__setattr__(self, "sigma_tp", float(self.sigma_tp))
        object.__setattr__(self, "levels", tuple(self.levels))
        if not (np.isfinite(self.omega_g) and np.isfinite(self.omega_f)):
            raise DomainError("omega_g and omega_f must be finite")
        if not self.omega_f > self.omega_g:
            raise DomainError(
                f"omega_f ({self.omega_f}) must exceed omega_g ({self.omega_g})")
        if not self.levels:
            raise DomainError("at least one intermediate level is required")
        if not self.sigma_tp >= 0:
            raise DomainError(f"sigma_tp must be nonnegative, got {self.sigma_tp}")
        if self.j_q is not None:
            object.__setattr__(self, "j_q", float(self.j_q))
            if not self.j_q >= 0:
                raise DomainError(f"j_q must be nonnegative, got {self.j_q}")
        d_gm, d_mf = self.dipoles()
        if not np.any(d_gm):
            raise ZeroDipoleVector("all ground-side dipole elements d_gm vanish")
        if not np.any(d_mf):
            raise ZeroDipoleVector("all final-side dipole elements d_mf vanish")
        if not np.any(d_gm * d_mf):
            raise ZeroCoupling("no level has d_gm * d_mf != 0; the TPA amplitude is zero")

    @property
    def omega_av(self) -> float:
        return 0.5 * (self.omega_f + self.omega_g)

    @property
    def omega_gf(self) -> float:
        return self.omega_f - self.omega_g

    @property
    def band(self) -> float:
        """Half-width B = omega_gf / 2 of the physical frequency-difference band."""
        return 0.5 * self.omega_gf

    def omegas(self) -> np.ndarray:
        return np.array([lv.omega_m for lv in self.levels])

    def detunings(self) -> np.ndarray:
        return self.omegas() - self.omega_av

    def dipoles(self) -> tuple[np.ndarray, np.ndarray]:
        d_gm = np.array([lv.d_gm for lv in self.levels], dtype=complex)
        d_mf = np.array([lv.d_mf for lv in self.levels], dtype=complex)
        return d_gm, d_mf


@dataclass(frozen=True, eq=False)
class EffectiveStates:
    """Norms and unit vectors with d_gmu*phi_gmu = d_gm, d_muf*conj(phi_muf) = d_mf."""

    d_gmu: float
    d_muf: float
    phi_gmu: np.ndarray = field(repr=False)
    phi_muf: np.ndarray = field(repr=False)

    def overlap(self) -> complex:
        """<Phi_muf|Phi_gmu>."""
        return complex(np.vdot(self.phi_muf, self.phi_gmu))


@dataclass(frozen=True, eq=False)
class CouplingSet:
    nu: np.ndarray
    c: np.ndarray
    band: float
    omega_gf: float
    sigma_tp: float

    @property
    def entries(self) -> list[tuple[float, complex]]:
        return [(float(n), complex(w)) for n, w in zip(self.nu, self.c)]

    def __len__(self):
        return len(self.nu)


class LevelClass(enum.Enum):
    BELOW_GROUND = "below_ground"
    IN_BAND = "in_band"
    ABOVE_FINAL = "above_final"


def derive_effective_states(spec: AbsorberSpec) -> EffectiveStates:
    """Normalize the ground-side and final-side dipole vectors.

    All phase is carried by the unit vectors; the norms are real and
    nonnegative.
    """
    d_gm, d_mf = spec.dipoles()
    d_gmu = float(np.linalg.norm(d_gm))
    d_muf = float(np.linalg.norm(d_mf))
    if d_gmu == 0.0:
        raise ZeroDipoleVector("all ground-side dipole elements d_gm vanish")
    if d_muf == 0.0:
        raise ZeroDipoleVector("all final-side dipole elements d_mf vanish")
    return EffectiveStates(
        d_gmu=d_gmu,
        d_muf=d_muf,
        phi_gmu=d_gm / d_gmu,
        phi_muf=np.conj(d_mf) / d_muf,
    )


def effective_sigma_tp(spec: AbsorberSpec, states: EffectiveStates | None = None) -> float:
    if spec.j_q is None:
        return spec.sigma_tp
    if states is None:
        states = derive_effective_states(spec)
    return spec.j_q * states.d_gmu * states.d_muf


def coupling_set(spec: AbsorberSpec) -> CouplingSet:
    states = derive_effective_states(spec)
    sigma = effective_sigma_tp(spec, states)
    weights = sigma * np.conj(states.phi_muf) * states.phi_gmu
    return CouplingSet(
        nu=spec.detunings(),
        c=weights,
        band=spec.band,
        omega_gf=spec.omega_gf,
        sigma_tp=sigma,
    )


def classify_detunings(nu, band, omega_gf=None) -> list[LevelClass]:
    """Classify detunings against the band (-band, band).

    Raises :class:`BoundaryLevel` for ``|nu| == band`` and warns when a
    level lies within ``BOUNDARY_WARN_FRACTION * omega_gf`` of an edge.
    """
    if omega_gf is None:
        omega_gf = 2.0 * band
    out = []
    for k, n in enumerate(np.atleast_1d(np.asarray(nu, dtype=float))):
        gap = abs(abs(n) - band)
        if gap == 0.0:
            raise BoundaryLevel(
                f"level {k}: |nu_m| = {abs(n)!r} equals the band edge omega_gf/2; "
                "the log prefactor and PV poles diverge there")
        if gap < BOUNDARY_WARN_FRACTION * omega_gf:
            warnings.warn(
                f"level {k} lies within {gap:.3g} of the band edge; results near "
                "the edge are ill-conditioned", RuntimeWarning, stacklevel=2)
        if n < -band:
            out.append(LevelClass.BELOW_GROUND)
        elif n > band:
            out.append(LevelClass.ABOVE_FINAL)
        else:
            out.append(LevelClass.IN_BAND)
    return out


def classify_levels(spec: AbsorberSpec) -> list[LevelClass]:
    return classify_detunings(spec.detunings(), spec.band, spec.omega_gf)


def zeeman_pair(omega_mu, splitting, omega_g=0.0, omega_f=None, sigma_tp=1.0) -> AbsorberSpec:
    """Two levels at omega_mu +/- splitting/2 with equal unit dipole elements.

    ``omega_f`` defaults to ``2 * omega_mu - omega_g``, which puts the pair
    symmetrically around the band centre.
    """
    if omega_f is None:
        omega_f = 2.0 * omega_mu - omega_g
    return AbsorberSpec(
        omega_g=omega_g,
        omega_f=omega_f,
        levels=(
            IntermediateLevel(omega_mu + splitting / 2, 1.0, 1.0),
            IntermediateLevel(omega_mu - splitting / 2, 1.0, 1.0),
        ),
        sigma_tp=sigma_tp,
    )
