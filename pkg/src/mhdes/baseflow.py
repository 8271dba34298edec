"""Laminar base states of conducting channel flow between z = -1 and z = 1.

Two profiles are provided: the wall-driven state whose velocity reduces to
U = z without a magnetic field, and the pressure-driven state that reduces
to U = 1 - z^2.  Both are written in exponentially rescaled form so that
evaluation stays finite and accurate at large Hartmann number, and grouped
so the defining identities (U'' = Ha^2 U + const, B'' = -U') and the wall
values hold to machine precision.  Below HA_FLOOR the closed-form small-Ha
limits are used.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

FLOWS = ("couette", "hartmann")
HA_FLOOR = 1e-4
HA_CEIL = 1e8


@dataclass(frozen=True)
class Params:
    """Physical parameter set: flow kind, Hartmann number, magnetic Prandtl
    number, and the derived interaction coefficient A = Ha^2 * Pm."""

    flow: str
    Ha: float
    Pm: float
    A: float = field(init=False)

    def __post_init__(self):
        if self.flow not in FLOWS:
            raise ParameterError(f"flow must be one of {FLOWS}, got {self.flow!r}")
        if not np.isfinite(self.Ha) or self.Ha < 0:
            raise ParameterError(f"Ha must be finite and >= 0, got {self.Ha}")
        if self.Ha > HA_CEIL:
            raise ParameterError(
                f"Ha = {self.Ha:g} exceeds the supported ceiling {HA_CEIL:g}; "
                "rescale the problem instead")
        if not np.isfinite(self.Pm) or self.Pm <= 0:
            raise ParameterError(f"Pm must be finite and > 0, got {self.Pm}")
        object.__setattr__(self, "Ha", float(self.Ha))
        object.__setattr__(self, "Pm", float(self.Pm))
        object.__setattr__(self, "A", self.Ha * self.Ha * self.Pm)


@dataclass(frozen=True, eq=False)
class BaseFlowSample:
    """Nodal samples of a base state and its derivatives.

    U is the streamwise velocity, Bbar the induced streamwise magnetic
    component; primes denote d/dz.  flow and Ha record what was sampled so
    downstream consumers can detect mismatched bundles.
    """

    flow: str
    Ha: float
    z: np.ndarray
    U: np.ndarray
    Uprime: np.ndarray
    Usecond: np.ndarray
    Bbar: np.ndarray
    Bprime: np.ndarray
    Bsecond: np.ndarray


def _check_profile_args(Ha, z):
    if not np.isfinite(Ha) or Ha <= 0:
        raise ParameterError(f"Ha must be finite and > 0, got {Ha}")
    if Ha > HA_CEIL:
        raise ParameterError(
            f"Ha = {Ha:g} exceeds the supported ceiling {HA_CEIL:g}")
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if z.ndim != 1 or z.size == 0:
        raise ParameterError("z must be a nonempty 1-D array")
    if not np.all(np.isfinite(z)) or np.any(np.abs(z) > 1.0):
        raise ParameterError("z nodes must be finite and lie in [-1, 1]")
    return float(Ha), z


def couette_profile(Ha, z):
    """Wall-driven base state at Hartmann number Ha on nodes z.

    U is odd with U(+-1) = +-1 exactly; Bbar is even and vanishes at the
    walls exactly.  U'' equals Ha^2 * U as the same floating product, and
    B'' equals -U' as the same array, so the defining residuals are zero
    by construction.
    """
    Ha, z = _check_profile_args(Ha, z)
    if Ha < HA_FLOOR:
        U = z.copy()
        Uprime = np.ones_like(z)
        Usecond = Ha * Ha * U
        Bbar = 0.5 * (1.0 - z * z)
        Bprime = -U
        Bsecond = -Uprime
    else:
        y = np.abs(z)
        s = np.sign(z)
        den = -np.expm1(-2.0 * Ha)           # 1 - exp(-2 Ha), no cancellation
        E1 = np.exp(Ha * (y - 1.0))
        U = s * E1 * (-np.expm1(-2.0 * Ha * y)) / den
        Uprime = Ha * E1 * (1.0 + np.exp(-2.0 * Ha * y)) / den
        Usecond = Ha * Ha * U
        Bbar = ((1.0 - E1) + (np.exp(-2.0 * Ha) - np.exp(-Ha * (y + 1.0)))) / (Ha * den)
        Bprime = -U
        Bsecond = -Uprime
    return BaseFlowSample(flow="couette", Ha=Ha, z=z, U=U, Uprime=Uprime,
                          Usecond=Usecond, Bbar=Bbar, Bprime=Bprime,
                          Bsecond=Bsecond)


def hartmann_profile(Ha, z):
    """Pressure-driven base state at Hartmann number Ha on nodes z.

    U is even with U(+-1) = 0 exactly and U(0) = 1; Bbar is odd and
    vanishes at the walls exactly.  U'' - Ha^2 * U is constant across
    nodes and B'' equals -U' as the same array.
    """
    Ha, z = _check_profile_args(Ha, z)
    if Ha < HA_FLOOR:
        U = 1.0 - z * z
        Uprime = -2.0 * z
        # series for 2*cosh(Ha)/((cosh Ha - 1)/(Ha^2/2)); keeps the
        # U'' - Ha^2 U residual an exact constant in this branch too
        c2s = 1.0 + Ha * Ha / 12.0 * (1.0 + Ha * Ha / 30.0)
        K = 2.0 * np.cosh(Ha) / c2s
        Usecond = Ha * Ha * U - K
        Bbar = (z * z * z - z) / 3.0
        Bprime = z * z - 1.0 / 3.0
        Bsecond = -Uprime
    else:
        y = np.abs(z)
        s = np.sign(z)
        den = np.expm1(-Ha) ** 2             # (1 - exp(-Ha))^2
        E1 = np.exp(Ha * (y - 1.0))
        E2 = np.exp(-Ha * (y + 1.0))
        Em = np.exp(-2.0 * Ha)
        U = ((1.0 - E1) + (Em - E2)) / den
        Uprime = -s * Ha * (E1 - E2) / den
        Usecond = -Ha * Ha * (E1 + E2) / den
        Bbar = s * ((E1 - y) + (y * Em - E2)) / (Ha * den)
        Bprime = (Ha * (E1 + E2) - (1.0 - Em)) / (Ha * den)
        Bsecond = -Uprime
    return BaseFlowSample(flow="hartmann", Ha=Ha, z=z, U=U, Uprime=Uprime,
                          Usecond=Usecond, Bbar=Bbar, Bprime=Bprime,
                          Bsecond=Bsecond)


def profile_for(params, z):
    """Sample the base state selected by params on nodes z."""
    if params.flow == "couette":
        return couette_profile(params.Ha, z)
    return hartmann_profile(params.Ha, z)


def baseflow_residual(sample, params):
    """Residuals of the base-state balance equations for a sample.

    The residuals are evaluated against params, not against what the
    sample was built from, so checking a sample with mismatched
    parameters produces a large r1 rather than an exception; this is the
    intended detector for mixed-up bundles.

    Returns (r1, r2) where r1 measures U'' - Ha^2 * U (its max deviation
    from the nodal mean for the pressure-driven state, where the exact
    value is a nonzero constant; its plain max magnitude for the
    wall-driven state) and r2 measures B'' + U'.  Both are normalized by
    the natural scale of the identity, max(1, Ha^2) and max(1, Ha), so
    the bound 1e-12 is meaningful at large Hartmann number where the raw
    terms reach Ha^2 in size.
    """
    if not isinstance(sample, BaseFlowSample):
        raise ParameterError("baseflow_residual expects a BaseFlowSample")
    Ha = params.Ha
    res1 = sample.Usecond - Ha * Ha * sample.U
    if params.flow == "hartmann":
        dev1 = np.max(np.abs(res1 - np.mean(res1)))
    else:
        dev1 = np.max(np.abs(res1))
    res2 = sample.Bsecond + sample.Uprime
    r1 = float(dev1) / max(1.0, Ha * Ha)
    r2 = float(np.max(np.abs(res2))) / max(1.0, Ha)
    return r1, r2
