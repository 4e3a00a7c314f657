from typing import NamedTuple

import numpy as np

from src.consts import TOLERANCES
from src.lattice.params import LeadParams
from src.types import IComplexEnergy


class LeadPhase(NamedTuple):
    forward: complex  # e^{iq}
    backward: complex  # e^{-iq}
    propagating: bool

    @property
    def q(self) -> complex:
        return complex(-1j * np.log(self.forward))


def lead_phase(energy: IComplexEnergy, lead: LeadParams) -> LeadPhase:
    """
    Plane-wave phases of the lead dispersion E = -V0 cos q.

    e^{+-iq} = -E/V0 +- i sqrt(1 - (E/V0)^2) with the principal square root, which for real
    |E| <= V0 is the nonnegative root and continues analytically to complex E. Only real energies
    inside the lead band, |E|/V0 <= 1 - margin, are flagged as propagating.
    """
    energy = complex(energy)
    if not (np.isfinite(energy.real) and np.isfinite(energy.imag)):
        raise ValueError(f'E must be finite, got {energy}')
    ratio = energy / lead.v0
    root = complex(np.sqrt(1 - ratio ** 2))
    propagating = energy.imag == 0 and abs(ratio) <= 1 - TOLERANCES.PROPAGATING_MARGIN
    return LeadPhase(
        forward=-ratio + 1j * root,
        backward=-ratio - 1j * root,
        propagating=bool(propagating),
    )
