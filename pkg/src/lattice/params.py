import math
from dataclasses import dataclass

from src.consts import DEFAULTS


def _require_finite(**fields: float):
    for name, value in fields.items():
        if not math.isfinite(value):
            raise ValueError(f'{name} must be finite, got {value}')


@dataclass(frozen=True)
class LatticeParams:
    """
    Real parameters of the cross-stitch lattice.

    Attributes:
        t: intra-cell hopping
        d: inter-cell hopping (all-to-all between neighbouring cells)
        delta: Hermitian on-site imbalance, +delta/2 on a-sites and -delta/2 on b-sites
        gamma: balanced gain/loss, +i*gamma/2 on a-sites and -i*gamma/2 on b-sites
    """
    t: float = DEFAULTS.T
    d: float = DEFAULTS.D
    delta: float = DEFAULTS.DELTA
    gamma: float = DEFAULTS.GAMMA

    def __post_init__(self):
        _require_finite(t=self.t, d=self.d, delta=self.delta, gamma=self.gamma)
        if self.d == 0:
            raise ValueError('d must be nonzero, otherwise the chain disconnects')

    @property
    def eps_a(self) -> complex:
        return complex(self.delta / 2, self.gamma / 2)

    @property
    def eps_b(self) -> complex:
        return complex(-self.delta / 2, -self.gamma / 2)

    @property
    def is_pt_symmetric(self) -> bool:
        return self.delta == 0

    def with_gamma(self, gamma: float) -> 'LatticeParams':
        return LatticeParams(t=self.t, d=self.d, delta=self.delta, gamma=gamma)

    def with_delta(self, delta: float) -> 'LatticeParams':
        return LatticeParams(t=self.t, d=self.d, delta=delta, gamma=self.gamma)


@dataclass(frozen=True)
class LeadParams:
    """Semi-infinite leads with hopping v0/2, coupled to both sites of the end cells with strength g."""
    v0: float = DEFAULTS.V0
    g: float = DEFAULTS.G

    def __post_init__(self):
        _require_finite(v0=self.v0, g=self.g)
        if self.v0 <= 0:
            raise ValueError(f'v0 must be positive, got {self.v0}')


@dataclass(frozen=True)
class FiniteLattice:
    """Open chain of n_cells unit cells; overall_loss shifts every lattice site by -i*overall_loss."""
    n_cells: int
    params: LatticeParams = LatticeParams()
    overall_loss: float = DEFAULTS.OVERALL_LOSS

    def __post_init__(self):
        if self.n_cells < 1:
            raise ValueError(f'n_cells must be >= 1, got {self.n_cells}')
        _require_finite(overall_loss=self.overall_loss)
        if self.overall_loss < 0:
            raise ValueError(f'overall_loss must be >= 0, got {self.overall_loss}')

    @property
    def eps_a(self) -> complex:
        return -1j * self.overall_loss + self.params.eps_a

    @property
    def eps_b(self) -> complex:
        return -1j * self.overall_loss + self.params.eps_b

    @property
    def dimension(self) -> int:
        return 2 * self.n_cells

    def with_gamma(self, gamma: float) -> 'FiniteLattice':
        return FiniteLattice(self.n_cells, self.params.with_gamma(gamma), self.overall_loss)

    def with_delta(self, delta: float) -> 'FiniteLattice':
        return FiniteLattice(self.n_cells, self.params.with_delta(delta), self.overall_loss)

    def with_overall_loss(self, overall_loss: float) -> 'FiniteLattice':
        return FiniteLattice(self.n_cells, self.params, overall_loss)
