"""Coefficient fields K(z) built from parameter vectors.

Two parameterizations are supported:

- the scalar uniform experiment, K(x) = z cos(2 pi x1) sin(2 pi x2) + 2
- the truncated log-normal expansion, K(x) = K_star + exp(K_bar + sum_j z_j psi_j(x))

Field builders are small picklable classes so forward models can be shipped
to worker processes.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from hymcmc.errors import HymcmcValidationError
from hymcmc.fem.mesh import Mesh
from hymcmc.fem.solver import CoefficientField
from hymcmc.models.prior import GaussianPriorSpec, UniformPriorSpec
from hymcmc.prior.sampling import ParameterVector
from hymcmc.types.prior_types import PsiFamily

BasisFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]

# Sup-norm estimates for custom bases are taken on this lattice
_SUP_NORM_GRID = 65


def _as_array(z: Union[ParameterVector, np.ndarray, Sequence[float]]) -> np.ndarray:
    if isinstance(z, ParameterVector):
        return z.z
    return np.atleast_1d(np.asarray(z, dtype=float))


def build_field_uniform(z: Union[ParameterVector, np.ndarray, Sequence[float]], mesh: Mesh) -> CoefficientField:
    """K(x) = z cos(2 pi x1) sin(2 pi x2) + 2 at every node.

    K >= 1 everywhere because z lies in [0, 1].

    Raises:
        HymcmcValidationError: If z is not a scalar in [0, 1]
    """
    zz = _as_array(z)
    if zz.shape != (1,) or not 0.0 <= zz[0] <= 1.0:
        raise HymcmcValidationError(
            "The uniform field needs a scalar parameter in [0, 1]",
            details={"z": zz.tolist()}
        )
    x1, x2 = mesh.nodes[:, 0], mesh.nodes[:, 1]
    values = zz[0] * np.cos(2.0 * np.pi * x1) * np.sin(2.0 * np.pi * x2) + 2.0
    return CoefficientField(level=mesh.level, values=values, provenance=f"uniform z={zz[0]!r}")


@dataclass(frozen=True)
class SinDecayMode:
    """psi_j(x) = (amplitude / j^2) sin(j pi x1) sin(j pi x2)."""

    j: int
    amplitude: float = 0.5

    def __call__(self, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
        return (self.amplitude / self.j ** 2) * np.sin(self.j * np.pi * x1) * np.sin(self.j * np.pi * x2)

    @property
    def sup_norm(self) -> float:
        return self.amplitude / self.j ** 2


@dataclass
class GaussianFieldSpec:
    """Truncated log-normal expansion of the coefficient field.

    Attributes:
        k_star: Non-negative shift K_star
        k_bar: Mean of the log-field K_bar
        psi: Basis functions, vectorized in (x1, x2)
        b: Sup norms of the basis functions; filled in when omitted

    Example:
        >>> spec = GaussianFieldSpec.sin_decay(4)
        >>> [round(v, 4) for v in spec.b]
        [0.5, 0.125, 0.0556, 0.0312]
    """

    k_star: float
    k_bar: float
    psi: List[BasisFunction]
    b: Optional[List[float]] = field(default=None)

    def __post_init__(self) -> None:
        if self.k_star < 0:
            raise HymcmcValidationError("K_star must be non-negative", details={"k_star": self.k_star})
        if not self.psi:
            raise HymcmcValidationError("The expansion needs at least one basis function")
        if self.b is None:
            self.b = [_sup_norm(p) for p in self.psi]

    @property
    def n(self) -> int:
        return len(self.psi)

    @classmethod
    def sin_decay(
        cls, n: int, amplitude: float = 0.5, k_star: float = 0.0, k_bar: float = 0.0
    ) -> "GaussianFieldSpec":
        """The default smooth basis with summable sup norms amplitude / j^2."""
        modes = [SinDecayMode(j=j, amplitude=amplitude) for j in range(1, n + 1)]
        return cls(k_star=k_star, k_bar=k_bar, psi=list(modes), b=[m.sup_norm for m in modes])

    @classmethod
    def from_prior(cls, prior: GaussianPriorSpec) -> "GaussianFieldSpec":
        cfg = prior.field
        if PsiFamily(cfg.psi) != PsiFamily.SIN_DECAY:
            raise HymcmcValidationError("Unknown basis family", details={"psi": cfg.psi})
        return cls.sin_decay(prior.n, amplitude=cfg.amplitude, k_star=cfg.k_star, k_bar=cfg.k_bar)


def _sup_norm(psi: BasisFunction) -> float:
    coords = np.linspace(0.0, 1.0, _SUP_NORM_GRID)
    xs, ys = np.meshgrid(coords, coords)
    values = np.broadcast_to(np.asarray(psi(xs.ravel(), ys.ravel()), dtype=float), (xs.size,))
    return float(np.max(np.abs(values)))


def build_field_lognormal(
    z: Union[ParameterVector, np.ndarray, Sequence[float]],
    spec: GaussianFieldSpec,
    mesh: Mesh,
) -> CoefficientField:
    """K = K_star + exp(K_bar + sum_j z_j psi_j) at every node.

    Raises:
        HymcmcValidationError: If z does not have one entry per basis function
    """
    zz = _as_array(z)
    if zz.shape != (spec.n,):
        raise HymcmcValidationError(
            "Parameter dimension does not match the expansion",
            details={"expected": spec.n, "shape": zz.shape}
        )
    x1, x2 = mesh.nodes[:, 0], mesh.nodes[:, 1]
    exponent = np.full(mesh.node_count, spec.k_bar)
    for zj, psi in zip(zz, spec.psi):
        exponent = exponent + zj * np.broadcast_to(np.asarray(psi(x1, x2), dtype=float), exponent.shape)
    # exp underflows to zero far below K_bar; the smallest normal float keeps K > 0
    values = np.maximum(spec.k_star + np.exp(exponent), np.finfo(float).tiny)
    return CoefficientField(level=mesh.level, values=values, provenance=f"lognormal n={spec.n}")


class FieldBuilder(ABC):
    """Maps a raw parameter array and a mesh to a coefficient field."""

    @abstractmethod
    def __call__(self, z: np.ndarray, mesh: Mesh) -> CoefficientField:
        ...


class UniformFieldBuilder(FieldBuilder):
    """Builder of the scalar uniform experiment."""

    def __call__(self, z: np.ndarray, mesh: Mesh) -> CoefficientField:
        return build_field_uniform(z, mesh)

    def __repr__(self) -> str:
        return "UniformFieldBuilder()"


class LognormalFieldBuilder(FieldBuilder):
    """Builder of the truncated log-normal expansion."""

    def __init__(self, spec: GaussianFieldSpec):
        self.spec = spec

    def __call__(self, z: np.ndarray, mesh: Mesh) -> CoefficientField:
        return build_field_lognormal(z, self.spec, mesh)

    def __repr__(self) -> str:
        return f"LognormalFieldBuilder(n={self.spec.n})"


def field_builder_for(prior: Union[UniformPriorSpec, GaussianPriorSpec]) -> FieldBuilder:
    """Field builder matching a prior specification."""
    if isinstance(prior, UniformPriorSpec):
        return UniformFieldBuilder()
    return LognormalFieldBuilder(GaussianFieldSpec.from_prior(prior))


__all__ = [
    'BasisFunction',
    'SinDecayMode',
    'GaussianFieldSpec',
    'build_field_uniform',
    'build_field_lognormal',
    'FieldBuilder',
    'UniformFieldBuilder',
    'LognormalFieldBuilder',
    'field_builder_for',
]
