import numpy as np

from branchon.models.params import FloatArray
from branchon.models.spectral import SampledFunction, TransformSpec


def reconstruct_momentum_wavefunction(chi: SampledFunction, spec: TransformSpec = TransformSpec()) -> SampledFunction:
    """
    Возврат к импульсному представлению: p = r^ρ, ψ(p) = r^(ξ-ρ) χ(r).
    При ρ = 2, ξ = 5/2 это ψ(p) = p^(1/4) χ(√p).
    """
    r = chi.points
    return SampledFunction(points=r**spec.rho, values=r ** (spec.xi - spec.rho) * chi.values)


def momentum_norm_weight(p: float | FloatArray, spec: TransformSpec = TransformSpec()) -> FloatArray:
    """Вес w(p) = p^((1+ρ-2ξ)/ρ)/ρ, с которым ∫|χ|² dr = ∫|ψ|² w dp."""
    p = np.asarray(p, dtype=np.float64)
    return p ** ((1.0 + spec.rho - 2.0 * spec.xi) / spec.rho) / spec.rho
