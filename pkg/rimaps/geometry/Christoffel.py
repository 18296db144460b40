from __future__ import annotations

import dataclasses

import numpy as np


@dataclasses.dataclass(frozen=True)
class Christoffel:
    """Levi-Civita symbols at one point, ``gamma[k, i, j] = Gamma^k_ij``."""
    gamma: np.ndarray

    @staticmethod
    def from_metric(metric: np.ndarray, derivatives: np.ndarray,
                    inverse: np.ndarray) -> Christoffel:
        """Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).

        ``derivatives[i, j, k]`` is the partial of g_ij along coordinate k.
        """
        # lowered[l, i, j] = d_i g_jl + d_j g_il - d_l g_ij
        lowered = (np.einsum("jli->lij", derivatives) +
                   np.einsum("ilj->lij", derivatives) -
                   np.einsum("ijl->lij", derivatives))
        gamma = 0.5 * np.einsum("kl,lij->kij", inverse, lowered)
        return Christoffel(gamma)

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def contract(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Gamma(u, v)^k = Gamma^k_ij u^i v^j."""
        return np.einsum("kij,i,j->k", self.gamma, u, v)

    def torsion_defect(self) -> float:
        return float(np.max(np.abs(self.gamma - np.swapaxes(self.gamma, 1, 2)),
                            initial=0.0))

    def compatibility_defect(self, metric: np.ndarray,
                             derivatives: np.ndarray) -> float:
        """Largest |d_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_il|."""
        term1 = np.einsum("lki,lj->ijk", self.gamma, metric)
        term2 = np.einsum("lkj,il->ijk", self.gamma, metric)
        return float(np.max(np.abs(derivatives - term1 - term2), initial=0.0))
