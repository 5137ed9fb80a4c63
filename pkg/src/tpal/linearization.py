"""The pencil ``L(y) = yE + F`` linearizing ``M(y)`` in the Dickson basis.

With block size ``m = 2n`` and ``k+1`` block rows::

    E = diag(I, ..., I, M_{k+1})

    F = [  0  -2I                          ]
        [ -I   0  -I                       ]
        [       ...  ...  ...              ]
        [            -I    0       -I      ]
        [ M_0  M_1 ... M_{k-2}  M_{k-1}-M_{k+1}  M_k ]

The solver never assembles it; :func:`densify` exists for verification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dickson import DicksonSystem


@dataclass(frozen=True)
class StructuredPencil:
    system: DicksonSystem

    @property
    def block(self) -> int:
        return 2 * self.system.n

    @property
    def dim(self) -> int:
        return self.block * (self.system.k + 1)

    def E(self) -> np.ndarray:
        m, k = self.block, self.system.k
        out = np.eye(self.dim, dtype=complex)
        out[k * m :, k * m :] = self.system.M[k + 1]
        return out

    def F(self) -> np.ndarray:
        m, k = self.block, self.system.k
        M = self.system.M
        out = np.zeros((self.dim, self.dim), dtype=complex)
        eye = np.eye(m)
        for i in range(k):
            if i > 0:
                out[i * m : (i + 1) * m, (i - 1) * m : i * m] = -eye
            out[i * m : (i + 1) * m, (i + 1) * m : (i + 2) * m] = -2 * eye if i == 0 else -eye
        last = out[k * m :]
        for j in range(k + 1):
            last[:, j * m : (j + 1) * m] = M[j]
        last[:, (k - 1) * m : k * m] -= M[k + 1]
        return out


def build_pencil(D: DicksonSystem) -> StructuredPencil:
    return StructuredPencil(D)


def densify(L: StructuredPencil, y) -> np.ndarray:
    return complex(y) * L.E() + L.F()
