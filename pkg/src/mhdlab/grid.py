"""Collocated node grid on a box, with suppressed axes for 1d/2d problems.

Every field lives on all three axes; an axis with a single node is suppressed
(derivatives along it vanish, its spacing is 1 so quadrature reduces
correctly).  Quadrature is the tensor trapezoid rule over the node values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class Grid:
    shape: tuple[int, int, int]
    extents: tuple[float, float, float]

    def __post_init__(self):
        if len(self.shape) != 3 or len(self.extents) != 3:
            raise ValueError("grid needs 3 axis entries (use 1 node to suppress)")
        object.__setattr__(self, "shape", tuple(int(n) for n in self.shape))
        object.__setattr__(self, "extents", tuple(float(L) for L in self.extents))
        for n, L in zip(self.shape, self.extents):
            if n < 1 or (n > 1 and n < 3):
                raise ValueError(f"active axes need >= 3 nodes, got {n}")
            if L <= 0.0:
                raise ValueError(f"extents must be positive, got {L}")

    @cached_property
    def active_axes(self) -> tuple[int, ...]:
        return tuple(a for a in range(3) if self.shape[a] > 1)

    @property
    def ndim_active(self) -> int:
        return len(self.active_axes)

    @cached_property
    def spacing(self) -> tuple[float, float, float]:
        return tuple(
            self.extents[a] / (self.shape[a] - 1) if self.shape[a] > 1 else 1.0
            for a in range(3)
        )

    @cached_property
    def spacing_active(self) -> tuple[float, ...]:
        return tuple(self.spacing[a] for a in self.active_axes)

    @cached_property
    def volume(self) -> float:
        v = 1.0
        for a in self.active_axes:
            v *= self.extents[a]
        return v

    def coords(self, axis: int) -> np.ndarray:
        n = self.shape[axis]
        if n == 1:
            return np.zeros(1)
        return np.linspace(0.0, self.extents[axis], n)

    def mesh(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Broadcast coordinate arrays of the full grid shape."""
        xs = [self.coords(a) for a in range(3)]
        g = np.meshgrid(*xs, indexing="ij")
        return g[0], g[1], g[2]

    @cached_property
    def quad_weights(self) -> np.ndarray:
        """Tensor trapezoid weights including the spacing factors."""
        w = np.ones(self.shape)
        for a in range(3):
            n = self.shape[a]
            if n == 1:
                continue
            wa = np.full(n, self.spacing[a])
            wa[0] *= 0.5
            wa[-1] *= 0.5
            shape = [1, 1, 1]
            shape[a] = n
            w = w * wa.reshape(shape)
        return w

    def integrate(self, f: np.ndarray) -> float:
        """Trapezoid quadrature of a scalar field."""
        return float(np.sum(self.quad_weights * f))

    def norm_l2(self, f: np.ndarray) -> float:
        """L2 norm; vector fields (leading component axis) are contracted."""
        f = np.asarray(f)
        if f.ndim == 4:
            return float(np.sqrt(np.sum(self.quad_weights * np.sum(f * f, axis=0))))
        return float(np.sqrt(np.sum(self.quad_weights * f * f)))

    def norm_lp(self, f: np.ndarray, p: float) -> float:
        f = np.asarray(f)
        mag = np.sqrt(np.sum(f * f, axis=0)) if f.ndim == 4 else np.abs(f)
        return float(np.sum(self.quad_weights * mag**p) ** (1.0 / p))

    def scalar_field(self, fill: float = 0.0) -> np.ndarray:
        return np.full(self.shape, float(fill))

    def vector_field(self) -> np.ndarray:
        return np.zeros((3,) + self.shape)
