"""Configuration records shared by the solvers.

Natural units hbar = c = k_B = 1 throughout; lengths are in units of the
caller's choice (the figures use a = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "NonConvergence",
    "Geometry",
    "ThermalState",
    "PermittivityModel",
    "SeriesResult",
]


class NonConvergence(RuntimeError):
    """A series hit its term cap before meeting the requested tolerance.

    ``which`` names the failing sum ("l", "n" or "quadrature").
    """

    def __init__(self, message: str, which: str = "l", cap: int | None = None):
        super().__init__(message)
        self.which = which
        self.cap = cap


@dataclass(frozen=True)
class Geometry:
    """Inner sphere of radius a and outer medium beyond radius b."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("radii must be finite")
        if not 0.0 < self.a < self.b:
            raise ValueError(f"need 0 < a < b, got a={self.a}, b={self.b}")

    @classmethod
    def from_gap_ratio(cls, d_over_a: float, a: float = 1.0) -> "Geometry":
        if not d_over_a > 0:
            raise ValueError("gap ratio d/a must be > 0")
        return cls(a, a * (1.0 + d_over_a))

    @property
    def d(self) -> float:
        return self.b - self.a

    @property
    def xi(self) -> float:
        return (self.b - self.a) / self.a

    @property
    def ratio(self) -> float:
        return self.a / self.b

    @property
    def area(self) -> float:
        return 4.0 * math.pi * self.a**2

    def sigma(self, l):
        """(a/b)**(2l+1); accepts scalar or array l."""
        return self.ratio ** (2 * np.asarray(l) + 1)

    def with_b(self, b: float) -> "Geometry":
        return Geometry(self.a, b)


@dataclass(frozen=True)
class ThermalState:
    """Temperature in the nondimensional form t = 2 pi a / beta.

    ``a`` is the length used to make t dimensionless (the inner radius).
    t = 0 is zero temperature.
    """

    t: float
    a: float = 1.0

    def __post_init__(self):
        if not (self.t >= 0 and math.isfinite(self.t)):
            raise ValueError("t must be finite and >= 0")
        if not self.a > 0:
            raise ValueError("a must be > 0")

    @classmethod
    def from_beta(cls, beta: float, a: float = 1.0) -> "ThermalState":
        return cls(2.0 * math.pi * a / beta, a)

    @property
    def beta(self) -> float:
        return math.inf if self.t == 0 else 2.0 * math.pi * self.a / self.t

    def zeta(self, n):
        """Matsubara frequency 2 pi n / beta = n t / a."""
        return np.asarray(n, dtype=float) * (self.t / self.a)


_KINDS = ("constant", "single-oscillator", "conductor")


@dataclass(frozen=True)
class PermittivityModel:
    """Permittivity on the imaginary frequency axis, eps(i zeta).

    ``single-oscillator`` is ``1 + (epsilon0 - 1) / (1 + zeta^2/omega0^2)``.
    A ``constant`` model with infinite epsilon0 is promoted to ``conductor``.
    """

    kind: str = "constant"
    epsilon0: float = 1.0
    omega0: float = 1.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown permittivity model {self.kind!r}; choose from {_KINDS}")
        if self.kind != "conductor":
            if math.isinf(self.epsilon0) and self.kind == "constant":
                object.__setattr__(self, "kind", "conductor")
            elif not self.epsilon0 >= 1.0 or math.isnan(self.epsilon0):
                raise ValueError("epsilon0 must be >= 1")
        if self.kind == "conductor":
            object.__setattr__(self, "epsilon0", math.inf)
        if not self.omega0 > 0:
            raise ValueError("omega0 must be > 0")

    @classmethod
    def constant(cls, epsilon: float) -> "PermittivityModel":
        return cls("constant", float(epsilon))

    @classmethod
    def oscillator(cls, epsilon0: float, omega0: float) -> "PermittivityModel":
        return cls("single-oscillator", float(epsilon0), float(omega0))

    @classmethod
    def conductor(cls) -> "PermittivityModel":
        return cls("conductor", math.inf)

    @property
    def is_conductor(self) -> bool:
        return self.kind == "conductor"

    def static(self) -> float:
        return self.epsilon0

    def __call__(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        if self.kind == "conductor":
            return np.full(zeta.shape, math.inf)
        if self.kind == "constant":
            return np.full(zeta.shape, self.epsilon0)
        return 1.0 + (self.epsilon0 - 1.0) / (1.0 + (zeta / self.omega0) ** 2)


@dataclass(frozen=True)
class SeriesResult:
    """A summed quantity with its convergence report."""

    value: float
    l_terms: int
    n_terms: int = 1
    tail_estimate: float = 0.0
    tolerance: float = 0.0
    extra: dict = field(default_factory=dict, compare=False)

    def __float__(self) -> float:
        return self.value

    @property
    def converged(self) -> bool:
        return self.tail_estimate <= self.tolerance * abs(self.value)
