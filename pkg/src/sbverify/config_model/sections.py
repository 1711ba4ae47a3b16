"""Closed-form evaluators for the local sections over the two trivializations.

Chart D is the unit disc with the trivial metric; chart V is |z| > 1/2 and the
transition is y_D = z^9 y_V.  All evaluators accept scalars or numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .params import ModelParams

SIGMA_PLATEAU = (2 / 3, 3 / 4)  # rho = 1 below, 0 above
TAU_PLATEAU = (1 / 2, 3 / 4)


class ChartDomainError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    pass


def _phi(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def bump(r, a: float, b: float):
    """Smooth non-increasing profile: 1 for r <= a, 0 for r >= b."""
    r = np.asarray(r, dtype=float)
    up = _phi(b - r)
    down = _phi(r - a)
    out = up / (up + down)
    return out if out.ndim else float(out)


def bump_derivative(r, a: float, b: float):
    """d/dr of :func:`bump`, in closed form."""
    r = np.asarray(r, dtype=float)
    u, d = _phi(b - r), _phi(r - a)
    du = np.zeros_like(r)
    dd = np.zeros_like(r)
    inside = (r > a) & (r < b)
    s = b - r[inside]
    t = r[inside] - a
    du[inside] = -u[inside] / s**2
    dd[inside] = d[inside] / t**2
    out = (du * (u + d) - u * (du + dd)) / (u + d) ** 2
    return out if out.ndim else float(out)


def _as_array(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _ret(values, scalar):
    return complex(values) if scalar else values


@dataclass(frozen=True)
class Section:
    """A named evaluator in the D-chart trivialization with its known poles."""

    name: str
    func: Callable
    poles: tuple[complex, ...] = ()

    def __call__(self, z):
        return self.func(z)

    def scaled(self, eps: float) -> "Section":
        f = self.func
        return Section(self.name, lambda z: eps * f(z), self.poles)


class SectionFamily:
    """sigma_1..sigma_11 and tau_1..tau_3 for fixed points and lambda."""

    def __init__(self, params: ModelParams, lam: float):
        if not 0 < lam <= 0.25:
            raise ValueError("lambda must lie in (0, 1/4]")
        self.params = params
        self.lam = float(lam)
        self.z = np.array(params.z[:10], dtype=complex)
        self.w = np.array(params.w, dtype=complex)
        self.lz = self.lam * self.z
        self.lw = self.lam * self.w
        self.A = -1.0 / np.prod(self.z)
        self.scale = self.lam**-9 * self.A  # lambda^-9 A

    # -- chart D -------------------------------------------------------------

    def _prod_D(self, z, skip: int | None):
        idx = [i for i in range(10) if i != skip]
        return np.prod(1 - z[..., None] / self.lz[idx], axis=-1)

    def _check_D(self, z):
        if np.any(np.abs(z) >= 1):
            raise ChartDomainError("chart D needs |z| < 1")

    def _check_V(self, z):
        if np.any(np.abs(z) <= 0.5):
            raise ChartDomainError("chart V needs |z| > 1/2")

    def sigma(self, j: int, z, chart: str = "D"):
        """sigma_j; j = 11 is the zero section."""
        arr, scalar = _as_array(z)
        self._check_index(j, 11)
        if chart == "D":
            self._check_D(arr)
            vals = np.zeros_like(arr) if j == 11 else self._prod_D(arr, j - 1)
        elif chart == "V":
            self._check_V(arr)
            if j == 11:
                vals = np.zeros_like(arr)
            else:
                idx = [i for i in range(10) if i != j - 1]
                vals = self.scale * self.z[j - 1] * np.prod(1 - self.lz[idx] / arr[..., None], axis=-1)
        else:
            raise ValueError(f"unknown chart {chart!r}")
        return _ret(vals, scalar)

    def f(self, j: int, z, lam: float | None = None):
        """(prod_{i != j} (1 - lam z_i / z) - 1) / lam."""
        arr, scalar = _as_array(z)
        lam = self.lam if lam is None else lam
        idx = [i for i in range(10) if i != j - 1]
        vals = (np.prod(1 - lam * self.z[idx] / arr[..., None], axis=-1) - 1) / lam
        return _ret(vals, scalar)

    def g(self, k: int, z, lam: float | None = None):
        arr, scalar = _as_array(z)
        lam = self.lam if lam is None else lam
        num = np.prod(1 - lam * self.z / arr[..., None], axis=-1)
        vals = (num / (1 - lam * self.w[k - 1] / arr) - 1) / lam
        return _ret(vals, scalar)

    def tau(self, k: int, z):
        arr, scalar = _as_array(z)
        self._check_index(k, 3)
        self._check_D(arr)
        if np.any(arr == self.lw[k - 1]):
            raise PoleError(f"tau_{k} has a pole at lambda w_{k}")
        denom = 1 - arr / self.lw[k - 1]
        vals = self._prod_D(arr, None) / denom
        return _ret(vals, scalar)

    # -- glued sections in chart V -------------------------------------------

    def sigma_hat(self, j: int, z):
        arr, scalar = _as_array(z)
        self._check_index(j, 11)
        if np.any(np.abs(arr) < 0.5):
            raise ChartDomainError("sigma_hat is defined for |z| >= 1/2")
        if j == 11:
            return _ret(np.zeros_like(arr), scalar)
        rho = bump(np.abs(arr), *SIGMA_PLATEAU)
        vals = self.scale * self.z[j - 1] * (1 + self.lam * rho * self.f(j, arr))
        return _ret(vals, scalar)

    def tau_hat(self, k: int, z):
        arr, scalar = _as_array(z)
        self._check_index(k, 3)
        if np.any(np.abs(arr) < 0.5):
            raise ChartDomainError("tau_hat is defined for |z| >= 1/2")
        rho = bump(np.abs(arr), *TAU_PLATEAU)
        vals = self.scale * self.w[k - 1] * (1 + self.lam * rho * self.g(k, arr))
        return _ret(vals, scalar)

    def glued(self, kind: str, idx: int, z):
        """Global section in chart-D coordinates on all of C: the local formula on
        |z| <= 1/2 and z^9 times the chart-V value outside (formally continued past |z| = 1).
        """
        arr, scalar = _as_array(z)
        inner = np.abs(arr) <= 0.5
        out = np.empty_like(arr)
        zi, zo = arr[inner], arr[~inner]
        if kind == "sigma":
            if zi.size:
                out[inner] = 0 if idx == 11 else self._prod_D(zi, idx - 1)
            if zo.size:
                out[~inner] = zo**9 * self.sigma_hat(idx, zo)
        elif kind == "tau":
            if zi.size:
                out[inner] = self.tau(idx, zi)
            if zo.size:
                out[~inner] = zo**9 * self.tau_hat(idx, zo)
        else:
            raise ValueError(f"unknown section kind {kind!r}")
        return _ret(out, scalar)

    def section(self, kind: str, idx: int) -> Section:
        poles = (complex(self.lw[idx - 1]),) if kind == "tau" else ()
        name = f"{kind}{idx:02d}"
        return Section(name, lambda z, k=kind, i=idx: self.glued(k, i, z), poles)

    def sections(self) -> list[Section]:
        return [self.section("sigma", j) for j in range(1, 12)] + [self.section("tau", k) for k in range(1, 4)]

    @staticmethod
    def _check_index(i: int, top: int):
        if not 1 <= i <= top:
            raise IndexError(f"index {i} outside 1..{top}")
