"""Certified zero location for h = f - g by argument-principle subdivision.

Every tolerance is relative (phase differences, ratios of |h| values, steps
proportional to the cell size), so multiplying f and g by a power of two
leaves every floating-point decision and the located roots bit-for-bit unchanged.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .sections import PoleError

MAX_PHASE_STEP = math.pi / 4
SPLIT_FRACTIONS = (0.5137, 0.4721, 0.5389, 0.4463, 0.5711)


class BoundaryHitError(ArithmeticError):
    """A zero or pole lies on (or numerically at) the contour."""


class UndetectedRootError(RuntimeError):
    pass


class PolishError(RuntimeError):
    def __init__(self, message: str, box: "Box | None" = None):
        super().__init__(message)
        self.box = box


class TangencyError(ArithmeticError):
    def __init__(self, message: str, root: complex, gap: float):
        super().__init__(message)
        self.root = root
        self.gap = gap


@dataclass(frozen=True)
class Box:
    x0: float
    x1: float
    y0: float
    y1: float

    @property
    def width(self) -> float:
        return max(self.x1 - self.x0, self.y1 - self.y0)

    @property
    def center(self) -> complex:
        return complex((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)

    def vertices(self) -> list[complex]:
        return [complex(self.x0, self.y0), complex(self.x1, self.y0), complex(self.x1, self.y1), complex(self.x0, self.y1)]

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return self.x0 - pad < z.real < self.x1 + pad and self.y0 - pad < z.imag < self.y1 + pad

    def on_boundary(self, z: complex) -> bool:
        inside = self.x0 <= z.real <= self.x1 and self.y0 <= z.imag <= self.y1
        return inside and not self.contains(z)

    def split(self, frac: float) -> list["Box"]:
        xm = self.x0 + frac * (self.x1 - self.x0)
        ym = self.y0 + frac * (self.y1 - self.y0)
        return [Box(self.x0, xm, self.y0, ym), Box(xm, self.x1, self.y0, ym),
                Box(xm, self.x1, ym, self.y1), Box(self.x0, xm, ym, self.y1)]

    def to_json(self) -> list[float]:
        return [self.x0, self.x1, self.y0, self.y1]


MODEL_BOX = Box(-0.8, 0.8, -0.8, 0.8)


def _safe_eval(h: Callable, pts: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(h(pts), dtype=complex)
    except PoleError as exc:
        raise BoundaryHitError(str(exc)) from None
    if not np.all(np.isfinite(vals)) or np.any(vals == 0):
        raise BoundaryHitError("zero or non-finite value on the contour")
    return vals


def _polygon_points(vertices: Sequence[complex], t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Points at parameters t (edge i spans [i, i+1]) and the edge vector at each."""
    v = np.asarray(list(vertices) + [vertices[0]], dtype=complex)
    i = np.minimum(np.floor(t).astype(int), len(vertices) - 1)
    frac = t - i
    edge = v[i + 1] - v[i]
    return v[i] + frac * edge, edge


def _sample(h: Callable, vertices, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """h and |d log h / dt| along the path; the derivative by a forward difference."""
    pts, edge = _polygon_points(vertices, t)
    dt = 2.0**-24
    both = _safe_eval(h, np.concatenate([pts, pts + dt * edge]))
    vals, ahead = both[: len(t)], both[len(t):]
    rate = np.abs((ahead - vals) / vals) / dt
    return vals, rate


def _total_phase(vals: np.ndarray) -> float:
    ratios = np.append(vals[1:], vals[:1]) / vals
    return float(np.sum(np.angle(ratios)))


def winding_number(h: Callable, vertices: Sequence[complex], base: int = 8,
                   max_rounds: int = 80, min_step: float = 2.0**-40) -> tuple[int, float]:
    """Winding of h around a closed polygon, by adaptive phase unwrapping.

    Returns (winding, max |h| on the samples).  An interval is refined while
    its phase step exceeds pi/4 or its length times the larger endpoint value
    of |d log h / dt| does; the result is then recomputed with every interval
    halved and the two counts must agree.
    """
    n = len(vertices)
    t = np.arange(n * base, dtype=float) / base
    vals, rate = _sample(h, vertices, t)
    for _ in range(max_rounds):
        nxt_t = np.append(t[1:], float(n))
        length = nxt_t - t
        d = np.abs(np.angle(np.append(vals[1:], vals[:1]) / vals))
        r = np.maximum(rate, np.append(rate[1:], rate[:1]))
        bad = (d > MAX_PHASE_STEP) | (length * r > MAX_PHASE_STEP)
        if not bad.any():
            total = _total_phase(vals)
            w = round(total / (2 * math.pi))
            mid = (t + nxt_t) / 2
            mvals, mrate = _sample(h, vertices, mid)
            both = np.empty(2 * len(t), dtype=complex)
            both[0::2], both[1::2] = vals, mvals
            total2 = _total_phase(both)
            w2 = round(total2 / (2 * math.pi))
            if w2 == w and abs(total - 2 * math.pi * w) < 1e-6 and abs(total2 - 2 * math.pi * w) < 1e-6:
                return w, float(np.max(np.abs(both)))
            t_new = np.empty(2 * len(t))
            t_new[0::2], t_new[1::2] = t, mid
            r_new = np.empty(2 * len(t))
            r_new[0::2], r_new[1::2] = rate, mrate
            t, vals, rate = t_new, both, r_new
            continue
        if np.min(length[bad]) < min_step:
            raise BoundaryHitError("phase refinement did not resolve; contour passes through a zero or pole")
        mid = ((t + nxt_t) / 2)[bad]
        mvals, mrate = _sample(h, vertices, mid)
        order = np.argsort(np.concatenate([t, mid]), kind="stable")
        t = np.concatenate([t, mid])[order]
        vals = np.concatenate([vals, mvals])[order]
        rate = np.concatenate([rate, mrate])[order]
    raise BoundaryHitError("phase refinement exceeded the round limit")


def circle_vertices(center: complex, radius: float, n: int = 32) -> list[complex]:
    return [center + radius * complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]


@dataclass(frozen=True)
class Root:
    z: complex
    residual: float  # |h(z)| / max |h| on the small contour that fixes the multiplicity
    multiplicity: int
    box: Box

    def to_json(self) -> dict:
        return {"z": [self.z.real, self.z.imag], "residual": self.residual,
                "multiplicity": self.multiplicity, "cell": self.box.to_json()}


@dataclass(frozen=True)
class CoincidenceResult:
    roots: tuple[Root, ...]
    boundary_winding: int
    poles_inside: int
    cells: int

    @property
    def located(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    @property
    def expected(self) -> int:
        return self.boundary_winding + self.poles_inside


def _deriv(h: Callable, z: complex, step: float) -> complex:
    vals = h(np.array([z + step, z - step], dtype=complex))
    return complex((vals[0] - vals[1]) / (2 * step))


def newton_polish(h: Callable, box: Box, max_iter: int = 60) -> complex:
    z = box.center
    step = box.width * 2.0**-20
    for _ in range(max_iter):
        hz = complex(h(np.array([z], dtype=complex))[0])
        if hz == 0:
            break
        d = _deriv(h, z, step)
        if d == 0 or not math.isfinite(abs(d)):
            raise PolishError("vanishing derivative during polish", box)
        dz = hz / d
        z = z - dz
        if not box.contains(z, pad=0.25 * box.width):
            raise PolishError("Newton iterate left the isolating cell", box)
        if abs(dz) <= 4 * np.finfo(float).eps * max(abs(z), box.width):
            break
    else:
        raise PolishError("Newton polish did not converge", box)
    if not box.contains(z, pad=1e-9 * box.width):
        raise PolishError("polished root lies outside its cell", box)
    return z


def _poles_in(box: Box, poles: Sequence[complex]) -> int:
    for p in poles:
        if box.on_boundary(p):
            raise BoundaryHitError("pole on a cell boundary")
    return sum(1 for p in poles if box.contains(p))


def _cell_zeros(h, box, poles) -> int:
    w, _ = winding_number(h, box.vertices())
    return w + _poles_in(box, poles)


def find_coincidences(f: Callable, g: Callable, region: Box = MODEL_BOX, poles: Iterable[complex] | None = None,
                      tol: float = 1e-10, min_width_frac: float = 1e-9, max_cells: int = 20000) -> CoincidenceResult:
    """All zeros of f - g inside ``region``.

    ``poles`` lists the poles of f - g (defaults to the union of ``f.poles`` and
    ``g.poles``).  The zero count inside each cell is its boundary winding plus
    the poles it contains; cells are split until each holds one zero, which is
    then polished by Newton's method.  The located total must equal the count
    on the region boundary.
    """
    if poles is None:
        poles = tuple(getattr(f, "poles", ())) + tuple(getattr(g, "poles", ()))
    poles = tuple(dict.fromkeys(complex(p) for p in poles))

    def h(z):
        return f(z) - g(z)

    w0, _ = winding_number(h, region.vertices())
    p0 = _poles_in(region, poles)
    expected = w0 + p0
    if expected < 0:
        raise UndetectedRootError(f"negative zero count {expected} in the region")
    min_width = region.width * min_width_frac
    queue = deque([(region, expected)])
    roots: list[tuple[complex, Box, int]] = []
    cells = 0
    while queue:
        box, zeros = queue.popleft()
        cells += 1
        if cells > max_cells:
            raise UndetectedRootError("cell budget exhausted")
        if zeros == 0:
            continue
        npoles = _poles_in(box, poles)
        if zeros == 1 and npoles == 0:
            try:
                roots.append((newton_polish(h, box), box, 1))
                continue
            except PolishError:
                if box.width < min_width:
                    raise
        elif box.width < min_width:
            if npoles:
                raise UndetectedRootError("zero and pole not separated at the minimum cell size")
            roots.append((box.center, box, zeros))
            continue
        for frac in SPLIT_FRACTIONS:
            try:
                kids = [(k, _cell_zeros(h, k, poles)) for k in box.split(frac)]
            except BoundaryHitError:
                continue
            if sum(z for _, z in kids) != zeros or any(z < 0 for _, z in kids):
                continue
            queue.extend(kids)
            break
        else:
            raise UndetectedRootError(f"could not subdivide cell {box.to_json()} consistently")

    located = []
    points = [r[0] for r in roots]
    for i, (z, box, mult) in enumerate(roots):
        others = [abs(z - q) for j, q in enumerate(points) if j != i] + [abs(z - p) for p in poles]
        radius = 0.25 * min(others + [box.width])
        m, local_scale = winding_number(h, circle_vertices(z, radius))
        if m != mult:
            raise UndetectedRootError(f"multiplicity mismatch at {z}: cell {mult}, contour {m}")
        residual = abs(complex(h(np.array([z]))[0])) / local_scale
        if residual > tol:
            raise PolishError(f"residual {residual:.3g} above tolerance at {z}", box)
        located.append(Root(z, residual, m, box))
    located.sort(key=lambda r: (r.z.real, r.z.imag))
    result = CoincidenceResult(tuple(located), w0, p0, cells)
    if result.located != result.expected:
        raise UndetectedRootError(f"located {result.located} zeros, boundary count {result.expected}")
    return result


# ---------------------------------------------------------------------------
# local checks at a root


@dataclass(frozen=True)
class Transversality:
    derivative_gap: float  # |dh/dz|
    normalized_gap: float  # |dh/dz| r / max_{|z - root| = r} |h|
    cr_residual: float  # |dh/dzbar| / |dh/dz|
    jacobian: float  # |dh/dz|^2 - |dh/dzbar|^2, the local orientation
    positive: bool


def wirtinger(h: Callable, z: np.ndarray, step: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(dh/dz, dh/dzbar) by central differences with per-point steps."""
    z = np.asarray(z, dtype=complex)
    step = np.broadcast_to(np.asarray(step, dtype=float), z.shape)
    pts = np.concatenate([z + step, z - step, z + 1j * step, z - 1j * step])
    vals = np.asarray(h(pts), dtype=complex)
    n = z.size
    hx = (vals[:n] - vals[n:2 * n]) / (2 * step.ravel())
    hy = (vals[2 * n:3 * n] - vals[3 * n:]) / (2 * step.ravel())
    return (0.5 * (hx - 1j * hy)).reshape(z.shape), (0.5 * (hx + 1j * hy)).reshape(z.shape)


def check_transversality(f: Callable, g: Callable, root: complex, radius: float | None = None,
                         tol: float = 1e-6, cr_tol: float = 1e-6) -> Transversality:
    """Derivative gap of f - g at a simple root; raises TangencyError when it (nearly) vanishes."""

    def h(z):
        return f(z) - g(z)

    r = radius if radius is not None else 1e-3 * max(abs(root), 1e-3)
    step = 1e-3 * r
    dz, dzbar = wirtinger(h, np.array([root]), np.array([step]))
    dz, dzbar = complex(dz[0]), complex(dzbar[0])
    ring = np.max(np.abs(h(np.array(circle_vertices(root, r, 64)))))
    # an orientation-reversing root is transversal but not positive
    gap = max(abs(dz), abs(dzbar))
    normalized = gap * r / ring if ring > 0 else 0.0
    if not normalized > tol:
        raise TangencyError(f"tangency at {root}: normalized derivative gap {normalized:.3g}", root, normalized)
    cr = abs(dzbar) / abs(dz) if dz else math.inf
    jac = gap**2 - abs(dzbar) ** 2
    return Transversality(gap, normalized, cr, jac, cr < cr_tol and jac > 0)
