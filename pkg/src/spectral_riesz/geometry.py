"""Domains and the geometric functionals the eigenvalue bounds consume.

Domains are immutable values. Polygons are stored by their vertex list;
widths, hulls and perimeters are computed from the vertices alone, since
the extent of a polygon in any direction is attained at a vertex.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Sequence, Union

import numpy as np

from .errors import GeometryError

__all__ = [
    "Interval",
    "Box",
    "Polygon2D",
    "Disk",
    "Product",
    "Domain",
    "UnitVector",
    "width",
    "volume",
    "dimension",
    "boundary_measure",
    "diameter",
    "inradius",
    "convex_hull",
    "hull_perimeter_2d",
    "mean_width_2d",
    "is_convex",
    "box_lengths",
    "parse_domain",
    "domain_to_dict",
]

_REL_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    length: float

    def __post_init__(self):
        if not (self.length > 0 and math.isfinite(self.length)):
            raise GeometryError(f"interval length must be positive, got {self.length!r}")


@dataclass(frozen=True)
class Box:
    lengths: tuple[float, ...]

    def __init__(self, lengths: Sequence[float]):
        lengths = tuple(float(x) for x in lengths)
        if not lengths:
            raise GeometryError("box needs at least one side")
        if not all(x > 0 and math.isfinite(x) for x in lengths):
            raise GeometryError(f"box sides must be positive, got {lengths!r}")
        object.__setattr__(self, "lengths", lengths)


@dataclass(frozen=True)
class Polygon2D:
    """Simple planar polygon given by its vertices in order (either orientation)."""

    vertices: tuple[tuple[float, float], ...]

    def __init__(self, vertices: Sequence[Sequence[float]]):
        verts = tuple((float(x), float(y)) for x, y in vertices)
        if len(verts) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        if verts[0] == verts[-1]:
            verts = verts[:-1]
            if len(verts) < 3:
                raise GeometryError("polygon needs at least 3 distinct vertices")
        object.__setattr__(self, "vertices", verts)
        _check_simple(np.asarray(verts))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    @classmethod
    def regular(cls, n: int, radius: float = 1.0, center=(0.0, 0.0)) -> "Polygon2D":
        t = 2 * np.pi * np.arange(n) / n
        return cls(np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)]))


@dataclass(frozen=True)
class Disk:
    """Planar disk; only the finite-difference solver can produce its spectrum."""

    radius: float
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise GeometryError(f"disk radius must be positive, got {self.radius!r}")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))


@dataclass(frozen=True)
class Product:
    left: "Domain"
    right: "Domain"


Domain = Union[Interval, Box, Polygon2D, Disk, Product]


@dataclass(frozen=True)
class UnitVector:
    components: tuple[float, ...]

    def __init__(self, components: Sequence[float]):
        comps = tuple(float(c) for c in components)
        norm = math.sqrt(math.fsum(c * c for c in comps))
        if not comps or abs(norm - 1.0) > 1e-12:
            raise ValueError(f"not a unit vector (norm {norm!r})")
        object.__setattr__(self, "components", comps)

    @property
    def d(self) -> int:
        return len(self.components)

    @classmethod
    def normalized(cls, components: Sequence[float]) -> "UnitVector":
        arr = np.asarray(components, dtype=float)
        n = np.linalg.norm(arr)
        if n == 0:
            raise ValueError("zero vector has no direction")
        return cls(arr / n)

    @classmethod
    def axis(cls, d: int, i: int) -> "UnitVector":
        e = [0.0] * d
        e[i] = 1.0
        return cls(e)

    @classmethod
    def from_angle(cls, theta: float) -> "UnitVector":
        return cls.normalized((math.cos(theta), math.sin(theta)))


# --- basic queries ---------------------------------------------------------


def dimension(domain: Domain) -> int:
    if isinstance(domain, Interval):
        return 1
    if isinstance(domain, Box):
        return len(domain.lengths)
    if isinstance(domain, (Polygon2D, Disk)):
        return 2
    if isinstance(domain, Product):
        return dimension(domain.left) + dimension(domain.right)
    raise TypeError(f"not a domain: {domain!r}")


def volume(domain: Domain) -> float:
    """Lebesgue measure of the domain (shoelace formula for polygons)."""
    if isinstance(domain, Interval):
        return domain.length
    if isinstance(domain, Box):
        return math.prod(domain.lengths)
    if isinstance(domain, Polygon2D):
        return abs(_signed_area(domain.array))
    if isinstance(domain, Disk):
        return math.pi * domain.radius**2
    if isinstance(domain, Product):
        return volume(domain.left) * volume(domain.right)
    raise TypeError(f"not a domain: {domain!r}")


def boundary_measure(domain: Domain) -> float:
    """(d-1)-dimensional measure of the boundary; an interval has two boundary points."""
    if isinstance(domain, Interval):
        return 2.0
    if isinstance(domain, Box):
        ls = domain.lengths
        if len(ls) == 1:
            return 2.0
        return 2.0 * sum(math.prod(ls[:i] + ls[i + 1 :]) for i in range(len(ls)))
    if isinstance(domain, Polygon2D):
        return _closed_length(domain.array)
    if isinstance(domain, Disk):
        return 2 * math.pi * domain.radius
    if isinstance(domain, Product):
        a, b = domain.left, domain.right
        return boundary_measure(a) * volume(b) + volume(a) * boundary_measure(b)
    raise TypeError(f"not a domain: {domain!r}")


def box_lengths(domain: Domain) -> tuple[float, ...] | None:
    """Side lengths if the domain is an axis-aligned box (possibly written as a product)."""
    if isinstance(domain, Interval):
        return (domain.length,)
    if isinstance(domain, Box):
        return domain.lengths
    if isinstance(domain, Product):
        a, b = box_lengths(domain.left), box_lengths(domain.right)
        if a is None or b is None:
            return None
        return a + b
    return None


# --- widths -----------------------------------------------------------------


def _extent(domain: Domain, vec: np.ndarray) -> float:
    # sup of vec.(x - y); positively homogeneous in vec, so vec need not be unit
    if isinstance(domain, Interval):
        return domain.length * abs(vec[0])
    if isinstance(domain, Box):
        return float(np.dot(domain.lengths, np.abs(vec)))
    if isinstance(domain, Polygon2D):
        proj = domain.array @ vec
        return float(proj.max() - proj.min())
    if isinstance(domain, Disk):
        return 2 * domain.radius * float(np.hypot(vec[0], vec[1]))
    if isinstance(domain, Product):
        k = dimension(domain.left)
        return _extent(domain.left, vec[:k]) + _extent(domain.right, vec[k:])
    raise TypeError(f"not a domain: {domain!r}")


def width(domain: Domain, v: UnitVector | Sequence[float]) -> float:
    """Width of ``domain`` in direction ``v``: sup of v.(x - y) over x, y in the domain."""
    if not isinstance(v, UnitVector):
        v = UnitVector(v)
    if v.d != dimension(domain):
        raise ValueError(f"direction has dimension {v.d}, domain has {dimension(domain)}")
    return _extent(domain, np.asarray(v.components))


def diameter(domain: Domain) -> float:
    if isinstance(domain, Interval):
        return domain.length
    if isinstance(domain, Box):
        return math.sqrt(sum(x * x for x in domain.lengths))
    if isinstance(domain, Polygon2D):
        h = np.asarray(convex_hull(domain.array))
        diff = h[:, None, :] - h[None, :, :]
        return float(np.sqrt((diff**2).sum(-1)).max())
    if isinstance(domain, Disk):
        return 2 * domain.radius
    if isinstance(domain, Product):
        return math.hypot(diameter(domain.left), diameter(domain.right))
    raise TypeError(f"not a domain: {domain!r}")


def inradius(domain: Domain) -> float:
    """Radius of the largest inscribed ball.

    Polygons use the pole of inaccessibility (shapely's polylabel); the result
    is accurate to about 1e-7 of the polygon's size and never overestimates.
    """
    if isinstance(domain, Interval):
        return domain.length / 2
    if isinstance(domain, Box):
        return min(domain.lengths) / 2
    if isinstance(domain, Disk):
        return domain.radius
    if isinstance(domain, Polygon2D):
        from shapely.geometry import Polygon
        from shapely.ops import polylabel

        poly = Polygon(domain.vertices)
        size = max(np.ptp(domain.array, axis=0))
        centre = polylabel(poly, tolerance=1e-7 * size)
        return float(poly.exterior.distance(centre))
    if isinstance(domain, Product):
        return min(inradius(domain.left), inradius(domain.right))
    raise TypeError(f"not a domain: {domain!r}")


# --- convex hull ------------------------------------------------------------


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[tuple[float, float]]:
    """Monotone-chain hull, counter-clockwise, collinear boundary points dropped."""
    pts = sorted(set((float(x), float(y)) for x, y in np.asarray(points, dtype=float)))
    if len(pts) < 3:
        raise GeometryError("hull of fewer than 3 distinct points is degenerate")
    scale = max(max(abs(c) for p in pts for c in p), 1.0)
    eps = _REL_TOL * scale * scale

    def half(seq):
        chain: list[tuple[float, float]] = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= eps:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise GeometryError("points are collinear; hull has no interior")
    return hull


def _as_polygon(domain) -> Polygon2D:
    if not isinstance(domain, Polygon2D):
        raise GeometryError(f"expected a Polygon2D, got {type(domain).__name__}")
    return domain


def hull_perimeter_2d(domain: Polygon2D) -> float:
    """Perimeter of the convex hull of a planar polygon."""
    hull = np.asarray(convex_hull(_as_polygon(domain).array))
    return _closed_length(hull)


def mean_width_2d(domain: Polygon2D) -> float:
    """Average width over all directions; equals hull perimeter / pi in the plane."""
    return hull_perimeter_2d(domain) / math.pi


def is_convex(domain: Polygon2D) -> bool:
    v = _as_polygon(domain).array
    turns = [_cross(v[i - 2], v[i - 1], v[i]) for i in range(len(v))]
    scale = max(np.abs(v).max(), 1.0) ** 2
    return all(t >= -_REL_TOL * scale for t in turns) or all(t <= _REL_TOL * scale for t in turns)


# --- polygon helpers --------------------------------------------------------


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _closed_length(v: np.ndarray) -> float:
    return float(np.sqrt(((np.roll(v, -1, axis=0) - v) ** 2).sum(axis=1)).sum())


def _segments_intersect(p1, p2, q1, q2, eps) -> bool:
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True

    def on_seg(a, b, c, d):
        return abs(d) <= eps and min(a[0], b[0]) - eps <= c[0] <= max(a[0], b[0]) + eps and (
            min(a[1], b[1]) - eps <= c[1] <= max(a[1], b[1]) + eps
        )

    return on_seg(q1, q2, p1, d1) or on_seg(q1, q2, p2, d2) or on_seg(p1, p2, q1, d3) or on_seg(p1, p2, q2, d4)


def _check_simple(v: np.ndarray) -> None:
    n = len(v)
    scale = max(np.abs(v).max(), 1.0)
    eps = _REL_TOL * scale * scale
    if abs(_signed_area(v)) <= eps:
        raise GeometryError("polygon has zero area")
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n], eps):
                raise GeometryError(f"polygon edges {i} and {j} intersect")


def contains(domain: Domain, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorised strict point-in-domain test for planar domains (even-odd rule)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if isinstance(domain, Disk):
        cx, cy = domain.center
        return (x - cx) ** 2 + (y - cy) ** 2 < domain.radius**2 * (1 - 1e-12)
    poly = _as_polygon(domain).array
    inside = np.zeros(np.broadcast(x, y).shape, dtype=bool)
    for (x1, y1), (x2, y2) in zip(poly, np.roll(poly, -1, axis=0)):
        crosses = (y1 > y) != (y2 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
        inside ^= crosses & (x < xint)
    return inside


def boundary_distance(domain: Domain, x, y, direction: tuple[int, int]) -> np.ndarray:
    """Distance from interior points along an axis direction to the first boundary hit."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx, dy = direction
    if isinstance(domain, Disk):
        cx, cy = domain.center
        r2 = domain.radius**2
        if dx:
            return np.sqrt(np.maximum(r2 - (y - cy) ** 2, 0.0)) - dx * (x - cx)
        return np.sqrt(np.maximum(r2 - (x - cx) ** 2, 0.0)) - dy * (y - cy)
    poly = _as_polygon(domain).array
    best = np.full(np.broadcast(x, y).shape, np.inf)
    for (x1, y1), (x2, y2) in zip(poly, np.roll(poly, -1, axis=0)):
        ex, ey = x2 - x1, y2 - y1
        denom = dx * ey - dy * ex
        if denom == 0:
            continue
        # solve p + t*dir = a + u*e for t >= 0, u in [0, 1]
        wx, wy = x1 - x, y1 - y
        t = (wx * ey - wy * ex) / denom
        u = (wx * dy - wy * dx) / denom
        ok = (t >= 0) & (u >= -1e-12) & (u <= 1 + 1e-12)
        best = np.where(ok & (t < best), t, best)
    return best


# --- JSON ---------------------------------------------------------------------


def parse_domain(obj: Any) -> Domain:
    """Build a domain from its JSON description (string or already-decoded dict)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise GeometryError(f"malformed domain JSON: {exc}") from exc
    if not isinstance(obj, dict) or "type" not in obj:
        raise GeometryError("domain JSON must be an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "interval":
            return Interval(float(obj["length"]))
        if kind == "box":
            return Box(obj["lengths"])
        if kind == "polygon":
            return Polygon2D(obj["vertices"])
        if kind == "disk":
            return Disk(float(obj["radius"]), tuple(obj.get("center", (0.0, 0.0))))
        if kind == "product":
            return Product(parse_domain(obj["left"]), parse_domain(obj["right"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise GeometryError(f"bad {kind!r} domain: {exc}") from exc
    raise GeometryError(f"unknown domain type {kind!r}")


def domain_to_dict(domain: Domain) -> dict:
    if isinstance(domain, Interval):
        return {"type": "interval", "length": domain.length}
    if isinstance(domain, Box):
        return {"type": "box", "lengths": list(domain.lengths)}
    if isinstance(domain, Polygon2D):
        return {"type": "polygon", "vertices": [list(p) for p in domain.vertices]}
    if isinstance(domain, Disk):
        return {"type": "disk", "radius": domain.radius, "center": list(domain.center)}
    if isinstance(domain, Product):
        return {"type": "product", "left": domain_to_dict(domain.left), "right": domain_to_dict(domain.right)}
    raise TypeError(f"not a domain: {domain!r}")
