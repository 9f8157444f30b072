"""Closed connected subgroups, the Hausdorff(U) metric, and delta-covers.

The searchable symmetry catalog consists of, per ambient group:

* rotations ``SO(3)``: the trivial group, the circles of rotations about a
  fixed axis (``circle3``), and the full rotation group;
* the flat 2-torus acting on itself: the trivial group, the closed lines
  through the origin with primitive integer direction ``(p, q)``, and the
  full torus;
* box translations: subgroups translating a masked subset of coordinates.

Subgroups of the same ambient group are compared with the Hausdorff metric
between their intersections with a compact identity neighbourhood ``U``,
computed on finite nets of documented resolution.  Covers of the subgroup
catalog at scale ``delta`` drive the symmetry search, with the scale shrunk
along a fixed schedule as the sample size grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import ConfigError, IncompatibleActionError, NotCompactError
from .groups import (
    BoxTranslation,
    GroupElement,
    Rotation3,
    TorusShift,
    box_identity,
    quat_from_axis_angle,
    quat_rotate,
    rotation_distance_matrix,
    rotation_identity,
    torus_identity,
    torus_shift_distance_matrix,
)
from .randomness import polar_gaussian
from .spaces import CovariateSpace, SpaceKind

PARENT_SO3 = "so3"


def parent_torus(d: int) -> str:
    return f"torus{d}"


def parent_box(d: int) -> str:
    return f"box{d}"


class SubgroupFamily(Enum):
    TRIVIAL = "trivial"
    CIRCLE3 = "circle3"
    FULL_SO3 = "full_so3"
    TORUS_LINE = "torus_line"
    FULL_TORUS = "full_torus"
    AXIS_TRANSLATIONS = "axis_translations"


@dataclass(frozen=True)
class ClosedSubgroup:
    """One member of the subgroup catalog, with its defining parameters."""

    family: SubgroupFamily
    parent: str
    axis: tuple[float, float, float] | None = None      # circle3
    direction: tuple[int, int] | None = None            # torus_line, coprime
    mask: tuple[int, ...] | None = None                 # axis_translations

    def axis_array(self) -> np.ndarray:
        return np.asarray(self.axis, dtype=np.float64)

    def direction_array(self) -> np.ndarray:
        return np.asarray(self.direction, dtype=np.float64)

    def canonical_key(self) -> tuple:
        """Deterministic sort key: family rank first, then parameters."""
        rank = {
            SubgroupFamily.TRIVIAL: 0,
            SubgroupFamily.CIRCLE3: 1,
            SubgroupFamily.TORUS_LINE: 1,
            SubgroupFamily.AXIS_TRANSLATIONS: 1,
            SubgroupFamily.FULL_SO3: 2,
            SubgroupFamily.FULL_TORUS: 2,
        }[self.family]
        params: tuple = ()
        if self.axis is not None:
            params = tuple(round(a, 12) for a in self.axis)
        elif self.direction is not None:
            params = self.direction
        elif self.mask is not None:
            params = self.mask
        return (rank, self.family.value, params)

    def describe(self) -> str:
        if self.family is SubgroupFamily.CIRCLE3:
            ax = ",".join(f"{a:.12g}" for a in self.axis)
            return f"circle3 axis={ax}"
        if self.family is SubgroupFamily.TORUS_LINE:
            return f"torus_line direction={self.direction[0]},{self.direction[1]}"
        if self.family is SubgroupFamily.AXIS_TRANSLATIONS:
            return "axis_translations mask=" + ",".join(str(i) for i in self.mask)
        return f"{self.family.value} parent={self.parent}"


# ---------------------------------------------------------------------------
# constructors

def trivial_subgroup(parent: str) -> ClosedSubgroup:
    return ClosedSubgroup(SubgroupFamily.TRIVIAL, parent)


def circle3(axis) -> ClosedSubgroup:
    u = np.asarray(axis, dtype=np.float64)
    norm = np.linalg.norm(u)
    if u.shape != (3,) or abs(norm - 1.0) > 1e-9:
        raise ConfigError("circle3 axis must be a unit 3-vector")
    u = u / norm
    u = _canonical_axis(u)
    return ClosedSubgroup(SubgroupFamily.CIRCLE3, PARENT_SO3, axis=tuple(float(c) for c in u))


def full_so3() -> ClosedSubgroup:
    return ClosedSubgroup(SubgroupFamily.FULL_SO3, PARENT_SO3)


def torus_line(p: int, q: int) -> ClosedSubgroup:
    if p == 0 and q == 0:
        raise ConfigError("torus line direction must be nonzero")
    g = math.gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return ClosedSubgroup(SubgroupFamily.TORUS_LINE, parent_torus(2), direction=(p, q))


def full_torus(d: int) -> ClosedSubgroup:
    return ClosedSubgroup(SubgroupFamily.FULL_TORUS, parent_torus(d))


def axis_translations(d: int, mask) -> ClosedSubgroup:
    mask = tuple(sorted(set(int(i) for i in mask)))
    if not mask or mask[0] < 0 or mask[-1] >= d:
        raise ConfigError(f"mask must select coordinates in [0, {d})")
    return ClosedSubgroup(SubgroupFamily.AXIS_TRANSLATIONS, parent_box(d), mask=mask)


def _canonical_axis(u: np.ndarray) -> np.ndarray:
    # u and -u generate the same circle of rotations.
    for c in u:
        if c != 0.0:
            return u if c > 0.0 else -u
    return u


# ---------------------------------------------------------------------------
# compact neighbourhood U

class NeighborhoodKind(Enum):
    WHOLE_GROUP = "whole_group"
    CUBE = "cube"


@dataclass(frozen=True)
class CompactNeighborhood:
    """Compact identity neighbourhood used to truncate non-compact groups."""

    kind: NeighborhoodKind
    radius: float = 1.0


WHOLE_GROUP = CompactNeighborhood(NeighborhoodKind.WHOLE_GROUP)


def default_neighborhood(group: ClosedSubgroup) -> CompactNeighborhood:
    """Whole group for the compact parents, a unit cube for box translations."""
    if group.parent.startswith("box"):
        return CompactNeighborhood(NeighborhoodKind.CUBE, radius=1.0)
    return WHOLE_GROUP


def is_compact(group: ClosedSubgroup) -> bool:
    return group.family is not SubgroupFamily.AXIS_TRANSLATIONS


# ---------------------------------------------------------------------------
# orbit dimension

def _parent_dim(parent: str) -> int:
    for prefix in ("torus", "box"):
        if parent.startswith(prefix):
            return int(parent[len(prefix):])
    return 3


def check_acts_on(group: ClosedSubgroup, space: CovariateSpace) -> None:
    if group.parent == PARENT_SO3:
        if space.kind not in (SpaceKind.UNIT_BALL3, SpaceKind.UNIT_SPHERE2):
            raise IncompatibleActionError(f"{group.parent} subgroups do not act on {space}")
    elif group.parent.startswith("torus"):
        if space.kind is not SpaceKind.TORUS or space.ambient_dim != _parent_dim(group.parent):
            raise IncompatibleActionError(f"{group.parent} subgroups do not act on {space}")
    else:
        if space.kind is not SpaceKind.BOX or space.ambient_dim != _parent_dim(group.parent):
            raise IncompatibleActionError(f"{group.parent} subgroups do not act on {space}")


def orbit_dimension(group: ClosedSubgroup, space: CovariateSpace) -> int:
    """Dimension of a principle orbit of the subgroup's action on the space."""
    check_acts_on(group, space)
    if group.family is SubgroupFamily.TRIVIAL:
        return 0
    if group.family in (SubgroupFamily.CIRCLE3, SubgroupFamily.TORUS_LINE):
        return 1
    if group.family is SubgroupFamily.FULL_SO3:
        return 2
    if group.family is SubgroupFamily.FULL_TORUS:
        return space.intrinsic_dim
    return len(group.mask)


def identity_element(group: ClosedSubgroup) -> GroupElement:
    if group.parent == PARENT_SO3:
        return rotation_identity()
    if group.parent.startswith("torus"):
        return torus_identity(_parent_dim(group.parent))
    return box_identity(_parent_dim(group.parent))


# ---------------------------------------------------------------------------
# uniform sampling on compact subgroups

def sample_group(group: ClosedSubgroup, rng: np.random.Generator) -> GroupElement:
    """One draw from the normalised Haar measure on a compact subgroup."""
    if group.family is SubgroupFamily.TRIVIAL:
        return identity_element(group)
    if group.family is SubgroupFamily.CIRCLE3:
        theta = rng.random() * 2.0 * np.pi
        return Rotation3(quat_from_axis_angle(group.axis_array(), theta))
    if group.family is SubgroupFamily.FULL_SO3:
        return Rotation3(_uniform_quaternions(rng, 1)[0])
    if group.family is SubgroupFamily.TORUS_LINE:
        t = rng.random()
        return TorusShift(t * group.direction_array())
    if group.family is SubgroupFamily.FULL_TORUS:
        return TorusShift(rng.random(_parent_dim(group.parent)))
    raise NotCompactError("axis translation subgroups are not compact; no uniform distribution exists")


def _uniform_quaternions(rng: np.random.Generator, m: int) -> np.ndarray:
    q = polar_gaussian(rng, 4 * m).reshape(m, 4)
    norms = np.linalg.norm(q, axis=1)
    norms[norms == 0.0] = 1.0
    return q / norms[:, None]


def sample_orbit_coords(group: ClosedSubgroup, x_coords: np.ndarray, m: int,
                        rng: np.random.Generator) -> np.ndarray:
    """``m`` images of each row of ``x_coords`` under i.i.d. uniform elements.

    Returns an array of shape (rows, m, ambient).  Draws are independent
    across rows, matching a Monte-Carlo orbit average evaluated pointwise.
    """
    xs = np.atleast_2d(np.asarray(x_coords, dtype=np.float64))
    k = xs.shape[0]
    if group.family is SubgroupFamily.TRIVIAL:
        return np.repeat(xs[:, None, :], m, axis=1)
    if group.family is SubgroupFamily.CIRCLE3:
        theta = rng.random((k, m)) * 2.0 * np.pi
        quats = quat_from_axis_angle(group.axis_array(), theta)
        return quat_rotate(quats, xs[:, None, :])
    if group.family is SubgroupFamily.FULL_SO3:
        quats = _uniform_quaternions(rng, k * m).reshape(k, m, 4)
        return quat_rotate(quats, xs[:, None, :])
    if group.family is SubgroupFamily.TORUS_LINE:
        t = rng.random((k, m))
        return np.mod(xs[:, None, :] + t[:, :, None] * group.direction_array(), 1.0)
    if group.family is SubgroupFamily.FULL_TORUS:
        return np.mod(xs[:, None, :] + rng.random((k, m, xs.shape[1])), 1.0)
    raise NotCompactError("axis translation subgroups are not compact; no uniform distribution exists")


def orbit_quadrature_coords(group: ClosedSubgroup, xs: np.ndarray,
                            points_1d: int = 24, points_2d: int = 64
                            ) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic near-uniform quadrature nodes on each row's orbit.

    Approximates the full orbit average (the compact-group symmetrised
    value) without Monte-Carlo noise: equally spaced angles on circles and
    lines, a Fibonacci lattice on sphere orbits, a square lattice on full
    torus orbits.  Returns ``(coords, counts)`` shaped like
    :func:`orbitreg.orbit_grids.orbit_coords_batch`.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    n = xs.shape[0]
    fam = group.family
    if fam is SubgroupFamily.TRIVIAL:
        return xs.copy(), np.ones(n, dtype=np.int64)
    if fam is SubgroupFamily.CIRCLE3:
        theta = np.arange(points_1d) * (2.0 * np.pi / points_1d)
        quats = quat_from_axis_angle(group.axis_array(), theta)
        coords = quat_rotate(quats[None, :, :], xs[:, None, :])
        return coords.reshape(-1, 3), np.full(n, points_1d, dtype=np.int64)
    if fam is SubgroupFamily.FULL_SO3:
        nodes = fibonacci_sphere(points_2d)
        radii = np.linalg.norm(xs, axis=1)
        coords = radii[:, None, None] * nodes[None, :, :]
        return coords.reshape(-1, 3), np.full(n, points_2d, dtype=np.int64)
    if fam is SubgroupFamily.TORUS_LINE:
        t = np.arange(points_1d) / points_1d
        shifts = t[:, None] * group.direction_array()[None, :]
        coords = np.mod(xs[:, None, :] + shifts[None, :, :], 1.0)
        return coords.reshape(-1, xs.shape[1]), np.full(n, points_1d, dtype=np.int64)
    if fam is SubgroupFamily.FULL_TORUS:
        d = _parent_dim(group.parent)
        per_axis = max(int(round(points_2d ** (1.0 / d))), 2)
        axes = [np.arange(per_axis) / per_axis] * d
        mesh = np.meshgrid(*axes, indexing="ij")
        shifts = np.stack([m.ravel() for m in mesh], axis=1)
        coords = np.mod(xs[:, None, :] + shifts[None, :, :], 1.0)
        return coords.reshape(-1, d), np.full(n, shifts.shape[0], dtype=np.int64)
    raise NotCompactError("uniform orbit quadrature requires a compact subgroup")


def fibonacci_sphere(count: int) -> np.ndarray:
    """Deterministic near-uniform points on the unit sphere (golden spiral)."""
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    radius = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    golden = np.pi * (3.0 - np.sqrt(5.0))
    theta = golden * i
    return np.stack([radius * np.cos(theta), radius * np.sin(theta), z], axis=1)


# ---------------------------------------------------------------------------
# finite nets of G intersected with U

def subgroup_net(group: ClosedSubgroup, neighborhood: CompactNeighborhood,
                 eps: float) -> tuple[str, np.ndarray]:
    """Finite net of ``G`` intersected with ``U``, tagged by element variant.

    Every element of G within U lies within ``eps`` of a net point in the
    group metric.  Rotations are returned as (n, 4) unit quaternions,
    translations as (n, d) shift vectors.
    """
    if eps <= 0.0:
        raise ConfigError("net resolution must be positive")
    fam = group.family
    if fam is SubgroupFamily.TRIVIAL:
        if group.parent == PARENT_SO3:
            return "rotation", np.array([[1.0, 0.0, 0.0, 0.0]])
        return "shift", np.zeros((1, _parent_dim(group.parent)))
    if fam is SubgroupFamily.CIRCLE3:
        count = max(int(np.ceil(2.0 * np.pi / eps)), 1)
        theta = np.arange(count) * (2.0 * np.pi / count)
        return "rotation", quat_from_axis_angle(group.axis_array(), theta)
    if fam is SubgroupFamily.FULL_SO3:
        return "rotation", _so3_net(eps)
    if fam is SubgroupFamily.TORUS_LINE:
        length = float(np.linalg.norm(group.direction_array()))
        count = max(int(np.ceil(length / eps)), 1)
        t = np.arange(count) / count
        return "shift", np.mod(t[:, None] * group.direction_array()[None, :], 1.0)
    if fam is SubgroupFamily.FULL_TORUS:
        d = _parent_dim(group.parent)
        step_count = max(int(np.ceil(np.sqrt(d) / eps)), 1)
        axes = [np.arange(step_count) / step_count] * d
        mesh = np.meshgrid(*axes, indexing="ij")
        return "shift", np.stack([m.ravel() for m in mesh], axis=1)
    # axis translations: grid over the masked coordinates of the cube U
    d = _parent_dim(group.parent)
    r = neighborhood.radius if neighborhood.kind is NeighborhoodKind.CUBE else 1.0
    k = len(group.mask)
    per_axis = max(int(np.ceil(2.0 * r * np.sqrt(k) / (2.0 * eps))), 1) + 1
    line = np.linspace(-r, r, per_axis)
    mesh = np.meshgrid(*([line] * k), indexing="ij")
    flat = np.stack([m.ravel() for m in mesh], axis=1)
    out = np.zeros((flat.shape[0], d))
    out[:, list(group.mask)] = flat
    return "shift", out


def _so3_net(eps: float) -> np.ndarray:
    """Net of the full rotation group with radius <= eps in rotation angle.

    Rotations are unit quaternions q = (cos(psi), sin(psi) u) with
    psi in [0, pi/2] (the w >= 0 half of the 3-sphere, one representative
    per rotation).  The rotation-angle metric is twice the 3-sphere geodesic
    metric, so a net of 3-sphere radius eps/2 suffices.  We slice psi into
    rings and net each ring's axis sphere at a resolution proportional to
    1/sin(psi), which keeps the element count near the covering number.
    A point at (psi, u) is reached from the ring centre by a diagonal path
    of length at most sqrt(dpsi^2 + sin(psi_hi)^2 du^2), so splitting the
    radius budget rho = eps/2 evenly between the two terms suffices.
    """
    rho = eps / 2.0
    s_psi = rho * np.sqrt(2.0)
    ring_count = max(int(np.ceil((np.pi / 2.0) / s_psi)), 1)
    quats = [np.array([[1.0, 0.0, 0.0, 0.0]])]
    for k in range(ring_count):
        psi_lo = k * (np.pi / 2.0) / ring_count
        psi_hi = (k + 1) * (np.pi / 2.0) / ring_count
        psi = 0.5 * (psi_lo + psi_hi)
        r_axis = (rho / np.sqrt(2.0)) / max(np.sin(psi_hi), 1e-9)
        axes = sphere_net(min(r_axis, np.pi))
        ring = np.concatenate(
            [np.full((len(axes), 1), np.cos(psi)), np.sin(psi) * axes], axis=1
        )
        quats.append(ring)
    return np.concatenate(quats, axis=0)


def sphere_net(r: float) -> np.ndarray:
    """Deterministic net of the unit 2-sphere with angular radius <= r.

    Latitude bands of height r*sqrt(2) with longitude spacing widened by
    1/sin(theta); the diagonal-path bound gives a covering radius of r.
    """
    r = min(max(r, 1e-9), np.pi)
    s_theta = r * np.sqrt(2.0)
    bands = max(int(np.ceil(np.pi / s_theta)), 1)
    points = [np.array([[0.0, 0.0, 1.0]]), np.array([[0.0, 0.0, -1.0]])]
    for k in range(bands):
        theta_lo = k * np.pi / bands
        theta_hi = (k + 1) * np.pi / bands
        theta = 0.5 * (theta_lo + theta_hi)
        if theta_lo <= np.pi / 2.0 <= theta_hi:
            sin_band = 1.0
        else:
            sin_band = max(np.sin(theta_lo), np.sin(theta_hi))
        s_phi = (r * np.sqrt(2.0)) / max(sin_band, 1e-9)
        count = max(int(np.ceil(2.0 * np.pi / s_phi)), 1)
        phi = np.arange(count) * (2.0 * np.pi / count)
        points.append(
            np.stack(
                [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi),
                 np.full(count, np.cos(theta))],
                axis=1,
            )
        )
    return np.concatenate(points, axis=0)


def _net_distance_matrix(kind: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if kind == "rotation":
        return rotation_distance_matrix(a, b)
    return torus_shift_distance_matrix(a, b)


def hausdorff_U_distance(g: ClosedSubgroup, h: ClosedSubgroup,
                         neighborhood: CompactNeighborhood = WHOLE_GROUP,
                         net_resolution: float = 0.05) -> float:
    """Hausdorff distance between G and H inside U, on eps-nets.

    The returned value is within ``2 * net_resolution`` of the exact
    Hausdorff distance between the intersections with U (each point of
    either group is within eps of its net).
    """
    if net_resolution <= 0.0:
        raise ConfigError("net resolution must be positive")
    if g.parent != h.parent:
        raise IncompatibleActionError(f"subgroups of different parents: {g.parent} vs {h.parent}")
    kind, net_a = subgroup_net(g, neighborhood, net_resolution)
    _, net_b = subgroup_net(h, neighborhood, net_resolution)
    euclid = g.parent.startswith("box")
    sup_ab = _sup_inf(kind, net_a, net_b, euclid)
    sup_ba = _sup_inf(kind, net_b, net_a, euclid)
    return float(max(sup_ab, sup_ba))


def _sup_inf(kind: str, a: np.ndarray, b: np.ndarray, euclid: bool) -> float:
    sup = 0.0
    chunk = max(1, int(4_000_000 / max(len(b), 1)))
    for start in range(0, len(a), chunk):
        block = a[start : start + chunk]
        if euclid:
            diff = block[:, None, :] - b[None, :, :]
            dmat = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        else:
            dmat = _net_distance_matrix(kind, block, b)
        sup = max(sup, float(dmat.min(axis=1).max()))
    return sup


# ---------------------------------------------------------------------------
# delta-covers of the subgroup catalog

def delta_cover(parent: str, space: CovariateSpace, delta: float) -> list[ClosedSubgroup]:
    """Finite cover of the closed connected subgroups at scale ``delta``.

    Every closed connected subgroup of the parent is within ``delta`` of
    some returned subgroup in the Hausdorff(U) metric.  The cover always
    contains the trivial group and the full parent group, so each orbit
    dimension stratum is represented.
    """
    if delta <= 0.0:
        raise ConfigError("delta must be positive")
    check_acts_on(trivial_subgroup(parent), space)
    if parent == PARENT_SO3:
        return [trivial_subgroup(parent)] + _circle_axis_grid(delta) + [full_so3()]
    if parent == parent_torus(2):
        return [trivial_subgroup(parent)] + _torus_line_grid(delta) + [full_torus(2)]
    raise ConfigError(f"no cover construction for parent group {parent!r}")


def _circle_axis_grid(delta: float) -> list[ClosedSubgroup]:
    """Axes from a spherical-coordinate grid of step delta/pi.

    Two circles with axes at angle psi are at Hausdorff distance at most
    2 * psi, so an axis grid of angular resolution delta/2 suffices; the
    delta/pi step is finer than that everywhere on the sphere.
    """
    step = delta / np.pi
    thetas = np.arange(0.0, np.pi + 1e-12, step)
    phi_count = max(int(np.ceil(2.0 * np.pi / step)), 1)
    phis = np.arange(phi_count) * step
    seen: dict[tuple, ClosedSubgroup] = {}
    for theta in thetas:
        for phi in phis:
            u = np.array([
                np.sin(theta) * np.cos(phi),
                np.sin(theta) * np.sin(phi),
                np.cos(theta),
            ])
            u = _canonical_axis(u / np.linalg.norm(u))
            key = tuple(np.round(u, 9))
            if key not in seen:
                seen[key] = circle3(u)
            if theta == 0.0:
                break  # all phi collapse to the pole
    return [seen[k] for k in sorted(seen)]


def _torus_line_grid(delta: float) -> list[ClosedSubgroup]:
    """All primitive-direction lines of length at most 1/delta.

    A line with direction (p, q) covers the torus to within
    1 / (2 sqrt(p^2 + q^2)), so longer lines are within delta of the full
    torus and can be dropped; the remaining low-denominator directions are
    kept exactly.
    """
    bound_sq = (1.0 / delta) ** 2
    lines = []
    limit = int(np.floor(1.0 / delta))
    for p in range(0, limit + 1):
        for q in range(-limit, limit + 1):
            if p == 0 and q != 1:
                continue
            if p > 0 and math.gcd(p, abs(q)) != 1:
                continue
            if p * p + q * q <= bound_sq and not (p == 0 and q == 0):
                lines.append(torus_line(p, q))
    return sorted(set(lines), key=lambda g: g.canonical_key())


def delta_schedule(n: int, beta: float, d: int, d_max: int,
                   lipschitz_f: float = 1.0, lipschitz_action: float = 1.0) -> float:
    """Cover scale for sample size ``n``: shrinks so the cover-approximation
    bias stays below the statistical error of the fastest stratum."""
    if n < 1 or beta <= 0 or d <= 0 or d_max < 0 or lipschitz_f <= 0 or lipschitz_action <= 0:
        raise ConfigError("delta_schedule inputs must be positive (n >= 1, d_max >= 0)")
    rate = float(n) ** (-2.0 * beta / (2.0 * beta + (d - d_max)))
    exponent = 1.0 / (2.0 * min(beta, 1.0))
    return (rate / (2.0 * lipschitz_f**2)) ** exponent / lipschitz_action


def catalog_lines(cover: list[ClosedSubgroup]) -> list[str]:
    """Plain-text catalog, one subgroup per line."""
    return [g.describe() for g in cover]


def line_angle_degrees(g: ClosedSubgroup) -> float:
    """Angle from the first axis of a torus line, in [0, 180) degrees."""
    p, q = g.direction
    ang = math.degrees(math.atan2(q, p)) % 180.0
    return ang


def rational_slope(g: ClosedSubgroup) -> Fraction | None:
    p, q = g.direction
    return None if p == 0 else Fraction(q, p)
