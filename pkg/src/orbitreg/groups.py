"""Group elements, their actions on covariate spaces, and the group metric.

Three element variants cover the transformation catalog:

* ``Rotation3`` -- a 3D rotation stored as a unit quaternion (w, x, y, z)
  with the sign convention w >= 0 (q and -q describe the same rotation);
* ``TorusShift`` -- a translation of the flat d-torus, coordinates in [0, 1);
* ``BoxTranslation`` -- a translation vector acting on a box by wrap-around.

The group metric is the minimal rotation angle for rotations (the length of
the shortest geodesic under the bi-invariant metric), wrap-around Euclidean
distance for torus shifts, and plain Euclidean distance for box translations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IncompatibleActionError, InvalidElementError, VariantMismatchError
from .spaces import CovariateSpace, Point, SpaceKind, wrap_coords

_UNIT_TOL = 1e-12


# ---------------------------------------------------------------------------
# quaternion helpers (array level, used by the batched fast paths as well)

def quat_canonical(q: np.ndarray) -> np.ndarray:
    """Fix the sign ambiguity: make the first nonzero component positive."""
    q = np.asarray(q, dtype=np.float64)
    flat = q.reshape(-1, 4)
    out = flat.copy()
    for i in range(4):
        undecided = np.all(out[:, :i] == 0.0, axis=1) if i else np.ones(len(out), bool)
        out[undecided & (out[:, i] < 0.0)] *= -1.0
    return out.reshape(q.shape)


def quat_multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    w1, x1, y1, z1 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    w2, x2, y2, z2 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ],
        axis=-1,
    )


def quat_conjugate(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=np.float64)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def quat_rotate(q: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Rotate row vectors ``v`` by quaternion(s) ``q`` (broadcasting rows)."""
    q = np.asarray(q, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    w = q[..., :1]
    u = q[..., 1:]
    # v' = v + 2 w (u x v) + 2 u x (u x v)
    uv = np.cross(u, v)
    return v + 2.0 * w * uv + 2.0 * np.cross(u, uv)


def quat_from_axis_angle(axis: np.ndarray, angle) -> np.ndarray:
    axis = np.asarray(axis, dtype=np.float64)
    angle = np.asarray(angle, dtype=np.float64)
    half = angle / 2.0
    s = np.sin(half)
    return np.concatenate(
        [np.cos(half)[..., None], s[..., None] * axis], axis=-1
    )


def quat_rotation_angle(q: np.ndarray) -> np.ndarray:
    """Minimal rotation angle in [0, pi] of quaternion(s) ``q``.

    Uses atan2 of the vector and scalar parts, which stays well conditioned
    for angles near 0 and near pi (arccos of the scalar part does not).
    """
    q = np.asarray(q, dtype=np.float64)
    w = np.abs(q[..., 0])
    v = np.linalg.norm(q[..., 1:], axis=-1)
    return 2.0 * np.arctan2(v, w)


# ---------------------------------------------------------------------------
# element variants

class _ArrayEqualityMixin:
    """Value equality for frozen element types that hold one array field."""

    _field: str

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return np.array_equal(getattr(self, self._field), getattr(other, self._field))

    def __hash__(self):
        return hash((type(self).__name__, getattr(self, self._field).tobytes()))


@dataclass(frozen=True, eq=False)
class Rotation3(_ArrayEqualityMixin):
    quaternion: np.ndarray
    _field = "quaternion"

    def __post_init__(self):
        q = np.array(self.quaternion, dtype=np.float64)
        if q.shape != (4,):
            raise InvalidElementError(f"quaternion must have 4 components, got shape {q.shape}")
        if abs(np.linalg.norm(q) - 1.0) > 1e-9:
            raise InvalidElementError(f"quaternion must be unit norm, got |q| = {np.linalg.norm(q)!r}")
        q = quat_canonical(q / np.linalg.norm(q))
        q.flags.writeable = False
        object.__setattr__(self, "quaternion", q)


@dataclass(frozen=True, eq=False)
class TorusShift(_ArrayEqualityMixin):
    shift: np.ndarray
    _field = "shift"

    def __post_init__(self):
        s = np.mod(np.array(self.shift, dtype=np.float64), 1.0)
        s[s == 1.0] = 0.0
        s.flags.writeable = False
        object.__setattr__(self, "shift", s)


@dataclass(frozen=True, eq=False)
class BoxTranslation(_ArrayEqualityMixin):
    shift: np.ndarray
    _field = "shift"

    def __post_init__(self):
        s = np.array(self.shift, dtype=np.float64)
        s.flags.writeable = False
        object.__setattr__(self, "shift", s)


GroupElement = Rotation3 | TorusShift | BoxTranslation


def rotation_identity() -> Rotation3:
    return Rotation3(np.array([1.0, 0.0, 0.0, 0.0]))


def rotation_about(axis, angle: float) -> Rotation3:
    axis = np.asarray(axis, dtype=np.float64)
    norm = np.linalg.norm(axis)
    if norm == 0.0:
        raise InvalidElementError("rotation axis must be nonzero")
    return Rotation3(quat_from_axis_angle(axis / norm, float(angle)))


def torus_identity(d: int) -> TorusShift:
    return TorusShift(np.zeros(d))


def box_identity(d: int) -> BoxTranslation:
    return BoxTranslation(np.zeros(d))


def identity_like(g: GroupElement) -> GroupElement:
    if isinstance(g, Rotation3):
        return rotation_identity()
    if isinstance(g, TorusShift):
        return torus_identity(g.shift.size)
    return box_identity(g.shift.size)


def _check_same_variant(g: GroupElement, h: GroupElement) -> None:
    if type(g) is not type(h):
        raise VariantMismatchError(f"variant mismatch: {type(g).__name__} vs {type(h).__name__}")
    if not isinstance(g, Rotation3) and g.shift.size != h.shift.size:
        raise VariantMismatchError("translation dimensions differ")


# ---------------------------------------------------------------------------
# group operations

def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group product g * h (first apply h, then g)."""
    _check_same_variant(g, h)
    if isinstance(g, Rotation3):
        return Rotation3(quat_multiply(g.quaternion, h.quaternion))
    if isinstance(g, TorusShift):
        return TorusShift(g.shift + h.shift)
    return BoxTranslation(g.shift + h.shift)


def inverse(g: GroupElement) -> GroupElement:
    if isinstance(g, Rotation3):
        return Rotation3(quat_conjugate(g.quaternion))
    if isinstance(g, TorusShift):
        return TorusShift(-g.shift)
    return BoxTranslation(-g.shift)


def group_distance(g: GroupElement, h: GroupElement) -> float:
    """Geodesic distance between two elements of the same variant."""
    _check_same_variant(g, h)
    if isinstance(g, Rotation3):
        rel = quat_multiply(quat_conjugate(g.quaternion), h.quaternion)
        return float(quat_rotation_angle(rel))
    if isinstance(g, TorusShift):
        diff = np.abs(g.shift - h.shift)
        diff = np.minimum(diff, 1.0 - diff)
        return float(np.linalg.norm(diff))
    return float(np.linalg.norm(g.shift - h.shift))


def act(g: GroupElement, x: Point) -> Point:
    """Apply a group element to a point of a compatible space."""
    coords = act_on_coords(g, x.space, x.coords[None, :])[0]
    return Point(coords, x.space)


def act_on_coords(g: GroupElement, space: CovariateSpace, coords: np.ndarray) -> np.ndarray:
    """Apply ``g`` to row-stacked coordinates (batched form of :func:`act`)."""
    coords = np.asarray(coords, dtype=np.float64)
    if isinstance(g, Rotation3):
        if space.kind not in (SpaceKind.UNIT_BALL3, SpaceKind.UNIT_SPHERE2):
            raise IncompatibleActionError(f"rotations do not act on {space}")
        return quat_rotate(g.quaternion, coords)
    if isinstance(g, TorusShift):
        if space.kind is not SpaceKind.TORUS or space.ambient_dim != g.shift.size:
            raise IncompatibleActionError(f"torus shift of dimension {g.shift.size} does not act on {space}")
        return np.mod(coords + g.shift, 1.0)
    if space.kind is not SpaceKind.BOX or space.ambient_dim != g.shift.size:
        raise IncompatibleActionError(f"box translation of dimension {g.shift.size} does not act on {space}")
    return wrap_coords(space, coords + g.shift)


# ---------------------------------------------------------------------------
# batched metric helpers used by subgroup nets and selection

def rotation_distance_matrix(qa: np.ndarray, qb: np.ndarray) -> np.ndarray:
    """Pairwise rotation angles between two stacks of unit quaternions."""
    dots = np.abs(np.asarray(qa) @ np.asarray(qb).T)
    return 2.0 * np.arccos(np.clip(dots, -1.0, 1.0))


def torus_shift_distance_matrix(sa: np.ndarray, sb: np.ndarray) -> np.ndarray:
    diff = np.abs(sa[:, None, :] - sb[None, :, :])
    diff = np.minimum(diff, 1.0 - diff)
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
