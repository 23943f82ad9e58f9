"""Qubit states as Bloch vectors: validation, sampling, and axis rotations.

A qubit density operator rho = (I + r.sigma)/2 is stored as the real
3-vector r inside the closed unit ball.  A small validity slack BALL_EPS
is allowed because floating-point images of trace-preserving maps can
overshoot the ball boundary by rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutsideBall

# Validity slack for the unit-ball constraint (channel images may round past 1).
BALL_EPS = 1e-9
# Tolerance for unit-norm and exact-equality style checks.
UNIT_EPS = 1e-12

SAMPLER_MODES = ("uniform-ball", "uniform-sphere", "fixed-radius")


@dataclass(frozen=True)
class BlochState:
    """A qubit state as the Bloch 3-vector (rx, ry, rz)."""

    rx: float
    ry: float
    rz: float

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz], dtype=float)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.rx, self.ry, self.rz)


@dataclass(frozen=True)
class Axis:
    """A unit 3-vector labelling a rotation axis of the Bloch ball."""

    nx: float
    ny: float
    nz: float

    def __post_init__(self):
        norm = math.sqrt(self.nx**2 + self.ny**2 + self.nz**2)
        if abs(norm - 1.0) > UNIT_EPS:
            raise ValueError(f"axis must be a unit vector, got norm {norm!r}")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.nx, self.ny, self.nz], dtype=float)

    @classmethod
    def from_vector(cls, v) -> "Axis":
        """Normalize an arbitrary nonzero 3-vector into an Axis."""
        v = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector into an axis")
        return cls(*(v / norm))


X_AXIS = Axis(1.0, 0.0, 0.0)
Y_AXIS = Axis(0.0, 1.0, 0.0)
Z_AXIS = Axis(0.0, 0.0, 1.0)


def axis_from_name(name: str) -> Axis:
    """Parse 'x', 'y', 'z' or a comma-separated 'nx,ny,nz' triple."""
    key = name.strip().lower()
    named = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}
    if key in named:
        return named[key]
    parts = [float(p) for p in name.split(",")]
    if len(parts) != 3:
        raise ValueError(f"axis must be x|y|z or nx,ny,nz, got {name!r}")
    return Axis.from_vector(parts)


def make_state(rx: float, ry: float, rz: float) -> BlochState:
    """Validated constructor: components are stored exactly as given.

    Raises OutsideBall if rx^2 + ry^2 + rz^2 > 1 + BALL_EPS.
    """
    r2 = rx * rx + ry * ry + rz * rz
    if r2 > 1.0 + BALL_EPS:
        raise OutsideBall(f"Bloch vector ({rx}, {ry}, {rz}) has squared norm {r2}")
    return BlochState(float(rx), float(ry), float(rz))


def state_from_vector(v) -> BlochState:
    v = np.asarray(v, dtype=float)
    return make_state(v[0], v[1], v[2])


def purity_radius(state: BlochState) -> float:
    """Euclidean norm of the Bloch vector (1 for pure states, 0 for I/2)."""
    return math.sqrt(state.rx**2 + state.ry**2 + state.rz**2)


@dataclass(frozen=True)
class SamplerConfig:
    """Deterministic random-state generation.

    mode 'uniform-ball' draws the direction uniformly on the sphere and the
    radius as U^(1/3) (uniform measure on the ball); 'uniform-sphere' fixes
    radius 1; 'fixed-radius' uses the configured radius.
    """

    mode: str
    radius: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.mode not in SAMPLER_MODES:
            raise ValueError(f"unknown sampler mode {self.mode!r}")
        if not 0.0 <= self.radius <= 1.0:
            raise ValueError(f"radius must lie in [0, 1], got {self.radius}")


def sample_vectors(config: SamplerConfig, n: int) -> np.ndarray:
    """Return an (n, 3) array of Bloch vectors, deterministic per seed."""
    rng = np.random.default_rng(config.seed)
    direction = rng.normal(size=(n, 3))
    norms = np.linalg.norm(direction, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    direction /= norms
    if config.mode == "uniform-ball":
        radii = rng.uniform(0.0, 1.0, size=(n, 1)) ** (1.0 / 3.0)
    elif config.mode == "uniform-sphere":
        radii = np.ones((n, 1))
    else:
        radii = np.full((n, 1), config.radius)
    return direction * radii


def sample_state(config: SamplerConfig) -> BlochState:
    """Single deterministic sample; identical configs give identical states."""
    return state_from_vector(sample_vectors(config, 1)[0])


def _rodrigues(axis: Axis, angle: float) -> np.ndarray:
    """Standard right-handed rotation matrix about the axis."""
    n = axis.vector
    c, s = math.cos(angle), math.sin(angle)
    cross = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return c * np.eye(3) + s * cross + (1.0 - c) * np.outer(n, n)


def rotation_matrix(axis: Axis, angle: float) -> np.ndarray:
    """Rotation in the sign convention used throughout this package.

    For the x axis this is
        [[1, 0,     0    ],
         [0, cos a, sin a],
         [0, -sin a, cos a]],
    i.e. the transpose of the standard right-handed Rodrigues matrix.
    """
    return _rodrigues(axis, -angle)


def rotate_about_axis(state: BlochState, axis: Axis, angle: float) -> BlochState:
    """Rotate the Bloch vector about the axis; preserves the norm."""
    return state_from_vector(rotation_matrix(axis, angle) @ state.vector)


def frame_to_x(axis: Axis) -> np.ndarray:
    """Minimal-angle rotation matrix F with F @ axis == x_hat.

    Used to reduce an arbitrary-axis problem to the x-axis convention.
    The antipodal case (axis == -x_hat) uses a pi rotation about z.
    """
    n = axis.vector
    x = np.array([1.0, 0.0, 0.0])
    c = float(np.dot(n, x))
    a = np.cross(n, x)
    norm_a = float(np.linalg.norm(a))
    if norm_a == 0.0:
        return np.eye(3) if c > 0.0 else np.diag([-1.0, -1.0, 1.0])
    rot_axis = Axis.from_vector(a)
    angle = math.atan2(norm_a, c)
    return _rodrigues(rot_axis, angle)
