"""Exact finite-alphabet probability: distributions, channels, joints.

All quantities are dense float64 arrays and all information measures are in
bits.  Joint laws are built by composing a source model with a pair of test
channels along the chain Z - X - Y - U - V, so every conditional independence
of the chain holds by construction.  Alphabets at desk scale are tiny (a few
symbols), which keeps everything exact and simple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation

MASS_TOL = 1e-12

# Axis layout of joints produced by compose_joint.
AXIS_Z, AXIS_X, AXIS_Y, AXIS_U, AXIS_V = 0, 1, 2, 3, 4


def _as_readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.float64, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class FiniteDistribution:
    """A pmf over a finite alphabet indexed 0..alphabet_size-1."""

    alphabet_size: int
    probs: np.ndarray

    def __post_init__(self):
        probs = _as_readonly(np.asarray(self.probs, dtype=np.float64).ravel())
        object.__setattr__(self, "probs", probs)
        if self.alphabet_size <= 0:
            raise ContractViolation("alphabet_size must be positive")
        if probs.shape[0] != self.alphabet_size:
            raise ContractViolation(
                f"probs has length {probs.shape[0]}, expected {self.alphabet_size}"
            )
        if np.any(probs < 0.0):
            raise ContractViolation("probabilities must be nonnegative")
        total = float(probs.sum())
        if abs(total - 1.0) > MASS_TOL:
            raise ContractViolation(f"probabilities sum to {total!r}, not 1")

    @classmethod
    def uniform(cls, k: int) -> "FiniteDistribution":
        return cls(k, np.full(k, 1.0 / k))

    @classmethod
    def point_mass(cls, k: int, at: int) -> "FiniteDistribution":
        p = np.zeros(k)
        p[at] = 1.0
        return cls(k, p)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteDistribution)
            and self.alphabet_size == other.alphabet_size
            and np.array_equal(self.probs, other.probs)
        )


@dataclass(frozen=True)
class Channel:
    """Row-stochastic conditional pmf matrix; row i is the pmf given input i."""

    input_size: int
    output_size: int
    rows: np.ndarray

    def __post_init__(self):
        rows = _as_readonly(np.asarray(self.rows, dtype=np.float64))
        object.__setattr__(self, "rows", rows)
        if self.input_size <= 0 or self.output_size <= 0:
            raise ContractViolation("channel sizes must be positive")
        if rows.shape != (self.input_size, self.output_size):
            raise ContractViolation(
                f"rows has shape {rows.shape}, expected "
                f"({self.input_size}, {self.output_size})"
            )
        for i in range(self.input_size):
            row = rows[i]
            if np.any(row < 0.0):
                raise ContractViolation(f"row {i} has a negative entry")
            total = float(row.sum())
            if abs(total - 1.0) > MASS_TOL:
                raise ContractViolation(f"row {i} sums to {total!r}, not 1")

    @classmethod
    def from_rows(cls, rows) -> "Channel":
        arr = np.asarray(rows, dtype=np.float64)
        if arr.ndim != 2:
            raise ContractViolation("channel rows must form a 2-D matrix")
        return cls(arr.shape[0], arr.shape[1], arr)

    @classmethod
    def identity(cls, k: int) -> "Channel":
        return cls(k, k, np.eye(k))

    @classmethod
    def bsc(cls, p: float) -> "Channel":
        """Binary symmetric channel with crossover probability p."""
        return cls(2, 2, np.array([[1.0 - p, p], [p, 1.0 - p]]))

    @classmethod
    def constant(cls, input_size: int, output_size: int = 1) -> "Channel":
        rows = np.zeros((input_size, output_size))
        rows[:, 0] = 1.0
        return cls(input_size, output_size, rows)

    @classmethod
    def uniform_noise(cls, input_size: int, output_size: int) -> "Channel":
        return cls(
            input_size,
            output_size,
            np.full((input_size, output_size), 1.0 / output_size),
        )

    def row(self, i: int) -> FiniteDistribution:
        return FiniteDistribution(self.output_size, self.rows[i])

    def compose(self, then: "Channel") -> "Channel":
        """Cascade: first this channel, then `then` on its output."""
        if then.input_size != self.output_size:
            raise ContractViolation("cascade dimension mismatch")
        return Channel(self.input_size, then.output_size, self.rows @ then.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Channel)
            and self.input_size == other.input_size
            and self.output_size == other.output_size
            and np.array_equal(self.rows, other.rows)
        )


@dataclass(frozen=True)
class SystemModel:
    """Source plus enrollment and identification channels."""

    source: FiniteDistribution
    enroll: Channel
    identify: Channel

    def __post_init__(self):
        k = self.source.alphabet_size
        if self.enroll.input_size != k or self.identify.input_size != k:
            raise ContractViolation(
                "enrollment/identification channels must accept the source alphabet"
            )

    @property
    def x_size(self) -> int:
        return self.source.alphabet_size

    @property
    def y_size(self) -> int:
        return self.enroll.output_size

    @property
    def z_size(self) -> int:
        return self.identify.output_size


@dataclass(frozen=True)
class AuxiliaryPair:
    """Test channels generating U from Y and V from U."""

    u_given_y: Channel
    v_given_u: Channel

    def __post_init__(self):
        if self.v_given_u.input_size != self.u_given_y.output_size:
            raise ContractViolation("v_given_u must accept the U alphabet")

    @property
    def u_size(self) -> int:
        return self.u_given_y.output_size

    @property
    def v_size(self) -> int:
        return self.v_given_u.output_size


@dataclass(frozen=True)
class JointDistribution:
    """Dense joint pmf over a Cartesian product of finite alphabets."""

    axis_sizes: tuple
    mass: np.ndarray

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.axis_sizes)
        object.__setattr__(self, "axis_sizes", sizes)
        mass = _as_readonly(np.asarray(self.mass, dtype=np.float64))
        object.__setattr__(self, "mass", mass)
        if any(s <= 0 for s in sizes):
            raise ContractViolation("axis sizes must be positive")
        if mass.shape != sizes:
            raise ContractViolation(
                f"mass has shape {mass.shape}, expected {sizes}"
            )
        if np.any(mass < 0.0):
            raise ContractViolation("joint mass must be nonnegative")
        total = float(mass.sum())
        if abs(total - 1.0) > MASS_TOL:
            raise ContractViolation(f"joint mass sums to {total!r}, not 1")

    @property
    def ndim(self) -> int:
        return len(self.axis_sizes)

    def axis_distribution(self, axis: int) -> FiniteDistribution:
        m = marginalize(self, (axis,))
        return FiniteDistribution(m.axis_sizes[0], m.mass)


def compose_joint(model: SystemModel, aux: AuxiliaryPair) -> JointDistribution:
    """Joint law P(z,x,y,u,v) along the chain Z - X - Y - U - V."""
    if aux.u_given_y.input_size != model.y_size:
        raise ContractViolation(
            f"u_given_y accepts {aux.u_given_y.input_size} symbols, "
            f"enrollment outputs {model.y_size}"
        )
    mass = np.einsum(
        "x,xz,xy,yu,uv->zxyuv",
        model.source.probs,
        model.identify.rows,
        model.enroll.rows,
        aux.u_given_y.rows,
        aux.v_given_u.rows,
        optimize=True,
    )
    sizes = (model.z_size, model.x_size, model.y_size, aux.u_size, aux.v_size)
    return JointDistribution(sizes, mass)


def marginalize(joint: JointDistribution, keep_axes: Iterable[int]) -> JointDistribution:
    """Sum out all axes not listed; kept axes appear in the order given."""
    keep = [int(a) for a in keep_axes]
    if not keep:
        raise ContractViolation("keep_axes must be nonempty")
    for a in keep:
        if not 0 <= a < joint.ndim:
            raise ContractViolation(f"axis {a} out of range for {joint.ndim}-D joint")
    if len(set(keep)) != len(keep):
        raise ContractViolation("keep_axes contains duplicates")
    drop = tuple(a for a in range(joint.ndim) if a not in keep)
    summed = joint.mass.sum(axis=drop) if drop else joint.mass
    # sum() preserves the original axis order; permute to the requested one
    remaining = sorted(keep)
    perm = [remaining.index(a) for a in keep]
    out = np.transpose(summed, perm)
    return JointDistribution(tuple(joint.axis_sizes[a] for a in keep), out)


def _entropy_of_mass(mass: np.ndarray) -> float:
    flat = mass.ravel()
    nz = flat[flat > 0.0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0  # normalizes -0.0


def entropy(dist: FiniteDistribution) -> float:
    """Shannon entropy in bits, with 0*log 0 = 0."""
    return _entropy_of_mass(dist.probs)


def joint_entropy(joint: JointDistribution, axes: Iterable[int]) -> float:
    return _entropy_of_mass(marginalize(joint, tuple(axes)).mass)


def _check_disjoint(*axis_groups: Sequence[int]):
    seen = set()
    for group in axis_groups:
        for a in group:
            if a in seen:
                raise ContractViolation(f"axis {a} appears in more than one group")
            seen.add(a)


def mutual_information(
    joint: JointDistribution, axes_a: Iterable[int], axes_b: Iterable[int]
) -> float:
    """I(A;B) in bits via H(A) + H(B) - H(A,B)."""
    a = tuple(axes_a)
    b = tuple(axes_b)
    _check_disjoint(a, b)
    return joint_entropy(joint, a) + joint_entropy(joint, b) - joint_entropy(joint, a + b)


def conditional_mutual_information(
    joint: JointDistribution,
    axes_a: Iterable[int],
    axes_b: Iterable[int],
    axes_c: Iterable[int],
) -> float:
    """I(A;B|C) in bits via H(A,C) + H(B,C) - H(A,B,C) - H(C)."""
    a = tuple(axes_a)
    b = tuple(axes_b)
    c = tuple(axes_c)
    _check_disjoint(a, b, c)
    return (
        joint_entropy(joint, a + c)
        + joint_entropy(joint, b + c)
        - joint_entropy(joint, a + b + c)
        - (joint_entropy(joint, c) if c else 0.0)
    )
