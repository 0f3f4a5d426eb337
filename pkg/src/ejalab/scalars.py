"""The four real division algebras used as matrix entries.

Quaternions and octonions are built by Cayley-Dickson doubling with the
convention

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))

starting from the reals.  Under this convention the quaternion units satisfy
i j = k, and the octonion basis e0..e7 is the doubled quaternion basis
(e4 = (0, 1)).  Other sign conventions give isomorphic algebras; this one is
fixed so that golden values stay reproducible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import UsageError


class ScalarKind(enum.Enum):
    REAL = ("R", 1)
    COMPLEX = ("C", 2)
    QUATERNION = ("H", 4)
    OCTONION = ("O", 8)

    def __init__(self, letter: str, arity: int):
        self.letter = letter
        self.arity = arity

    @classmethod
    def from_letter(cls, letter: str) -> "ScalarKind":
        for kind in cls:
            if kind.letter == letter:
                return kind
        raise UsageError(f"unknown scalar letter {letter!r}")

    def __repr__(self) -> str:
        return f"ScalarKind.{self.name}"


def _cd_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = len(x)
    if n == 1:
        return x * y
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    return np.concatenate([
        _cd_mul(a, c) - _cd_mul(_cd_conj(d), b),
        _cd_mul(d, a) + _cd_mul(b, _cd_conj(c)),
    ])


def _cd_conj(x: np.ndarray) -> np.ndarray:
    out = -x
    out[0] = x[0]
    return out


@lru_cache(maxsize=None)
def structure_constants(kind: ScalarKind) -> np.ndarray:
    """Tensor ``M`` with ``e_a e_b = sum_c M[a, b, c] e_c`` (read-only)."""
    n = kind.arity
    eye = np.eye(n)
    table = np.zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            table[a, b] = _cd_mul(eye[a], eye[b])
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def conjugation_signs(kind: ScalarKind) -> np.ndarray:
    signs = -np.ones(kind.arity)
    signs[0] = 1.0
    signs.setflags(write=False)
    return signs


def mul_coords(kind: ScalarKind, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Multiply coordinate arrays whose last axis is the scalar coordinate."""
    return np.einsum("...a,...b,abc->...c", x, y, structure_constants(kind))


def conj_coords(kind: ScalarKind, x: np.ndarray) -> np.ndarray:
    return x * conjugation_signs(kind)


@dataclass(frozen=True, eq=False)
class Scalar:
    kind: ScalarKind
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float).reshape(-1)
        if coords.shape != (self.kind.arity,):
            raise UsageError(
                f"{self.kind.name.lower()} scalar needs {self.kind.arity} "
                f"coordinates, got {coords.size}")
        if not np.all(np.isfinite(coords)):
            raise UsageError("scalar coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def one(cls, kind: ScalarKind) -> "Scalar":
        return cls(kind, np.eye(kind.arity)[0])

    @classmethod
    def unit(cls, kind: ScalarKind, index: int) -> "Scalar":
        return cls(kind, np.eye(kind.arity)[index])

    @property
    def real(self) -> float:
        return float(self.coords[0])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def conj(self) -> "Scalar":
        return scalar_conj(self)

    def _check(self, other: "Scalar") -> None:
        if not isinstance(other, Scalar) or other.kind is not self.kind:
            raise UsageError("scalar kind mismatch")

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Scalar(self.kind, self.coords * other)
        return scalar_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Scalar(self.kind, self.coords * other)
        return NotImplemented

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.kind, self.coords + other.coords)

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.kind, self.coords - other.coords)

    def __neg__(self) -> "Scalar":
        return Scalar(self.kind, -self.coords)

    def allclose(self, other: "Scalar", atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.allclose(self.coords, other.coords, rtol=0, atol=atol))

    def __repr__(self) -> str:
        body = ", ".join(f"{c:g}" for c in self.coords)
        return f"Scalar({self.kind.letter}: {body})"


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    if not isinstance(y, Scalar) or x.kind is not y.kind:
        raise UsageError(f"cannot multiply {x.kind} by {getattr(y, 'kind', y)}")
    return Scalar(x.kind, mul_coords(x.kind, x.coords, y.coords))


def scalar_conj(x: Scalar) -> Scalar:
    return Scalar(x.kind, conj_coords(x.kind, x.coords))


def random_scalar(kind: ScalarKind, rng: np.random.Generator) -> Scalar:
    return Scalar(kind, rng.standard_normal(kind.arity))
