"""Finite-dimensional formally real Jordan algebras.

An algebra is a direct sum of simple factors.  Each factor stores its
elements as plain numpy arrays:

* ``RealLine``: shape ``(1,)``
* ``Spin(n)``: shape ``(n + 1,)`` holding the pair ``(s, x)``
* ``Matrix(k, K)``: shape ``(k, k, arity(K))``, a full Hermitian matrix whose
  entries are coordinate vectors of scalars in ``K``

Every factor also exposes orthonormal coordinates for the trace form
``<a, b> = tr(a o b)``; the linear-algebra side of the package (operators,
Peirce spaces, spectral work) runs on those coordinate vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence, Union

import numpy as np

from .defaults import DEFAULT_SEED, DEFAULT_TOL
from .errors import NumericError, UsageError
from .scalars import ScalarKind, conjugation_signs, structure_constants

SQRT2 = math.sqrt(2.0)

# H_2(K) is the spin factor on R + R^n with n = 1 + dim_R(K).
_SPIN_OF_2X2 = {ScalarKind.REAL: 2, ScalarKind.COMPLEX: 3,
                ScalarKind.QUATERNION: 5, ScalarKind.OCTONION: 9}


class _Factor:
    """Behaviour shared by the simple factor kinds."""

    dim: int
    rank: int
    shape: tuple

    def identity(self) -> np.ndarray:
        raise NotImplementedError

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def vec(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def unvec(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def mul_vec(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.vec(self.product(self.unvec(u), self.unvec(v)))

    def mult_matrix(self, u: np.ndarray) -> np.ndarray:
        """Matrix of ``L_u`` in orthonormal coordinates."""
        basis = self.unvec(np.eye(self.dim))
        x = np.broadcast_to(self.unvec(u), basis.shape)
        return self.vec(self.product(x, basis)).T

    def canonical(self) -> "Factor":
        return self

    def hermitian_residual(self, x: np.ndarray) -> float:
        return 0.0


@dataclass(frozen=True)
class RealLine(_Factor):
    dim = 1
    rank = 1
    shape = (1,)

    def text(self) -> str:
        return "R"

    def identity(self):
        return np.ones(1)

    def product(self, x, y):
        return x * y

    def vec(self, x):
        return np.array(x, dtype=float)

    def unvec(self, v):
        return np.array(v, dtype=float)

    def random(self, rng):
        return rng.standard_normal(1)


@dataclass(frozen=True)
class Spin(_Factor):
    """Spin factor on R + R^n with (s,x)o(t,y) = (st + <x,y>, sy + tx)."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise UsageError(f"spin factor needs n >= 2, got {self.n!r}")

    rank = 2

    @property
    def dim(self):
        return self.n + 1

    @property
    def shape(self):
        return (self.n + 1,)

    def text(self):
        return f"spin({self.n})"

    def identity(self):
        e = np.zeros(self.n + 1)
        e[0] = 1.0
        return e

    def product(self, x, y):
        s, v = x[..., :1], x[..., 1:]
        t, w = y[..., :1], y[..., 1:]
        head = s * t + np.sum(v * w, axis=-1, keepdims=True)
        return np.concatenate([head, s * w + t * v], axis=-1)

    def vec(self, x):
        return SQRT2 * np.asarray(x, dtype=float)

    def unvec(self, v):
        return np.asarray(v, dtype=float) / SQRT2

    def random(self, rng):
        return rng.standard_normal(self.n + 1)


@dataclass(frozen=True)
class Matrix(_Factor):
    """Hermitian k x k matrices over R, C, H or O with x o y = (xy + yx)/2.

    Sizes 1 and 2 are legal here as concrete realizations; ``canonical()``
    maps them to ``RealLine`` and ``Spin``.
    """

    k: int
    scalar: ScalarKind

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or self.k < 1:
            raise UsageError(f"matrix factor needs k >= 1, got {self.k!r}")
        if not isinstance(self.scalar, ScalarKind):
            raise UsageError(f"not a scalar kind: {self.scalar!r}")
        if self.scalar is ScalarKind.OCTONION and self.k > 3:
            raise UsageError(
                f"octonion Hermitian matrices form a Jordan algebra only "
                f"for k <= 3, got k = {self.k}")

    @property
    def rank(self):
        return self.k

    @property
    def arity(self):
        return self.scalar.arity

    @property
    def dim(self):
        return self.k + self.arity * self.k * (self.k - 1) // 2

    @property
    def shape(self):
        return (self.k, self.k, self.arity)

    def text(self):
        return f"H({self.k},{self.scalar.letter})"

    def canonical(self):
        if self.k == 1:
            return RealLine()
        if self.k == 2:
            return Spin(_SPIN_OF_2X2[self.scalar])
        return self

    @cached_property
    def _upper(self):
        return np.triu_indices(self.k, 1)

    def identity(self):
        e = np.zeros(self.shape)
        e[np.arange(self.k), np.arange(self.k), 0] = 1.0
        return e

    def adjoint(self, x):
        return np.swapaxes(x, -3, -2) * conjugation_signs(self.scalar)

    def hermitian_part(self, x):
        return 0.5 * (x + self.adjoint(x))

    def hermitian_residual(self, x):
        return float(np.max(np.abs(x - self.adjoint(x)), initial=0.0))

    def matmul(self, x, y):
        """Plain (non-symmetrized) matrix product."""
        if self.scalar is ScalarKind.REAL:
            return (x[..., 0] @ y[..., 0])[..., None]
        if self.scalar is ScalarKind.COMPLEX:
            c = (x[..., 0] + 1j * x[..., 1]) @ (y[..., 0] + 1j * y[..., 1])
            return np.stack([c.real, c.imag], axis=-1)
        xa = np.moveaxis(x, -1, -3)
        ya = np.moveaxis(y, -1, -3)
        prods = xa[..., :, None, :, :] @ ya[..., None, :, :, :]
        return np.einsum("...abij,abc->...ijc", prods,
                         structure_constants(self.scalar))

    def product(self, x, y):
        # For Hermitian x, y the adjoint of xy is yx (conjugation reverses
        # products in all four division algebras).
        return self.hermitian_part(self.matmul(x, y))

    def vec(self, x):
        x = np.asarray(x, dtype=float)
        d = np.arange(self.k)
        iu, ju = self._upper
        diag = x[..., d, d, 0]
        off = x[..., iu, ju, :]
        off = off.reshape(off.shape[:-2] + (-1,))
        return np.concatenate([diag, SQRT2 * off], axis=-1)

    def unvec(self, v):
        v = np.asarray(v, dtype=float)
        batch = v.shape[:-1]
        out = np.zeros(batch + self.shape)
        d = np.arange(self.k)
        iu, ju = self._upper
        out[..., d, d, 0] = v[..., :self.k]
        w = v[..., self.k:].reshape(batch + (len(iu), self.arity)) / SQRT2
        out[..., iu, ju, :] = w
        out[..., ju, iu, :] = w * conjugation_signs(self.scalar)
        return out

    def random(self, rng):
        return self.hermitian_part(rng.standard_normal(self.shape))


Factor = Union[RealLine, Spin, Matrix]


def factor_trace(factor: Factor, x: np.ndarray) -> float:
    """Jordan trace (sum of eigenvalues with multiplicity)."""
    if isinstance(factor, Matrix):
        return float(np.sum(x[np.arange(factor.k), np.arange(factor.k), 0]))
    if isinstance(factor, Spin):
        return 2.0 * float(x[0])
    return float(x[0])


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A direct sum of simple factors."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise UsageError("an algebra needs at least one factor")
        for f in factors:
            if not isinstance(f, (RealLine, Spin, Matrix)):
                raise UsageError(f"not a factor: {f!r}")
        object.__setattr__(self, "factors", factors)

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @cached_property
    def offsets(self) -> tuple:
        return tuple(np.cumsum([0] + [f.dim for f in self.factors]).tolist())

    def canonical(self) -> "AlgebraDescriptor":
        return AlgebraDescriptor(tuple(f.canonical() for f in self.factors))

    @property
    def is_canonical(self) -> bool:
        return self.canonical() == self

    def text(self) -> str:
        return " (+) ".join(f.text() for f in self.factors)

    def __str__(self):
        return self.text()

    def split_vec(self, v: np.ndarray) -> list:
        o = self.offsets
        return [v[..., o[i]:o[i + 1]] for i in range(len(self.factors))]

    def mul_vec(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.concatenate([
            f.mul_vec(a, b) for f, a, b in
            zip(self.factors, self.split_vec(u), self.split_vec(v))], axis=-1)

    def triple_vec(self, x, y, z):
        m = self.mul_vec
        return m(x, m(y, z)) - m(y, m(z, x)) + m(z, m(x, y))

    def identity(self) -> "Element":
        return Element(self, [f.identity() for f in self.factors], check=False)

    def zero(self) -> "Element":
        return Element(self, [np.zeros(f.shape) for f in self.factors], check=False)

    def from_vec(self, v: np.ndarray) -> "Element":
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise UsageError(f"coordinate vector must have length {self.dim}")
        parts = [f.unvec(p) for f, p in zip(self.factors, self.split_vec(v))]
        return Element(self, parts, check=False)

    def basis(self) -> list:
        """Orthonormal basis for the trace form."""
        return [self.from_vec(e) for e in np.eye(self.dim)]

    def random_element(self, rng: np.random.Generator) -> "Element":
        return Element(self, [f.random(rng) for f in self.factors], check=False)

    def embed(self, index: int, part: np.ndarray) -> "Element":
        """Element supported on a single factor."""
        parts = [np.zeros(f.shape) for f in self.factors]
        parts[index] = np.asarray(part, dtype=float)
        return Element(self, parts, check=False)


def real_line() -> AlgebraDescriptor:
    return AlgebraDescriptor((RealLine(),))


def spin(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor((Spin(n),))


def hermitian(k: int, scalar: ScalarKind) -> AlgebraDescriptor:
    """H_k(K), canonicalized (k = 1, 2 become R and spin factors)."""
    if scalar is ScalarKind.OCTONION and k != 3 and k > 2:
        raise UsageError("octonion matrix factors exist only for k = 3")
    return AlgebraDescriptor((Matrix(k, scalar).canonical(),))


def hermitian_2x2_model(scalar: ScalarKind) -> AlgebraDescriptor:
    """Concrete 2 x 2 matrix realization, deliberately not canonicalized."""
    return AlgebraDescriptor((Matrix(2, scalar),))


def direct_sum(*algebras: AlgebraDescriptor) -> AlgebraDescriptor:
    return AlgebraDescriptor(tuple(f for a in algebras for f in a.factors))


class Element:
    """An element of a Jordan algebra, stored factor by factor."""

    __slots__ = ("algebra", "parts", "_vec")

    def __init__(self, algebra: AlgebraDescriptor, parts: Sequence, check: bool = True):
        self.algebra = algebra
        self.parts = tuple(np.asarray(p, dtype=float) for p in parts)
        self._vec = None
        if check:
            self._validate()

    def _validate(self):
        if len(self.parts) != len(self.algebra.factors):
            raise UsageError(
                f"expected {len(self.algebra.factors)} components, got {len(self.parts)}")
        for f, p in zip(self.algebra.factors, self.parts):
            if p.shape != f.shape:
                raise UsageError(f"{f.text()} component has shape {p.shape}, expected {f.shape}")
            if not np.all(np.isfinite(p)):
                raise UsageError("element coordinates must be finite")
            scale = max(1.0, float(np.max(np.abs(p), initial=0.0)))
            if f.hermitian_residual(p) > 1e-12 * scale:
                raise UsageError(f"{f.text()} component is not Hermitian")

    def vec(self) -> np.ndarray:
        if self._vec is None:
            self._vec = np.concatenate(
                [f.vec(p) for f, p in zip(self.algebra.factors, self.parts)])
        return self._vec

    def _wrap(self, v):
        return self.algebra.from_vec(v)

    def _coerce(self, other):
        if not isinstance(other, Element):
            return None
        if other.algebra != self.algebra:
            raise UsageError(
                f"elements of different algebras: {self.algebra} vs {other.algebra}")
        return other

    def __add__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return Element(self.algebra, [a + b for a, b in zip(self.parts, other.parts)], check=False)

    def __sub__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return Element(self.algebra, [a - b for a, b in zip(self.parts, other.parts)], check=False)

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.parts], check=False)

    def __mul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        c = float(c)
        return Element(self.algebra, [c * a for a in self.parts], check=False)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / float(c))

    def norm(self) -> float:
        return float(np.linalg.norm(self.vec()))

    def trace(self) -> float:
        return sum(factor_trace(f, p) for f, p in zip(self.algebra.factors, self.parts))

    def allclose(self, other: "Element", atol: float = 1e-9) -> bool:
        self._coerce(other)
        return (self - other).norm() <= atol

    def __repr__(self):
        return f"Element({self.algebra.text()}, {np.array2string(self.vec(), precision=4)})"


def _same(*xs: Element) -> AlgebraDescriptor:
    alg = xs[0].algebra
    for x in xs[1:]:
        if x.algebra != alg:
            raise UsageError(f"elements of different algebras: {alg} vs {x.algebra}")
    return alg


def jordan_product(a: Element, b: Element) -> Element:
    alg = _same(a, b)
    parts = [f.product(x, y) for f, x, y in zip(alg.factors, a.parts, b.parts)]
    return Element(alg, parts, check=False)


def square(a: Element) -> Element:
    return jordan_product(a, a)


def triple_product(x: Element, y: Element, z: Element) -> Element:
    """{x,y,z} = x o (y o z) - y o (z o x) + z o (x o y)."""
    _same(x, y, z)
    j = jordan_product
    return j(x, j(y, z)) - j(y, j(z, x)) + j(z, j(x, y))


def trace_form(a: Element, b: Element) -> float:
    _same(a, b)
    return float(a.vec() @ b.vec())


def mult_operator(a: Element) -> np.ndarray:
    """Block-diagonal matrix of L_a in orthonormal coordinates."""
    alg = a.algebra
    n = alg.dim
    out = np.zeros((n, n))
    o = alg.offsets
    for i, (f, p) in enumerate(zip(alg.factors, a.parts)):
        out[o[i]:o[i + 1], o[i]:o[i + 1]] = f.mult_matrix(f.vec(p))
    return out


# -- spectral decomposition ---------------------------------------------------

def eigen_idempotents(mul: Callable, a: np.ndarray, unit: np.ndarray,
                      max_steps: int, tol: float) -> list:
    """Eigenvalues and eigen-idempotents of ``a`` inside R[a] (unit ``unit``).

    Works on orthonormal coordinate vectors.  The powers of ``a`` applied to
    the unit are orthogonalized one at a time (full re-orthogonalization);
    the process stops once the next power lies in the span already built,
    i.e. the minimal polynomial has been reached.  Because L_a is
    self-adjoint for the trace form, the compressed operator is a symmetric
    tridiagonal matrix whose eigenvalues are the roots of the minimal
    polynomial.  Each idempotent is the interpolating polynomial that is 1 at
    its root and 0 at the others, read off in the Krylov coordinates, then
    polished by the iteration e <- 3e^2 - 2e^3.
    """
    scale = max(1.0, float(np.linalg.norm(a)))
    unorm = float(np.linalg.norm(unit))
    if unorm == 0.0:
        raise NumericError("unit element vanishes")
    basis = [unit / unorm]
    images = []
    for step in range(max_steps):
        w = mul(a, basis[-1])
        images.append(w)
        if step + 1 == max_steps:
            break
        q = np.array(basis)
        r = w - q.T @ (q @ w)
        r -= q.T @ (q @ r)
        beta = float(np.linalg.norm(r))
        if beta <= tol * scale:
            break
        basis.append(r / beta)
    q = np.array(basis)
    w = np.array(images)
    t = q @ w.T
    t = 0.5 * (t + t.T)
    theta, y = np.linalg.eigh(t)
    order = np.argsort(-theta, kind="stable")
    theta, y = theta[order], y[:, order]

    clusters = [[0]]
    for i in range(1, len(theta)):
        ref = theta[clusters[-1][-1]]
        if abs(theta[i] - ref) <= tol * (1.0 + abs(ref)):
            clusters[-1].append(i)
        else:
            clusters.append([i])

    out = []
    for cl in clusters:
        coef = unorm * (y[:, cl] @ y[0, cl])
        e = q.T @ coef
        for _ in range(3):
            e2 = mul(e, e)
            e = 3.0 * e2 - 2.0 * mul(e, e2)
        tr = float(e @ e)
        if tr <= 0.5:
            raise NumericError("eigen-idempotent collapsed", residual=tr)
        lam = float(a @ e) / tr
        out.append((lam, e))
    return out


def _split(factor: Factor, lam: float, e: np.ndarray, rng, tol: float, depth: int = 0) -> list:
    """Split an eigen-idempotent into minimal ones via its Peirce subalgebra."""
    t = float(e @ e)
    m = int(round(t))
    if m < 1 or abs(t - m) > 1e-6:
        raise NumericError("idempotent has non-integral trace", residual=abs(t - m))
    if m == 1:
        return [(lam, e)]
    if depth > 2 * factor.rank:
        raise NumericError("Peirce refinement did not terminate")
    mul = factor.mul_vec
    for _ in range(8):
        r = factor.vec(factor.random(rng))
        b = mul(e, mul(r, e)) - mul(r, mul(e, e)) + mul(e, mul(e, r))
        pieces = eigen_idempotents(mul, b, e, m, tol)
        if len(pieces) > 1:
            break
    else:
        raise NumericError("could not split a non-minimal idempotent")
    out = []
    for _, f in pieces:
        out.extend(_split(factor, lam, f, rng, tol, depth + 1))
    return out


@dataclass(frozen=True)
class SpectralDecomposition:
    pairs: tuple
    seed: int
    tol: float
    reconstruction_residual: float = field(default=0.0)

    @property
    def eigenvalues(self) -> list:
        return [lam for lam, _ in self.pairs]

    @property
    def idempotents(self) -> list:
        return [q for _, q in self.pairs]

    def reconstruct(self) -> Element:
        alg = self.pairs[0][1].algebra
        total = alg.zero()
        for lam, q in self.pairs:
            total = total + lam * q
        return total

    def __len__(self):
        return len(self.pairs)


def spectral_decompose(a: Element, tol: float = DEFAULT_TOL,
                       seed: int = DEFAULT_SEED) -> SpectralDecomposition:
    """Write ``a`` as a sum of eigenvalues times a frame of minimal idempotents.

    Zero eigenvalues are kept, so the frame always has ``rank`` members and
    sums to the identity.  Eigenvalues come out in descending order.
    """
    alg = a.algebra
    rng = np.random.default_rng(seed)
    found = []
    for i, (f, part) in enumerate(zip(alg.factors, a.parts)):
        u = f.vec(part)
        pieces = eigen_idempotents(f.mul_vec, u, f.vec(f.identity()), f.rank, tol)
        frame = []
        for lam, e in pieces:
            frame.extend(_split(f, lam, e, rng, tol))
        if len(frame) != f.rank:
            raise NumericError(
                f"{f.text()}: frame has {len(frame)} members, expected {f.rank}")
        found.extend((lam, i, e) for lam, e in frame)
    found.sort(key=lambda t: -t[0])
    pairs = []
    for lam, i, e in found:
        parts = [np.zeros(f.shape) for f in alg.factors]
        parts[i] = alg.factors[i].unvec(e)
        pairs.append((lam, Element(alg, parts, check=False)))
    result = SpectralDecomposition(tuple(pairs), seed, tol)
    residual = (result.reconstruct() - a).norm()
    if residual > 1e3 * tol * (1.0 + a.norm()):
        raise NumericError("spectral reconstruction failed", residual=residual)
    return SpectralDecomposition(tuple(pairs), seed, tol, residual)


def is_positive(a: Element, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> bool:
    return min(spectral_decompose(a, tol, seed).eigenvalues) >= -tol


def operator_commute(x: Element, y: Element, tol: float = DEFAULT_TOL) -> bool:
    """Whether x o (y o z) = y o (x o z) for every basis element z."""
    alg = _same(x, y)
    for f, p, q in zip(alg.factors, x.parts, y.parts):
        lx = f.mult_matrix(f.vec(p))
        ly = f.mult_matrix(f.vec(q))
        scale = max(1.0, float(np.linalg.norm(f.vec(p)) * np.linalg.norm(f.vec(q))))
        if np.max(np.abs(lx @ ly - ly @ lx)) > tol * scale:
            return False
    return True


# -- center and simple summands ---------------------------------------------

def classify_simple(dim: int, rank: int) -> Factor:
    """Identify a simple factor from its dimension and rank."""
    if rank == 1 and dim == 1:
        return RealLine()
    if rank == 2 and dim >= 3:
        return Spin(dim - 1)
    if rank >= 3:
        for kind in (ScalarKind.REAL, ScalarKind.COMPLEX, ScalarKind.QUATERNION):
            if Matrix(rank, kind).dim == dim:
                return Matrix(rank, kind)
        if rank == 3 and dim == 27:
            return Matrix(3, ScalarKind.OCTONION)
    raise NumericError(f"no simple factor has dimension {dim} and rank {rank}")


@dataclass(frozen=True)
class CenterDecomposition:
    center_basis: tuple
    central_idempotents: tuple
    summands: tuple
    seed: int

    @property
    def center_dim(self) -> int:
        return len(self.center_basis)

    @property
    def simple(self) -> bool:
        return self.center_dim == 1


def _null_space(gram: np.ndarray, tol: float) -> np.ndarray:
    w, v = np.linalg.eigh(gram)
    top = max(float(w[-1]), 1e-300)
    s = np.sqrt(np.clip(w, 0.0, None) / top)
    lo, hi = math.sqrt(tol), tol ** 0.25
    if np.any((s > lo) & (s < hi)):
        bad = float(s[(s > lo) & (s < hi)].min())
        raise NumericError("numerical rank of the center system is ambiguous", residual=bad)
    return v[:, s <= lo]


def center_and_summands(algebra: AlgebraDescriptor, tol: float = DEFAULT_TOL,
                        seed: int = DEFAULT_SEED) -> CenterDecomposition:
    """Center of the algebra and its decomposition into simple summands.

    The center is the solution space of ``[L_z, L_b] = 0`` over all basis
    elements ``b``.  A generic central element is split into eigen-idempotents,
    which are the minimal central idempotents; each summand is then
    identified from the dimension and rank of its Peirce space.
    """
    n = algebra.dim
    eye = np.eye(n)
    ops = np.array([mult_operator(algebra.from_vec(e)) for e in eye])
    gram = np.zeros((n, n))
    for b in range(n):
        comm = ops @ ops[b] - ops[b] @ ops  # [L_{e_i}, L_b] for every i
        flat = comm.reshape(n, -1)
        gram += flat @ flat.T
    null = _null_space(gram, tol)
    basis = tuple(algebra.from_vec(v) for v in null.T)

    rng = np.random.default_rng(seed)
    generic = null @ rng.standard_normal(null.shape[1])
    unit = algebra.identity().vec()
    pieces = eigen_idempotents(algebra.mul_vec, generic, unit, algebra.rank, tol)
    idempotents, summands = [], []
    for _, e in pieces:
        eb = np.broadcast_to(e, eye.shape)
        pe = algebra.triple_vec(eb, eye, eb)
        sv = np.linalg.svd(pe, compute_uv=False)
        dim = int(np.sum(sv > 1e-6 * sv[0]))
        rank = int(round(float(e @ e)))
        idempotents.append(algebra.from_vec(e))
        summands.append(AlgebraDescriptor((classify_simple(dim, rank),)))
    return CenterDecomposition(basis, tuple(idempotents), tuple(summands), seed)
