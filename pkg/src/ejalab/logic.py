"""Propositions (idempotents) of a Jordan algebra and their logic."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .defaults import DEFAULT_SEED, DEFAULT_TOL
from .errors import NumericError, UsageError
from .jordan import (
    AlgebraDescriptor, Element, Matrix, RealLine, Spin, jordan_product,
    mult_operator, operator_commute, spectral_decompose, triple_product,
)


@dataclass(frozen=True, eq=False)
class Proposition:
    element: Element
    tol: float = DEFAULT_TOL
    residual: float = 0.0

    @property
    def algebra(self) -> AlgebraDescriptor:
        return self.element.algebra

    def vec(self) -> np.ndarray:
        return self.element.vec()

    def rank(self) -> int:
        """Number of minimal propositions in a frame below this one."""
        return int(round(self.element.trace()))

    def same_as(self, other: "Proposition", tol: Optional[float] = None) -> bool:
        tol = _tol(self, other) if tol is None else tol
        return (self.element - other.element).norm() <= tol

    def __repr__(self):
        return f"Proposition({self.element!r})"


def certify(element: Element, tol: float = DEFAULT_TOL) -> Proposition:
    """Wrap an idempotent element as a proposition, checking p o p = p."""
    residual = (jordan_product(element, element) - element).norm()
    if residual > tol:
        raise UsageError(f"element is not idempotent (residual {residual:.3e} > {tol:g})")
    return Proposition(element, tol, residual)


def zero(algebra: AlgebraDescriptor) -> Proposition:
    return Proposition(algebra.zero())


def one(algebra: AlgebraDescriptor) -> Proposition:
    return Proposition(algebra.identity())


def _tol(p: Proposition, q: Proposition) -> float:
    return max(p.tol, q.tol)



def complement(p: Proposition) -> Proposition:
    return Proposition(p.algebra.identity() - p.element, p.tol, p.residual)


def _cross_check(by_product: float, sandwich: float, tol: float, what: str) -> None:
    # The sandwich residual scales like the square of the product residual
    # near the boundary, so only flag clear contradictions.
    if (by_product <= tol and sandwich > 1e3 * tol) or (sandwich <= tol and by_product > 1e-3):
        raise NumericError(f"product and triple-product tests disagree on {what}",
                           residual=max(by_product, sandwich))


def orthogonal(p: Proposition, q: Proposition, tol: Optional[float] = None) -> bool:
    tol = _tol(p, q) if tol is None else tol
    by_product = jordan_product(p.element, q.element).norm()
    sandwich = triple_product(p.element, q.element, p.element).norm()
    _cross_check(by_product, sandwich, tol, "orthogonality")
    return by_product <= tol


def leq(p: Proposition, q: Proposition, tol: Optional[float] = None) -> bool:
    tol = _tol(p, q) if tol is None else tol
    by_product = (jordan_product(p.element, q.element) - p.element).norm()
    sandwich = (triple_product(q.element, p.element, q.element) - p.element).norm()
    _cross_check(by_product, sandwich, tol, "order")
    return by_product <= tol


def quadratic_operator(p: Element) -> np.ndarray:
    """Matrix of b -> {p, b, p} in orthonormal coordinates."""
    lp = mult_operator(p)
    lp2 = mult_operator(jordan_product(p, p))
    return 2.0 * lp @ lp - lp2


def is_minimal(p: Proposition, tol: Optional[float] = None) -> bool:
    """p is minimal iff {p, b, p} lies in R p for every basis element b."""
    tol = p.tol if tol is None else tol
    v = p.vec()
    nv = float(np.linalg.norm(v))
    if nv <= tol:
        return False
    u = quadratic_operator(p.element)
    d = v / nv
    off = u - np.outer(d, d @ u)
    return float(np.max(np.linalg.norm(off, axis=0))) <= tol * max(1.0, nv)


@dataclass(frozen=True)
class CompatibilityWitness:
    q1: Proposition
    q2: Proposition
    q3: Proposition


def compatible(p: Proposition, q: Proposition,
               tol: Optional[float] = None) -> tuple[bool, Optional[CompatibilityWitness]]:
    """Decide compatibility through operator commutation and build the witness.

    When p and q operator-commute, x1 = p o q, x2 = p - x1, x3 = q - x1 are
    pairwise orthogonal propositions with p = x1 + x2 and q = x1 + x3.
    """
    tol = _tol(p, q) if tol is None else tol
    if not operator_commute(p.element, q.element, tol):
        return False, None
    x1 = jordan_product(p.element, q.element)
    try:
        shared = certify(x1, tol * 10)
        only_p = certify(p.element - x1, tol * 10)
        only_q = certify(q.element - x1, tol * 10)
    except UsageError as exc:
        raise NumericError(f"operator-commuting pair without a witness: {exc}") from exc
    return True, CompatibilityWitness(only_p, shared, only_q)


def meet(p: Proposition, q: Proposition) -> Proposition:
    """Infimum, defined only for compatible pairs."""
    ok, w = compatible(p, q)
    if not ok:
        raise UsageError("meet is only defined for compatible propositions")
    return w.q2


def join(p: Proposition, q: Proposition) -> Proposition:
    """Supremum, defined only for compatible pairs."""
    ok, w = compatible(p, q)
    if not ok:
        raise UsageError("join is only defined for compatible propositions")
    return certify(w.q1.element + w.q2.element + w.q3.element, _tol(p, q) * 10)


# -- strong connectedness ----------------------------------------------------

@dataclass(frozen=True)
class StrongConnection:
    found: bool
    witness: Optional[Element]
    residual: float
    peirce_dim: int


def peirce_space(p: Element, q: Element, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (rows) of {p, A, q}."""
    alg = p.algebra
    eye = np.eye(alg.dim)
    images = alg.triple_vec(np.broadcast_to(p.vec(), eye.shape), eye,
                            np.broadcast_to(q.vec(), eye.shape))
    if not np.any(images):
        return np.zeros((0, alg.dim))
    _, s, vt = np.linalg.svd(images, full_matrices=False)
    return vt[s > tol * max(1.0, s[0])]


def strongly_connected(p: Proposition, q: Proposition, tol: Optional[float] = None,
                       seed: int = DEFAULT_SEED, max_iter: int = 200,
                       restarts: int = 8) -> StrongConnection:
    """Search {p, A, q} for x with x^2 = p + q by Gauss-Newton least squares."""
    tol = _tol(p, q) if tol is None else tol
    if not orthogonal(p, q, tol):
        raise UsageError("strong connectedness needs orthogonal propositions")
    alg = p.algebra
    target = p.vec() + q.vec()
    basis = peirce_space(p.element, q.element)
    if len(basis) == 0:
        return StrongConnection(False, None, float(np.linalg.norm(target)), 0)
    mul = alg.mul_vec
    rng = np.random.default_rng(seed)
    best = (np.inf, None)
    for _ in range(restarts):
        c = rng.standard_normal(len(basis))
        c /= np.linalg.norm(c)
        for _ in range(max_iter):
            x = c @ basis
            f = mul(x, x) - target
            res = float(np.linalg.norm(f))
            if res < best[0]:
                best = (res, x)
            if res <= 1e-3 * tol:
                break
            jac = 2.0 * mul(np.broadcast_to(x, basis.shape), basis).T
            step, *_ = np.linalg.lstsq(jac, -f, rcond=1e-8)
            c = c + step
        if best[0] <= tol:
            break
    res, x = best
    if res <= tol:
        return StrongConnection(True, alg.from_vec(x), res, len(basis))
    return StrongConnection(False, None, res, len(basis))


def find_nonorthogonal_bridge(p1: Proposition, p2: Proposition,
                              tol: Optional[float] = None,
                              seed: int = DEFAULT_SEED) -> Proposition:
    """A minimal proposition orthogonal to neither p1 nor p2.

    Non-orthogonal inputs return p1.  For orthogonal inputs the spectral
    idempotents of a strong-connection witness x (x^2 = p1 + p2) are tried
    first; a seeded random sweep is the fallback.
    """
    tol = _tol(p1, p2) if tol is None else tol
    if not orthogonal(p1, p2, tol):
        return p1

    def bridges(q: Proposition) -> bool:
        return (jordan_product(q.element, p1.element).norm() > 1e3 * tol
                and jordan_product(q.element, p2.element).norm() > 1e3 * tol)

    link = strongly_connected(p1, p2, tol, seed)
    if link.found:
        for _, e in spectral_decompose(link.witness, tol, seed).pairs:
            q = certify(e, tol * 10)
            if bridges(q):
                return q
    rng = np.random.default_rng(seed)
    for _ in range(64):
        for q in random_frame(p1.algebra, rng, tol):
            if bridges(q):
                return q
    raise NumericError("no bridging minimal proposition found")


# -- spin-factor automorphisms ----------------------------------------------

def _is_spin_logic(alg: AlgebraDescriptor) -> bool:
    if len(alg.factors) != 1:
        return False
    f = alg.factors[0]
    return isinstance(f, Spin) or (isinstance(f, Matrix) and f.k == 2)


class SpinSwap:
    """The logic automorphism that exchanges q and q' and fixes everything else.

    It respects order, orthocomplement and orthogonality of a rank-2 logic
    but is not the restriction of any linear map.
    """

    def __init__(self, q: Proposition):
        if not _is_spin_logic(q.algebra):
            raise UsageError("swap automorphisms are defined on spin-factor logics")
        alg = q.algebra
        if q.element.norm() <= q.tol or (q.element - alg.identity()).norm() <= q.tol:
            raise UsageError("q must differ from 0 and I")
        self.q = q
        self.q_perp = complement(q)

    def __call__(self, p: Proposition) -> Proposition:
        if p.same_as(self.q):
            return self.q_perp
        if p.same_as(self.q_perp):
            return self.q
        return p


def spin_swap_automorphism(q: Proposition) -> SpinSwap:
    return SpinSwap(q)


# -- sampling ----------------------------------------------------------------

def random_frame(algebra: AlgebraDescriptor, rng: np.random.Generator,
                 tol: float = DEFAULT_TOL) -> list:
    """A random maximal family of orthogonal minimal propositions."""
    a = algebra.random_element(rng)
    seed = int(rng.integers(2**63))
    return [Proposition(q, tol) for q in spectral_decompose(a, tol, seed).idempotents]


def random_minimal(algebra: AlgebraDescriptor, rng: np.random.Generator,
                   tol: float = DEFAULT_TOL) -> Proposition:
    frame = random_frame(algebra, rng, tol)
    return frame[int(rng.integers(len(frame)))]


def frame_sum(frame: list, members) -> Proposition:
    alg = frame[0].algebra
    total = alg.zero()
    for i in members:
        total = total + frame[i].element
    return Proposition(total, frame[0].tol)


def random_proposition(algebra: AlgebraDescriptor, rng: np.random.Generator,
                       tol: float = DEFAULT_TOL, nonzero: bool = False) -> Proposition:
    frame = random_frame(algebra, rng, tol)
    while True:
        mask = rng.random(len(frame)) < 0.5
        if mask.any() or not nonzero:
            return frame_sum(frame, np.flatnonzero(mask))


def proposition_basis(algebra: AlgebraDescriptor) -> list:
    """dim(A) propositions whose span is A."""
    out = []
    for i, f in enumerate(algebra.factors):
        if isinstance(f, RealLine):
            parts = [f.identity()]
        elif isinstance(f, Spin):
            parts = [f.identity()]
            for j in range(f.n):
                x = np.zeros(f.n + 1)
                x[0] = 0.5
                x[1 + j] = 0.5
                parts.append(x)
        else:
            parts = []
            for d in range(f.k):
                x = np.zeros(f.shape)
                x[d, d, 0] = 1.0
                parts.append(x)
            signs = np.where(np.arange(f.arity) == 0, 1.0, -1.0)
            for r in range(f.k):
                for c in range(r + 1, f.k):
                    for a in range(f.arity):
                        x = np.zeros(f.shape)
                        x[r, r, 0] = x[c, c, 0] = 0.5
                        x[r, c, a] = 0.5
                        x[c, r, a] = 0.5 * signs[a]
                        parts.append(x)
        out.extend(Proposition(algebra.embed(i, x)) for x in parts)
    return out
