"""Bipartite tensor models and the local tomography analysis.

A ``TensorModel`` realizes a map (p, q) -> p (x) q from pairs of propositions
of a base algebra A into propositions of a target algebra A^2.  Two kinds are
built here:

``complex-kron``
    Every factor of A is first realized as Hermitian complex matrices (the
    real line as 1 x 1 matrices, H_k(C) as itself, spin factors as 2 x 2
    matrices) and p (x) q is the Kronecker product, factor pair by factor
    pair.
``real-kron``
    Real symmetric matrices into the real symmetric matrices of size k^2.
    This model satisfies C1-C4 but its product propositions do not span the
    target, so C5 fails.

Spin factors other than spin(3) have no linear isomorphism onto H_2(C).
Their propositions are 0, I and the minimal idempotents (1/2, u/2) with
|u| = 1; these are mapped by u -> f(u) with an odd (but non-linear) map f
onto the unit sphere of R^3, which keeps orthocomplements.  The resulting
tensor is only defined on propositions.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .defaults import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL
from .errors import InfeasibleError, UsageError
from .jordan import (
    AlgebraDescriptor, Element, Matrix, RealLine, Spin, jordan_product,
    operator_commute, triple_product,
)
from .logic import (
    Proposition, certify, frame_sum, is_minimal, orthogonal, proposition_basis,
    random_frame,
)
from .scalars import ScalarKind
from .states import pure_value

COMPLEX_KRON = "complex-kron"
REAL_KRON = "real-kron"
MODEL_KINDS = (COMPLEX_KRON, REAL_KRON)

SPAN_THRESHOLD = 1e-8

_PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def _to_complex(x: np.ndarray) -> np.ndarray:
    return x[..., 0] + 1j * x[..., 1]


def _from_complex(c: np.ndarray) -> np.ndarray:
    return np.stack([c.real, c.imag], axis=-1)


def _odd_sphere_map(u: np.ndarray) -> np.ndarray:
    """Odd map from the unit sphere of R^n (n != 3) to the unit sphere of R^3."""
    if len(u) == 2:
        v = np.array([u[0], u[1], u[0] * u[1] ** 2])
    else:
        v = np.array([u[0], u[1], np.sum(u[2:])])
    if np.linalg.norm(v) < 1e-6:
        lead = u[np.flatnonzero(np.abs(u) > 1e-9)[0]]
        v = np.array([0.0, 0.0, np.sign(lead)])
    return v / np.linalg.norm(v)


def _spin_matrix(s: float, v: np.ndarray) -> np.ndarray:
    return s * np.eye(2, dtype=complex) + np.einsum("i,ijk->jk", v, _PAULI)


@dataclass(frozen=True)
class _Realization:
    """How one base factor is written as a matrix in the tensor model."""

    factor: object
    size: int
    linear: bool

    def matrix(self, part: np.ndarray, tol: float) -> np.ndarray:
        f = self.factor
        if isinstance(f, RealLine):
            return part.reshape(1, 1).astype(complex)
        if isinstance(f, Matrix):
            if f.scalar is ScalarKind.REAL:
                return part[..., 0].astype(complex)
            return _to_complex(part)
        s, x = part[0], part[1:]
        if f.n == 3:
            return _spin_matrix(s, x)
        if np.linalg.norm(part) <= tol:
            return np.zeros((2, 2), dtype=complex)
        if np.linalg.norm(part - f.identity()) <= tol:
            return np.eye(2, dtype=complex)
        if abs(s - 0.5) <= 1e-6 and abs(np.linalg.norm(x) - 0.5) <= 1e-6:
            v = _odd_sphere_map(2.0 * x / np.linalg.norm(2.0 * x))
            return 0.5 * _spin_matrix(1.0, v)
        raise UsageError(
            f"the {f.text()} tensor map is defined on propositions only")


def _realize(factor, kind: str) -> _Realization:
    if kind == REAL_KRON:
        if isinstance(factor, Matrix) and factor.scalar is ScalarKind.REAL:
            return _Realization(factor, factor.k, True)
        raise UsageError(f"real-kron models need real symmetric factors, got {factor.text()}")
    if isinstance(factor, RealLine):
        return _Realization(factor, 1, True)
    if isinstance(factor, Matrix) and factor.scalar is ScalarKind.COMPLEX:
        return _Realization(factor, factor.k, True)
    if isinstance(factor, Spin):
        return _Realization(factor, 2, factor.n == 3)
    if isinstance(factor, Matrix) and factor.k == 2:
        raise UsageError(
            f"{factor.text()} is the spin factor {factor.canonical().text()}; "
            "pass the canonical descriptor")
    raise InfeasibleError(
        f"{factor.text()} admits no locally tomographic composite: n_A^2 = "
        f"{factor.dim ** 2} matches none of the simple algebras of rank "
        f"{factor.rank ** 2}")


@dataclass(frozen=True, eq=False)
class TensorModel:
    kind: str
    base: AlgebraDescriptor
    target: AlgebraDescriptor
    realizations: tuple
    pairs: tuple
    notes: tuple = ()
    tol: float = DEFAULT_TOL

    @property
    def linear(self) -> bool:
        return all(r.linear for r in self.realizations)

    def tensor(self, p, q) -> Element:
        """p (x) q for propositions (or elements, when the model is linear)."""
        p = p.element if isinstance(p, Proposition) else p
        q = q.element if isinstance(q, Proposition) else q
        if p.algebra != self.base or q.algebra != self.base:
            raise UsageError("tensor arguments must belong to the model's base algebra")
        left = [r.matrix(x, self.tol) for r, x in zip(self.realizations, p.parts)]
        right = [r.matrix(x, self.tol) for r, x in zip(self.realizations, q.parts)]
        parts = []
        for (i, j), f in zip(self.pairs, self.target.factors):
            block = np.kron(left[i], right[j])
            if f.scalar is ScalarKind.REAL:
                parts.append(block.real[..., None])
            else:
                parts.append(_from_complex(block))
        return Element(self.target, parts, check=False)

    def tensor_prop(self, p: Proposition, q: Proposition) -> Proposition:
        return certify(self.tensor(p, q), 10 * self.tol)


def _build(base: AlgebraDescriptor, kind: str, tol: float) -> TensorModel:
    reals = tuple(_realize(f, kind) for f in base.factors)
    scalar = ScalarKind.REAL if kind == REAL_KRON else ScalarKind.COMPLEX
    pairs, factors = [], []
    for i, ri in enumerate(reals):
        for j, rj in enumerate(reals):
            pairs.append((i, j))
            factors.append(Matrix(ri.size * rj.size, scalar))
    notes = []
    for r in reals:
        if isinstance(r.factor, Spin):
            notes.append(
                f"{r.factor.text()} is routed through the H(2,C) logic; its tensor map "
                "is one of many (discontinuous logic automorphisms give others)")
            if not r.linear:
                notes.append(
                    f"{r.factor.text()} uses a non-linear odd sphere map, so the "
                    "model is defined on propositions only")
    return TensorModel(kind, base, AlgebraDescriptor(tuple(factors)), reals,
                       tuple(pairs), tuple(notes), tol)


def tensor_construct(algebra: AlgebraDescriptor, tol: float = DEFAULT_TOL) -> TensorModel:
    """The complex Kronecker model A x A -> A^2.

    Raises InfeasibleError when A has a real, quaternionic or octonionic
    matrix factor of rank >= 3.
    """
    return _build(algebra, COMPLEX_KRON, tol)


def real_counterexample_model(k: int, tol: float = DEFAULT_TOL) -> TensorModel:
    """Kronecker products of real symmetric k x k matrices."""
    if k < 2:
        raise UsageError("the real counterexample needs k >= 2")
    return _build(AlgebraDescriptor((Matrix(k, ScalarKind.REAL),)), REAL_KRON, tol)


def span_rank(vectors: np.ndarray, threshold: float = SPAN_THRESHOLD) -> int:
    """Numerical rank: singular values above ``threshold`` times the largest."""
    if len(vectors) == 0:
        return 0
    s = np.linalg.svd(np.asarray(vectors), compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > threshold * s[0]))


# -- axiom verification ------------------------------------------------------

@dataclass
class AxiomCheck:
    name: str
    passed: bool
    checked: int
    residual: float
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "residual": self.residual, "detail": self.detail}


@dataclass
class AxiomReport:
    model: str
    base: str
    target: str
    seed: int
    tol: float
    samples: int
    checks: dict
    notes: tuple = ()

    AXIOMS = ("C1", "C2", "C3", "C4", "C5")

    @property
    def axioms_passed(self) -> bool:
        return all(self.checks[a].passed for a in self.AXIOMS)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "model": self.model, "base": self.base, "target": self.target,
            "seed": self.seed, "tol": self.tol, "samples": self.samples,
            "axioms_passed": self.axioms_passed,
            "checks": {k: c.to_dict() for k, c in self.checks.items()},
            "notes": list(self.notes),
        }


def _sweep(fn: Callable, items: list, threads: int) -> list:
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _disjoint_subsets(n: int, rng) -> tuple:
    """Two disjoint non-empty index sets (needs n >= 2)."""
    labels = rng.integers(0, 3, size=n)
    order = rng.permutation(n)
    labels[order[0]], labels[order[1]] = 0, 1
    return np.flatnonzero(labels == 0), np.flatnonzero(labels == 1)


def _nested_subsets(n: int, rng) -> tuple:
    """Index sets small <= big."""
    big = np.flatnonzero(rng.random(n) < 0.7)
    small = big[rng.random(len(big)) < 0.5]
    return small, big


def verify_axioms(model: TensorModel, samples: int = DEFAULT_SAMPLES,
                  seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL,
                  threads: int = 1) -> AxiomReport:
    """Check C1-C5, preservation of compatibility and order, and the product embeddings.

    C5 is tested for linear states: two linear states agreeing on every
    p (x) q agree everywhere exactly when the p (x) q span the target, so the
    verdict compares the numerical rank of the products with dim(A^2).
    """
    base, target = model.base, model.target
    rng = np.random.default_rng(seed)
    frames = [random_frame(base, rng, tol) for _ in range(samples)]
    partners = [random_frame(base, rng, tol) for _ in range(samples)]
    checks = {}
    tensor = model.tensor
    mul = jordan_product

    def check(name, residuals, passed, detail=None):
        res = float(max(residuals, default=0.0))
        checks[name] = AxiomCheck(name, bool(passed), len(residuals), res, detail or {})

    one, nil = base.identity(), base.zero()
    c1 = (tensor(one, one) - target.identity()).norm()
    check("C1", [c1], c1 <= tol)

    # images are propositions
    def image_idempotent(i):
        p = frame_sum(frames[i], np.flatnonzero(rng_masks[i]))
        q = frame_sum(partners[i], np.flatnonzero(rng_masks2[i]))
        t = tensor(p, q)
        return (mul(t, t) - t).norm()

    rng_masks = [rng.random(base.rank) < 0.5 for _ in range(samples)]
    rng_masks2 = [rng.random(base.rank) < 0.5 for _ in range(samples)]
    idem = _sweep(image_idempotent, list(range(samples)), threads)
    check("images_idempotent", idem, max(idem) <= 10 * tol)

    # C2
    def c2_case(i):
        p = frame_sum(frames[i], [int(rng_pick[i][0])])
        q = frame_sum(partners[i], [int(rng_pick[i][1])])
        return (tensor(p, q).norm(), tensor(nil, q).norm(), tensor(p, nil).norm())

    rng_pick = [rng.integers(0, base.rank, size=2) for _ in range(samples)]
    c2 = _sweep(c2_case, list(range(samples)), threads)
    smallest = min(v[0] for v in c2)
    largest_zero = max(max(v[1], v[2]) for v in c2)
    check("C2", [largest_zero], smallest > tol and largest_zero <= tol,
          {"min_nonzero_norm": smallest, "max_zero_norm": largest_zero})

    # C3 and C4 on orthogonal pairs in either slot
    splits = [_disjoint_subsets(base.rank, rng) if base.rank >= 2 else None
              for _ in range(samples)]
    arbitrary = [(rng.random(base.rank) < 0.5, rng.random(base.rank) < 0.5)
                 for _ in range(samples)]

    def c34_case(i):
        if splits[i] is None:
            return None
        a, b = splits[i]
        p1, q1 = frame_sum(frames[i], a), frame_sum(frames[i], b)
        ma, mb = arbitrary[i]
        p2 = frame_sum(partners[i], np.flatnonzero(ma))
        q2 = frame_sum(partners[i], np.flatnonzero(mb))
        s1 = Proposition(p1.element + q1.element)
        c3 = max(mul(tensor(p1, p2), tensor(q1, q2)).norm(),
                 mul(tensor(p2, p1), tensor(q2, q1)).norm())
        c4 = max((tensor(s1, p2) - tensor(p1, p2) - tensor(q1, p2)).norm(),
                 (tensor(p2, s1) - tensor(p2, p1) - tensor(p2, q1)).norm())
        return c3, c4

    c34 = [v for v in _sweep(c34_case, list(range(samples)), threads) if v is not None]
    c3 = [v[0] for v in c34]
    c4 = [v[1] for v in c34]
    check("C3", c3, max(c3, default=0.0) <= tol)
    check("C4", c4, max(c4, default=0.0) <= tol)

    # C5: span of product propositions
    props = proposition_basis(base)
    for fr in frames[: min(samples, 4)]:
        props.extend(fr)
    for i in range(min(samples, 8)):
        props.append(frame_sum(partners[i], np.flatnonzero(rng_masks[i])))
    images = np.array([tensor(p, q).vec() for p in props for q in props])
    rank = span_rank(images)
    check("C5", [float(target.dim - rank)], rank == target.dim,
          {"span_rank": rank, "target_dim": target.dim,
           "products": len(images), "threshold": SPAN_THRESHOLD})

    # compatible pairs map to compatible pairs
    subset_masks = [rng.random((4, base.rank)) < 0.5 for _ in range(samples)]

    def compat_case(i):
        m = subset_masks[i]
        fr1, fr2 = frames[i], partners[i]
        p1, q1 = frame_sum(fr1, np.flatnonzero(m[0])), frame_sum(fr1, np.flatnonzero(m[1]))
        p2, q2 = frame_sum(fr2, np.flatnonzero(m[2])), frame_sum(fr2, np.flatnonzero(m[3]))
        return operator_commute(tensor(p1, p2), tensor(q1, q2), tol)

    compat = _sweep(compat_case, list(range(samples)), threads)
    check("compatible_pairs_preserved", [float(not ok) for ok in compat], all(compat),
          {"failures": int(sum(not ok for ok in compat))})

    nested = [_nested_subsets(base.rank, rng) for _ in range(samples)]

    def order_case(i):
        small, big = nested[i]
        fr1, fr2 = frames[i], partners[i]
        q1, p1 = frame_sum(fr1, small), frame_sum(fr1, big)
        q2, p2 = frame_sum(fr2, small), frame_sum(fr2, big)
        t_small, t_big = tensor(q1, q2), tensor(p1, p2)
        return (mul(t_small, t_big) - t_small).norm()

    order = _sweep(order_case, list(range(samples)), threads)
    check("order_preserved", order, max(order) <= tol)

    def embed_case(i):
        p = frame_sum(frames[i], np.flatnonzero(rng_masks[i]))
        q = frame_sum(partners[i], np.flatnonzero(rng_masks2[i]))
        return operator_commute(tensor(p, one), tensor(one, q), tol)

    emb = _sweep(embed_case, list(range(samples)), threads)
    check("embeddings_compatible", [float(not ok) for ok in emb], all(emb),
          {"failures": int(sum(not ok for ok in emb))})

    return AxiomReport(model.kind, base.text(), target.text(), seed, tol, samples,
                       checks, model.notes)


# -- dimension counts and product states ------------------------------------

@dataclass
class DimensionCountReport:
    base: str
    target: str
    n_base: int
    k_base: int
    n_target: int
    k_target: int
    basis_image_rank: int
    frame_images_minimal: int
    frame_images_sum_residual: float
    applicable: bool

    @property
    def n_ok(self) -> bool:
        return self.n_target == self.n_base ** 2

    @property
    def k_ok(self) -> bool:
        return self.k_target == self.k_base ** 2

    @property
    def basis_ok(self) -> bool:
        return self.basis_image_rank == self.n_base ** 2

    @property
    def passed(self) -> bool:
        return self.n_ok and self.k_ok and self.basis_ok

    def to_dict(self) -> dict:
        return {
            "base": self.base, "target": self.target,
            "n_base": self.n_base, "k_base": self.k_base,
            "n_target": self.n_target, "k_target": self.k_target,
            "n_check": self.n_ok, "k_check": self.k_ok,
            "basis_image_rank": self.basis_image_rank, "basis_check": self.basis_ok,
            "frame_images_minimal": self.frame_images_minimal,
            "frame_images_sum_residual": self.frame_images_sum_residual,
            "applicable": self.applicable, "passed": self.passed,
        }


def check_dimension_counts(model: TensorModel, seed: int = DEFAULT_SEED,
                           tol: float = DEFAULT_TOL) -> DimensionCountReport:
    """n_{A^2} = n_A^2, k_{A^2} = k_A^2, and q_i (x) q_j independent."""
    base, target = model.base, model.target
    basis = proposition_basis(base)
    images = np.array([model.tensor(p, q).vec() for p in basis for q in basis])
    rng = np.random.default_rng(seed)
    frame = random_frame(base, rng, tol)
    total = target.zero()
    minimal = 0
    for p in frame:
        for q in frame:
            t = model.tensor_prop(p, q)
            total = total + t.element
            minimal += is_minimal(t, 10 * tol)
    applicable = all(not isinstance(f, Spin) or f.n == 3 for f in base.factors)
    return DimensionCountReport(base.text(), target.text(), base.dim, base.rank,
                        target.dim, target.rank, span_rank(images), minimal,
                        (total - target.identity()).norm(), applicable)


@dataclass
class ProductStateReport:
    samples: int
    seed: int
    product_rule_max_error: float
    sandwich_max_residual: float
    minimality_checked: int
    minimality_failures: int
    orthogonal_images: int
    orthogonality_transfer_failures: int

    @property
    def passed(self) -> bool:
        return (self.product_rule_max_error <= 1e-9 and self.sandwich_max_residual <= 1e-9
                and self.minimality_failures == 0
                and self.orthogonality_transfer_failures == 0)

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def check_product_states(model: TensorModel, samples: int = 500, seed: int = DEFAULT_SEED,
                         tol: float = DEFAULT_TOL,
                         minimality_samples: int = 100) -> ProductStateReport:
    """Product rule for pure states, minimality of p1 (x) p2, orthogonality transfer.

    The product-state value on the target is evaluated independently by the
    sandwich {p1 (x) p2, q1 (x) q2, p1 (x) p2} in A^2 and compared with the
    product of the two single-system values.
    """
    base = model.base
    rng = np.random.default_rng(seed)
    worst_rule = worst_sandwich = 0.0
    min_checked = min_fail = orth_images = orth_fail = 0
    for i in range(samples):
        f1, f2 = random_frame(base, rng, tol), random_frame(base, rng, tol)
        a, b = int(rng.integers(base.rank)), int(rng.integers(base.rank))
        p1, p2 = f1[a], f2[b]
        if i % 4 == 0:
            # q1 orthogonal to p1: a sub-sum of the rest of p1's frame
            rest = [j for j in range(base.rank) if j != a]
            q1 = frame_sum(f1, [j for j in rest if rng.random() < 0.5])
        else:
            q1 = frame_sum(random_frame(base, rng, tol),
                           np.flatnonzero(rng.random(base.rank) < 0.5))
        q2 = frame_sum(random_frame(base, rng, tol),
                       np.flatnonzero(rng.random(base.rank) < 0.5))
        pp = model.tensor_prop(p1, p2)
        qq = model.tensor(q1, q2)
        r1, r2 = pure_value(p1, q1), pure_value(p2, q2)
        sandwich = triple_product(pp.element, qq, pp.element)
        value = float(sandwich.vec() @ pp.vec()) / float(pp.vec() @ pp.vec())
        worst_rule = max(worst_rule, abs(value - r1 * r2))
        worst_sandwich = max(worst_sandwich, (sandwich - r1 * r2 * pp.element).norm())
        if i < minimality_samples:
            min_checked += 1
            min_fail += not is_minimal(pp, 10 * tol)
        if jordan_product(pp.element, qq).norm() <= tol:
            orth_images += 1
            if not (orthogonal(p1, q1, tol) or orthogonal(p2, q2, tol)):
                orth_fail += 1
    return ProductStateReport(samples, seed, worst_rule, worst_sandwich, min_checked,
                          min_fail, orth_images, orth_fail)


# -- local tomography feasibility --------------------------------------------

@dataclass
class FactorVerdict:
    factor: str
    kind: str
    n: int
    k: int
    feasible: bool
    reason: str
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {"factor": self.factor, "kind": self.kind, "n": self.n, "k": self.k,
             "feasible": self.feasible, "reason": self.reason}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class LTReport:
    algebra: str
    feasible: bool
    factors: list
    caveats: list

    @property
    def verdict(self) -> str:
        return "feasible" if self.feasible else "infeasible"

    def to_dict(self) -> dict:
        return {"algebra": self.algebra, "verdict": self.verdict,
                "factors": [f.to_dict() for f in self.factors],
                "caveats": list(self.caveats)}


def dimension_witness(rank: int, dim: int) -> dict:
    """Required size of A^2 against the simple matrix algebras of rank k^2."""
    r = rank * rank
    candidates = {
        f"H({r},R)": r * (r + 1) // 2,
        f"H({r},C)": r * r,
        f"H({r},H)": r * (2 * r - 1),
    }
    required = dim * dim
    return {
        "rank_required": r,
        "dimension_required": required,
        "candidates": candidates,
        "match": any(v == required for v in candidates.values()),
    }


def lt_feasible(algebra: AlgebraDescriptor) -> LTReport:
    """Decide local tomography factor by factor.

    A factor is feasible when it is the real line, a spin factor or a complex
    matrix algebra.  Real and quaternionic matrix algebras of rank >= 3 and the
    Albert algebra are infeasible: a composite would be simple of rank k^2 and
    dimension n_A^2, and no simple algebra of that rank has that dimension.
    """
    verdicts, caveats = [], []
    for f in algebra.canonical().factors:
        if isinstance(f, RealLine):
            verdicts.append(FactorVerdict(f.text(), "real_line", 1, 1, True,
                                          "one-dimensional; composite R"))
        elif isinstance(f, Spin):
            verdicts.append(FactorVerdict(
                f.text(), "spin", f.dim, 2, True,
                "logic isomorphic to that of H(2,C); composite H(4,C)"))
            caveats.append(
                f"{f.text()}: the tensor map is not unique; discontinuous logic "
                "automorphisms generate many others")
        elif f.scalar is ScalarKind.COMPLEX:
            verdicts.append(FactorVerdict(
                f.text(), "complex_matrix", f.dim, f.k, True,
                f"self-adjoint part of a C*-algebra; composite H({f.k ** 2},C)"))
        else:
            w = dimension_witness(f.k, f.dim)
            assert not w["match"]
            verdicts.append(FactorVerdict(
                f.text(), f"{f.scalar.name.lower()}_matrix", f.dim, f.k, False,
                f"n_A^2 = {w['dimension_required']} is not among "
                f"{sorted(w['candidates'].values())}", w))
    feasible = all(v.feasible for v in verdicts)
    return LTReport(algebra.canonical().text(), feasible, verdicts, caveats)
