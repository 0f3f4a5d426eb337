"""Linear states, represented by density elements of the algebra."""

from __future__ import annotations

from dataclasses import dataclass

from .defaults import DEFAULT_SEED, DEFAULT_TOL
from .errors import NumericError, UsageError
from .jordan import AlgebraDescriptor, Element, spectral_decompose, trace_form, triple_product
from .logic import Proposition, is_minimal


@dataclass(frozen=True, eq=False)
class LinearState:
    """mu(a) = <rho, a> with rho >= 0 and <rho, I> = 1."""

    density: Element
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        rho = self.density
        total = trace_form(rho, rho.algebra.identity())
        if abs(total - 1.0) > 1e3 * self.tol:
            raise UsageError(f"density has trace {total:.12g}, expected 1")
        low = min(spectral_decompose(rho, self.tol).eigenvalues)
        if low < -1e3 * self.tol:
            raise UsageError(f"density is not positive (eigenvalue {low:.3e})")

    @property
    def algebra(self) -> AlgebraDescriptor:
        return self.density.algebra

    def __call__(self, a) -> float:
        if isinstance(a, Proposition):
            a = a.element
        return trace_form(self.density, a)


def state_eval(mu: LinearState, a) -> float:
    return mu(a)


def maximally_mixed(algebra: AlgebraDescriptor) -> LinearState:
    return LinearState(algebra.identity() / algebra.rank)


def _require_minimal(p: Proposition) -> None:
    if not is_minimal(p):
        raise UsageError("the pure state of a proposition needs a minimal proposition")


def pure_value(p: Proposition, a, with_residual: bool = False):
    """The number r with {p, a, p} = r p, for minimal p.

    Computed as <{p,a,p}, p> / <p, p>; with ``with_residual`` the distance
    ||{p,a,p} - r p|| is returned as well.
    """
    _require_minimal(p)
    if isinstance(a, Proposition):
        a = a.element
    sandwich = triple_product(p.element, a, p.element)
    r = trace_form(sandwich, p.element) / trace_form(p.element, p.element)
    if with_residual:
        return r, (sandwich - r * p.element).norm()
    return r


@dataclass(frozen=True, eq=False)
class PureStateAtom:
    p: Proposition
    normalizer: float

    def __call__(self, a) -> float:
        return pure_value(self.p, a)

    def as_linear_state(self) -> LinearState:
        return LinearState(self.p.element / self.normalizer, self.p.tol)


def pure_state(p: Proposition) -> PureStateAtom:
    _require_minimal(p)
    return PureStateAtom(p, trace_form(p.element, p.element))


def conditioned_state(mu: LinearState, p: Proposition) -> LinearState:
    """nu(x) = mu({p, x, p}) / mu(p)."""
    weight = mu(p)
    if weight <= mu.tol:
        raise NumericError(f"cannot condition on a proposition of weight {weight:.3e}")
    # b -> {p, b, p} is self-adjoint for the trace form.
    rho = triple_product(p.element, mu.density, p.element) / weight
    return LinearState(rho, mu.tol)


def zero_separation_check(a: Element, sample=(), tol: float = DEFAULT_TOL,
                          seed: int = DEFAULT_SEED) -> bool:
    """True iff every minimal-proposition value of ``a`` vanishes, i.e. a = 0.

    The values are taken on the spectral frame of ``a`` itself (where they are
    its eigenvalues) and on any extra minimal propositions in ``sample``.
    """
    frame = [Proposition(q, tol) for q in spectral_decompose(a, tol, seed).idempotents]
    scale = max(1.0, a.norm())
    for p in list(frame) + list(sample):
        if abs(pure_value(p, a)) > tol * scale:
            return False
    return True
