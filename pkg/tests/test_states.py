import numpy as np
import pytest

from conftest import complex_part, h2c_element
from ejalab.errors import NumericError, UsageError
from ejalab.jordan import hermitian, spin, square, triple_product
from ejalab.logic import (certify, complement, frame_sum, leq, one, orthogonal,
                          random_frame, random_minimal, random_proposition)
from ejalab.scalars import ScalarKind
from ejalab.states import (LinearState, conditioned_state, maximally_mixed, pure_state,
                           pure_value, state_eval, zero_separation_check)

ALGEBRAS = [hermitian(3, ScalarKind.REAL), hermitian(3, ScalarKind.COMPLEX),
            hermitian(3, ScalarKind.OCTONION), spin(5)]


def random_state(alg, rng):
    a = alg.random_element(rng)
    rho = square(a)
    return LinearState(rho / rho.trace())


def test_pure_value_examples():
    p = certify(h2c_element(np.diag([1.0, 0.0])))
    q = certify(h2c_element(np.full((2, 2), 0.5)))
    assert pure_value(p, p) == pytest.approx(1.0)
    assert pure_value(p, complement(p)) == pytest.approx(0.0, abs=1e-15)
    r, res = pure_value(p, q, with_residual=True)
    # the sandwich p q p = <0|q|0> p
    assert r == pytest.approx(0.5) and res <= 1e-15


def test_pure_value_rejects_non_minimal():
    a = hermitian(3, ScalarKind.COMPLEX)
    with pytest.raises(UsageError):
        pure_value(one(a), a.identity())
    with pytest.raises(UsageError):
        pure_state(one(a))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.text())
def test_pure_state_properties(alg, rng):
    for _ in range(20):
        p = random_minimal(alg, rng)
        atom = pure_state(p)
        assert atom(p) == pytest.approx(1.0, abs=1e-12)
        b = square(alg.random_element(rng))
        assert atom(b) >= -1e-9
        q = random_proposition(alg, rng)
        value = atom(q)
        assert (abs(value - 1) <= 1e-9) == leq(p, q)
        assert (abs(value) <= 1e-9) == orthogonal(p, q)
        _, res = pure_value(p, b, with_residual=True)
        assert res <= 1e-9 * max(1.0, b.norm())
        linear = atom.as_linear_state()
        assert linear(b) == pytest.approx(atom(b), abs=1e-9)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.text())
def test_linear_state_is_additive(alg, rng):
    for _ in range(20):
        mu = random_state(alg, rng)
        assert mu(alg.identity()) == pytest.approx(1.0, abs=1e-12)
        frame = random_frame(alg, rng)
        cut = int(rng.integers(1, alg.rank))
        p, q = frame_sum(frame, range(cut)), frame_sum(frame, range(cut, alg.rank))
        assert abs(mu(p.element + q.element) - mu(p) - mu(q)) <= 1e-10
        assert mu(square(alg.random_element(rng))) >= -1e-9
        assert state_eval(mu, p) == mu(p)


def test_linear_state_validation():
    a = hermitian(3, ScalarKind.COMPLEX)
    with pytest.raises(UsageError):
        LinearState(a.identity())
    with pytest.raises(UsageError):
        LinearState(a.from_vec(np.array([2.0, -1.0, 0, 0, 0, 0, 0, 0, 0])))


def test_conditioning_mixed_state_gives_pure_state():
    mu = maximally_mixed(h2c_element(np.eye(2)).algebra)
    p = certify(h2c_element(np.diag([1.0, 0.0])))
    nu = conditioned_state(mu, p)
    assert nu.density.allclose(p.element, 1e-12)
    q = certify(h2c_element(np.full((2, 2), 0.5)))
    assert nu(q) == pytest.approx(pure_value(p, q))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.text())
def test_conditioning_properties(alg, rng):
    for _ in range(10):
        mu = random_state(alg, rng)
        p = random_proposition(alg, rng, nonzero=True)
        nu = conditioned_state(mu, p)
        assert nu(p) == pytest.approx(1.0, abs=1e-9)
        x = alg.random_element(rng)
        expected = mu(triple_product(p.element, x, p.element)) / mu(p)
        assert nu(x) == pytest.approx(expected, abs=1e-9)
        # a state with value 1 on p is unchanged by the sandwich
        assert nu(triple_product(p.element, x, p.element)) == pytest.approx(nu(x), abs=1e-9)
        same = conditioned_state(mu, one(alg))
        assert same.density.allclose(mu.density, 1e-12)


def test_conditioning_on_null_proposition_fails():
    p = certify(h2c_element(np.diag([1.0, 0.0])))
    mu = LinearState(complement(p).element)
    with pytest.raises(NumericError):
        conditioned_state(mu, p)


def test_zero_separation(rng):
    a = hermitian(3, ScalarKind.COMPLEX)
    assert zero_separation_check(a.zero())
    q = random_minimal(a, rng)
    x = q.element - complement(q).element
    assert not zero_separation_check(x)
    assert pure_value(q, x) == pytest.approx(1.0)
    for alg in ALGEBRAS:
        y = alg.random_element(rng)
        assert not zero_separation_check(y / y.norm())
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    v /= np.linalg.norm(v)
    extra = [certify(a.from_vec(a.factors[0].vec(complex_part(np.outer(v, v.conj())))))]
    assert zero_separation_check(a.zero(), extra)
