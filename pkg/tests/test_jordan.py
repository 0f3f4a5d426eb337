import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import complex_matrix, complex_part, random_hermitian
from ejalab.errors import UsageError
from ejalab.jordan import (Element, Matrix, Spin,
                           center_and_summands, direct_sum, hermitian, hermitian_2x2_model,
                           is_positive, jordan_product, mult_operator, operator_commute,
                           real_line, spectral_decompose, spin, square, trace_form,
                           triple_product)
from ejalab.scalars import ScalarKind

R, C, H, O = ScalarKind.REAL, ScalarKind.COMPLEX, ScalarKind.QUATERNION, ScalarKind.OCTONION

ALGEBRAS = {
    "H3R": hermitian(3, R), "H3C": hermitian(3, C), "H3H": hermitian(3, H),
    "H3O": hermitian(3, O), "spin2": spin(2), "spin5": spin(5), "R": real_line(),
    "H2C-model": hermitian_2x2_model(C), "H2O-model": hermitian_2x2_model(O),
    "sum": direct_sum(hermitian(3, C), spin(4), real_line()),
}

# quaternion units as 2 x 2 complex matrices (i j = k)
_QREP = np.array([np.eye(2), [[1j, 0], [0, -1j]], [[0, 1], [-1, 0]], [[0, 1j], [1j, 0]]])


def quaternion_complex(part):
    """2k x 2k complex matrix of a k x k quaternionic component."""
    k = part.shape[0]
    blocks = np.einsum("ija,abc->ibjc", part, _QREP)
    return blocks.reshape(2 * k, 2 * k)


@pytest.fixture(params=sorted(ALGEBRAS))
def alg(request):
    return ALGEBRAS[request.param]


def test_dimension_and_rank_formulas():
    for k in range(3, 7):
        assert hermitian(k, R).dim == k * (k + 1) // 2
        assert hermitian(k, C).dim == k * k
        assert hermitian(k, H).dim == k * (2 * k - 1)
    assert hermitian(3, O).dim == 27 and hermitian(3, O).rank == 3
    assert spin(7).dim == 8 and spin(7).rank == 2
    a = direct_sum(hermitian(3, C), spin(4), real_line())
    assert (a.dim, a.rank) == (15, 6)


def test_small_matrix_factors_are_canonicalized():
    for scalar, n in [(R, 2), (C, 3), (H, 5), (O, 9)]:
        assert hermitian(2, scalar) == spin(n)
        assert hermitian(1, scalar) == real_line()
        assert hermitian(2, scalar).dim == Matrix(2, scalar).dim
    with pytest.raises(UsageError):
        hermitian(4, O)
    with pytest.raises(UsageError):
        Spin(1)
    assert not hermitian_2x2_model(C).is_canonical
    assert hermitian_2x2_model(C).canonical() == spin(3)


def test_element_validation():
    a = hermitian(3, C)
    bad = complex_part(np.array([[1, 1j, 0], [1j, 0, 0], [0, 0, 0]]))
    with pytest.raises(UsageError):
        Element(a, [bad])
    with pytest.raises(UsageError):
        Element(a, [np.zeros((2, 2, 2))])
    with pytest.raises(UsageError):
        jordan_product(a.identity(), spin(3).identity())


def test_complex_product_matches_numpy(rng):
    a = hermitian(4, C)
    for _ in range(50):
        x, y = random_hermitian(rng, 4), random_hermitian(rng, 4)
        got = jordan_product(Element(a, [complex_part(x)]), Element(a, [complex_part(y)]))
        assert np.allclose(complex_matrix(got.parts[0]), (x @ y + y @ x) / 2, atol=1e-13)


def test_quaternion_product_matches_complex_representation(rng):
    a = hermitian(3, H)
    for _ in range(50):
        x, y = a.random_element(rng), a.random_element(rng)
        X, Y = quaternion_complex(x.parts[0]), quaternion_complex(y.parts[0])
        got = quaternion_complex(jordan_product(x, y).parts[0])
        assert np.allclose(got, (X @ Y + Y @ X) / 2, atol=1e-13)


def test_spin_product_rule(rng):
    a = spin(4)
    for _ in range(20):
        x, y = rng.standard_normal(5), rng.standard_normal(5)
        got = jordan_product(Element(a, [x]), Element(a, [y])).parts[0]
        expected = np.concatenate([[x[0] * y[0] + x[1:] @ y[1:]], x[0] * y[1:] + y[0] * x[1:]])
        assert np.allclose(got, expected, atol=1e-14)
    one = a.identity()
    z = Element(a, [rng.standard_normal(5)])
    assert jordan_product(one, z).allclose(z, 1e-15)


def test_real_symmetric_example():
    a = hermitian_2x2_model(R)
    e11 = Element(a, [np.array([[1, 0], [0, 0]], float)[..., None]])
    e12 = Element(a, [np.array([[0, 1], [1, 0]], float)[..., None]])
    assert jordan_product(e11, e12).allclose(e12 / 2, 1e-15)


def test_identity_is_unit(alg, rng):
    x = alg.random_element(rng)
    assert jordan_product(alg.identity(), x).allclose(x, 1e-13)


def test_jordan_identity_and_commutativity(alg, rng):
    for _ in range(100):
        a, b = alg.random_element(rng), alg.random_element(rng)
        a2 = square(a)
        lhs = jordan_product(jordan_product(a2, b), a)
        rhs = jordan_product(a2, jordan_product(b, a))
        assert (lhs - rhs).norm() <= 1e-10 * max(1.0, a.norm() ** 3 * b.norm())
        assert (jordan_product(a, b) - jordan_product(b, a)).norm() <= 1e-12 * max(
            1.0, a.norm() * b.norm())


def test_trace_form(alg, rng):
    assert trace_form(alg.identity(), alg.identity()) == pytest.approx(alg.rank)
    for _ in range(50):
        a, b, c = (alg.random_element(rng) for _ in range(3))
        assert trace_form(a, b) == pytest.approx(trace_form(b, a), abs=1e-12)
        assert trace_form(a, a) > 0
        lhs = trace_form(jordan_product(a, b), c)
        rhs = trace_form(a, jordan_product(b, c))
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, a.norm() * b.norm() * c.norm())
        assert trace_form(a, b) == pytest.approx(jordan_product(a, b).trace(), abs=1e-10)


def test_trace_form_against_matrix_trace(rng):
    a = hermitian(3, C)
    x, y = random_hermitian(rng, 3), random_hermitian(rng, 3)
    got = trace_form(Element(a, [complex_part(x)]), Element(a, [complex_part(y)]))
    assert got == pytest.approx(np.trace(x @ y).real, abs=1e-12)
    s = spin(3)
    u, v = rng.standard_normal(4), rng.standard_normal(4)
    assert trace_form(Element(s, [u]), Element(s, [v])) == pytest.approx(2 * u @ v)


def test_triple_product(rng):
    for scalar in (R, C, H):
        a = hermitian(3, scalar)
        for _ in range(20):
            x, y, z = (a.random_element(rng) for _ in range(3))
            assert triple_product(a.identity(), y, a.identity()).allclose(y, 1e-12)
            assert triple_product(x, y, z).allclose(triple_product(z, y, x), 1e-10)
            f = a.factors[0]
            sandwich = f.matmul(f.matmul(x.parts[0], y.parts[0]), x.parts[0])
            assert np.allclose(triple_product(x, y, x).parts[0], sandwich, atol=1e-10)


def test_triple_product_sandwich_example(rng):
    a = hermitian_2x2_model(C)
    p = Element(a, [complex_part(np.diag([1.0, 0.0]))])
    m = random_hermitian(rng, 2)
    got = triple_product(p, Element(a, [complex_part(m)]), p)
    assert got.allclose(m[0, 0].real * p, 1e-13)
    q = Element(a, [complex_part(np.diag([0.0, 1.0]))])
    assert triple_product(p, q, p).norm() == 0.0


def check_spectral(a, dec, tol=1e-9):
    alg = a.algebra
    frame = dec.idempotents
    assert len(frame) == alg.rank
    assert (dec.reconstruct() - a).norm() <= 1e-8
    total = alg.zero()
    for q in frame:
        total = total + q
        assert (square(q) - q).norm() <= 1e-9
    assert (total - alg.identity()).norm() <= 1e-8
    for i in range(len(frame)):
        for j in range(i + 1, len(frame)):
            assert jordan_product(frame[i], frame[j]).norm() <= tol
    assert list(dec.eigenvalues) == sorted(dec.eigenvalues, reverse=True)


def test_spectral_decomposition_random(alg, rng):
    for _ in range(20):
        a = alg.random_element(rng)
        check_spectral(a, spectral_decompose(a))


def test_spectral_eigenvalues_match_numpy(rng):
    a = hermitian(4, C)
    for _ in range(20):
        m = random_hermitian(rng, 4)
        dec = spectral_decompose(Element(a, [complex_part(m)]))
        assert np.allclose(dec.eigenvalues, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-10)
    b = hermitian(3, H)
    for _ in range(20):
        x = b.random_element(rng)
        ev = np.sort(np.linalg.eigvalsh(quaternion_complex(x.parts[0])))[::-1]
        dec = spectral_decompose(x)
        assert np.allclose(np.repeat(dec.eigenvalues, 2), ev, atol=1e-10)


def test_spectral_repeated_eigenvalue():
    a = hermitian(3, R)
    x = Element(a, [np.diag([2.0, 2.0, 5.0])[..., None]])
    dec = spectral_decompose(x)
    assert np.allclose(dec.eigenvalues, [5, 2, 2], atol=1e-12)
    check_spectral(x, dec)


def test_spectral_identity_octonion():
    a = hermitian(3, O)
    dec = spectral_decompose(a.identity())
    assert np.allclose(dec.eigenvalues, [1, 1, 1])
    check_spectral(a.identity(), dec)


def test_spectral_spin_closed_form(rng):
    a = spin(6)
    for _ in range(20):
        v = rng.standard_normal(7)
        dec = spectral_decompose(Element(a, [v]))
        r = np.linalg.norm(v[1:])
        assert np.allclose(dec.eigenvalues, [v[0] + r, v[0] - r], atol=1e-12)
        plus = np.concatenate([[0.5], v[1:] / (2 * r)])
        assert np.allclose(dec.idempotents[0].parts[0], plus, atol=1e-12)


@pytest.mark.parametrize("name", ["H3R", "H3O", "spin5", "sum"])
def test_positivity(name, rng):
    alg = ALGEBRAS[name]
    assert not is_positive(-alg.identity())
    for _ in range(10):
        a = alg.random_element(rng)
        assert is_positive(square(a))
        assert min(spectral_decompose(square(a)).eigenvalues) >= -1e-9
        p = spectral_decompose(a).idempotents[0]
        assert is_positive(triple_product(p, square(alg.random_element(rng)), p))


def test_operator_commute_examples(rng):
    a = hermitian_2x2_model(C)
    p = Element(a, [complex_part(np.diag([1.0, 0.0]))])
    q = Element(a, [complex_part(np.full((2, 2), 0.5))])
    assert not operator_commute(p, q)
    assert operator_commute(p, a.identity() - p)
    for alg in ALGEBRAS.values():
        x = alg.random_element(rng)
        assert operator_commute(x, square(x))
        y = alg.random_element(rng)
        assert operator_commute(x, y) == operator_commute(y, x)


def test_operator_commute_matches_basis_definition(rng):
    # x o (y o z) = y o (x o z) checked directly on the basis
    a = hermitian(3, C)
    x = a.random_element(rng)
    frame = spectral_decompose(x).idempotents
    y = 2 * frame[0] - frame[1]
    z = a.random_element(rng)
    for u, v, expected in [(x, y, True), (x, z, False)]:
        worst = max((jordan_product(u, jordan_product(v, b))
                     - jordan_product(v, jordan_product(u, b))).norm() for b in a.basis())
        assert (worst <= 1e-9) == expected == operator_commute(u, v)


def test_mult_operator_is_symmetric(alg, rng):
    x = alg.random_element(rng)
    m = mult_operator(x)
    assert np.allclose(m, m.T, atol=1e-12)
    y = alg.random_element(rng)
    assert np.allclose(m @ y.vec(), jordan_product(x, y).vec(), atol=1e-12)


def test_center_simple_and_sums():
    c = center_and_summands(hermitian(3, C))
    assert c.center_dim == 1 and c.simple
    assert c.summands[0] == hermitian(3, C)
    a = direct_sum(hermitian(3, R), spin(4))
    c = center_and_summands(a)
    assert c.center_dim == 2 and not c.simple
    ids = sorted((np.round(e.vec(), 9).tolist() for e in c.central_idempotents))
    expected = sorted([a.embed(0, a.factors[0].identity()).vec().round(9).tolist(),
                       a.embed(1, a.factors[1].identity()).vec().round(9).tolist()])
    assert ids == expected
    assert sorted(s.text() for s in c.summands) == ["H(3,R)", "spin(4)"]


@given(st.lists(st.sampled_from(["R", "spin(2)", "spin(3)", "spin(5)", "H(3,R)", "H(3,C)"]),
                min_size=1, max_size=4))
def test_center_dimension_counts_factors(names):
    from ejalab.spec_text import parse_spec
    a = parse_spec(" (+) ".join(names))
    c = center_and_summands(a)
    assert c.center_dim == len(names)
    total = a.zero()
    for e in c.central_idempotents:
        total = total + e
    assert (total - a.identity()).norm() <= 1e-8
    assert sorted(s.text() for s in c.summands) == sorted(f.text() for f in a.factors)


def test_center_of_octonion_factor():
    c = center_and_summands(hermitian(3, O))
    assert c.center_dim == 1 and c.summands[0] == hermitian(3, O)


def test_spectral_records_seed(rng):
    a = hermitian(3, C).random_element(rng)
    assert spectral_decompose(a, seed=7).seed == 7
