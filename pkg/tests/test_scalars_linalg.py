from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from exkup.errors import InputError
from exkup.linalg import Mat, inverse, nullspace, rref, solve
from exkup.scalars import QQ, Fp, PrimeField, field_from_json, format_rational, parse_rational

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@given(fractions)
def test_rational_text_round_trip(x):
    s = format_rational(x)
    assert parse_rational(s) == x
    assert "." not in s


def test_canonical_forms():
    assert format_rational(Fraction(4, -6)) == "-2/3"
    assert format_rational(Fraction(8, 4)) == "2"
    assert parse_rational("6/4") == Fraction(3, 2)
    assert isinstance(parse_rational("4/2"), int)
    with pytest.raises(InputError):
        parse_rational("1/0")
    with pytest.raises(InputError):
        parse_rational("abc")


@given(st.integers(-100, 100), st.integers(-100, 100).filter(lambda x: x % 7 != 0))
def test_prime_field_arithmetic(a, b):
    F = PrimeField(7)
    x, y = F(a), F(b)
    assert (x / y) * y == x
    assert x - x == 0 and not (x - x)
    assert (x + y).v == (a + b) % 7
    assert x * 3 == F(3 * a)


def test_prime_field_fractions_and_errors():
    F = PrimeField(5)
    assert F(Fraction(1, 2)) * 2 == 1
    assert F("3/2") == F(4)
    with pytest.raises(ZeroDivisionError):
        F(0) / F(0)
    with pytest.raises(InputError):
        PrimeField(9)
    with pytest.raises(ValueError):
        Fp(1, 5) + Fp(1, 7)


def test_field_json():
    assert field_from_json(None) == QQ
    assert field_from_json({"kind": "prime", "p": 3}) == PrimeField(3)
    with pytest.raises(InputError):
        field_from_json({"kind": "complex"})


small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_n))
    return [[draw(small) for _ in range(m)] for _ in range(n)]


def _rows(dense):
    return [{j: v for j, v in enumerate(r) if v} for r in dense]


@given(matrices())
def test_nullspace_against_sympy(dense):
    ncols = len(dense[0])
    basis = nullspace(_rows(dense), ncols)
    M = sympy.Matrix(dense)
    assert len(basis) == len(M.nullspace())
    for v in basis:
        assert all(sum(row[j] * v.get(j, 0) for j in range(ncols)) == 0 for row in dense)


@given(matrices())
def test_rref_rank_against_sympy(dense):
    red, piv = rref(_rows(dense), len(dense[0]))
    assert len(piv) == sympy.Matrix(dense).rank()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_agrees_with_sympy(dense):
    n = len(dense)
    inv = inverse(Mat.from_dense(dense))
    M = sympy.Matrix(dense)
    if M.det() == 0:
        assert inv is None
    else:
        assert inv.to_dense() == [[Fraction(int(x.p), int(x.q)) for x in row] for row in M.inv().tolist()]
        assert Mat.from_dense(dense) @ inv == Mat.identity(n)


def test_solve_inconsistent_and_prime_field():
    assert solve([{0: 1}, {0: 1}], [1, 2], 1) is None
    F = PrimeField(3)
    sol = solve([{0: F(2)}], [F(1)], 1, F)
    assert sol[0] * 2 == 1


@st.composite
def compatible_pairs(draw):
    n, k, m = (draw(st.integers(1, 4)) for _ in range(3))
    a = [[draw(small) for _ in range(k)] for _ in range(n)]
    b = [[draw(small) for _ in range(m)] for _ in range(k)]
    return a, b


@given(compatible_pairs())
def test_mat_product_against_sympy(pair):
    a, b = pair
    got = (Mat.from_dense(a) @ Mat.from_dense(b)).to_dense()
    assert got == (sympy.Matrix(a) * sympy.Matrix(b)).tolist()
