"""Exact dense linear algebra and symmetric tensors."""

import random
from fractions import Fraction

import pytest

from g2forge.linalg import InconsistentSystemError, Matrix, SymTensor, \
    inverse, rank, solve_exact, sym_inner


def _random_matrix(rng, rows, cols, bound=6):
    return Matrix.from_rows([[Fraction(rng.randint(-bound, bound))
                              for _ in range(cols)] for _ in range(rows)])


def test_rank_examples():
    assert rank(Matrix.identity(5)) == 5
    assert rank(Matrix.zeros(3, 4)) == 0
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1


def test_rank_product_bound_random():
    rng = random.Random(5)
    for _ in range(50):
        A = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        B = _random_matrix(rng, A.cols, rng.randint(1, 5))
        assert rank(A * B) <= min(rank(A), rank(B))


def test_solve_exact_reproduces_solution():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randint(1, 6)
        A = _random_matrix(rng, n + rng.randint(0, 2), n)
        x = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
        b = A.apply(x)
        sol, kdim = solve_exact(A, b)
        assert A.apply(sol) == b
        if kdim == 0:
            assert sol == x


def test_solve_exact_detects_inconsistency():
    A = Matrix.from_rows([[1, 0], [1, 0]])
    with pytest.raises(InconsistentSystemError):
        solve_exact(A, [1, 2])


def test_inverse_random():
    rng = random.Random(23)
    done = 0
    while done < 25:
        n = rng.randint(1, 5)
        A = _random_matrix(rng, n, n)
        if rank(A) < n:
            continue
        done += 1
        Ainv = inverse(A)
        assert A * Ainv == Matrix.identity(n)


def test_symtensor_construction_checks():
    with pytest.raises(ValueError):
        SymTensor([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        SymTensor([[1, 0], [0, 1]], traceless=True)
    SymTensor([[1, 0], [0, -1]], traceless=True)


def test_sym_outer_and_inner():
    v = [Fraction(1), Fraction(2), Fraction(0)]
    w = [Fraction(0), Fraction(1), Fraction(3)]
    S = SymTensor.sym_outer(v, w)
    assert S.at(0, 1) == Fraction(1, 2)
    assert S.at(1, 1) == 2
    # tr((v.w)(a.b)) expands by polarization
    T = SymTensor.sym_outer(v, v)
    dot = sum(x * y for x, y in zip(v, w))
    vv = sum(x * x for x in v)
    assert sym_inner(S, T) == dot * vv


def test_traceless_part():
    S = SymTensor.diag([3, 1, 2])
    T = S.traceless_part()
    assert T.trace() == 0
    assert T.at(0, 0) == 1


def test_sym_inner_symmetric_random():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 5)
        A = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i):
                A[i][j] = A[j][i]
        B = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i):
                B[i][j] = B[j][i]
        S, T = SymTensor(A), SymTensor(B)
        assert sym_inner(S, T) == sym_inner(T, S)
        assert sym_inner(S, T) == (S.to_matrix() * T.to_matrix()).trace()
