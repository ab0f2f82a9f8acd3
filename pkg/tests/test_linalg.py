import random
from fractions import Fraction

import pytest

from indkit.linalg import (
    SingularMatrixError,
    SparseEchelon,
    charpoly,
    determinant,
    hermite_normal_form,
    identity,
    inverse,
    is_nilpotent_matrix,
    is_semisimple_matrix,
    jordan_chevalley,
    mat_mul,
    mat_sub,
    minimal_polynomial,
    nullspace,
    rank,
    solve,
    squarefree_part,
    upoly_eval_matrix,
)


def test_inverse_and_determinant():
    a = [[2, 1], [5, 3]]
    assert determinant(a) == 1
    assert mat_mul(a, inverse(a)) == identity(2)
    with pytest.raises(SingularMatrixError):
        inverse([[1, 2], [2, 4]])


def test_nullspace_and_solve():
    a = [[1, 2, 3], [2, 4, 6]]
    assert rank(a) == 1
    for v in nullspace(a):
        assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in a)
    assert solve([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None


def test_charpoly_cayley_hamilton():
    rng = random.Random(2)
    for _ in range(10):
        a = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(4)]
        assert all(v == 0 for row in upoly_eval_matrix(charpoly(a), a) for v in row)
        assert all(v == 0 for row in upoly_eval_matrix(minimal_polynomial(a), a) for v in row)


def test_squarefree_part():
    # (t - 1)^2 (t + 2)
    assert squarefree_part([2, -3, 0, 1]) == [-2, 1, 1]


def test_jordan_chevalley_block():
    a = [[1, 1], [0, 1]]
    s, n = jordan_chevalley(a)
    assert s == identity(2)
    assert n == [[0, 1], [0, 0]]


def test_jordan_chevalley_random():
    rng = random.Random(9)
    for _ in range(20):
        p = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        if determinant(p) == 0:
            continue
        j = [[2, 1, 0], [0, 2, 0], [0, 0, rng.randint(-3, 3)]]
        a = mat_mul(mat_mul(p, j), inverse(p))
        s, n = jordan_chevalley(a)
        assert mat_sub(a, s) == n
        assert mat_mul(s, n) == mat_mul(n, s)
        assert is_semisimple_matrix(s) and is_nilpotent_matrix(n)


def test_irrational_eigenvalues_stay_rational():
    s, n = jordan_chevalley([[0, 2], [1, 0]])
    assert s == [[0, 2], [1, 0]] and not any(any(r) for r in n)


def test_hermite_normal_form():
    assert hermite_normal_form([[2], [3]]) == [[1]]
    assert hermite_normal_form([[2, 0], [0, 2], [1, 1]]) == [[1, 1], [0, 2]]
    assert hermite_normal_form([[0, 0]]) == []


def test_sparse_echelon_tracks_combinations():
    ech = SparseEchelon(lambda k: k, track=True)
    assert ech.insert({"a": 1, "b": 2})
    assert ech.insert({"b": 1, "c": 1})
    assert not ech.insert({"a": 1, "b": 3, "c": 1})
    combo = ech.express({"a": 2, "b": 5, "c": 1})
    assert combo == {0: 2, 1: 1}
    assert ech.express({"d": 1}) is None
