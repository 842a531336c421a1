import random
from fractions import Fraction

import pytest

from hopfva.errors import SplitFailure
from hopfva.linalg import Matrix, Subspace, kronecker, solve, split_commutative_algebra
from hopfva.scalars import scalar_to_text, zeta

F = Fraction


def _laplace_det(rows):
    n = len(rows)
    if n == 0:
        return F(1)
    if n == 1:
        return rows[0][0]
    total = F(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _laplace_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def test_kernel_identity_is_zero():
    assert Matrix.identity(3).kernel().is_zero()


def test_kernel_one_row():
    k = Matrix.from_rows([[1, -1]]).kernel()
    assert k.basis == ((F(1), F(1)),)


def test_kernel_of_truncated_multiplication_matrix():
    # pairs over basis {1, x} ordered (1x1, 1xx, xx1, xxx); products live in
    # the scratch space {1, x, x^2}, so only x(x)1 - 1(x)x dies
    m = Matrix.from_rows([
        [1, 0, 0, 0],
        [0, 1, 1, 0],
        [0, 0, 0, 1],
    ])
    k = m.kernel()
    assert k.dim == 1
    assert k.contains([0, 1, -1, 0])


def test_kernel_vectors_annihilate():
    rng = random.Random(99)
    for _ in range(20):
        rows = [[F(rng.randint(-4, 4)) for _ in range(5)] for _ in range(3)]
        m = Matrix.from_rows(rows)
        for v in m.kernel().basis:
            assert all(c == 0 for c in m.apply(list(v)))
        assert m.rank() + m.kernel().dim == m.cols


def test_rank_is_permutation_invariant():
    rng = random.Random(4)
    for _ in range(10):
        rows = [[F(rng.randint(-3, 3)) for _ in range(4)] for _ in range(4)]
        m = Matrix.from_rows(rows)
        r = m.rank()
        perm = list(range(4))
        rng.shuffle(perm)
        shuffled = Matrix.from_rows([[rows[i][perm[j]] for j in range(4)]
                                     for i in perm])
        assert shuffled.rank() == r


def test_kernel_with_cyclotomic_entries():
    z = zeta(3)
    m = Matrix.from_rows([[z, -1]])
    k = m.kernel()
    assert k.dim == 1
    v = list(k.basis[0])
    assert z * v[0] - v[1] == 0


def test_kron_examples():
    i2 = Matrix.identity(2)
    assert kronecker(i2, i2) == Matrix.identity(4)
    swap = Matrix.from_rows([[0, 1], [1, 0]])
    got = kronecker(swap, i2)
    assert got == Matrix.from_rows([
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ])
    assert kronecker(Matrix.from_rows([[2]]), Matrix.from_rows([[3]])) == \
        Matrix.from_rows([[6]])


def test_kron_is_associative():
    rng = random.Random(12)
    mats = [Matrix.from_rows([[F(rng.randint(-2, 2)) for _ in range(2)]
                              for _ in range(2)]) for _ in range(3)]
    a, b, c = mats
    assert kronecker(kronecker(a, b), c) == kronecker(a, kronecker(b, c))


def test_kron_respects_tensor_action():
    rng = random.Random(23)
    a = Matrix.from_rows([[F(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)])
    b = Matrix.from_rows([[F(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)])
    u = [F(rng.randint(-2, 2)) for _ in range(2)]
    v = [F(rng.randint(-2, 2)) for _ in range(3)]
    uv = [x * y for x in u for y in v]
    au, bv = a.apply(u), b.apply(v)
    assert kronecker(a, b).apply(uv) == [x * y for x in au for y in bv]


def test_det_against_laplace():
    rng = random.Random(77)
    for n in (1, 2, 3, 4):
        for _ in range(6):
            rows = [[F(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
            assert Matrix.from_rows(rows).det() == _laplace_det(rows)


def test_solve():
    a = Matrix.from_rows([[1, 2], [3, 4]])
    x = solve(a, [5, 6])
    assert a.apply(x) == [F(5), F(6)]
    inconsistent = Matrix.from_rows([[1, 1], [2, 2]])
    assert solve(inconsistent, [1, 3]) is None


def test_subspace_operations():
    s = Subspace.from_vectors(3, [[1, 0, 1], [0, 1, 1]])
    t = Subspace.from_vectors(3, [[1, 1, 2]])
    assert s.contains([1, 1, 2])
    assert s.contains_subspace(t)
    meet = s.intersect(Subspace.from_vectors(3, [[1, 1, 2], [1, 0, 0]]))
    assert meet.dim == 1
    assert meet.contains([1, 1, 2])
    assert (s + t).dim == 2
    assert s.coordinates_of([2, 3, 5]) == [F(2), F(3)]
    assert s.coordinates_of([0, 0, 1]) is None


def test_subspace_equality_is_canonical():
    a = Subspace.from_vectors(3, [[1, 1, 0], [0, 2, 2]])
    b = Subspace.from_vectors(3, [[2, 2, 0], [1, 0, -1]])
    assert a == b
    assert a.basis == b.basis


# --- primitive idempotent splitting -----------------------------------------


def _pointwise_algebra(n):
    return [[[F(1) if i == j == m else F(0) for m in range(n)]
             for j in range(n)] for i in range(n)]


def test_split_pointwise_q2():
    idems = split_commutative_algebra(_pointwise_algebra(2), 2)
    assert sorted(idems) == [(F(0), F(1)), (F(1), F(0))]


def test_split_dual_of_group_algebra_z2():
    # the dual of Q[Z/2] multiplies pointwise in the dual basis, so its
    # primitive idempotents are the two delta functionals
    idems = split_commutative_algebra(_pointwise_algebra(2), 2)
    assert len(idems) == 2


def test_split_group_algebra_z2_itself():
    # Q[Z/2] as a commutative algebra splits as (e+g)/2, (e-g)/2; oracle:
    # solve p^2 = p by hand with p = a + b g
    mult = [
        [[F(1), F(0)], [F(0), F(1)]],
        [[F(0), F(1)], [F(1), F(0)]],
    ]
    idems = split_commutative_algebra(mult, 2)
    assert sorted(idems) == [(F(1, 2), F(-1, 2)), (F(1, 2), F(1, 2))]


def test_split_nilpotent_fails():
    # Q[x]/(x^2): basis {1, x}, x*x = 0
    mult = [
        [[F(1), F(0)], [F(0), F(1)]],
        [[F(0), F(1)], [F(0), F(0)]],
    ]
    with pytest.raises(SplitFailure) as exc:
        split_commutative_algebra(mult, 2)
    assert exc.value.reason == "not-semisimple"


def _cyclic_group_algebra_tensor(n):
    out = [[[F(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j][(i + j) % n] = F(1)
    return out


def test_split_z3_needs_conductor_three():
    mult = _cyclic_group_algebra_tensor(3)
    with pytest.raises(SplitFailure) as exc:
        split_commutative_algebra(mult, 3)
    assert exc.value.reason == "extend-conductor"
    idems = split_commutative_algebra(mult, 3, conductor=3)
    assert len(idems) == 3
    # spot check: each idempotent is (1/3) sum_k zeta^{-jk} g^k for some j
    z = zeta(3)
    expected = {tuple(scalar_to_text((z ** (-j * k)) / 3) for k in range(3))
                for j in range(3)}
    got = {tuple(scalar_to_text(c) for c in v) for v in idems}
    assert expected == got


def test_split_z4_over_conductor_four():
    mult = _cyclic_group_algebra_tensor(4)
    with pytest.raises(SplitFailure):
        split_commutative_algebra(mult, 4)  # x^2+1 resists over Q
    idems = split_commutative_algebra(mult, 4, conductor=4)
    assert len(idems) == 4


def test_split_rejects_bad_tensors():
    noncomm = [
        [[F(1), F(0)], [F(0), F(1)]],
        [[F(1), F(0)], [F(1), F(0)]],
    ]
    with pytest.raises(ValueError):
        split_commutative_algebra(noncomm, 2)
