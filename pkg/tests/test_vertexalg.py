from fractions import Fraction

import pytest

from hopfva.errors import MalformedPairs, TruncationOverflow
from hopfva.vertexalg import (
    CommDiffVA,
    Poly,
    falling_bracket,
    flip_skew_check,
    pi2_kernel,
    pin_injectivity_check,
    poly_from_text,
    poly_to_text,
    single_variable_backend,
    vandermonde_monomial_decision,
    verify_comm_va_axioms,
    z2_kernel,
)

F = Fraction


def x_poly(k=1, c=1):
    return Poly.monomial((k,), F(c))


def xy_diagonal(cap):
    # (Q[x,y], dx = dy = 1), the tensor square of (Q[x], d/dx)
    one = Poly.const(2, F(1))
    return CommDiffVA(["x", "y"], {"x": one, "y": one}, cap)


# --- derivation and coefficients ---------------------------------------------


def test_apply_derivation_ddx():
    a = single_variable_backend(0, 6)
    assert a.apply_derivation(x_poly(3), 2) == x_poly(1, 6)


def test_apply_derivation_euler():
    a = single_variable_backend(1, 8)
    for n in range(1, 8):
        for k in range(4):
            assert a.apply_derivation(x_poly(n), k) == x_poly(n, n ** k)


def test_apply_derivation_overflow():
    a = single_variable_backend(2, 3)
    assert a.apply_derivation(x_poly(2)) == x_poly(3, 2)
    with pytest.raises(TruncationOverflow) as exc:
        a.apply_derivation(x_poly(2), 2)
    assert exc.value.degree == 4


def test_vertex_coefficients_vacuum():
    a = single_variable_backend(1, 5)
    one = Poly.const(1, F(1))
    b = x_poly(2, 3)
    coeffs = a.vertex_coefficients(one, b, 5)
    assert coeffs[0] == b
    assert all(c.is_zero() for c in coeffs[1:])


def test_vertex_coefficients_ddx():
    # oracle: (x+z)*x = x^2 + z x, so coefficients are (x^2, x, 0)
    a = single_variable_backend(0, 4)
    coeffs = a.vertex_coefficients(x_poly(1), x_poly(1), 2)
    assert coeffs == [x_poly(2), x_poly(1), Poly.zero(1)]


def test_vertex_coefficients_euler():
    a = single_variable_backend(1, 4)
    one = Poly.const(1, F(1))
    coeffs = a.vertex_coefficients(x_poly(1), one, 3)
    assert coeffs == [x_poly(1), x_poly(1), x_poly(1, F(1, 2)), x_poly(1, F(1, 6))]


def test_vertex_coefficients_overflow():
    a = single_variable_backend(1, 3)
    with pytest.raises(TruncationOverflow):
        a.vertex_coefficients(x_poly(2), x_poly(2), 1)


# --- axiom checks -------------------------------------------------------------


def test_axioms_pass_euler_backend():
    a = single_variable_backend(1, 6)
    samples = [Poly.const(1, F(1)), x_poly(1), x_poly(2)]
    report = verify_comm_va_axioms(a, samples, 4)
    assert report.passed, report


def test_axioms_trivial_sample():
    a = single_variable_backend(2, 5)
    report = verify_comm_va_axioms(a, [Poly.const(1, F(1))], 6)
    assert report.passed


def _corrupted_ddx(cap):
    # d(x^n) = n x^(n-1) except d(x^2) = x, which violates Leibniz
    table = {}
    for n in range(0, 2 * cap + 6):
        if n == 2:
            table[(n,)] = x_poly(1)
        else:
            table[(n,)] = Poly.zero(1) if n == 0 else x_poly(n - 1, n)
    return CommDiffVA(["x"], {"x": Poly.const(1, F(1))}, cap,
                      derivation_table=table)


def test_corrupted_derivation_fails_skew_symmetry():
    a = _corrupted_ddx(4)
    samples = [x_poly(1), x_poly(2)]
    report = verify_comm_va_axioms(a, samples, 3)
    ok, witness = report["skew-symmetry"]
    assert not ok
    assert witness is not None


# --- pi2 kernels ---------------------------------------------------------------


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_pi2_injective_for_xm_ddx(m):
    a = single_variable_backend(m, 4)
    res = pi2_kernel(a)
    assert res.kernel.is_zero()
    assert res.stabilized


def test_pi2_zero_derivation_degenerates_to_multiplication():
    a = CommDiffVA(["x"], {"x": Poly.zero(1)}, 1)
    res = pi2_kernel(a, order=3)
    assert res.kernel.dim == 1
    witness = res.pair_vector({(1, 0): 1, (0, 1): -1})  # x(x)1 - 1(x)x
    assert res.kernel.contains(witness)
    assert res.stabilized


def _oracle_pi2_dim(cap, order):
    """Independent brute force for (Q[x,y], dx=dy=1): dense matrix + naive
    rational elimination, with its own polynomial arithmetic."""
    monos = []
    for d in range(cap + 1):
        for i in range(d + 1):
            monos.append((d - i, i))
    monos.sort(key=lambda e: (sum(e), e))

    def derive(p):
        out = {}
        for (a, b), c in p.items():
            if a:
                out[(a - 1, b)] = out.get((a - 1, b), F(0)) + a * c
            if b:
                out[(a, b - 1)] = out.get((a, b - 1), F(0)) + b * c
        return {k: v for k, v in out.items() if v}

    def mul(p, q):
        out = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = (e1[0] + e2[0], e1[1] + e2[1])
                out[e] = out.get(e, F(0)) + c1 * c2
        return {k: v for k, v in out.items() if v}

    rows = {}
    ncols = len(monos) ** 2
    for ci, (ei, ej) in enumerate((a, b) for a in monos for b in monos):
        p = {ei: F(1)}
        for k in range(order + 1):
            prod = mul(p, {ej: F(1)})
            for e, c in prod.items():
                rows.setdefault((k, e), [F(0)] * ncols)[ci] = c
            p = derive(p)
    mat = [rows[k] for k in sorted(rows)]
    # naive Gauss
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [c / lead for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [c - f * d for c, d in zip(mat[r], mat[rank])]
        rank += 1
    return ncols - rank


@pytest.mark.parametrize("cap", [1, 2])
def test_pi2_xy_diagonal_matches_bruteforce(cap):
    a = xy_diagonal(cap)
    res = pi2_kernel(a, order=10)
    assert res.kernel.dim == _oracle_pi2_dim(cap, 10)
    # the witness (x-y)(x)1 - 1(x)(x-y)
    monos = list(res.monomials)
    ix, iy = monos.index((1, 0)), monos.index((0, 1))
    i1 = monos.index((0, 0))
    witness = res.pair_vector({(ix, i1): 1, (iy, i1): -1, (i1, ix): -1, (i1, iy): 1})
    assert res.kernel.contains(witness)


def test_pi2_kernel_chain_monotone():
    a = xy_diagonal(2)
    k_small = pi2_kernel(a, order=3)
    k_big = pi2_kernel(a, order=4)
    assert k_small.kernel.contains_subspace(k_big.kernel)


# --- pi_n ----------------------------------------------------------------------


def test_pin_injective_euler():
    a = single_variable_backend(1, 3)
    res = pin_injectivity_check(a, 3, order=12)
    assert res.injective


def test_pin_fails_on_xy_diagonal():
    a = xy_diagonal(1)
    res = pin_injectivity_check(a, 3, order=6)
    assert not res.injective
    monos = list(res.monomials)
    n = len(monos)
    ix, iy, i1 = monos.index((1, 0)), monos.index((0, 1)), monos.index((0, 0))
    # the pi2 witness tensored with 1 on the right
    v = [F(0)] * n ** 3
    v[(ix * n + i1) * n + i1] = F(1)
    v[(iy * n + i1) * n + i1] = F(-1)
    v[(i1 * n + ix) * n + i1] = F(-1)
    v[(i1 * n + iy) * n + i1] = F(1)
    assert res.kernel.contains(v)


def test_pin_n2_matches_pi2():
    a = xy_diagonal(1)
    p2 = pi2_kernel(a, order=5)
    pn = pin_injectivity_check(a, 2, order=5)
    assert pn.kernel.dim == p2.kernel.dim
    assert pn.injective == p2.kernel.is_zero()


def test_pin_rejects_unary():
    with pytest.raises(ValueError):
        pin_injectivity_check(single_variable_backend(1, 2), 1)


# --- Z2 ------------------------------------------------------------------------


def test_z2_zero_for_euler_small():
    a = single_variable_backend(1, 2)
    res = z2_kernel(a, order=10, laurent_bound=1)
    assert res.kernel.is_zero()


def test_z2_nonzero_for_xy_diagonal_and_pi2_linkage():
    a = xy_diagonal(1)
    res = z2_kernel(a, order=8, laurent_bound=1)
    assert not res.kernel.is_zero()
    monos = list(res.monomials)
    ix, iy, i1 = monos.index((1, 0)), monos.index((0, 1)), monos.index((0, 0))
    witness = res.vector({
        (ix, i1, 0, 0): 1, (iy, i1, 0, 0): -1,
        (i1, ix, 0, 0): -1, (i1, iy, 0, 0): 1,
    })
    assert res.kernel.contains(witness)

    # nondegeneracy linkage: every pi2 kernel vector embeds with f = 1
    p2 = pi2_kernel(a, order=8)
    for vec in p2.kernel.basis:
        emb = {}
        n = len(monos)
        for t, c in enumerate(vec):
            if c != 0:
                i, j = divmod(t, n)
                emb[(i, j, 0, 0)] = c
        assert res.kernel.contains(res.vector(emb))


# --- Vandermonde certificate ---------------------------------------------------


def _laplace_det_int(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _laplace_det_int(minor)
        out += term if j % 2 == 0 else -term
    return out


def test_vandermonde_example_m1():
    verdict = vandermonde_monomial_decision(1, [(2, 0), (1, 1), (0, 2)])
    assert verdict == "independent"
    rows = [[falling_bracket(n, k, 1) for n in (2, 1, 0)] for k in range(3)]
    assert rows == [[1, 1, 1], [2, 1, 0], [4, 1, 0]]
    assert _laplace_det_int(rows) != 0


def test_vandermonde_single_pair():
    assert vandermonde_monomial_decision(2, [(3, 1)]) == "independent"


def test_vandermonde_m0_is_pure_vandermonde():
    assert vandermonde_monomial_decision(0, [(3, 0), (2, 1)]) == "independent"
    rows = [[falling_bracket(n, k, 0) for n in (3, 2)] for k in range(2)]
    assert abs(_laplace_det_int(rows)) == 3 - 2  # up to the Vandermonde sign


def test_vandermonde_malformed():
    with pytest.raises(MalformedPairs):
        vandermonde_monomial_decision(1, [])
    with pytest.raises(MalformedPairs):
        vandermonde_monomial_decision(1, [(2, 0), (2, 0)])
    with pytest.raises(MalformedPairs):
        vandermonde_monomial_decision(1, [(2, 0), (1, 5)])


# --- flip/skew -----------------------------------------------------------------


def test_flip_skew_pass():
    a = single_variable_backend(1, 6)
    report = flip_skew_check(a, [(x_poly(1), x_poly(2))], 6)
    assert report.passed


def test_flip_skew_trivial_pair():
    a = single_variable_backend(2, 4)
    one = Poly.const(1, F(1))
    report = flip_skew_check(a, [(one, x_poly(3, 5))], 3)
    assert report.passed


def test_flip_skew_corrupted_fails():
    a = _corrupted_ddx(4)
    report = flip_skew_check(a, [(x_poly(1), x_poly(2))], 3)
    assert not report.passed


# --- text forms ----------------------------------------------------------------


def test_poly_text_roundtrip():
    p = Poly(2, {(2, 1): F(1, 2), (0, 0): F(-3), (1, 0): F(1)})
    text = poly_to_text(p, ["x", "y"])
    assert poly_from_text(text, ["x", "y"]) == p
    assert poly_from_text("x^2*y - y", ["x", "y"]) == \
        Poly(2, {(2, 1): F(1), (0, 1): F(-1)})
    assert poly_from_text("0", ["x"]).is_zero()


def test_poly_text_deterministic_order():
    p = Poly(1, {(3,): F(1), (1,): F(2)})
    assert poly_to_text(p, ["x"]) == "2/1*x + 1/1*x^3"


# --- structural invariants -------------------------------------------------------


def test_translation_operator_equals_derivation():
    # the z^1 coefficient of Y(f, z)1 recovers df exactly
    a = single_variable_backend(2, 5)
    one = Poly.const(1, F(1))
    for k in (0, 1, 2):
        f = x_poly(k, 3)
        coeffs = a.vertex_coefficients(f, one, 1)
        assert coeffs[1] == a.derive(f)


def test_exp_derivation_is_algebra_map_orderwise():
    # coefficient k of e^{zd}(fg) equals sum_{i+j=k} (d^i f / i!)(d^j g / j!)
    import math
    import random

    rng = random.Random(5)
    a = single_variable_backend(1, 8)
    for _ in range(8):
        f = Poly(1, {(rng.randint(0, 2),): F(rng.randint(-3, 3))})
        g = Poly(1, {(rng.randint(0, 2),): F(rng.randint(-3, 3))})
        lhs = a.exp_derivation_series(f * g, 5)
        for k in range(6):
            rhs = Poly.zero(1)
            for i in range(k + 1):
                j = k - i
                rhs = rhs + (a.derive_k(f, i) * a.derive_k(g, j)).scale(
                    F(1, math.factorial(i) * math.factorial(j)))
            assert lhs[k] == rhs


def test_pi2_zero_implies_pi3_injective():
    # pair-map injectivity propagates to triples at fixed caps
    a = single_variable_backend(1, 3)
    p2 = pi2_kernel(a, order=9)
    assert p2.kernel.is_zero() and p2.stabilized
    assert pin_injectivity_check(a, 3, order=9).injective
