import itertools
from fractions import Fraction

from hopfva.action import HopfAction, trivial_action
from hopfva.hopf import (
    cyclic_group_table,
    group_algebra,
    product_group_table,
    sweedler,
    symmetric_group_table,
)
from hopfva.scalars import zeta
from hopfva.vertexalg import Poly, single_variable_backend

F = Fraction


def groups_are_isomorphic(ta, tb):
    """Brute-force isomorphism test for small group tables (identity at 0)."""
    n = len(ta)
    if len(tb) != n:
        return False

    def order(t, x):
        k, y = 1, x
        while y != 0:
            y = t[y][x]
            k += 1
        return k

    prof_a = sorted(order(ta, x) for x in range(n))
    prof_b = sorted(order(tb, x) for x in range(n))
    if prof_a != prof_b:
        return False
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        if all(p[ta[i][j]] == tb[p[i]][p[j]] for i in range(n) for j in range(n)):
            return True
    return False


# ---------------------------------------------------------------------------
# the shared action corpus


def euler_backend(cap=6, name="x"):
    """(Q[x], x d/dx), the workhorse pi2-injective backend."""
    return single_variable_backend(1, cap, name=name)


def cyclic_scaling_action(n, cap=6):
    """Z/n acting on (Q(zeta_n)[x], x d/dx) by x -> zeta_n^k x."""
    h = group_algebra(cyclic_group_table(n))
    backend = euler_backend(cap)
    z = zeta(n)
    images = {}
    for k in range(n):
        name = "e" if k == 0 else f"g{k}"
        images[name] = {"x": Poly.monomial((1,), z ** k if n > 2 else F(-1) ** k)}
    return HopfAction.from_generator_images(h, backend, images)


def through_first_factor_action(cap=6):
    """Z/2 x Z/2 acting on (Q[x], x d/dx) through its first factor only."""
    table = product_group_table(cyclic_group_table(2), cyclic_group_table(2))
    h = group_algebra(table)  # basis order: (e,e), (e,t), (s,e), (s,t)
    backend = euler_backend(cap)
    x = Poly.monomial((1,))
    images = {
        "e": {"x": x},
        "g1": {"x": x},        # (e, t): acts trivially
        "g2": {"x": -1 * x},   # (s, e)
        "g3": {"x": -1 * x},   # (s, t)
    }
    return HopfAction.from_generator_images(h, backend, images)


def sweedler_poly_action(m=0, cap=6):
    """Sweedler's Hopf algebra on (Q[z], z^m d/dz) via gz = -z, xz = 1."""
    h = sweedler()
    backend = single_variable_backend(m, cap, name="z")
    z = Poly.monomial((1,))
    one = Poly.const(1, F(1))
    images = {
        "1": {"z": z},
        "g": {"z": -1 * z},
        "x": {"z": one},
        "gx": {"z": one},  # (gx) z = g (x z) = g 1 = 1
    }
    return HopfAction.from_generator_images(h, backend, images)


def corpus_module_va_actions(cap=4):
    """The module-vertex-algebra action corpus used by the acceptance suite."""
    return {
        "z2-scaling": cyclic_scaling_action(2, cap),
        "z3-scaling": cyclic_scaling_action(3, cap),
        "z4-scaling": cyclic_scaling_action(4, cap),
        "v4-through-first": through_first_factor_action(cap),
        "trivial-sweedler": trivial_action(sweedler(), euler_backend(cap)),
        "trivial-s3": trivial_action(group_algebra(symmetric_group_table(3)),
                                     euler_backend(cap)),
    }
