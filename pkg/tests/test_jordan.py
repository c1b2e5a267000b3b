from fractions import Fraction

import pytest

from homlie.algebra import builtin
from homlie.constructions import tensor_lie
from homlie.jordan import (
    closure_check,
    counterexample_suite,
    jordan_identity_defect,
    jordan_product,
    jordan_structure_constants,
)
from homlie.linalg import Matrix
from homlie.solver import HOM_LIE, solve_structures, structure_residual

F = Fraction


def test_jordan_product_unit_and_symmetry():
    psi = Matrix.from_rows([[1, 2], [3, 4]])
    assert jordan_product(Matrix.identity(2), psi) == psi
    phi = Matrix.from_rows([[0, 1], [5, 0]])
    assert jordan_product(phi, psi) == jordan_product(psi, phi)
    assert jordan_product(phi, phi) == phi @ phi


def test_jordan_product_matrix_units():
    e12 = Matrix.from_sparse(2, 2, {(0, 1): 1})
    e21 = Matrix.from_sparse(2, 2, {(1, 0): 1})
    assert jordan_product(e12, e21) == Matrix.identity(2).scale(F(1, 2))


def test_jordan_product_shape_mismatch():
    with pytest.raises(ValueError):
        jordan_product(Matrix.identity(2), Matrix.identity(3))


@pytest.mark.parametrize(
    "factory",
    [
        lambda: builtin("sl", 2),
        lambda: builtin("sl", 3),
        lambda: tensor_lie(builtin("trunc_poly", 2), builtin("sl", 2)),
        lambda: builtin("abelian", 2),
    ],
)
def test_closure_holds(factory):
    alg = factory()
    verdict = closure_check(solve_structures(alg, HOM_LIE))
    assert verdict.closed and verdict.witness is None


def test_one_dimensional_spaces_are_closed():
    verdict = closure_check(solve_structures(builtin("sl", 4), HOM_LIE))
    assert verdict.closed


def test_structure_constants_sl2():
    sol = solve_structures(builtin("sl", 2), HOM_LIE)
    jalg = jordan_structure_constants(sol, closure_check(sol))
    assert jalg.dim == 6 and jalg.flavor == "generic-commutative"
    assert jordan_identity_defect(jalg) is None
    # re-expansion reproduces the product exactly
    maps = sol.basis_maps()
    for i in range(6):
        for j in range(6):
            expanded = [F(0)] * 9
            for k, c in jalg.table.get((i, j), ()):
                expanded = [x + c * y for x, y in zip(expanded, maps[k].flatten())]
            assert tuple(expanded) == jordan_product(maps[i], maps[j]).flatten()


def test_structure_constants_trivial_and_full_cases():
    sol3 = solve_structures(builtin("sl", 3), HOM_LIE)
    j3 = jordan_structure_constants(sol3, closure_check(sol3))
    assert j3.dim == 1 and j3.table[(0, 0)] == ((0, F(1)),)
    sol_ab = solve_structures(builtin("abelian", 2), HOM_LIE)
    jab = jordan_structure_constants(sol_ab, closure_check(sol_ab))
    assert jab.dim == 4
    assert jordan_identity_defect(jab) is None


def test_structure_constants_require_closure():
    sol = solve_structures(builtin("sl", 2), HOM_LIE)
    from homlie.jordan import ClosureVerdict

    with pytest.raises(ValueError):
        jordan_structure_constants(sol, ClosureVerdict(False, None))


def test_counterexample_suite():
    rep = counterexample_suite()
    assert 3 <= rep.truncation_order <= 8
    assert rep.phi_member and rep.psi_member
    assert not rep.product_member
    assert rep.composition_is_phi
    assert any(F(x) for x in rep.residual)
    doc = rep.to_json()
    assert doc["truncation_order"] == rep.truncation_order


def test_counterexample_witness_is_independently_verifiable():
    rep = counterexample_suite()
    l = builtin("nonabelian2")
    a = builtin("trunc_poly", rep.truncation_order)
    tensor = tensor_lie(a, l)
    phi = Matrix.identity(a.dim).kron(Matrix.from_rows([[0, 0], [1, 0]]))
    src, dst = rep.alpha_monomial
    alpha = Matrix.from_sparse(a.dim, a.dim, {(dst, src): 1})
    psi = alpha.kron(Matrix.from_rows([[1, 0], [0, 0]]))
    prod = jordan_product(phi, psi)
    residual = structure_residual(tensor, prod, HOM_LIE, rep.violating_triple)
    assert residual == tuple(rep.residual)
    assert any(residual)
