"""Module structure on spaces of endomorphisms.

A Lie algebra acts on Hom(L, L) by (h . phi)(x) = [phi(x), h] - phi([x, h]);
the solved structure spaces are submodules, which makes exact weight
decompositions available.  Torus eigenvalues must be rational: decomposition
fails loudly (NonSplitAction) instead of silently dropping components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .algebra import AlgebraSpec, _require_lie
from .linalg import Matrix, Subspace, Vector, as_scalar, nullspace


class NotSubmodule(ValueError):
    def __init__(self, generator_index: int, basis_index: int):
        self.generator_index = generator_index
        self.basis_index = basis_index
        super().__init__(
            f"action of basis generator {generator_index} moves basis map "
            f"{basis_index} outside the subspace"
        )


class NonSplitAction(ValueError):
    """The action has non-rational eigenvalues or is not diagonalizable."""


@dataclass(frozen=True)
class SubmoduleWitness:
    generator_index: int
    map_index: int


@dataclass(frozen=True)
class WeightComponent:
    weight: tuple[Fraction, ...]
    component: Subspace


def act(alg: AlgebraSpec, h: Sequence[Fraction], phi: Matrix) -> Matrix:
    """(h . phi)(x) = [phi(x), h] - phi([x, h])."""
    _require_lie(alg, "act")
    if phi.shape != (alg.dim, alg.dim):
        raise ValueError("map shape does not match the algebra")
    rh = alg.right_mul_matrix(tuple(as_scalar(a) for a in h))
    return (rh @ phi) - (phi @ rh)


def is_submodule(alg: AlgebraSpec, s: Subspace) -> bool | SubmoduleWitness:
    """True iff e_i . phi stays in s for every generator and basis map."""
    n = alg.dim
    if s.ambient != n * n:
        raise ValueError("subspace must live in the endomorphism space")
    for i in range(n):
        h = alg.basis_vector(i)
        for j, b in enumerate(s.basis.data):
            moved = act(alg, h, Matrix.unflatten(b, n, n))
            if not s.contains(moved.flatten()):
                return SubmoduleWitness(i, j)
    return True


def action_matrix(alg: AlgebraSpec, h: Sequence[Fraction], s: Subspace) -> Matrix:
    """Matrix of phi -> h . phi on s, in the echelon-basis coordinates."""
    n = alg.dim
    cols = []
    for b in s.basis.data:
        moved = act(alg, h, Matrix.unflatten(b, n, n)).flatten()
        coords = s.coords(moved)
        if coords is None:
            raise NotSubmodule(-1, len(cols))
        cols.append(coords)
    k = s.dim
    return Matrix(tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)), k)


def rational_eigenvalues(m: Matrix) -> dict[Fraction, int]:
    """Rational roots of the characteristic polynomial with multiplicities.

    Uses sympy's exact ground-root extraction; imported lazily so the rest
    of the package has no heavyweight import cost.
    """
    import sympy

    n = m.rows
    sm = sympy.Matrix(n, n, [sympy.Rational(v.numerator, v.denominator) for r in m.data for v in r])
    x = sympy.Symbol("x")
    poly = sympy.Poly(sm.charpoly(x).as_expr(), x)
    roots = {}
    for root, mult in poly.ground_roots().items():
        roots[Fraction(int(root.p), int(root.q))] = int(mult)
    return roots


def _eigen_subspaces(alg: AlgebraSpec, h: Vector, s: Subspace) -> list[tuple[Fraction, Subspace]]:
    """Split s into exact eigenspaces of the h-action; raise if it does not
    split over the rationals."""
    if s.dim == 0:
        return []
    a = action_matrix(alg, h, s)
    pieces = []
    covered = 0
    for lam in sorted(rational_eigenvalues(a)):
        shifted = a - Matrix.identity(a.rows).scale(lam)
        kern = nullspace(shifted)
        if kern.dim == 0:
            continue
        vectors = []
        for c in kern.basis.data:
            dense = [Fraction(0)] * s.ambient
            for coeff, b in zip(c, s.basis.data):
                if coeff:
                    for idx, v in enumerate(b):
                        if v:
                            dense[idx] += coeff * v
            vectors.append(tuple(dense))
        pieces.append((lam, Subspace.from_spanning(vectors, s.ambient)))
        covered += kern.dim
    if covered != s.dim:
        raise NonSplitAction(
            f"action splits only {covered} of {s.dim} dimensions over the rationals"
        )
    return pieces


def weight_decompose(
    alg: AlgebraSpec, torus: Sequence[Sequence[Fraction]], s: Subspace
) -> list[WeightComponent]:
    """Joint eigenspace decomposition of s under commuting torus elements.

    Components direct-sum to s; empty weights are omitted.  The subspace
    must be a submodule (checked) and the action must split over Q.
    """
    _require_lie(alg, "weight_decompose")
    verdict = is_submodule(alg, s)
    if verdict is not True:
        raise NotSubmodule(verdict.generator_index, verdict.map_index)
    components: list[tuple[tuple[Fraction, ...], Subspace]] = [((), s)]
    for t in torus:
        tv = tuple(as_scalar(a) for a in t)
        refined: list[tuple[tuple[Fraction, ...], Subspace]] = []
        for weight, comp in components:
            for lam, piece in _eigen_subspaces(alg, tv, comp):
                refined.append((weight + (lam,), piece))
        components = refined
    total = sum(c.dim for _, c in components)
    if total != s.dim:
        raise NonSplitAction("weight components do not exhaust the subspace")  # pragma: no cover
    return [WeightComponent(w, c) for w, c in sorted(components, key=lambda wc: wc[0])]


def _is_sl2_triple(alg: AlgebraSpec, lower: Vector, h: Vector, raiser: Vector) -> bool:
    """Relations of the 3-dimensional simple algebra in the fixed convention:
    [lower, h] = -lower, [raiser, h] = raiser, [lower, raiser] = h."""
    neg = tuple(-a for a in lower)
    return (
        alg.multiply(lower, h) == neg
        and alg.multiply(raiser, h) == raiser
        and alg.multiply(lower, raiser) == h
    )


def sl2_decompose(
    alg: AlgebraSpec,
    triple: tuple[Sequence[Fraction], Sequence[Fraction], Sequence[Fraction]],
    s: Subspace,
) -> list[int]:
    """Multiset of irreducible dimensions of an invariant subspace under a
    3-dimensional simple triple, by weight-multiplicity counting.

    With the convention used here the middle element acts on the adjoint
    module with eigenvalues -1, 0, 1, so an m-dimensional irreducible shows
    m consecutive weights centred at zero, each with multiplicity one.
    """
    lower, h, raiser = (tuple(as_scalar(a) for a in v) for v in triple)
    if not _is_sl2_triple(alg, lower, h, raiser):
        raise ValueError("supplied vectors do not satisfy the triple relations")
    comps = weight_decompose(alg, [h], s)
    mult: dict[Fraction, int] = {c.weight[0]: c.component.dim for c in comps}
    dims: list[int] = []
    for w in sorted(mult, reverse=True):
        if w < 0:
            break
        count = mult.get(w, 0) - mult.get(w + 1, 0)
        if count < 0 or mult.get(w, 0) != mult.get(-w, 0):
            raise NonSplitAction("weight multiplicities are not symmetric unimodal")
        size = 2 * w + 1
        if count and (size.denominator != 1 or size <= 0):
            raise NonSplitAction(f"weight {w} cannot head an irreducible block")
        dims.extend([int(size)] * count)
    if sum(dims) != s.dim:
        raise NonSplitAction("irreducible dimensions do not sum to the subspace dimension")
    return sorted(dims, reverse=True)


def conjugate(alg: AlgebraSpec, phi: Matrix, x: Sequence[Fraction]) -> Matrix:
    """exp(-ad x) . phi . exp(ad x) for ad-nilpotent x (exact finite sums)."""
    _require_lie(alg, "conjugate")
    ad = alg.left_mul_matrix(tuple(as_scalar(a) for a in x))
    n = alg.dim
    terms = [Matrix.identity(n)]
    power = Matrix.identity(n)
    for k in range(1, n + 1):
        power = power @ ad
        if power.is_zero():
            break
        terms.append(power.scale(Fraction(1, factorial(k))))
    else:
        raise ValueError("ad(x) is not nilpotent within dim iterations")
    alpha = terms[0]
    for t in terms[1:]:
        alpha = alpha + t
    inv = terms[0]
    sign_power = Matrix.identity(n)
    for k in range(1, len(terms)):
        sign_power = sign_power @ ad
        inv = inv + sign_power.scale(Fraction((-1) ** k, factorial(k)))
    return inv @ phi @ alpha
