"""Deterministic test batteries and the algebra-level property checks.

The random Lie algebras are produced by seeded central extensions (random
elements of the solved skew-cocycle space) and semidirect extensions by
verified derivations of truncated polynomial rings, so the same battery is
regenerated on every run.  The check_* functions return None on success and
a short witness description on failure; they back both the property test
suite and the reproduce scenarios.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .actions import act, conjugate, is_submodule
from .algebra import AlgebraSpec, builtin, killing_form
from .constructions import adjoin_map, central_extension, cocycle2, derivation_defect, semidirect_derivation
from .linalg import Matrix, Vector
from .solver import (
    HOM_LIE,
    delta_derivation,
    f_t,
    solve_bilinear,
    solve_structures,
)

FILIPPOV_DELTAS = (Fraction(-1), Fraction(1, 2), Fraction(2))


def builtin_battery() -> list[tuple[str, AlgebraSpec]]:
    """One representative instance per builtin family (plus size variety)."""
    return [
        ("sl2", builtin("sl", 2)),
        ("sl3", builtin("sl", 3)),
        ("sl4", builtin("sl", 4)),
        ("gl2", builtin("gl", 2)),
        ("so3", builtin("so", 3)),
        ("so5", builtin("so", 5)),
        ("sp4", builtin("sp", 4)),
        ("heisenberg", builtin("heisenberg")),
        ("abelian1", builtin("abelian", 1)),
        ("abelian3", builtin("abelian", 3)),
        ("nonabelian2", builtin("nonabelian2")),
        ("trunc_poly2", builtin("trunc_poly", 2)),
        ("trunc_poly3", builtin("trunc_poly", 3)),
        ("cyclic2", builtin("cyclic_group_alg", 2)),
        ("cyclic3", builtin("cyclic_group_alg", 3)),
    ]


def lie_battery(max_dim: int | None = None) -> list[tuple[str, AlgebraSpec]]:
    out = [(n, a) for n, a in builtin_battery() if a.flavor == "lie"]
    if max_dim is not None:
        out = [(n, a) for n, a in out if a.dim <= max_dim]
    return out


def _random_derivation(a: AlgebraSpec, rng: random.Random) -> Matrix:
    """Random derivation of K[t]/(t^m): determined by D(t) in t*K[t]."""
    m = a.dim
    img_t = [Fraction(0)] * m
    for k in range(1, m):
        img_t[k] = Fraction(rng.randint(-2, 2))
    cols: list[Vector] = [tuple(Fraction(0) for _ in range(m))]
    for j in range(1, m):
        # D(t^j) = j t^(j-1) D(t)
        power = [Fraction(0)] * m
        if j - 1 < m:
            power[j - 1] = Fraction(j)
        cols.append(a.multiply(tuple(power), tuple(img_t)))
    mat = Matrix(tuple(tuple(cols[j][i] for j in range(m)) for i in range(m)), m)
    assert derivation_defect(a, mat) is None
    return mat


def random_lie_battery(count: int = 25, seed: int = 20250810) -> list[tuple[str, AlgebraSpec]]:
    """Seeded battery of Lie algebras of dim <= 5 built by random central
    extensions and semidirect extensions."""
    rng = random.Random(seed)
    seeds = [
        builtin("abelian", 2),
        builtin("abelian", 3),
        builtin("heisenberg"),
        builtin("nonabelian2"),
        builtin("sl", 2),
    ]
    semidirect_pairs = [
        (builtin("abelian", 1), builtin("trunc_poly", 2)),
        (builtin("abelian", 1), builtin("trunc_poly", 3)),
        (builtin("abelian", 1), builtin("trunc_poly", 4)),
        (builtin("abelian", 2), builtin("trunc_poly", 2)),
        (builtin("nonabelian2"), builtin("trunc_poly", 2)),
        (builtin("sl", 2), builtin("trunc_poly", 1)),
        (builtin("heisenberg"), builtin("trunc_poly", 1)),
    ]
    out: list[tuple[str, AlgebraSpec]] = []
    attempt = 0
    while len(out) < count:
        attempt += 1
        if rng.random() < 0.5:
            base = rng.choice([s for s in seeds if s.dim <= 4])
            sk = solve_bilinear(base, "skew-cocycle")
            vec = [Fraction(0)] * base.dim ** 2
            for b in sk.basis.data:
                c = Fraction(rng.randint(-2, 2))
                if c:
                    vec = [x + c * y for x, y in zip(vec, b)]
            xi = cocycle2(base, Matrix.unflatten(tuple(vec), base.dim, base.dim))
            alg = central_extension(base, xi)
            out.append((f"central#{attempt}", alg))
        else:
            l, a = rng.choice(semidirect_pairs)
            d = _random_derivation(a, rng)
            alg = semidirect_derivation(l, a, d)
            if alg.dim <= 5:
                out.append((f"semidirect#{attempt}", alg))
    return out


# ---------------------------------------------------------------------------
# property checks (None = holds; otherwise a witness string)
# ---------------------------------------------------------------------------


def check_identity_membership(alg: AlgebraSpec) -> str | None:
    sol = solve_structures(alg, HOM_LIE)
    if not sol.contains_map(Matrix.identity(alg.dim)):
        return "identity map missing from the solution space"
    return None


def check_submodule_property(alg: AlgebraSpec) -> str | None:
    sol = solve_structures(alg, HOM_LIE)
    verdict = is_submodule(alg, sol.space)
    if verdict is not True:
        return f"action of generator {verdict.generator_index} leaves the space"
    return None


def _jacobiator(alg: AlgebraSpec, phi: Matrix, x: Vector, y: Vector, z: Vector) -> Vector:
    t1 = alg.multiply(alg.multiply(x, y), phi.apply(z))
    t2 = alg.multiply(alg.multiply(z, x), phi.apply(y))
    t3 = alg.multiply(alg.multiply(y, z), phi.apply(x))
    return tuple(a + b + c for a, b, c in zip(t1, t2, t3))


def check_action_intertwines_jacobiator(alg: AlgebraSpec, rng: random.Random) -> str | None:
    """J_{h.phi}(x,y,z) == h . J_phi(x,y,z) on all basis triples for random
    h and phi (the invariance computation behind the submodule property)."""
    n = alg.dim
    basis = [alg.basis_vector(i) for i in range(n)]
    for _ in range(3):
        h = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        phi = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        hphi = act(alg, h, phi)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = _jacobiator(alg, hphi, basis[i], basis[j], basis[k])
                    jv = _jacobiator(alg, phi, basis[i], basis[j], basis[k])
                    # (h . J)(x,y,z) = [J(x,y,z), h] - J([x,h],y,z) - J(x,[y,h],z) - J(x,y,[z,h])
                    rhs = alg.multiply(jv, h)
                    for slot in range(3):
                        args = [basis[i], basis[j], basis[k]]
                        args[slot] = alg.multiply(args[slot], h)
                        term = _jacobiator(alg, phi, *args)
                        rhs = tuple(a - b for a, b in zip(rhs, term))
                    if lhs != rhs:
                        return f"intertwining fails at triple ({i},{j},{k})"
    return None


def check_filippov_inclusion(alg: AlgebraSpec, deltas: Sequence[Fraction] = FILIPPOV_DELTAS) -> str | None:
    hom = solve_structures(alg, HOM_LIE)
    for d in deltas:
        dd = solve_structures(alg, delta_derivation(d))
        if not dd.space.is_subspace_of(hom.space):
            return f"delta={d} derivations not contained in the structure space"
    return None


def check_f_t_membership(alg: AlgebraSpec, rng: random.Random) -> str | None:
    form = killing_form(alg)
    sol = solve_structures(alg, HOM_LIE)
    cocycles = solve_bilinear(alg, "asym-cocycle")
    maps = sol.basis_maps() or [Matrix.identity(alg.dim)]
    for _ in range(3):
        phi = rng.choice(maps)
        t = tuple(Fraction(rng.randint(-2, 2)) for _ in range(alg.dim))
        built = f_t(alg, form, phi, t)
        if not cocycles.contains(built.matrix.flatten()):
            return "f_t output violates the cocycle equation"  # pragma: no cover
    return None


def check_conjugation_stability(alg: AlgebraSpec) -> str | None:
    sol = solve_structures(alg, HOM_LIE)
    n = alg.dim
    for i in range(n):
        x = alg.basis_vector(i)
        ad = alg.left_mul_matrix(x)
        power = ad
        nilpotent = False
        for _ in range(n):
            if power.is_zero():
                nilpotent = True
                break
            power = power @ ad
        if power.is_zero():
            nilpotent = True
        if not nilpotent:
            continue
        for phi in sol.basis_maps():
            if not sol.contains_map(conjugate(alg, phi, x)):
                return f"conjugation by basis vector {i} leaves the space"
    return None


def check_semidirect_delta_embedding(alg: AlgebraSpec, delta: Fraction = Fraction(2)) -> str | None:
    """For D solving the delta-derivation identity, the extension l + K.D
    carries the structure acting as id on l and as 1/delta on D."""
    if delta == 0:
        raise ValueError("delta must be nonzero")
    sol = solve_structures(alg, delta_derivation(delta))
    n = alg.dim
    for d in sol.basis_maps():
        ext = adjoin_map(alg, d)
        entries = {(i, i): Fraction(1) for i in range(n)}
        entries[(n, n)] = Fraction(1) / delta
        alpha = Matrix.from_sparse(n + 1, n + 1, entries)
        ext_sol = solve_structures(ext, HOM_LIE)
        if not ext_sol.contains_map(alpha):
            return "embedding structure missing on the extension"
    return None


PROPERTY_CHECKS: list[tuple[str, Callable]] = [
    ("identity-membership", lambda alg, rng: check_identity_membership(alg)),
    ("submodule", lambda alg, rng: check_submodule_property(alg)),
    ("action-intertwines-jacobiator", check_action_intertwines_jacobiator),
    ("filippov-inclusion", lambda alg, rng: check_filippov_inclusion(alg)),
    ("f-t-cocycle", check_f_t_membership),
    ("conjugation-stability", lambda alg, rng: check_conjugation_stability(alg)),
    ("semidirect-delta-embedding", lambda alg, rng: check_semidirect_delta_embedding(alg)),
]


def run_property_suite(
    algebras: Sequence[tuple[str, AlgebraSpec]], seed: int = 7
) -> list[tuple[str, str, str | None]]:
    """Run every property check on every Lie-flavor algebra; returns
    (algebra, property, failure|None) rows."""
    rows = []
    for name, alg in algebras:
        if alg.flavor != "lie":
            continue
        for prop_name, fn in PROPERTY_CHECKS:
            rng = random.Random((seed, name, prop_name).__repr__())
            rows.append((name, prop_name, fn(alg, rng)))
    return rows
