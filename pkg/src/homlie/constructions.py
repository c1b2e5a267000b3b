"""Composite algebras: tensor brackets, extensions, and degree windows.

The constructors here produce either ordinary validated :class:`AlgebraSpec`
instances (tensor products, semidirect and central extensions, cyclic
twisted currents) or a :class:`PartialAlgebra` for the degree-truncated loop
model, where products leaving the window are marked undefined rather than
wrongly set to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (
    AlgebraSpec,
    BilinearForm,
    LawViolation,
    _require_lie,
    jacobi_residual,
    make_algebra,
)
from .linalg import (
    Matrix,
    SpanSolver,
    Subspace,
    Vector,
    is_zero_vector,
    vec_add,
)


# ---------------------------------------------------------------------------
# 2-cocycles and central extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle2:
    """A verified skew-symmetric 2-cocycle on a Lie algebra."""

    algebra: AlgebraSpec
    form: BilinearForm

    def __call__(self, u, v) -> Fraction:
        return self.form(u, v)


def cocycle2(alg: AlgebraSpec, matrix: Matrix) -> Cocycle2:
    """Wrap and verify a skew 2-cocycle given by its Gram matrix."""
    _require_lie(alg, "cocycle2")
    if matrix.shape != (alg.dim, alg.dim):
        raise ValueError("cocycle matrix shape mismatch")
    form = BilinearForm(matrix)
    if not form.is_skew():
        raise LawViolation("cocycle-skewness", (), ())
    n = alg.dim
    basis = [alg.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                val = (
                    form(alg.multiply(basis[i], basis[j]), basis[k])
                    + form(alg.multiply(basis[k], basis[i]), basis[j])
                    + form(alg.multiply(basis[j], basis[k]), basis[i])
                )
                if val:
                    raise LawViolation("cocycle-equation", (i, j, k), (val,))
    return Cocycle2(alg, form)


def central_extension(l: AlgebraSpec, xi: Cocycle2) -> AlgebraSpec:
    """One-dimensional central extension with bracket [x,y] + xi(x,y) z."""
    _require_lie(l, "central_extension")
    if xi.algebra is not l and xi.algebra.table != l.table:
        raise ValueError("cocycle was verified on a different algebra")
    n = l.dim
    table: dict = {}
    for (i, j), terms in l.table.items():
        table[(i, j)] = list(terms)
    basis = [l.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            val = xi.form(basis[i], basis[j])
            if val:
                table.setdefault((i, j), [])
                table[(i, j)] = list(table[(i, j)]) + [(n, val)]
    return make_algebra(
        n + 1, table, basis_names=l.basis_names + ("z",), flavor="lie"
    )


# ---------------------------------------------------------------------------
# tensor products of a commutative and an anticommutative factor
# ---------------------------------------------------------------------------


def tensor_index(a: AlgebraSpec, b: AlgebraSpec, i: int, j: int) -> int:
    """Position of a_i (x) b_j in the tensor basis (first factor major)."""
    return i * b.dim + j


def tensor_lie(a: AlgebraSpec, b: AlgebraSpec) -> AlgebraSpec:
    """Bracket [u (x) x, v (x) y] = uv (x) xy on a (x) b.

    Requires a commutative and b anticommutative (validated flavors).  The
    result is always anticommutative; it is marked ``lie`` when the Jacobi
    identity holds, and ``generic-anticommutative`` with a recorded witness
    triple otherwise.
    """
    if not a.is_commutative():
        raise ValueError("first tensor factor must have a commutative flavor")
    if not b.is_anticommutative():
        raise ValueError("second tensor factor must have an anticommutative flavor")
    dim = a.dim * b.dim
    table: dict = {}
    for (i1, i2), terms_a in a.table.items():
        for (j1, j2), terms_b in b.table.items():
            entry = [
                (tensor_index(a, b, k1, k2), c1 * c2)
                for k1, c1 in terms_a
                for k2, c2 in terms_b
            ]
            if entry:
                table[(tensor_index(a, b, i1, j1), tensor_index(a, b, i2, j2))] = entry
    names = tuple(
        f"{an}(x){bn}" for an in a.basis_names for bn in b.basis_names
    )
    candidate = make_algebra(dim, table, basis_names=names, flavor="generic-anticommutative")
    witness = None
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                r = jacobi_residual(
                    candidate,
                    candidate.basis_vector(i),
                    candidate.basis_vector(j),
                    candidate.basis_vector(k),
                )
                if not is_zero_vector(r):
                    witness = (i, j, k)
                    break
            if witness:
                break
        if witness:
            break
    if witness is None:
        return make_algebra(dim, table, basis_names=names, flavor="lie")
    return make_algebra(
        dim, table, basis_names=names, flavor="generic-anticommutative", jacobi_witness=witness
    )


def derivation_defect(a: AlgebraSpec, d: Matrix) -> tuple[tuple[int, int], Vector] | None:
    """First basis pair where d(xy) != d(x)y + x d(y), or None."""
    n = a.dim
    basis = [a.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = d.apply(a.multiply(basis[i], basis[j]))
            rhs = vec_add(a.multiply(d.apply(basis[i]), basis[j]), a.multiply(basis[i], d.apply(basis[j])))
            if lhs != rhs:
                return (i, j), tuple(x - y for x, y in zip(lhs, rhs))
    return None


def semidirect_derivation(l: AlgebraSpec, a: AlgebraSpec, d: Matrix) -> AlgebraSpec:
    """(l (x) a) extended by one generator acting as id (x) d.

    ``d`` must be a derivation of the commutative-associative factor ``a``
    (Leibniz rule verified on all basis pairs); the extra generator D obeys
    [D, x (x) f] = x (x) d(f).
    """
    _require_lie(l, "semidirect_derivation")
    if a.flavor != "commutative-associative":
        raise ValueError("second factor must be commutative-associative")
    defect = derivation_defect(a, d)
    if defect is not None:
        pair, residual = defect
        raise LawViolation("leibniz", pair, residual)
    base = tensor_lie(a, l)
    if base.flavor != "lie":
        raise AssertionError("current algebra failed the Jacobi validator")  # pragma: no cover
    n = base.dim
    table: dict = {k: list(v) for k, v in base.table.items()}

    def tidx(ai: int, li: int) -> int:
        return tensor_index(a, l, ai, li)

    # [D, a_i (x) l_j] = d(a_i) (x) l_j
    for ai in range(a.dim):
        img = d.apply(a.basis_vector(ai))
        for li in range(l.dim):
            entry = [(tidx(k, li), c) for k, c in enumerate(img) if c]
            if entry:
                table[(n, tidx(ai, li))] = entry
                table[(tidx(ai, li), n)] = [(k, -c) for k, c in entry]
    return make_algebra(
        n + 1, table, basis_names=base.basis_names + ("D",), flavor="lie"
    )


def adjoin_map(l: AlgebraSpec, d: Matrix, name: str = "D") -> AlgebraSpec:
    """Anticommutative extension l + K.D with [D, x] = d(x).

    Lie when the Jacobi identity survives (d a derivation), otherwise
    generic-anticommutative; used to embed delta-derivations as structures
    on a one-generator extension.
    """
    _require_lie(l, "adjoin_map")
    n = l.dim
    table: dict = {k: list(v) for k, v in l.table.items()}
    for i in range(n):
        img = d.apply(l.basis_vector(i))
        entry = [(k, c) for k, c in enumerate(img) if c]
        if entry:
            table[(n, i)] = entry
            table[(i, n)] = [(k, -c) for k, c in entry]
    names = l.basis_names + (name,)
    try:
        return make_algebra(n + 1, table, basis_names=names, flavor="lie")
    except LawViolation:
        return make_algebra(n + 1, table, basis_names=names, flavor="generic-anticommutative")


# ---------------------------------------------------------------------------
# twisted cyclic currents
# ---------------------------------------------------------------------------


def check_cyclic_grading(g: AlgebraSpec, grading: Sequence[Subspace]) -> None:
    """Components must direct-sum to g with [g_i, g_j] inside g_{i+j mod n}."""
    n = len(grading)
    if n < 1:
        raise ValueError("grading needs at least one component")
    total = 0
    for s in grading:
        if s.ambient != g.dim:
            raise ValueError("grading component has wrong ambient dimension")
        total += s.dim
    if total != g.dim:
        raise LawViolation("grading-direct-sum", (total, g.dim), ())
    stacked = Subspace.from_spanning(
        [v for s in grading for v in s.basis.data], g.dim
    )
    if stacked.dim != g.dim:
        raise LawViolation("grading-direct-sum", (stacked.dim, g.dim), ())
    for i, si in enumerate(grading):
        for j, sj in enumerate(grading):
            target = grading[(i + j) % n]
            for u in si.basis.data:
                for v in sj.basis.data:
                    w = g.multiply(u, v)
                    if not target.contains(w):
                        raise LawViolation("grading-compatibility", (i, j), w)


def twisted_cyclic(g: AlgebraSpec, grading: Sequence[Subspace], m: int) -> AlgebraSpec:
    """Span of g_{i mod n} (x) t^i, 0 <= i < m, inside g (x) K[t]/(t^m - 1)."""
    _require_lie(g, "twisted_cyclic")
    n = len(grading)
    if m % n:
        raise ValueError("m must be a multiple of the grading order")
    check_cyclic_grading(g, grading)
    # basis: for each degree i, the chosen basis of g_{i mod n}
    comp_bases = [list(s.basis.data) for s in grading]
    labels: list[tuple[int, int]] = []  # (degree, index inside component)
    for deg in range(m):
        for s in range(len(comp_bases[deg % n])):
            labels.append((deg, s))
    index = {lab: pos for pos, lab in enumerate(labels)}
    solvers = [SpanSolver(comp_bases[r], g.dim) if comp_bases[r] else None for r in range(n)]
    table: dict = {}
    for p1, (d1, s1) in enumerate(labels):
        for p2, (d2, s2) in enumerate(labels):
            u = comp_bases[d1 % n][s1]
            v = comp_bases[d2 % n][s2]
            w = g.multiply(u, v)
            if is_zero_vector(w):
                continue
            deg = (d1 + d2) % m
            solver = solvers[deg % n]
            coords = solver.express(w) if solver else None
            if coords is None:
                raise LawViolation("grading-compatibility", (d1, d2), w)  # pragma: no cover
            entry = [(index[(deg, s)], c) for s, c in enumerate(coords) if c]
            if entry:
                table[(p1, p2)] = entry
    names = tuple(f"g{d % n}[{s}](x)t^{d}" for d, s in labels)
    return make_algebra(len(labels), table, basis_names=names, flavor="lie")


# ---------------------------------------------------------------------------
# degree-windowed loop model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisLabel:
    kind: str  # 'loop' | 'euler' | 'central'
    degree: int
    vector: Vector | None  # coordinates in g for loop labels
    name: str


@dataclass(frozen=True, eq=False)
class PartialAlgebra:
    """A degree-windowed graded bracket; pairs outside the window are
    undefined (None) rather than zero, and generate no constraints."""

    dim: int
    labels: tuple[BasisLabel, ...]
    window: int
    products: Mapping[tuple[int, int], tuple[tuple[int, Fraction], ...] | None] = field(repr=False)

    def degree(self, i: int) -> int:
        return self.labels[i].degree

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.dim))

    def bracket(self, i: int, j: int):
        """Structure constants of [b_i, b_j], or None when out of window."""
        if i == j:
            return ()
        if (i, j) in self.products:
            return self.products[(i, j)]
        rev = self.products.get((j, i), ())
        if rev is None:
            return None
        return tuple((k, -c) for k, c in rev)

    def expand(self, terms: Sequence[tuple[int, Fraction]]) -> Vector:
        out = [Fraction(0)] * self.dim
        for k, c in terms:
            out[k] += c
        return tuple(out)

    def multiply(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector | None:
        """Bilinear bracket; None if any contributing pair is undefined."""
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                br = self.bracket(i, j)
                if br is None:
                    return None
                for k, c in br:
                    out[k] += ui * vj * c
        return tuple(out)

    def out_of_window_pairs(self) -> list[tuple[int, int]]:
        out = [pair for pair, terms in self.products.items() if terms is None]
        return sorted(out)

    def identity_map(self) -> Matrix:
        return Matrix.identity(self.dim)


def km_window(
    g: AlgebraSpec,
    invariant_form: BilinearForm,
    n_window: int,
    twist: tuple[Sequence[Subspace], int] | None = None,
) -> PartialAlgebra:
    """Window model of the loop algebra of g with Euler element and center.

    Loop vectors x (x) t^i for |i| <= N, plus d with [d, x (x) t^i] =
    i * x (x) t^i and central z; loop brackets are defined when the degrees
    stay inside the window and carry the residue-pairing central term
    i * delta_{i+j,0} <x,y> z.  A twist restricts degree-i loop vectors to
    the grading component i mod n.
    """
    _require_lie(g, "km_window")
    if n_window < 2:
        raise ValueError("window must be at least 2")
    if not invariant_form.is_symmetric() or not invariant_form.is_invariant(g):
        raise ValueError("form must be symmetric and invariant")
    if twist is not None:
        grading, n_twist = twist
        if len(grading) != n_twist:
            raise ValueError("twist grading must have one component per residue")
        check_cyclic_grading(g, grading)
        comp_bases = [list(s.basis.data) for s in grading]
        comp_solvers = [SpanSolver(b, g.dim) if b else None for b in comp_bases]
    else:
        n_twist = 1
        comp_bases = [[g.basis_vector(i) for i in range(g.dim)]]
        comp_solvers = [SpanSolver(comp_bases[0], g.dim)]

    labels: list[BasisLabel] = []
    for deg in range(-n_window, n_window + 1):
        comp = comp_bases[deg % n_twist]
        for s, vec in enumerate(comp):
            name = f"{g.basis_names[_single_basis_index(vec)]}(x)t^{deg}" if _single_basis_index(vec) is not None else f"g[{s}](x)t^{deg}"
            labels.append(BasisLabel("loop", deg, vec, name))
    labels.append(BasisLabel("euler", 0, None, "d"))
    labels.append(BasisLabel("central", 0, None, "z"))
    dim = len(labels)
    d_idx, z_idx = dim - 2, dim - 1

    index_of: dict[tuple[int, int], int] = {}
    pos = 0
    for deg in range(-n_window, n_window + 1):
        for s in range(len(comp_bases[deg % n_twist])):
            index_of[(deg, s)] = pos
            pos += 1

    products: dict[tuple[int, int], tuple[tuple[int, Fraction], ...] | None] = {}
    loop_count = dim - 2
    for p1 in range(loop_count):
        lab1 = labels[p1]
        for p2 in range(p1 + 1, loop_count):
            lab2 = labels[p2]
            i, j = lab1.degree, lab2.degree
            if abs(i + j) > n_window:
                products[(p1, p2)] = None
                continue
            w = g.multiply(lab1.vector, lab2.vector)
            entry: list[tuple[int, Fraction]] = []
            if not is_zero_vector(w):
                solver = comp_solvers[(i + j) % n_twist]
                coords = solver.express(w) if solver else None
                if coords is None:
                    raise LawViolation("grading-compatibility", (p1, p2), w)  # pragma: no cover
                entry.extend(
                    (index_of[(i + j, s)], c) for s, c in enumerate(coords) if c
                )
            if i + j == 0:
                central = i * invariant_form(lab1.vector, lab2.vector)
                if central:
                    entry.append((z_idx, Fraction(central)))
            if entry:
                products[(p1, p2)] = tuple(sorted(entry))
    # Euler action: [d, x (x) t^i] = i * x (x) t^i
    for p in range(loop_count):
        deg = labels[p].degree
        if deg:
            products[(d_idx, p)] = ((p, Fraction(deg)),)
    return PartialAlgebra(dim=dim, labels=tuple(labels), window=n_window, products=products)


def _single_basis_index(vec: Vector) -> int | None:
    nz = [i for i, v in enumerate(vec) if v]
    if len(nz) == 1 and vec[nz[0]] == 1:
        return nz[0]
    return None
