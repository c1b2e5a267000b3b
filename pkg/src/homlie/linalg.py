"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator, exact arithmetic).  Elimination is performed fraction-free on
integer-scaled sparse rows, and every subspace is kept as a reduced
row-echelon basis, so equality of subspaces is literal equality of their
basis matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

Scalar = Fraction
Vector = tuple[Fraction, ...]


def as_scalar(x) -> Fraction:
    """Coerce ints, strings like '2/3' and Fractions to an exact scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def as_vector(xs: Iterable, dim: int | None = None) -> Vector:
    v = tuple(as_scalar(x) for x in xs)
    if dim is not None and len(v) != dim:
        raise ValueError(f"expected a vector of length {dim}, got {len(v)}")
    return v


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Vector) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of exact scalars.

    ``data`` is a tuple of row tuples; ``cols`` is stored explicitly so that
    matrices with zero rows keep their width.
    """

    data: tuple[tuple[Fraction, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("explicit cols disagrees with row width")
            cols = width
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(data, cols)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], object]) -> "Matrix":
        table = [[Fraction(0)] * cols for _ in range(rows)]
        for (i, j), x in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i},{j}) out of bounds for {rows}x{cols}")
            table[i][j] = as_scalar(x)
        return cls.from_rows(table, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(tuple((Fraction(0),) * cols for _ in range(rows)), cols)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.data), self.cols)

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)), self.rows)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(sum((r[j] * v[j] for j in range(self.cols) if v[j]), Fraction(0)) for r in self.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        ot = other.transpose()
        return Matrix(
            tuple(
                tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ot.data)
                for r in self.data
            ),
            other.cols,
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)), self.cols)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix(tuple(tuple(c * a for a in r) for r in self.data), self.cols)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; block (i,j) is self[i][j] * other."""
        rows = []
        for i in range(self.rows):
            for p in range(other.rows):
                rows.append(
                    tuple(
                        self.data[i][j] * other.data[p][q]
                        for j in range(self.cols)
                        for q in range(other.cols)
                    )
                )
        return Matrix(tuple(rows), self.cols * other.cols)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.data for a in r)

    def flatten(self) -> Vector:
        """Row-major vectorization."""
        return tuple(a for r in self.data for a in r)

    @classmethod
    def unflatten(cls, v: Sequence[Fraction], rows: int, cols: int) -> "Matrix":
        if len(v) != rows * cols:
            raise ValueError("vector length does not match shape")
        return cls(tuple(tuple(as_scalar(x) for x in v[i * cols : (i + 1) * cols]) for i in range(rows)), cols)

    def __str__(self) -> str:
        return "\n".join("[" + "  ".join(str(a) for a in r) + "]" for r in self.data)


# ---------------------------------------------------------------------------
# fraction-free sparse elimination
# ---------------------------------------------------------------------------

IntRow = dict  # column -> nonzero int


def _scale_to_int(row: Mapping[int, Fraction]) -> IntRow:
    """Clear denominators and divide out the content."""
    denom = 1
    for v in row.values():
        if v:
            denom = denom * v.denominator // gcd(denom, v.denominator)
    out: IntRow = {}
    content = 0
    for c, v in row.items():
        if v:
            n = int(v * denom)
            out[c] = n
            content = gcd(content, n)
    if content > 1:
        for c in out:
            out[c] //= content
    return out


def _normalize_content(row: IntRow) -> None:
    content = 0
    for v in row.values():
        content = gcd(content, v)
        if content == 1:
            return
    if content > 1:
        for c in row:
            row[c] //= content


class RowAccumulator:
    """Incremental echelon form for a stream of sparse rational rows.

    Rows are kept as integer dicts with the content divided out.  Pivot rows
    are indexed by their leading column; when a cheaper pivot (smaller
    leading magnitude) arrives for an occupied column, it replaces the
    stored one, which keeps coefficient growth down on large systems.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, IntRow] = {}
        self._seen: set[tuple] = set()

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Mapping[int, Fraction] | IntRow) -> bool:
        """Insert one row; returns True if the rank grew."""
        work: IntRow
        if any(isinstance(v, Fraction) for v in row.values()):
            work = _scale_to_int(row)  # type: ignore[arg-type]
        else:
            work = {c: v for c, v in row.items() if v}
            _normalize_content(work)
        if not work:
            return False
        key = tuple(sorted(work.items()))
        if key in self._seen:
            return False
        self._seen.add(key)
        while work:
            lead = min(work)
            piv = self.pivots.get(lead)
            if piv is None:
                _normalize_content(work)
                self.pivots[lead] = work
                return True
            if abs(work[lead]) < abs(piv[lead]):
                self.pivots[lead] = work
                work, piv = piv, work
            a, b = piv[lead], work[lead]
            g = gcd(a, b)
            ca, cb = a // g, b // g
            merged: IntRow = {c: v * ca for c, v in work.items()}
            for c, v in piv.items():
                n = merged.get(c, 0) - v * cb
                if n:
                    merged[c] = n
                else:
                    merged.pop(c, None)
            work = merged
        return False

    def add_dense(self, row: Sequence[Fraction]) -> bool:
        return self.add({j: v for j, v in enumerate(row) if v})

    def _reduced_rows(self) -> list[tuple[int, dict[int, Fraction]]]:
        """Back-substituted rows with unit pivots, ordered by pivot column."""
        order = sorted(self.pivots)
        reduced: dict[int, dict[int, Fraction]] = {}
        for p in reversed(order):
            row = {c: Fraction(v) for c, v in self.pivots[p].items()}
            for q in order:
                if q > p and q in row:
                    coeff = row.pop(q)
                    for c, v in reduced[q].items():
                        if c == q:
                            continue
                        n = row.get(c, Fraction(0)) - coeff * v
                        if n:
                            row[c] = n
                        else:
                            row.pop(c, None)
            lead = row[p]
            reduced[p] = {c: v / lead for c, v in row.items()}
        return [(p, reduced[p]) for p in order]

    def rref_matrix(self, extra_zero_rows: int = 0) -> Matrix:
        rows = []
        for _, row in self._reduced_rows():
            dense = [Fraction(0)] * self.ncols
            for c, v in row.items():
                dense[c] = v
            rows.append(tuple(dense))
        for _ in range(extra_zero_rows):
            rows.append((Fraction(0),) * self.ncols)
        return Matrix(tuple(rows), self.ncols)

    def nullspace(self) -> "Subspace":
        reduced = self._reduced_rows()
        pivot_cols = [p for p, _ in reduced]
        free_cols = [c for c in range(self.ncols) if c not in self.pivots]
        basis = []
        for f in free_cols:
            dense = [Fraction(0)] * self.ncols
            dense[f] = Fraction(1)
            for p, row in reduced:
                if f in row:
                    dense[p] = -row[f]
            basis.append(tuple(dense))
        return Subspace.from_spanning(basis, self.ncols)


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Unique reduced row-echelon form of ``m`` and its rank.

    The output has the same shape as the input (zero rows padded at the
    bottom), so ``rref(rref(m)) == rref(m)``.
    """
    acc = RowAccumulator(m.cols)
    for r in m.data:
        acc.add_dense(r)
    return acc.rref_matrix(extra_zero_rows=m.rows - acc.rank), acc.rank


def nullspace(m: Matrix) -> "Subspace":
    """Exact kernel of ``m`` as a canonical subspace of the column space."""
    acc = RowAccumulator(m.cols)
    for r in m.data:
        acc.add_dense(r)
    return acc.nullspace()


def nullspace_of_rows(ncols: int, rows: Iterable[Mapping[int, Fraction]]) -> "Subspace":
    """Kernel of a (possibly huge) system given as a stream of sparse rows."""
    acc = RowAccumulator(ncols)
    for r in rows:
        acc.add(r)
    return acc.nullspace()


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient stored by its reduced row-echelon basis.

    Two subspaces are equal as sets exactly when their ``basis`` matrices are
    identical, which makes ``==`` a decision procedure for equality of
    spaces.
    """

    ambient: int
    basis: Matrix

    @classmethod
    def from_spanning(cls, vectors: Iterable[Sequence[Fraction]], ambient: int) -> "Subspace":
        acc = RowAccumulator(ambient)
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("spanning vector has wrong length")
            acc.add_dense(v)
        return cls(ambient, acc.rref_matrix())

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, Matrix((), ambient))

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_vectors(self) -> Iterator[Vector]:
        return iter(self.basis.data)

    def _pivot_cols(self) -> list[int]:
        out = []
        for r in self.basis.data:
            for j, v in enumerate(r):
                if v:
                    out.append(j)
                    break
        return out

    def coords(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of ``v`` in the echelon basis, or None if outside."""
        if len(v) != self.ambient:
            raise ValueError("vector has wrong ambient dimension")
        residual = list(v)
        coeffs = []
        for r, p in zip(self.basis.data, self._pivot_cols()):
            c = residual[p]
            coeffs.append(c)
            if c:
                for j, x in enumerate(r):
                    if x:
                        residual[j] -= c * x
        if any(residual):
            return None
        return tuple(coeffs)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coords(v) is not None

    def is_subspace_of(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return all(other.contains(b) for b in self.basis.data)

    def combine(self, other: "Subspace") -> tuple["Subspace", "Subspace"]:
        """Sum and intersection in one elimination (Zassenhaus block trick)."""
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        n = self.ambient
        acc = RowAccumulator(2 * n)
        for b in self.basis.data:
            acc.add({j: v for j, v in enumerate(b) if v} | {n + j: v for j, v in enumerate(b) if v})
        for b in other.basis.data:
            acc.add({j: v for j, v in enumerate(b) if v})
        sum_rows: list[Vector] = []
        int_rows: list[Vector] = []
        for p, row in acc._reduced_rows():
            dense = [Fraction(0)] * (2 * n)
            for c, v in row.items():
                dense[c] = v
            if p < n:
                sum_rows.append(tuple(dense[:n]))
            else:
                int_rows.append(tuple(dense[n:]))
        return (
            Subspace.from_spanning(sum_rows, n),
            Subspace.from_spanning(int_rows, n),
        )

    def sum(self, other: "Subspace") -> "Subspace":
        return self.combine(other)[0]

    def intersect(self, other: "Subspace") -> "Subspace":
        return self.combine(other)[1]


def subspace_combine(s1: Subspace, s2: Subspace) -> tuple[Subspace, Subspace]:
    return s1.combine(s2)


def sum_of_subspaces(spaces: Iterable[Subspace], ambient: int) -> Subspace:
    vectors: list[Vector] = []
    for s in spaces:
        if s.ambient != ambient:
            raise ValueError("ambient dimension mismatch")
        vectors.extend(s.basis.data)
    return Subspace.from_spanning(vectors, ambient)


class SpanSolver:
    """Expresses vectors in terms of a fixed (independent) spanning list."""

    def __init__(self, vectors: Sequence[Sequence[Fraction]], ambient: int):
        self.ambient = ambient
        self.k = len(vectors)
        acc = RowAccumulator(ambient + self.k)
        for i, v in enumerate(vectors):
            if len(v) != ambient:
                raise ValueError("spanning vector has wrong length")
            acc.add({j: x for j, x in enumerate(v) if x} | {ambient + i: Fraction(1)})
        self._rows = acc._reduced_rows()

    def express(self, target: Sequence[Fraction]) -> Vector | None:
        """Coefficients c with sum(c_i * v_i) == target, or None."""
        residual = {j: as_scalar(x) for j, x in enumerate(target) if x}
        combo: dict[int, Fraction] = {}
        for p, row in self._rows:
            if p >= self.ambient:
                break
            c = residual.get(p)
            if not c:
                continue
            for j, x in row.items():
                if j < self.ambient:
                    n = residual.get(j, Fraction(0)) - c * x
                    if n:
                        residual[j] = n
                    else:
                        residual.pop(j, None)
                else:
                    combo[j - self.ambient] = combo.get(j - self.ambient, Fraction(0)) + c * x
        if residual:
            return None
        return tuple(combo.get(i, Fraction(0)) for i in range(self.k))
