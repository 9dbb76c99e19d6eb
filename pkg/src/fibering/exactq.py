"""Exact dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries. Matrices and
subspaces are immutable; subspaces are kept in reduced row-echelon form so
that two subspaces with the same span compare equal.

Elimination runs on integer rows (denominators cleared, rows kept primitive)
and only converts back to fractions for the final normalisation, which keeps
coefficient growth in check on the few-hundred-column systems used elsewhere
in the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple of Fraction


class DimensionError(ValueError):
    """Raised when operands have incompatible shapes."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def as_vector(values: Iterable) -> Vector:
    return tuple(_frac(v) for v in values)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = reduce(_lcm, (x.denominator for x in row), 1)
    ints = [int(x * den) for x in row]
    g = reduce(gcd, ints, 0)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _primitive(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        return [v // g for v in row]
    return row


def _echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    """Reduced row-echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    work = [_primitive(list(r)) if all(type(x) is int for x in r) else _integer_row([_frac(x) for x in r])
            for r in rows]
    work = [r for r in work if any(r)]
    pivots: list[int] = []
    done = 0
    for col in range(ncols):
        if done == len(work):
            break
        pick = None
        for i in range(done, len(work)):
            v = work[i][col]
            if v and (pick is None or abs(v) < abs(work[pick][col])):
                pick = i
                if abs(v) == 1:
                    break
        if pick is None:
            continue
        work[done], work[pick] = work[pick], work[done]
        prow = work[done]
        pv = prow[col]
        for i in range(len(work)):
            if i == done:
                continue
            rv = work[i][col]
            if rv:
                row = work[i]
                work[i] = _primitive([pv * a - rv * b for a, b in zip(row, prow)])
        pivots.append(col)
        done += 1
    out = []
    for r, col in zip(work[:done], pivots):
        pv = r[col]
        out.append(tuple(Fraction(v, pv) for v in r))
    return out, pivots


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        data = tuple(as_vector(r) for r in rows)
        if ncols is None:
            if not data:
                raise DimensionError("cannot infer column count of an empty matrix")
            ncols = len(data[0])
        if not data or ncols <= 0:
            raise DimensionError("matrix dimensions must be positive")
        if any(len(r) != ncols for r in data):
            raise DimensionError("ragged rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RationalMatrix":
        return cls(zip(*columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RationalMatrix({self.nrows}x{self.ncols}: [{body}])"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._rows))

    T = property(transpose)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return RationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-a for a in r] for r in self._rows])

    def scale(self, c) -> "RationalMatrix":
        c = _frac(c)
        return RationalMatrix([[c * a for a in r] for r in self._rows])

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._rows))
            return RationalMatrix(
                [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols]
                 for r in self._rows]
            )
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        v = as_vector(v)
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._rows)

    def __pow__(self, n: int) -> "RationalMatrix":
        if self.nrows != self.ncols:
            raise DimensionError("power of a non-square matrix")
        if n < 0:
            raise ValueError("negative powers not supported; use inverse()")
        result = RationalMatrix.identity(self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def rank(self) -> int:
        return len(_echelon(self._rows, self.ncols)[1])

    def rref(self) -> "RationalMatrix":
        rows, _ = _echelon(self._rows, self.ncols)
        pad = [tuple([Fraction(0)] * self.ncols)] * (self.nrows - len(rows))
        return RationalMatrix(rows + pad)

    def inverse(self) -> "RationalMatrix":
        n = self.nrows
        if n != self.ncols:
            raise DimensionError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        rows, pivots = _echelon(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(rows) < n:
            raise ZeroDivisionError("matrix is singular")
        return RationalMatrix([r[n:] for r in rows])

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)


def matrix(rows) -> RationalMatrix:
    return rows if isinstance(rows, RationalMatrix) else RationalMatrix(rows)


class Subspace:
    """A subspace of Q^n, stored by its reduced row-echelon basis.

    Equal spans give identical ``basis`` tuples, so ``==`` is exact span
    equality.
    """

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [as_vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, pivots = _echelon(vecs, ambient_dim) if vecs else ([], [])
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(rows)
        self._pivots = tuple(pivots)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, RationalMatrix.identity(n).rows)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def contains(self, v: Sequence) -> bool:
        v = list(as_vector(v))
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        for row, p in zip(self.basis, self._pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return not any(v)

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Optional[Vector]:
        """Coefficients of ``v`` in the echelon basis, or None if v is outside."""
        if not self.contains(v):
            return None
        v = as_vector(v)
        return tuple(v[p] for p in self._pivots)

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        """{w : w.v = 0 for all v in self} under the standard dot product."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return kernel(RationalMatrix(self.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def as_matrix(self) -> RationalMatrix:
        """Basis vectors as columns."""
        return RationalMatrix.from_columns(self.basis)


def kernel(M: RationalMatrix) -> Subspace:
    """Null space {v : Mv = 0}."""
    M = matrix(M)
    return integer_kernel(M.rows, M.ncols)


def integer_kernel(rows: Sequence[Sequence], n: int) -> Subspace:
    """Null space of a raw row list; int rows skip the Fraction conversion."""
    rows, pivots = _echelon(rows, n)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        basis.append(v)
    return Subspace(n, basis)


def image(M: RationalMatrix) -> Subspace:
    """Column space of M."""
    M = matrix(M)
    return Subspace(M.nrows, zip(*M.rows))


def intersect(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(U.ambient_dim)
    if U == V:
        return U
    # U ∩ V = (U^⊥ + V^⊥)^⊥
    constraints = U.annihilator().basis + V.annihilator().basis
    if not constraints:
        return Subspace.full(U.ambient_dim)
    return kernel(RationalMatrix(constraints))


def fixed_space(actions: Sequence[RationalMatrix], ambient_dim: Optional[int] = None) -> Subspace:
    """Simultaneous fixed subspace: the intersection of ker(A - I) over all A."""
    actions = [matrix(a) for a in actions]
    if not actions:
        if ambient_dim is None:
            raise DimensionError("ambient_dim is required for an empty action list")
        return Subspace.full(ambient_dim)
    n = actions[0].nrows
    if ambient_dim is not None and ambient_dim != n:
        raise DimensionError(f"actions are {n}x{n} but ambient_dim={ambient_dim}")
    for a in actions:
        if a.shape != (n, n):
            raise DimensionError(f"expected {n}x{n} actions, got {a.shape}")
    eye = RationalMatrix.identity(n)
    stacked = []
    for a in actions:
        stacked.extend((a - eye).rows)
    return kernel(RationalMatrix(stacked))


def solve(A: RationalMatrix, b: Sequence) -> Optional[Vector]:
    """Some x with Ax = b, or None when the system is inconsistent."""
    A = matrix(A)
    b = as_vector(b)
    if len(b) != A.nrows:
        raise DimensionError(f"right-hand side of length {len(b)} for {A.shape} system")
    n = A.ncols
    aug = [r + (bi,) for r, bi in zip(A.rows, b)]
    rows, pivots = _echelon(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for r, p in zip(rows, pivots):
        x[p] = r[n]
    return tuple(x)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def rank_of_vectors(vectors: Sequence[Sequence], ambient_dim: Optional[int] = None) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    n = ambient_dim if ambient_dim is not None else len(vectors[0])
    return len(_echelon(vectors, n)[1])
