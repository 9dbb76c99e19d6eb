"""First homology of a closed surface as a symplectic vector space.

Basis order is a1, b1, a2, b2, ..., with i(a_k, b_k) = +1. A Dehn twist acts
by the transvection T_x^n(c) = c + n i(c, x) x.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactq import RationalMatrix, Subspace, as_vector, kernel


class SpaceMismatch(ValueError):
    pass


class NotSymplecticError(ValueError):
    pass


@dataclass(frozen=True)
class SymplecticSpace:
    genus: int
    labels: tuple = None

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        if self.labels is None:
            labels = []
            for i in range(1, self.genus + 1):
                labels += [f"a{i}", f"b{i}"]
            object.__setattr__(self, "labels", tuple(labels))
        if len(self.labels) != 2 * self.genus:
            raise ValueError("need one label per basis vector")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    @cached_property
    def form(self) -> RationalMatrix:
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for k in range(self.genus):
            rows[2 * k][2 * k + 1] = 1
            rows[2 * k + 1][2 * k] = -1
        return RationalMatrix(rows)

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        """u^T J v without building the matrix."""
        total = Fraction(0)
        for k in range(self.genus):
            a, b = 2 * k, 2 * k + 1
            total += u[a] * v[b] - u[b] * v[a]
        return total

    def basis_class(self, label: str) -> "HClass":
        v = [0] * self.dim
        v[self.labels.index(label)] = 1
        return HClass(self, as_vector(v))

    def __getitem__(self, label: str) -> "HClass":
        return self.basis_class(label)

    def vector(self, coords: Sequence) -> "HClass":
        return HClass(self, as_vector(coords))

    def zero(self) -> "HClass":
        return HClass(self, as_vector([0] * self.dim))

    def parse(self, text: str) -> "HClass":
        return parse_class(text, self)


@dataclass(frozen=True)
class HClass:
    space: SymplecticSpace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise SpaceMismatch(f"expected {self.space.dim} coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", as_vector(self.coords))

    def _same(self, other: "HClass"):
        if self.space != other.space:
            raise SpaceMismatch("classes live in different spaces")

    def __add__(self, other: "HClass") -> "HClass":
        self._same(other)
        return HClass(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "HClass") -> "HClass":
        self._same(other)
        return HClass(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "HClass":
        return HClass(self.space, tuple(-a for a in self.coords))

    def __rmul__(self, c) -> "HClass":
        c = Fraction(c)
        return HClass(self.space, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return format_class(self)


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z]\w*)\s*")


def parse_class(text: str, space: SymplecticSpace) -> HClass:
    """Parse linear combinations such as ``"a1 + 2 b2 - a3"`` or ``"1/2 a1"``."""
    coords = [Fraction(0)] * space.dim
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty class expression")
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse class expression at {text[pos:]!r}")
        sign, coef, label = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator before {label!r}")
        if label not in space.labels:
            raise ValueError(f"unknown basis label {label!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        coords[space.labels.index(label)] += c
        pos = m.end()
        first = False
    return HClass(space, tuple(coords))


def format_class(x: HClass) -> str:
    parts = []
    for c, label in zip(x.coords, x.space.labels):
        if not c:
            continue
        mag = abs(c)
        term = label if mag == 1 else f"{mag} {label}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def intersection(x: HClass, y: HClass) -> Fraction:
    x._same(y)
    return x.space.pair(x.coords, y.coords)


def is_symplectic(M: RationalMatrix, J: RationalMatrix) -> bool:
    return M.T @ J @ M == J


@dataclass(frozen=True)
class MappingAction:
    """An exact symplectic matrix acting on a SymplecticSpace (columns = images of basis vectors)."""

    matrix: RationalMatrix
    space: SymplecticSpace
    provenance: str = ""
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        n = self.space.dim
        if self.matrix.shape != (n, n):
            raise SpaceMismatch(f"matrix shape {self.matrix.shape} does not fit dimension {n}")
        if self.check and not is_symplectic(self.matrix, self.space.form):
            raise NotSymplecticError(f"{self.provenance or 'matrix'} does not preserve the intersection form")

    def __call__(self, x: HClass) -> HClass:
        if x.space != self.space:
            raise SpaceMismatch("class and action live in different spaces")
        return HClass(self.space, self.matrix.apply(x.coords))

    def __matmul__(self, other: "MappingAction") -> "MappingAction":
        if other.space != self.space:
            raise SpaceMismatch("cannot compose actions on different spaces")
        label = f"{self.provenance} * {other.provenance}"
        return MappingAction(self.matrix @ other.matrix, self.space, label)

    def inverse(self) -> "MappingAction":
        return MappingAction(self.matrix.inverse(), self.space, f"({self.provenance})^-1")

    @classmethod
    def identity(cls, space: SymplecticSpace) -> "MappingAction":
        return cls(RationalMatrix.identity(space.dim), space, "id")


def transvection_matrix(space: SymplecticSpace, x: Sequence, power=1) -> RationalMatrix:
    """Matrix of c -> c + power * i(c, x) x."""
    n = space.dim
    x = as_vector(x)
    # i(c, x) = c . (J x)
    Jx = space.form.apply(x)
    p = Fraction(power)
    rows = []
    for r in range(n):
        row = [p * x[r] * Jx[c] if x[r] and Jx[c] else Fraction(0) for c in range(n)]
        row[r] += 1
        rows.append(row)
    return RationalMatrix(rows)


def twist(x: HClass, power: int = 1) -> MappingAction:
    if x.is_zero():
        raise ValueError("cannot twist along the zero class")
    M = transvection_matrix(x.space, x.coords, power)
    return MappingAction(M, x.space, f"T[{format_class(x)}]^{power}")


def tau_involution(space: SymplecticSpace) -> MappingAction:
    """Free involution model on genus 3: swaps handles 1 and 3, fixes handle 2."""
    if space.genus != 3:
        raise ValueError("the involution model is defined on genus 3 only")
    perm = [4, 5, 2, 3, 0, 1]
    rows = [[int(perm[c] == r) for c in range(6)] for r in range(6)]
    return MappingAction(RationalMatrix(rows), space, "tau")


@dataclass(frozen=True)
class PushData:
    """A point-pushing loop ``a`` with its annulus boundary curves x, y.

    ``eps_x``/``eps_y`` record whether each boundary curve goes around the
    branch point in the mod-2 cover; exactly one of them does.
    """

    a: HClass
    x: HClass
    y: HClass
    eps_x: int
    eps_y: int

    def __post_init__(self):
        if not (self.x.coords == self.a.coords == self.y.coords):
            raise ValueError("annulus boundary curves must be homologous to the pushed loop")
        if (self.eps_x + self.eps_y) % 2 != 1:
            raise ValueError("exactly one boundary curve crosses the branch point")

    @property
    def double_lifting(self) -> str:
        """Which boundary curve lifts to two copies ('x' or 'y')."""
        return "x" if self.eps_x % 2 == 0 else "y"

    def push(self) -> MappingAction:
        """Push(a) = T_x T_y^{-1}, which is the identity on H_1 of the closed surface."""
        return twist(self.x, 1) @ twist(self.y, -1)


def push_data(a: HClass, x_lifts_twice: bool = True) -> PushData:
    return PushData(a, a, a, 0 if x_lifts_twice else 1, 1 if x_lifts_twice else 0)


def eigenspace(action: MappingAction, eigenvalue) -> Subspace:
    n = action.space.dim
    shift = RationalMatrix.identity(n).scale(eigenvalue)
    return kernel(action.matrix - shift)
