"""Surface group presentations, finite quotients and Reidemeister-Schreier.

Words are lists of signed, 1-based generator indices: ``+i`` is the i-th
generator of the presentation and ``-i`` its inverse. The textual syntax is
whitespace separated labels with an upper-case first letter meaning inverse,
e.g. ``"a1 b1 A1 B1"``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Hashable, Mapping, Optional, Sequence

from .exactq import RationalMatrix

Word = tuple  # tuple[int, ...]


class PresentationError(ValueError):
    pass


class MalformedCoverError(ValueError):
    pass


class NonSurjectiveError(ValueError):
    pass


# ---------------------------------------------------------------------------
# arithmetic


def euler_characteristic(genus: int, punctures: int = 0) -> int:
    return 2 - 2 * genus - punctures


def riemann_hurwitz_genus(base_genus: int, degree: int, branch_multiplicities: Sequence[int] = ()) -> int:
    """Genus of a degree-``degree`` cover of a closed genus-``base_genus`` surface.

    Each entry of ``branch_multiplicities`` is one branch point over which
    every preimage has ramification index m, so it contributes
    (degree/m)(m-1) to the ramification total.
    """
    if degree < 1:
        raise MalformedCoverError("degree must be positive")
    ramification = 0
    for m in branch_multiplicities:
        if m < 1 or degree % m:
            raise MalformedCoverError(f"multiplicity {m} does not divide degree {degree}")
        ramification += (degree // m) * (m - 1)
    chi = degree * euler_characteristic(base_genus) - ramification
    if chi % 2:
        raise MalformedCoverError(f"Euler characteristic {chi} is odd")
    genus = (2 - chi) // 2
    if genus < 0:
        raise MalformedCoverError(f"negative genus from Euler characteristic {chi}")
    return genus


# ---------------------------------------------------------------------------
# words


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """Parse ``"a1 b1 A1 B1"`` against a list of lower-case generator labels."""
    index = {g: i + 1 for i, g in enumerate(generators)}
    word = []
    for tok in text.split():
        if tok in index:
            word.append(index[tok])
            continue
        low = tok[0].lower() + tok[1:]
        if tok[0].isupper() and low in index:
            word.append(-index[low])
            continue
        raise PresentationError(f"unknown generator {tok!r}")
    return tuple(word)


def format_word(word: Sequence[int], generators: Sequence[str]) -> str:
    out = []
    for s in word:
        label = generators[abs(s) - 1]
        out.append(label if s > 0 else label[0].upper() + label[1:])
    return " ".join(out)


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(-s for s in reversed(word))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    return tuple(u) + tuple(v) + invert(u) + invert(v)


def exponent_sums(word: Sequence[int], ngens: int) -> list[int]:
    sums = [0] * ngens
    for s in word:
        sums[abs(s) - 1] += 1 if s > 0 else -1
    return sums


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            for s in r:
                if not s or abs(s) > n:
                    raise PresentationError(f"relator letter {s} out of range")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, word: Sequence[int]) -> str:
        return format_word(word, self.generators)


def surface_labels(genus: int, punctures: int = 0, prefix: tuple = ("a", "b"), puncture_prefix: str = "c") -> tuple:
    labels = []
    for i in range(1, genus + 1):
        labels += [f"{prefix[0]}{i}", f"{prefix[1]}{i}"]
    labels += [f"{puncture_prefix}{j}" for j in range(1, punctures + 1)]
    return tuple(labels)


def surface_relator(genus: int, punctures: int = 0, offset: int = 0) -> Word:
    word: list[int] = []
    for i in range(genus):
        a, b = offset + 2 * i + 1, offset + 2 * i + 2
        word += [a, b, -a, -b]
    word += [offset + 2 * genus + j for j in range(1, punctures + 1)]
    return tuple(word)


@dataclass(frozen=True)
class SurfacePresentation:
    """pi_1 of a genus-g surface with n punctures.

    Generators are a1, b1, ..., ag, bg, c1, ..., cn and the single relator is
    prod [ai, bi] * prod cj. With n >= 1 the group is free of rank 2g+n-1:
    :meth:`presentation` eliminates c_n and returns that free presentation.
    """

    genus: int
    punctures: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise PresentationError("genus and punctures must be non-negative")

    @property
    def generators(self) -> tuple:
        return surface_labels(self.genus, self.punctures)

    @property
    def relator(self) -> Word:
        return surface_relator(self.genus, self.punctures)

    @property
    def is_free(self) -> bool:
        return self.punctures > 0

    @property
    def free_rank(self) -> Optional[int]:
        return 2 * self.genus + self.punctures - 1 if self.is_free else None

    def presentation(self) -> Presentation:
        if not self.is_free:
            return Presentation(self.generators, (self.relator,))
        return Presentation(self.generators[:-1], ())

    def eliminated_generator(self) -> Optional[Word]:
        """c_n written in the remaining generators (punctured case only)."""
        if not self.is_free:
            return None
        return invert(self.relator[:-1])

    def parse(self, text: str) -> Word:
        return parse_word(text, self.generators)


def product_presentation(p: Presentation, q: Presentation) -> Presentation:
    """Direct product: both generating sets, both relator sets, and all cross commutators."""
    n = p.rank
    shifted = tuple(tuple(s + n if s > 0 else s - n for s in r) for r in q.relators)
    cross = tuple(commutator((i,), (n + j,)) for i in range(1, n + 1) for j in range(1, q.rank + 1))
    return Presentation(tuple(p.generators) + tuple(q.generators), tuple(p.relators) + shifted + cross)


def as_presentation(pres) -> Presentation:
    if isinstance(pres, SurfacePresentation):
        return pres.presentation()
    return pres


# ---------------------------------------------------------------------------
# finite groups and quotients


class FiniteGroup:
    """A finite group given by an identity, multiplication and inversion."""

    order: int
    identity: Hashable

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def elements(self) -> list:
        raise NotImplementedError

    def normalize(self, x):
        return x


class ElementaryAbelian2(FiniteGroup):
    """(Z/2)^rank with elements encoded as bit masks."""

    def __init__(self, rank: int):
        self.rank = rank
        self.order = 2 ** rank
        self.identity = 0

    def mul(self, x, y):
        return x ^ y

    def inv(self, x):
        return x

    def elements(self):
        return list(range(self.order))

    def normalize(self, x):
        if isinstance(x, str):
            x = [int(c) for c in x]
        if isinstance(x, (list, tuple)):
            if len(x) != self.rank or any(c not in (0, 1) for c in x):
                raise PresentationError(f"bad (Z/2)^{self.rank} element {x!r}")
            return sum(c << i for i, c in enumerate(x))
        if not 0 <= int(x) < self.order:
            raise PresentationError(f"bad (Z/2)^{self.rank} element {x!r}")
        return int(x)

    def __repr__(self):
        return f"ElementaryAbelian2({self.rank})"


class TableGroup(FiniteGroup):
    """Group given by a multiplication table on 0..n-1."""

    def __init__(self, table: Sequence[Sequence[int]]):
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise PresentationError("multiplication table must be square and non-empty")
        self.table = tuple(tuple(int(v) for v in r) for r in table)
        self.order = n
        ids = [e for e in range(n) if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))]
        if len(ids) != 1:
            raise PresentationError("multiplication table has no unique identity")
        self.identity = ids[0]
        self._inv = {}
        for x in range(n):
            inv = [y for y in range(n) if self.table[x][y] == self.identity]
            if len(inv) != 1:
                raise PresentationError(f"element {x} has no unique inverse")
            self._inv[x] = inv[0]
        for x, y, z in product(range(n), repeat=3):
            if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                raise PresentationError("multiplication table is not associative")

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self._inv[x]

    def elements(self):
        return list(range(self.order))

    def normalize(self, x):
        x = int(x)
        if not 0 <= x < self.order:
            raise PresentationError(f"element {x} outside table of order {self.order}")
        return x


def evaluate(word: Sequence[int], images: Sequence, group: FiniteGroup):
    x = group.identity
    for s in word:
        g = images[abs(s) - 1]
        x = group.mul(x, g if s > 0 else group.inv(g))
    return x


def generated_subgroup(gens: Sequence, group: FiniteGroup) -> list:
    """Elements of <gens>, in breadth-first order from the identity."""
    seen = {group.identity: None}
    order = [group.identity]
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for g in gens:
            for h in (g, group.inv(g)):
                y = group.mul(x, h)
                if y not in seen:
                    seen[y] = None
                    order.append(y)
                    queue.append(y)
    return order


@dataclass(frozen=True)
class FiniteQuotient:
    """A homomorphism from a presented group onto (a subgroup of) a finite group."""

    generators: tuple
    group: FiniteGroup
    images: tuple
    relators: tuple = ()

    def __post_init__(self):
        if len(self.images) != len(self.generators):
            raise PresentationError("one image per generator required")
        for r in self.relators:
            if evaluate(r, self.images, self.group) != self.group.identity:
                raise PresentationError("generator images do not satisfy the relators")

    @property
    def target_order(self) -> int:
        return self.group.order

    @cached_property
    def image_elements(self) -> list:
        return generated_subgroup(self.images, self.group)

    @property
    def image_order(self) -> int:
        return len(self.image_elements)

    @property
    def is_surjective(self) -> bool:
        return self.image_order == self.target_order

    def image_of(self, word: Sequence[int]):
        return evaluate(word, self.images, self.group)

    def restrict(self, pres: Presentation) -> "FiniteQuotient":
        """The same map read on a presentation whose generators are a prefix of ours."""
        n = len(pres.generators)
        if tuple(pres.generators) != tuple(self.generators[:n]):
            raise PresentationError("presentation generators do not match the quotient")
        return FiniteQuotient(tuple(pres.generators), self.group, self.images[:n], tuple(pres.relators))


def mod2_homology_cover(genus: int) -> FiniteQuotient:
    """pi_1(S_g) -> H_1(S_g; Z/2), each a_i, b_i sent to its basis vector."""
    if genus < 1:
        raise PresentationError("genus must be at least 1")
    pres = SurfacePresentation(genus)
    group = ElementaryAbelian2(2 * genus)
    images = tuple(1 << i for i in range(2 * genus))
    return FiniteQuotient(pres.generators, group, images, (pres.relator,))


def kernel_membership(word, quotient: FiniteQuotient) -> bool:
    if isinstance(word, str):
        word = parse_word(word, quotient.generators)
    for s in word:
        if not s or abs(s) > len(quotient.generators):
            raise PresentationError(f"unknown generator index {s}")
    return quotient.image_of(word) == quotient.group.identity


# ---------------------------------------------------------------------------
# coset actions


@dataclass(frozen=True)
class CosetAction:
    """Transitive right action of a free group on cosets 0..index-1 (base coset 0).

    ``perms[i][c]`` is the coset reached from c by generator i+1.
    """

    perms: tuple

    @property
    def index(self) -> int:
        return len(self.perms[0]) if self.perms else 1

    def act(self, coset: int, letter: int) -> int:
        if letter > 0:
            return self.perms[letter - 1][coset]
        return self._inverse[-letter - 1][coset]

    @cached_property
    def _inverse(self) -> tuple:
        out = []
        for p in self.perms:
            q = [0] * len(p)
            for c, d in enumerate(p):
                q[d] = c
            out.append(tuple(q))
        return tuple(out)


def coset_action(quotient: FiniteQuotient, subgroup: Optional[Sequence] = None) -> CosetAction:
    """Action on right cosets K*g of ``subgroup`` K in the image of the quotient.

    With ``subgroup=None`` K is trivial and the stabiliser of the base coset
    is the kernel of the quotient map.
    """
    grp = quotient.group
    elements = quotient.image_elements
    if subgroup is None:
        label = {x: i for i, x in enumerate(elements)}
        key = lambda x: label[x]  # noqa: E731
        n = len(elements)
    else:
        K = list(subgroup)
        label: dict = {}
        n = 0
        for x in elements:
            if x in label:
                continue
            for k in K:
                label[grp.mul(k, x)] = n
            n += 1
        key = lambda x: label[x]  # noqa: E731
    reps: list = [None] * n
    for x in elements:
        if reps[key(x)] is None:
            reps[key(x)] = x
    perms = []
    for g in quotient.images:
        perms.append(tuple(key(grp.mul(reps[c], g)) for c in range(n)))
    return CosetAction(tuple(perms))


# ---------------------------------------------------------------------------
# Reidemeister-Schreier


@dataclass(frozen=True)
class SubgroupPresentation:
    """Presentation of a finite-index subgroup on its Schreier generators.

    ``schreier_generators[k] = (coset, generator)`` stands for
    t_c * x * (t_{c.x})^{-1} with t the shortlex transversal.
    """

    schreier_generators: tuple
    rewritten_relators: tuple
    index: int
    transversal: tuple = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.schreier_generators)


def shortlex_transversal(action: CosetAction, ngens: int) -> tuple[list, dict]:
    """Breadth-first coset representatives; letters tried in order x1, X1, x2, X2, ...

    Returns (representative words, tree edges) where tree edges maps
    (coset, generator) pairs used by the spanning tree.
    """
    letters = [s for i in range(1, ngens + 1) for s in (i, -i)]
    reps: list = [None] * action.index
    reps[0] = ()
    tree = set()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for s in letters:
            d = action.act(c, s)
            if reps[d] is None:
                reps[d] = reps[c] + (s,)
                tree.add((c, s) if s > 0 else (d, -s))
                queue.append(d)
    if any(r is None for r in reps):
        raise NonSurjectiveError("coset action is not transitive")
    return reps, tree


def _rewrite(word: Sequence[int], start: int, action: CosetAction, label: Mapping) -> Word:
    out = []
    c = start
    for s in word:
        if s > 0:
            k = label.get((c, s))
            if k is not None:
                out.append(k)
            c = action.act(c, s)
        else:
            d = action.act(c, s)
            k = label.get((d, -s))
            if k is not None:
                out.append(-k)
            c = d
    return free_reduce(out)


def reidemeister_schreier_action(pres: Presentation, action: CosetAction) -> SubgroupPresentation:
    ngens = pres.rank
    if len(action.perms) != ngens:
        raise PresentationError("coset action does not match the presentation's generators")
    reps, tree = shortlex_transversal(action, ngens)
    gens = []
    label = {}
    for c in range(action.index):
        for x in range(1, ngens + 1):
            if (c, x) not in tree:
                label[(c, x)] = len(gens) + 1
                gens.append((c, x))
    for r in pres.relators:
        if any(_walk(action, c, r) != c for c in range(action.index)):
            raise PresentationError("relator does not act trivially on cosets")
    relators = []
    for c in range(action.index):
        for r in pres.relators:
            relators.append(_rewrite(r, c, action, label))
    return SubgroupPresentation(tuple(gens), tuple(relators), action.index, tuple(reps))


def _walk(action: CosetAction, c: int, word: Sequence[int]) -> int:
    for s in word:
        c = action.act(c, s)
    return c


def reidemeister_schreier(pres, quotient: FiniteQuotient) -> SubgroupPresentation:
    """Presentation of ker(quotient) on Schreier generators, shortlex transversal.

    For a punctured surface the free presentation (c_n eliminated) is used.
    """
    p = as_presentation(pres)
    n = len(p.generators)
    if tuple(quotient.generators[:n]) != tuple(p.generators):
        raise PresentationError("quotient is not defined on the presentation's generators")
    if not quotient.is_surjective:
        raise NonSurjectiveError(
            f"image has order {quotient.image_order}, target has order {quotient.target_order}"
        )
    q = quotient if len(quotient.generators) == n else FiniteQuotient(
        tuple(p.generators), quotient.group, quotient.images[:n], tuple(p.relators)
    )
    if q.image_order != q.target_order:
        raise NonSurjectiveError("quotient restricted to the free generators is not surjective")
    return reidemeister_schreier_action(p, coset_action(q))


def relator_matrix(sub: SubgroupPresentation) -> Optional[RationalMatrix]:
    n = sub.rank
    rows = [exponent_sums(r, n) for r in sub.rewritten_relators]
    rows = [r for r in rows if any(r)]
    if not rows or n == 0:
        return None
    return RationalMatrix(rows)


def abelianized_rank(sub: SubgroupPresentation) -> int:
    """Rank of H_1 over Q: generator count minus rank of the relator exponent matrix."""
    m = relator_matrix(sub)
    return sub.rank - (m.rank() if m is not None else 0)


def group_as_subgroup(pres) -> SubgroupPresentation:
    """The index-1 subgroup, i.e. the presented group itself."""
    p = as_presentation(pres)
    trivial = FiniteQuotient(tuple(p.generators), ElementaryAbelian2(0), (0,) * p.rank, tuple(p.relators))
    return reidemeister_schreier(p, trivial)


def subgroup_b1_via_riemann_hurwitz(genus: int, index: int) -> int:
    return 2 * riemann_hurwitz_genus(genus, index, [])


__all__ = [
    "CosetAction",
    "ElementaryAbelian2",
    "FiniteGroup",
    "FiniteQuotient",
    "MalformedCoverError",
    "NonSurjectiveError",
    "Presentation",
    "PresentationError",
    "SubgroupPresentation",
    "SurfacePresentation",
    "TableGroup",
    "abelianized_rank",
    "commutator",
    "coset_action",
    "euler_characteristic",
    "evaluate",
    "format_word",
    "free_reduce",
    "generated_subgroup",
    "group_as_subgroup",
    "invert",
    "kernel_membership",
    "mod2_homology_cover",
    "parse_word",
    "product_presentation",
    "reidemeister_schreier",
    "reidemeister_schreier_action",
    "riemann_hurwitz_genus",
]
