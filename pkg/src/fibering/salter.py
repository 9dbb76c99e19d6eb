"""Salter's doubled punctured product M_S = (S_g x S_g - Δ) ∪ (S_g x S_g - Δ).

H^1(M_S) sits in four copies of H^1(S_g) with coordinates (x, x', x̄, x̄'):
the first two are the p1/p2 pullbacks on the first piece E1, the last two
those on the second piece E2. It is the kernel of the coordinate sum.
Cup products are tested piecewise since H^2(M_S) injects into
H^2(E1) ⊕ H^2(E2).
"""

from __future__ import annotations

import random
from math import gcd
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .certificate import FiberingCertificate
from .exactq import RationalMatrix, Subspace, as_vector, integer_kernel, kernel, rank_of_vectors
from .prodring import (
    LemmaViolation,
    PuncturedProductRing,
    punctured_cup,
    random_rational,
    random_vector,
)

PULLBACK_NAMES = ("x - x̄", "x - x̄'", "x' - x̄", "x' - x̄'")
# (positive block, negative block) for each of the four fiberings
PULLBACK_BLOCKS = ((0, 2), (0, 3), (1, 2), (1, 3))
AXIOM_NICK = "distinct fiberings have transverse H^1 pullbacks"
AXIOM_PC = "in H^1(S_g x S_g - Δ), independent classes with zero cup lie in one factor's pullback"


class OutsideH1(ValueError):
    pass


def _check_genus(g: int):
    if g < 2:
        raise ValueError("genus must be at least 2")


@dataclass(frozen=True)
class MSSpace:
    g: int

    def __post_init__(self):
        _check_genus(self.g)

    @property
    def n(self) -> int:
        return 2 * self.g

    @property
    def ambient_dim(self) -> int:
        return 8 * self.g

    def blocks(self, u: Sequence) -> tuple:
        u = as_vector(u)
        n = self.n
        return tuple(u[k * n:(k + 1) * n] for k in range(4))

    def join(self, *blocks) -> tuple:
        out: tuple = ()
        for b in blocks:
            out += as_vector(b)
        return out

    def zeros(self) -> tuple:
        return as_vector([0] * self.n)

    def zero_pattern(self, u: Sequence) -> tuple:
        return tuple(not any(b) for b in self.blocks(u))

    @property
    def ring(self) -> PuncturedProductRing:
        return _ring(self.g)


@lru_cache(maxsize=None)
def _ring(g: int) -> PuncturedProductRing:
    return PuncturedProductRing(g)


def add_map(g: int) -> RationalMatrix:
    n = 2 * g
    return RationalMatrix([[int(c % n == r) for c in range(4 * n)] for r in range(n)])


@lru_cache(maxsize=None)
def ms_h1(g: int) -> Subspace:
    _check_genus(g)
    return kernel(add_map(g))


@lru_cache(maxsize=None)
def fibering_pullbacks(g: int) -> tuple:
    sp = MSSpace(g)
    out = []
    for pos, neg in PULLBACK_BLOCKS:
        vecs = []
        for i in range(sp.n):
            blocks = [[0] * sp.n for _ in range(4)]
            blocks[pos][i] = 1
            blocks[neg][i] = -1
            vecs.append(sp.join(*blocks))
        out.append(Subspace(sp.ambient_dim, vecs))
    return tuple(out)


def pattern_subspace(g: int, zero_blocks: Sequence[int]) -> Subspace:
    """Elements of H^1(M_S) whose listed coordinates vanish."""
    sp = MSSpace(g)
    n = sp.n
    rows = list(add_map(g).rows)
    for k in zero_blocks:
        for i in range(n):
            rows.append(tuple(int(c == k * n + i) for c in range(sp.ambient_dim)))
    return kernel(RationalMatrix(rows))


def _in_h1(u, g: int) -> bool:
    n = 2 * g
    if len(u) != 4 * n:
        return False
    return all(u[i] + u[n + i] + u[2 * n + i] + u[3 * n + i] == 0 for i in range(n))


def _require_h1(u, g):
    if not _in_h1(as_vector(u), g):
        raise OutsideH1("class is not in H^1(M_S): coordinates do not sum to zero")


def ms_cup(u: Sequence, v: Sequence, g: int) -> tuple:
    """(cup on E1, cup on E2), each in H^2(S_g x S_g - Δ)."""
    _require_h1(u, g)
    _require_h1(v, g)
    return _ms_cup(u, v, MSSpace(g))


def _ms_cup(u, v, sp: MSSpace) -> tuple:
    ub, vb = sp.blocks(u), sp.blocks(v)
    r = sp.ring
    return (
        punctured_cup(ub[0] + ub[1], vb[0] + vb[1], r),
        punctured_cup(ub[2] + ub[3], vb[2] + vb[3], r),
    )


def ms_cup_is_zero(u, v, g: int) -> bool:
    c1, c2 = ms_cup(u, v, g)
    return not any(c1) and not any(c2)


@lru_cache(maxsize=None)
def _cup_tensor(g: int) -> tuple:
    """T[k][j]: integer coordinates of e_k ∪ e_j over both pieces, for ambient unit vectors."""
    sp = MSSpace(g)
    N = sp.ambient_dim
    units = [tuple(int(i == k) for i in range(N)) for k in range(N)]
    out = []
    for k in range(N):
        row = []
        for j in range(N):
            c1, c2 = _ms_cup(units[k], units[j], sp)
            vals = c1 + c2
            if any(v.denominator != 1 for v in vals):
                raise ArithmeticError("cup structure constants are not integral")
            row.append(tuple(int(v) for v in vals))
        out.append(tuple(row))
    return tuple(out)


def ms_annihilator(u: Sequence, g: int) -> Subspace:
    """{v in H^1(M_S) : u ∪ v = 0}."""
    u = as_vector(u)
    _require_h1(u, g)
    den = 1
    for x in u:
        den = den * x.denominator // gcd(den, x.denominator)
    ui = [int(x * den) for x in u]
    T = _cup_tensor(g)
    N = len(u)
    m = len(T[0][0])
    cols = []
    for j in range(N):
        col = [0] * m
        for k, c in enumerate(ui):
            if c:
                for r, t in enumerate(T[k][j]):
                    if t:
                        col[r] += c * t
        cols.append(col)
    rows = [[cols[j][r] for j in range(N)] for r in range(m)]
    n = 2 * g
    rows += [[int(c % n == r) for c in range(N)] for r in range(n)]
    return integer_kernel(rows, N)


def _dependent(p: Sequence, q: Sequence) -> bool:
    return rank_of_vectors([p, q]) < 2


def salter_case_classify(u: Sequence, v: Sequence, g: int) -> tuple:
    """Label an independent zero-cup pair: ("1'" | "1", "2'" | "2").

    1'/2': both classes vanish in the same coordinate of piece E1/E2.
    1/2: the E1/E2 restrictions are linearly dependent.
    The vanishing label wins ties.
    """
    sp = MSSpace(g)
    _require_h1(u, g)
    _require_h1(v, g)
    if rank_of_vectors([u, v], sp.ambient_dim) < 2:
        raise ValueError("classes are dependent")
    if not ms_cup_is_zero(u, v, g):
        raise ValueError("cup product is nonzero")
    ub, vb = sp.blocks(u), sp.blocks(v)
    labels = []
    for piece, (i, j) in ((1, (0, 1)), (2, (2, 3))):
        if (not any(ub[i]) and not any(vb[i])) or (not any(ub[j]) and not any(vb[j])):
            labels.append(f"{piece}'")
        elif _dependent(ub[i] + ub[j], vb[i] + vb[j]):
            labels.append(f"{piece}")
        else:
            raise LemmaViolation(f"zero-cup pair fits neither case on piece {piece}")
    return tuple(labels)


def _common_pullback(u, v, g) -> int:
    for k, P in enumerate(fibering_pullbacks(g)):
        if P.contains(u) and P.contains(v):
            return k + 1
    return 0


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def _neg(v):
    return tuple(-a for a in v)


def _sum(*vs):
    return tuple(sum(x) for x in zip(*vs))


def _combine(coeffs, vectors) -> tuple:
    out = [0] * len(vectors[0])
    for c, e in zip(coeffs, vectors):
        if c:
            out = [a + c * b for a, b in zip(out, e)]
    return as_vector(out)


def _all_nonzero_family(sp: MSSpace):
    n = sp.n
    for i, j, k in product(range(n), repeat=3):
        x, y, z = _unit(n, i), _unit(n, j), _unit(n, k)
        yield sp.join(x, y, z, _neg(_sum(x, y, z)))
    for i, k in product(range(n), repeat=2):
        x, z = _unit(n, i), _unit(n, k)
        yield sp.join(x, _neg(x), z, _neg(z))


def _one_zero_family(sp: MSSpace):
    n = sp.n
    for zero in range(4):
        for i, j in product(range(n), repeat=2):
            x, y = _unit(n, i), _unit(n, j)
            others = [x, y, _neg(_sum(x, y))]
            blocks = others[:zero] + [sp.zeros()] + others[zero:]
            yield zero, sp.join(*blocks)


def structural_checks(g: int, cert: FiberingCertificate) -> None:
    sp = MSSpace(g)
    H = ms_h1(g)
    pulls = fibering_pullbacks(g)
    cert.add("dim H^1(M_S) = 6g", H.dim == 6 * g, {"dim": H.dim})
    cert.add(
        "pullbacks are 2g-dimensional subspaces of H^1(M_S)",
        all(P.dim == 2 * g and P.issubspace(H) for P in pulls),
        {"dims": [P.dim for P in pulls]},
    )
    pair_dims = {f"{a + 1}{b + 1}": pulls[a].intersect(pulls[b]).dim for a in range(4) for b in range(a + 1, 4)}
    cert.add("pullbacks pairwise transverse", not any(pair_dims.values()), pair_dims)

    # every class in a fibering subspace of dim 2h >= 4 has annihilator of dim >= 3
    worst = max(ms_annihilator(u, g).dim for u in _all_nonzero_family(sp))
    cert.add("all-nonzero classes: annihilator dim <= 2", worst <= 2, {"max_dim": worst})
    worst1 = max(ms_annihilator(u, g).dim for _, u in _one_zero_family(sp))
    cert.add("one-zero classes: annihilator dim <= 2", worst1 <= 2, {"max_dim": worst1})

    cross = {}
    for k, (pos, neg) in enumerate(PULLBACK_BLOCKS):
        zero_blocks = [b for b in range(4) if b not in (pos, neg)]
        cross[PULLBACK_NAMES[k]] = pattern_subspace(g, zero_blocks) == pulls[k]
    cert.add("cross-piece zero patterns are exactly the pullbacks", all(cross.values()), cross)

    # same-piece classes (x, -x, 0, 0) and (0, 0, z, -z)
    n = sp.n
    Z1 = pattern_subspace(g, [2, 3])
    Z2 = pattern_subspace(g, [0, 1])
    same_ok = True
    for Z, other in ((Z1, Z2), (Z2, Z1)):
        for u in Z.basis:
            ann = ms_annihilator(u, g)
            if ann != Subspace(sp.ambient_dim, [u]) + other:
                same_ok = False
    mixed = max(
        ms_annihilator(sp.join(_unit(n, i), _neg(_unit(n, i)), _unit(n, k), _neg(_unit(n, k))), g).dim
        for i in range(n) for k in range(n)
    )
    same_ok = same_ok and mixed <= 2
    cert.add(
        "same-piece classes are excluded",
        same_ok,
        {
            "in_pullback": any(Z1.intersect(P).dim or Z2.intersect(P).dim for P in pulls),
            "mixed_annihilator_max": mixed,
        },
    )
    cert.add(
        "three vanishing coordinates force zero",
        all(pattern_subspace(g, [b for b in range(4) if b != k]).dim == 0 for k in range(4)),
    )
    cert.notes.append(
        "a fibering subspace H = p^*H^1(B) has dim >= 4 and each u in H has annihilator"
        " of dim >= 3 inside H; classes with annihilator dim <= 2 cannot occur. A class"
        " (x,-x,0,0) has annihilator span(u) + {(0,0,z,-z)}, whose other members have"
        " annihilator dim <= 2, so its annihilator within H would be span(u). Hence H lies in"
        " the union of the four pullbacks, so in one of them"
    )


def _random_in_pattern(rng: random.Random, sp: MSSpace, zero_blocks: Sequence[int], height: int) -> tuple:
    free = [b for b in range(4) if b not in zero_blocks]
    n = sp.n
    while True:
        blocks = [sp.zeros() for _ in range(4)]
        for b in free[:-1]:
            blocks[b] = random_vector(rng, n, height)
        last = _neg(_sum(*[blocks[b] for b in free[:-1]])) if len(free) > 1 else sp.zeros()
        blocks[free[-1]] = last
        u = sp.join(*blocks)
        if all(any(blocks[b]) for b in free):
            return u


PATTERNS = (
    (), (0,), (1,), (2,), (3,),
    (1, 3), (1, 2), (0, 3), (0, 2),
    (2, 3), (0, 1),
)


def randomized_trials(g: int, trials: int, seed: int, height: int = 5) -> dict:
    sp = MSSpace(g)
    rng = random.Random(seed)
    stats = {"trials": trials, "seed": seed, "no_partner": 0, "cases": {}, "counterexamples": []}
    Z = (pattern_subspace(g, [2, 3]), pattern_subspace(g, [0, 1]))
    ann_dims: dict = {}

    def ann_dim(w):
        key = w
        if key not in ann_dims:
            ann_dims[key] = ms_annihilator(w, g).dim
        return ann_dims[key]

    for t in range(trials):
        pattern = PATTERNS[rng.randrange(len(PATTERNS))]
        u = _random_in_pattern(rng, sp, pattern, height)
        ann = ms_annihilator(u, g)
        if ann.dim < 2:
            stats["no_partner"] += 1
            continue
        while True:
            coeffs = [random_rational(rng, height) for _ in ann.basis]
            v = _combine(coeffs, ann.basis)
            if rank_of_vectors([u, v], sp.ambient_dim) == 2:
                break
        try:
            case = salter_case_classify(u, v, g)
        except LemmaViolation as exc:
            stats["counterexamples"].append({"trial": t, "reason": str(exc)})
            continue
        key = "".join(case)
        stats["cases"][key] = stats["cases"].get(key, 0) + 1
        if case == ("1'", "2'"):
            if not _common_pullback(u, v, g):
                stats["counterexamples"].append({"trial": t, "reason": "1'2' pair outside every pullback"})
            continue
        excluded = (
            ann.dim <= 2
            or ann_dim(v) <= 2
            or any(zs.contains(u) or zs.contains(v) for zs in Z)
        )
        if not excluded:
            stats["counterexamples"].append({"trial": t, "reason": f"unresolved {key} pair"})
    stats["cases"] = dict(sorted(stats["cases"].items()))
    return stats


def no_fifth_fibering_check(g: int, trials: int = 1000, seed: int = 0) -> FiberingCertificate:
    _check_genus(g)
    if trials < 0:
        raise ValueError("trials must be non-negative")
    cert = FiberingCertificate(f"M_S(g={g})")
    cert.dims = {"h1": 6 * g, "pullbacks": [2 * g] * 4}
    cert.axioms += [AXIOM_NICK, AXIOM_PC, "H^2(M_S) -> H^2(E1) ⊕ H^2(E2) is injective"]
    structural_checks(g, cert)
    if trials == 0:
        cert.notes.append("no randomized trials requested; conclusion withheld")
        return cert
    stats = randomized_trials(g, trials, seed)
    cert.add("randomized zero-cup pairs resolve", not stats["counterexamples"], stats)
    cert.conclude(4, "the four fiberings (p1,p1), (p1,p2), (p2,p1), (p2,p2) are the only ones")
    return cert
