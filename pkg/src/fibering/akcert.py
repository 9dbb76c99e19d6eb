"""Atiyah-Kodaira pipeline: invariant homology of the fiber, b1, and the Fib = 2 certificate."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

from .branchedcover import (
    DEFAULT_VARIANT,
    DoubleCoverModel,
    LiftVariant,
    ak_monodromy_element,
    default_model,
    transfer_image,
)
from .certificate import FiberingCertificate
from .exactq import Subspace, fixed_space
from .homology import HClass, MappingAction, tau_involution
from .prodring import two_fibering_certificate
from .surfgroup import (
    SurfacePresentation,
    abelianized_rank,
    exponent_sums,
    format_word,
    kernel_membership,
    mod2_homology_cover,
    parse_word,
    reidemeister_schreier,
    riemann_hurwitz_genus,
)

BASE_GENUS = 3
FIBER_GENUS = 6


class SelectionError(ValueError):
    pass


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class SelectedWord:
    """A square u*u in pi_1(S_3); the monodromy of u^2 is the lift of Push(u)^2 Push(τu)^2."""

    root: tuple
    variant: LiftVariant = DEFAULT_VARIANT

    @property
    def word(self) -> tuple:
        return self.root + self.root

    def text(self) -> str:
        return format_word(self.word, SurfacePresentation(BASE_GENUS).generators)


@dataclass(frozen=True)
class GeneratorSelection:
    words: tuple = field(default=())

    def __post_init__(self):
        q = mod2_homology_cover(BASE_GENUS)
        for w in self.words:
            if not w.root:
                raise SelectionError("empty word")
            if not kernel_membership(w.word, q):
                raise SelectionError(f"{w.text()} is not in the mod-2 kernel")

    def __len__(self):
        return len(self.words)

    def with_variants(self, variants: Sequence[LiftVariant]) -> "GeneratorSelection":
        if len(variants) != len(self.words):
            raise SelectionError("one variant per word required")
        return GeneratorSelection(tuple(SelectedWord(w.root, v) for w, v in zip(self.words, variants)))

    def texts(self) -> list:
        return [w.text() for w in self.words]


def square_root(word: Sequence[int]) -> tuple:
    word = tuple(word)
    n = len(word)
    if n == 0 or n % 2 or word[: n // 2] != word[n // 2:]:
        raise SelectionError("selection words must be squares u u")
    return word[: n // 2]


def selection_from_words(texts: Iterable[str], variant: LiftVariant = DEFAULT_VARIANT) -> GeneratorSelection:
    gens = SurfacePresentation(BASE_GENUS).generators
    words = []
    for t in texts:
        try:
            w = parse_word(t, gens)
        except ValueError as exc:
            raise SelectionError(str(exc)) from None
        words.append(SelectedWord(square_root(w), variant))
    return GeneratorSelection(tuple(words))


DEFAULT_WORDS = (
    "a1 a1", "a2 a2", "a3 a3", "b1 b1", "b2 b2", "b3 b3",
    "b2 a1 b2 a1", "b2 a3 b2 a3",
)
MINIMAL_WORDS = ("a1 a1", "b2 a1 b2 a1", "b1 b1")


def default_selection() -> GeneratorSelection:
    return selection_from_words(DEFAULT_WORDS)


def minimal_selection() -> GeneratorSelection:
    return selection_from_words(MINIMAL_WORDS)


def root_class(w: SelectedWord, model: DoubleCoverModel) -> HClass:
    return model.base.vector(exponent_sums(w.root, model.base.dim))


def monodromy_actions(selection: GeneratorSelection, model: DoubleCoverModel,
                      tau: Optional[MappingAction] = None) -> list:
    if tau is None:
        tau = tau_involution(model.base)
    return [ak_monodromy_element(root_class(w, model), model, tau, w.variant) for w in selection.words]


def invariant_subspace(selection: GeneratorSelection, model: Optional[DoubleCoverModel] = None,
                       tau: Optional[MappingAction] = None) -> Subspace:
    """Simultaneous fixed space of the lifted monodromy of every selected word."""
    if not len(selection):
        raise SelectionError("selection is empty")
    model = model or default_model()
    return fixed_space([a.matrix for a in monodromy_actions(selection, model, tau)], model.cover.dim)


@lru_cache(maxsize=None)
def base_b1(genus: int = BASE_GENUS) -> int:
    """b1 of the mod-2 homology cover of S_genus, by Reidemeister-Schreier."""
    sub = reidemeister_schreier(SurfacePresentation(genus), mod2_homology_cover(genus))
    return abelianized_rank(sub)


def base_b1_riemann_hurwitz(genus: int = BASE_GENUS) -> int:
    return 2 * riemann_hurwitz_genus(genus, 2 ** (2 * genus), [])


def b1_total(invariant_dim: int) -> int:
    if not 0 <= invariant_dim <= 2 * FIBER_GENUS:
        raise ValueError(f"invariant dimension {invariant_dim} outside [0, {2 * FIBER_GENUS}]")
    return base_b1() + invariant_dim


def parity_filter(lower: int, upper: int, base: int) -> int:
    """The unique d in [lower, upper] with base + d even."""
    if lower > upper:
        raise ParityError("empty interval")
    hits = [d for d in range(lower, upper + 1) if (base + d) % 2 == 0]
    if len(hits) != 1:
        raise ParityError(f"{len(hits)} parity-consistent values in [{lower}, {upper}]")
    return hits[0]


def minimal_route(model: Optional[DoubleCoverModel] = None, selection: Optional[GeneratorSelection] = None) -> dict:
    """Upper bound from a few words, lower bound from the transfer, parity to decide."""
    model = model or default_model()
    selection = selection or minimal_selection()
    upper = invariant_subspace(selection, model).dim
    lower = transfer_image(model).dim
    resolved = parity_filter(lower, upper, base_b1())
    return {"lower": lower, "upper": upper, "resolved": resolved, "words": selection.texts()}


AXIOM_PARITY = "b1(M_AK) is even (M_AK is Kähler)"
AXIOM_H2 = "(p1,p2)^* is injective in every degree (top-degree isomorphism plus Poincaré duality)"
AXIOM_NICK = "distinct fiberings have transverse H^1 pullbacks"


def ak_certificate(selection: Optional[GeneratorSelection] = None,
                   model: Optional[DoubleCoverModel] = None) -> FiberingCertificate:
    model = model or default_model()
    selection = selection or default_selection()
    cert = FiberingCertificate("M_AK")
    inv = invariant_subspace(selection, model)
    h_plus = transfer_image(model)
    b1_base = base_b1()
    b1_rh = base_b1_riemann_hurwitz()
    cert.dims = {"invariant": inv.dim, "b1_base": b1_base, "b1_total": b1_base + inv.dim}
    cert.add("selection words in mod-2 kernel", True, {"words": selection.texts()})
    cert.add("H+ contained in invariant subspace", h_plus.issubspace(inv), {"h_plus": h_plus.dim})
    cert.add("invariant subspace equals H+", inv == h_plus, {"invariant": inv.dim, "h_plus": h_plus.dim})
    cert.add("b1 of S_129 two ways", b1_base == b1_rh == 258,
             {"reidemeister_schreier": b1_base, "riemann_hurwitz": b1_rh})
    cert.add("H^1 decomposition", inv.dim == 6 and b1_base + inv.dim == 264,
             {"fiber_invariant": inv.dim, "base": b1_base, "total": b1_base + inv.dim})
    try:
        route = minimal_route(model)
        cert.add("minimal route agrees", route["resolved"] == inv.dim, route)
    except ParityError as exc:
        cert.add("minimal route agrees", False, {"error": str(exc)})
    cert.axioms += [AXIOM_PARITY, AXIOM_H2, AXIOM_NICK]
    if cert.all_passed:
        two = two_fibering_certificate((inv.dim, b1_base), True, True, manifold="M_AK")
        cert.checks += two.checks
        cert.notes += two.notes
        cert.conclude(2, "S_6 -> M_AK -> S_129 and S_321 -> M_AK -> S_3 are the only fiberings")
    else:
        cert.notes.append(f"invariant dimension bound: {h_plus.dim} <= dim <= {inv.dim}")
    return cert


ALL_VARIANTS = tuple(LiftVariant(s, t) for t in (False, True) for s in (1, -1))


def variant_assignments(k: int, exhaustive_limit: int = 5):
    """All 4^k assignments when k is small; otherwise uniform ones plus single-word deviations."""
    if k <= exhaustive_limit:
        yield from product(ALL_VARIANTS, repeat=k)
        return
    seen = set()
    for v in ALL_VARIANTS:
        uniform = (v,) * k
        seen.add(uniform)
        yield uniform
    for i in range(k):
        for v in ALL_VARIANTS[1:]:
            a = [DEFAULT_VARIANT] * k
            a[i] = v
            a = tuple(a)
            if a not in seen:
                seen.add(a)
                yield a


def lift_variant_survey(texts: Sequence[str] = MINIMAL_WORDS, model: Optional[DoubleCoverModel] = None,
                        exhaustive_limit: int = 5) -> list:
    """Invariant dimension and b1 for each lift-variant assignment; exploratory only."""
    model = model or default_model()
    base = selection_from_words(texts)
    tau = tau_involution(model.base)
    rows = []
    for assignment in variant_assignments(len(base), exhaustive_limit):
        sel = base.with_variants(assignment)
        dim = invariant_subspace(sel, model, tau).dim
        rows.append({
            "variants": [v.label() for v in assignment],
            "invariant_dim": dim,
            "b1": b1_total(dim),
        })
    return rows
