"""Finite regular covers E of a product B x F of closed surfaces.

A cover is given by a homomorphism pi_1(B) x pi_1(F) -> G onto a finite
group; pi_1(E) is its kernel. The B generators are a1, b1, ..., the F
generators x1, y1, ....
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Union

from .certificate import FiberingCertificate
from .prodring import two_fibering_certificate
from .surfgroup import (
    ElementaryAbelian2,
    FiniteGroup,
    FiniteQuotient,
    PresentationError,
    Presentation,
    TableGroup,
    abelianized_rank,
    coset_action,
    euler_characteristic,
    product_presentation,
    reidemeister_schreier_action,
    riemann_hurwitz_genus,
    surface_labels,
    surface_relator,
)

DISCREPANCY_NOTE = (
    "statement/proof discrepancy: the published statement of this result reads Fib(E)=1,"
    " while its proof concludes Fib(E)=2; this certificate asserts only that no fibering"
    " exists beyond the two projections p1 and p2"
)
AXIOM_H4 = (
    "H^4(Im(p1) x Im(p2); Q) -> H^4(E; Q) is an isomorphism, so by Poincaré duality"
    " the map is injective in every degree"
)


class SpecError(ValueError):
    pass


def base_presentation(genus: int) -> Presentation:
    return Presentation(surface_labels(genus), (surface_relator(genus),))


def fiber_presentation(genus: int) -> Presentation:
    return Presentation(surface_labels(genus, prefix=("x", "y")), (surface_relator(genus),))


@dataclass(frozen=True)
class ProductCoverSpec:
    genus_b: int
    genus_f: int
    group: FiniteGroup
    images: Mapping
    regular: bool = True
    name: str = ""

    def __post_init__(self):
        if self.genus_b < 2 or self.genus_f < 2:
            raise SpecError("both genera must be at least 2")
        if not self.regular:
            raise SpecError("only regular covers are supported")
        known = set(self.generators)
        for g in self.images:
            if g not in known:
                raise SpecError(f"unknown generator {g!r}")

    @property
    def b_generators(self) -> tuple:
        return base_presentation(self.genus_b).generators

    @property
    def f_generators(self) -> tuple:
        return fiber_presentation(self.genus_f).generators

    @property
    def generators(self) -> tuple:
        return self.b_generators + self.f_generators

    def image(self, label: str):
        return self.group.normalize(self.images.get(label, self.group.identity))

    def presentation(self) -> Presentation:
        return product_presentation(base_presentation(self.genus_b), fiber_presentation(self.genus_f))

    def quotient(self) -> FiniteQuotient:
        """The defining map; building it verifies every relator, including the cross commutators."""
        pres = self.presentation()
        images = tuple(self.image(g) for g in pres.generators)
        try:
            q = FiniteQuotient(pres.generators, self.group, images, pres.relators)
        except PresentationError as exc:
            raise SpecError(f"images do not define a homomorphism: {exc}") from None
        if not q.is_surjective:
            raise SpecError(f"map is not surjective: image order {q.image_order} of {q.target_order}")
        return q

    def factor_quotient(self, which: int) -> FiniteQuotient:
        pres = base_presentation(self.genus_b) if which == 1 else fiber_presentation(self.genus_f)
        images = tuple(self.image(g) for g in pres.generators)
        return FiniteQuotient(pres.generators, self.group, images, pres.relators)


def parse_spec(data: Union[dict, str, Path]) -> ProductCoverSpec:
    """Read {genusB, genusF, group, images, [rank | table], [regular], [name]}."""
    if isinstance(data, (str, Path)):
        try:
            data = json.loads(Path(data).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read spec: {exc}") from None
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    try:
        gb, gf = int(data["genusB"]), int(data["genusF"])
        kind = data["group"]
        images = dict(data.get("images", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed spec: {exc}") from None
    try:
        if kind == "elementary-abelian-2":
            group = ElementaryAbelian2(int(data["rank"]))
        elif kind == "table":
            group = TableGroup(data["table"])
        else:
            raise SpecError(f"unknown group kind {kind!r}")
        spec = ProductCoverSpec(gb, gf, group, images, bool(data.get("regular", True)), str(data.get("name", "")))
        for g in spec.generators:
            spec.image(g)
    except (KeyError, TypeError, PresentationError) as exc:
        raise SpecError(f"malformed spec: {exc}") from None
    return spec


@dataclass(frozen=True)
class CoverH1Data:
    b1_im1: int
    b1_im2: int
    b1_total: int
    index: int
    index_im1: int
    index_im2: int
    genus_im1: int
    genus_im2: int

    def as_tuple(self) -> tuple:
        return self.b1_im1, self.b1_im2, self.b1_total

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _factor_image_b1(spec: ProductCoverSpec, which: int) -> tuple:
    """(index, b1) of Im(p_which) = preimage of G_1 ∩ G_2 under the factor map."""
    q1, q2 = spec.factor_quotient(1), spec.factor_quotient(2)
    mine, other = (q1, q2) if which == 1 else (q2, q1)
    shared = set(other.image_elements)
    K = [x for x in mine.image_elements if x in shared]
    action = coset_action(mine, K)
    pres = base_presentation(spec.genus_b) if which == 1 else fiber_presentation(spec.genus_f)
    sub = reidemeister_schreier_action(pres, action)
    return action.index, abelianized_rank(sub)


def cover_h1_data(spec: ProductCoverSpec) -> CoverH1Data:
    q = spec.quotient()
    d1, b1_1 = _factor_image_b1(spec, 1)
    d2, b1_2 = _factor_image_b1(spec, 2)
    sub = reidemeister_schreier_action(spec.presentation(), coset_action(q))
    total = abelianized_rank(sub)
    return CoverH1Data(
        b1_im1=b1_1,
        b1_im2=b1_2,
        b1_total=total,
        index=q.image_order,
        index_im1=d1,
        index_im2=d2,
        genus_im1=riemann_hurwitz_genus(spec.genus_b, d1),
        genus_im2=riemann_hurwitz_genus(spec.genus_f, d2),
    )


def cover_certificate(spec: ProductCoverSpec) -> FiberingCertificate:
    cert = FiberingCertificate(f"E({spec.name})" if spec.name else "E")
    data = cover_h1_data(spec)
    cert.dims = data.to_dict()
    cert.add("regular cover of B x F", spec.regular, {"index": data.index})
    cert.add("H^1(E) = H^1(Im p1) + H^1(Im p2)", data.b1_total == data.b1_im1 + data.b1_im2, list(data.as_tuple()))
    cert.add(
        "factor images agree with Riemann-Hurwitz",
        data.b1_im1 == 2 * data.genus_im1 and data.b1_im2 == 2 * data.genus_im2,
        {"genus_im1": data.genus_im1, "genus_im2": data.genus_im2},
    )
    chi_e = data.index * euler_characteristic(spec.genus_b) * euler_characteristic(spec.genus_f)
    info = {"chi_E": chi_e}
    if data.index == data.index_im1 * data.index_im2:
        # E is then the product Im(p1) x Im(p2)
        product_chi = euler_characteristic(data.genus_im1) * euler_characteristic(data.genus_im2)
        cert.add("Euler characteristic multiplicative", chi_e == product_chi, dict(info, product=product_chi))
    else:
        cert.info("Euler characteristic multiplicative", info)
    cert.axioms.append(AXIOM_H4)
    cert.notes.append(DISCREPANCY_NOTE)
    if cert.all_passed:
        two = two_fibering_certificate((data.b1_im1, data.b1_im2), True, True, manifold=cert.manifold)
        cert.checks += two.checks
        cert.axioms += [a for a in two.axioms if a not in cert.axioms]
        cert.conclude(2, "no fibering beyond the two projections p1, p2")
    return cert


def example_specs() -> dict:
    """The three reference covers of S_2 x S_2."""
    trivial = ProductCoverSpec(2, 2, ElementaryAbelian2(0), {}, name="trivial")
    pullback = ProductCoverSpec(
        2, 2, ElementaryAbelian2(4),
        {"a1": 1, "b1": 2, "a2": 4, "b2": 8}, name="factor-pullback",
    )
    diagonal = ProductCoverSpec(2, 2, ElementaryAbelian2(1), {"a1": 1, "x1": 1}, name="diagonal-z2")
    return {s.name: s for s in (trivial, pullback, diagonal)}


def spec_to_dict(spec: ProductCoverSpec) -> dict:
    out = {"genusB": spec.genus_b, "genusF": spec.genus_f, "name": spec.name}
    if isinstance(spec.group, ElementaryAbelian2):
        out["group"] = "elementary-abelian-2"
        out["rank"] = spec.group.rank
        out["images"] = {
            g: [(spec.image(g) >> i) & 1 for i in range(spec.group.rank)] for g in spec.images
        }
    else:
        out["group"] = "table"
        out["table"] = [list(r) for r in spec.group.table]
        out["images"] = {g: spec.image(g) for g in spec.images}
    return out
