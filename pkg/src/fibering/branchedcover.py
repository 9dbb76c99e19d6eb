"""The Z/2 branched double cover S_6 -> S_3 branched at two points.

Cover basis: ā1, b̄1, ā2, b̄2, ā3, b̄3, ã1, b̃1, ã2, b̃2, ã3, b̃3 (labels
``a1_bar`` ... ``b3_tilde``), with i(ā_k, b̄_k) = i(ã_k, b̃_k) = 1 and no
pairing between the two sheets. Every standard base generator has trivial
mod-2 cover class, so it lifts to two copies c̄ and c̃ = σ(c̄); the two
loops around the branch points have class 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactq import RationalMatrix, Subspace, image, kernel
from .homology import (
    HClass,
    MappingAction,
    SymplecticSpace,
    format_class,
    intersection,
    tau_involution,
    transvection_matrix,
    twist,
)

MODEL_VERSION = 1


class BranchError(ValueError):
    """A class with odd cover value was used where two lifts are needed."""


class ModelError(ValueError):
    pass


def _cover_labels(genus: int) -> tuple:
    bar = []
    tilde = []
    for i in range(1, genus + 1):
        bar += [f"a{i}_bar", f"b{i}_bar"]
        tilde += [f"a{i}_tilde", f"b{i}_tilde"]
    return tuple(bar + tilde)


@dataclass(frozen=True)
class LiftVariant:
    sign: int = 1
    sigma_twist: bool = False

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def label(self) -> str:
        return ("+" if self.sign > 0 else "-") + ("s" if self.sigma_twist else "")


DEFAULT_VARIANT = LiftVariant()


@dataclass(frozen=True)
class DoubleCoverModel:
    base: SymplecticSpace
    cover: SymplecticSpace
    sigma: MappingAction
    # cover value of each base basis class, then of the loops around the two branch points
    epsilon: tuple = field(default=None)
    branch_epsilon: tuple = (1, 1)

    def __post_init__(self):
        n = self.base.dim
        if self.cover.dim != 2 * n:
            raise ModelError("cover must have twice the base dimension")
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", (0,) * n)
        if len(self.epsilon) != n:
            raise ModelError("need one cover value per base basis class")
        if sum(self.branch_epsilon) % 2:
            raise ModelError("branch loop values must sum to zero mod 2")
        S = self.sigma.matrix
        if S @ S != RationalMatrix.identity(2 * n):
            raise ModelError("deck transformation must be an involution")
        plus, minus = self.h_plus.dim, self.h_minus.dim
        if (plus, minus) != (n, n):
            raise ModelError(f"deck transformation eigenspaces have dims ({plus}, {minus}), expected ({n}, {n})")

    @property
    def h_plus(self) -> Subspace:
        return kernel(self.sigma.matrix - RationalMatrix.identity(self.cover.dim))

    @property
    def h_minus(self) -> Subspace:
        return kernel(self.sigma.matrix + RationalMatrix.identity(self.cover.dim))

    def eps(self, c: HClass) -> int:
        total = sum((v * e for v, e in zip(c.coords, self.epsilon)), Fraction(0))
        if total.denominator != 1:
            raise BranchError(f"{format_class(c)} has no well-defined cover value")
        return int(total) % 2

    def bar(self, c: HClass) -> HClass:
        return HClass(self.cover, tuple(c.coords) + (Fraction(0),) * self.base.dim)

    def tilde(self, c: HClass) -> HClass:
        return HClass(self.cover, (Fraction(0),) * self.base.dim + tuple(c.coords))

    def to_dict(self) -> dict:
        return {
            "version": MODEL_VERSION,
            "base_labels": list(self.base.labels),
            "cover_labels": list(self.cover.labels),
            "form": [[str(x) for x in r] for r in self.cover.form.rows],
            "sigma": [[str(x) for x in r] for r in self.sigma.matrix.rows],
            "epsilon": list(self.epsilon),
            "branch_epsilon": list(self.branch_epsilon),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "DoubleCoverModel":
        if data.get("version") != MODEL_VERSION:
            raise ModelError(f"unsupported model version {data.get('version')!r}")
        base_labels = tuple(data["base_labels"])
        base = SymplecticSpace(len(base_labels) // 2, base_labels)
        cover = SymplecticSpace(len(data["cover_labels"]) // 2, tuple(data["cover_labels"]))
        form = RationalMatrix([[Fraction(x) for x in r] for r in data["form"]])
        if form != cover.form:
            raise ModelError("cover form does not match the standard symplectic form")
        sigma = MappingAction(RationalMatrix([[Fraction(x) for x in r] for r in data["sigma"]]), cover, "sigma")
        return cls(base, cover, sigma, tuple(data["epsilon"]), tuple(data["branch_epsilon"]))


def sheet_swap(n: int) -> RationalMatrix:
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = 1
    return RationalMatrix(rows)


def default_model(base_genus: int = 3) -> DoubleCoverModel:
    base = SymplecticSpace(base_genus)
    cover = SymplecticSpace(2 * base_genus, _cover_labels(base_genus))
    sigma = MappingAction(sheet_swap(base.dim), cover, "sigma")
    return DoubleCoverModel(base, cover, sigma)


def sigma_star(model: DoubleCoverModel) -> MappingAction:
    return model.sigma


def lift_difference(c: HClass, model: DoubleCoverModel) -> HClass:
    """c̃ - c̄, defined when c has two lifts."""
    if c.space != model.base:
        raise ValueError("class is not in the base space")
    if model.eps(c):
        raise BranchError(f"{format_class(c)} lifts to a single curve; no difference class")
    return model.tilde(c) - model.bar(c)


def transfer_up(c: HClass, model: DoubleCoverModel) -> HClass:
    """p^*(c) = c̄ + c̃."""
    return model.bar(c) + model.tilde(c)


def transfer_down(c: HClass, model: DoubleCoverModel) -> HClass:
    """p_*: both lifts project to the same base class."""
    n = model.base.dim
    coords = tuple(c.coords[i] + c.coords[n + i] for i in range(n))
    return HClass(model.base, coords)


def transfer_image(model: DoubleCoverModel) -> Subspace:
    cols = [transfer_up(model.base.vector([int(i == j) for j in range(model.base.dim)]), model).coords
            for i in range(model.base.dim)]
    return image(RationalMatrix.from_columns(cols))


def _apply_variant(M: RationalMatrix, model: DoubleCoverModel, variant: LiftVariant, label: str) -> MappingAction:
    if variant.sigma_twist:
        return MappingAction(model.sigma.matrix @ M, model.cover, f"sigma * {label}")
    return MappingAction(M, model.cover, label)


def lifted_push_squared(gamma: HClass, model: DoubleCoverModel, variant: LiftVariant = DEFAULT_VARIANT) -> MappingAction:
    """Lift of Push(gamma)^2: c -> c + sign i(c, d) d with d = γ̃ - γ̄, optionally followed by σ."""
    d = lift_difference(gamma, model)
    M = transvection_matrix(model.cover, d.coords, variant.sign)
    return _apply_variant(M, model, variant, f"LiftPush2[{format_class(gamma)}]{variant.label()}")


def lifted_push_squared_from_twists(gamma: HClass, model: DoubleCoverModel, x_lifts_twice: bool = True) -> MappingAction:
    """Lift of Push(gamma)^2 assembled from the lifted Dehn twists.

    Push(a)^2 = T_x^2 T_y^{-2}. The boundary curve with trivial cover value
    lifts to two disjoint copies (its squared twist lifts to the squared
    twists of both copies); the other lifts to one curve homologous to their
    sum (its squared twist lifts to a single twist).
    """
    d_bar = model.bar(gamma)
    d_tilde = model.tilde(gamma)
    single = d_bar + d_tilde
    if x_lifts_twice:
        action = twist(d_bar, 2) @ twist(d_tilde, 2) @ twist(single, -1)
    else:
        action = twist(single, 1) @ twist(d_bar, -2) @ twist(d_tilde, -2)
    return MappingAction(action.matrix, model.cover, f"twists[{format_class(gamma)}]")


def ak_monodromy_element(
    gamma: HClass,
    model: DoubleCoverModel,
    tau: Optional[MappingAction] = None,
    variant: LiftVariant = DEFAULT_VARIANT,
) -> MappingAction:
    """Lift of Push(γ)^2 Push(τγ)^2; the σ-twist of the variant is applied once to the product."""
    if tau is None:
        tau = tau_involution(model.base)
    tg = tau(gamma)
    plain = LiftVariant(variant.sign, False)
    M = lifted_push_squared(gamma, model, plain).matrix @ lifted_push_squared(tg, model, plain).matrix
    return _apply_variant(M, model, variant, f"phi[{format_class(gamma)}]{variant.label()}")


def difference_span(classes: Sequence[HClass], model: DoubleCoverModel) -> Subspace:
    vecs = [lift_difference(c, model).coords for c in classes]
    return Subspace(model.cover.dim, vecs)


def check_pairing_doubles(x: HClass, y: HClass, model: DoubleCoverModel) -> bool:
    return intersection(transfer_up(x, model), transfer_up(y, model)) == 2 * intersection(x, y)
