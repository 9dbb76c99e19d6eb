import json

import pytest

from fibering.branchedcover import (
    BranchError,
    DoubleCoverModel,
    LiftVariant,
    ModelError,
    ak_monodromy_element,
    check_pairing_doubles,
    default_model,
    difference_span,
    lift_difference,
    lifted_push_squared,
    lifted_push_squared_from_twists,
    transfer_down,
    transfer_image,
    transfer_up,
)
from fibering.exactq import RationalMatrix
from fibering.homology import MappingAction, eigenspace, is_symplectic

MODEL = default_model()
BASE = MODEL.base
LABELS = [f"{p}{i}" for i in (1, 2, 3) for p in "ab"]


def test_sigma_eigenspaces():
    assert MODEL.h_plus.dim == 6 and MODEL.h_minus.dim == 6
    assert eigenspace(MODEL.sigma, 1) == transfer_image(MODEL)
    assert is_symplectic(MODEL.sigma.matrix, MODEL.cover.form)


def test_transfer_identities():
    for label in LABELS:
        c = BASE[label]
        assert transfer_down(transfer_up(c, MODEL), MODEL) == c + c
    assert check_pairing_doubles(BASE["a1"], BASE["b1"], MODEL)


def test_differences_span_h_minus():
    assert difference_span([BASE[l] for l in LABELS], MODEL) == MODEL.h_minus


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize("sign", [1, -1])
def test_case1_lift_fixes_h_plus(label, sign):
    M = lifted_push_squared(BASE[label], MODEL, LiftVariant(sign))
    for v in MODEL.h_plus.basis:
        assert M.matrix.apply(v) == v


@pytest.mark.parametrize("label", LABELS)
def test_twist_oracle_matches_closed_form(label):
    g = BASE[label]
    assert lifted_push_squared_from_twists(g, MODEL, True).matrix == lifted_push_squared(g, MODEL, LiftVariant(1)).matrix
    assert lifted_push_squared_from_twists(g, MODEL, False).matrix == lifted_push_squared(g, MODEL, LiftVariant(-1)).matrix


def test_sigma_twist_variant_is_symplectic():
    for v in (LiftVariant(1, True), LiftVariant(-1, True)):
        assert isinstance(ak_monodromy_element(BASE["a1"], MODEL, variant=v), MappingAction)


def test_single_lift_has_no_difference():
    odd = DoubleCoverModel(MODEL.base, MODEL.cover, MODEL.sigma, epsilon=(1, 0, 0, 0, 0, 0))
    with pytest.raises(BranchError):
        lift_difference(odd.base["a1"], odd)
    assert lift_difference(odd.base["b1"], odd) == odd.tilde(odd.base["b1"]) - odd.bar(odd.base["b1"])


def test_model_rejects_non_involution():
    bad = MappingAction(RationalMatrix.identity(12), MODEL.cover, "id")
    with pytest.raises(ModelError):
        DoubleCoverModel(MODEL.base, MODEL.cover, bad)


def test_json_roundtrip():
    data = json.loads(MODEL.to_json())
    again = DoubleCoverModel.from_dict(data)
    assert again.sigma.matrix == MODEL.sigma.matrix
    assert again.h_plus == MODEL.h_plus
    assert again.to_json() == MODEL.to_json()
