import pytest
from hypothesis import given, settings, strategies as st

from fibering.surfgroup import (
    ElementaryAbelian2,
    FiniteQuotient,
    MalformedCoverError,
    Presentation,
    PresentationError,
    SurfacePresentation,
    TableGroup,
    abelianized_rank,
    coset_action,
    euler_characteristic,
    exponent_sums,
    format_word,
    free_reduce,
    group_as_subgroup,
    invert,
    kernel_membership,
    mod2_homology_cover,
    parse_word,
    product_presentation,
    reidemeister_schreier,
    reidemeister_schreier_action,
    riemann_hurwitz_genus,
    shortlex_transversal,
    subgroup_b1_via_riemann_hurwitz,
)

GENS = ("a1", "b1", "a2", "b2")


@pytest.mark.parametrize(
    "g, d, branch, expected",
    [(3, 2, [2, 2], 6), (3, 64, [], 129), (129, 2, [2] * 128, 321), (2, 1, [], 2), (1, 5, [], 1)],
)
def test_riemann_hurwitz_values(g, d, branch, expected):
    assert riemann_hurwitz_genus(g, d, branch) == expected


def test_riemann_hurwitz_errors():
    with pytest.raises(MalformedCoverError):
        riemann_hurwitz_genus(2, 3, [2])
    with pytest.raises(MalformedCoverError):
        riemann_hurwitz_genus(2, 2, [2])  # odd ramification total
    with pytest.raises(MalformedCoverError):
        riemann_hurwitz_genus(2, 0)


def test_word_roundtrip():
    w = parse_word("a1 b1 A1 B1", GENS)
    assert w == (1, 2, -1, -2)
    assert format_word(w, GENS) == "a1 b1 A1 B1"
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert invert(w) == (2, 1, -2, -1)
    with pytest.raises(ValueError):
        parse_word("a1 z9", GENS)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), max_size=12))
def test_word_inverse_reduces_to_identity(w):
    assert free_reduce(tuple(w) + invert(w)) == ()
    assert exponent_sums(invert(w), 4) == [-x for x in exponent_sums(w, 4)]


def test_surface_presentation_shapes():
    closed = SurfacePresentation(2)
    assert closed.presentation().relators == ((1, 2, -1, -2, 3, 4, -3, -4),)
    punct = SurfacePresentation(2, 1)
    assert punct.is_free and punct.free_rank == 4
    assert punct.presentation().rank == 4
    assert euler_characteristic(3) == -4 and euler_characteristic(2, 1) == -3


def test_product_presentation_has_cross_commutators():
    p = product_presentation(Presentation(("a",)), Presentation(("x", "y")))
    assert (1, 2, -1, -2) in p.relators and (1, 3, -1, -3) in p.relators


def test_quotient_validates_relators():
    pres = SurfacePresentation(1).presentation()
    with pytest.raises(PresentationError):
        # two distinct transpositions in S3 do not commute
        s3 = TableGroup(_s3_table())
        FiniteQuotient(pres.generators, s3, (1, 2), pres.relators)


def _s3_table():
    import itertools

    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]


def test_table_group_rejects_garbage():
    with pytest.raises(PresentationError):
        TableGroup([[0, 1], [0, 1]])


def test_kernel_membership():
    q = mod2_homology_cover(3)
    assert kernel_membership("a1 a1", q)
    assert kernel_membership("b2 a1 b2 a1", q)
    assert not kernel_membership("a1 b1", q)


def test_transversal_is_shortlex_prefix_closed():
    q = mod2_homology_cover(2)
    reps, tree = shortlex_transversal(coset_action(q), 4)
    assert reps[0] == ()
    assert all(r[:-1] in reps for r in reps if r)
    assert len(reps) == 16 and len(tree) == 15


@pytest.mark.parametrize("genus, index, gens, b1", [(1, 4, 5, 2), (2, 16, 49, 34)])
def test_schreier_oracle_small(genus, index, gens, b1):
    sub = reidemeister_schreier(SurfacePresentation(genus), mod2_homology_cover(genus))
    assert (sub.index, sub.rank, abelianized_rank(sub)) == (index, gens, b1)
    assert b1 == subgroup_b1_via_riemann_hurwitz(genus, index)


def test_free_group_schreier_rank():
    # index-k subgroups of a free group of rank r have rank k(r-1)+1
    pres = SurfacePresentation(1, 2).presentation()
    q = FiniteQuotient(pres.generators, ElementaryAbelian2(1), (1, 0, 0), pres.relators)
    sub = reidemeister_schreier_action(pres, coset_action(q))
    assert sub.rank == 2 * (3 - 1) + 1 and abelianized_rank(sub) == 5


def test_group_as_subgroup():
    assert abelianized_rank(group_as_subgroup(SurfacePresentation(3))) == 6
