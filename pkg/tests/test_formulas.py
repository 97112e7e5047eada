import pytest

from normforge import formulas as lib
from normforge.errors import (QuotientElementaryAbelian, SpecError,
                              UnsupportedBaseGroup)
from normforge.formula import Formula
from normforge.groups import build_group, center, subgroup_generated
from normforge.ring import is_norm_one


def test_bezout():
    assert lib.bezout([3, 2]) == [1, -1]
    assert lib.bezout([2, 3]) == [-1, 1]
    d = lib.bezout([8, 3])
    assert 8 * d[0] + 3 * d[1] == 1
    with pytest.raises(SpecError):
        lib.bezout([4, 6])


def test_elementary_and_restrict():
    G = build_group("Q8")
    F = lib.quaternion_formula(1)
    U = subgroup_generated(G, ["s"])
    R = lib.restrict_formula(F, U)
    assert R.target == U and R.verify()
    # two right cosets of <s>: x_U = x_G + t(x_G)
    assert len(R.poly) == 2
    E = lib.elementary_formula(G, ["s2"])
    assert E.is_leaf() and E.verify()


def test_restrict_to_whole_group_is_identity():
    F = lib.quaternion_formula(1)
    R = lib.restrict_formula(F, F.group.whole())
    assert len(R.poly) == 1 and R.poly == R.ctx.x(0)
    assert R.children[0] is F


def test_conjugate_in_d8():
    F = lib.dihedral_formula(2)
    G = F.group
    U1 = subgroup_generated(G, ["s2", "t"])
    E = lib.elementary_formula(G, U1)
    C = lib.conjugate_formula(E, "s")
    assert C.target == subgroup_generated(G, [G.conj(G.index("s"), g) for g in U1.members])
    assert C.verify()


def test_central_reduction_rejects_elementary_quotient():
    G = build_group("Q8")
    with pytest.raises(QuotientElementaryAbelian):
        lib.central_reduction(G, G.whole(), center(G))


def test_c8_through_palfy():
    G = build_group("C8")
    U = subgroup_generated(G, ["s4"])
    F = lib.central_reduction(G, G.whole(), U)
    assert F.verify()
    assert any(c.name == "C4" for c in F.nodes())


def test_c9_two_routes():
    # the central reduction route and the closed formula both verify; equality is not claimed
    G = build_group("C9")
    direct = lib.cp2_formula(3)
    assert direct.verify()
    assert lib.theorem22_formula(G).verify()


def test_unsupported_base():
    with pytest.raises(UnsupportedBaseGroup):
        lib._library_source("He27")


def test_product_with_trivial_factor_and_klein():
    G = build_group("E(2,2)")
    H = subgroup_generated(G, [G.generators[0]])
    C = subgroup_generated(G, [G.generators[1]])
    F = lib.product_reduction(G, H, C, lib.elementary_formula(G, H))
    assert F.target == G.whole() and F.verify()
    T = G.trivial()
    F0 = lib.product_reduction(G, T, C, lib.trivial_formula(G))
    assert F0.poly == F0.ctx.x(F0.ctx.var_index(C))


@pytest.mark.parametrize("spec", ["C6", "C12", "Q8xC3", "S3xC2"])
def test_sylow_mixed_orders(spec):
    F = lib.reduce_formula(build_group(spec))
    assert F.verify()


@pytest.mark.parametrize("spec", ["D8xC2", "Q8xC4", "C9xC3"])
def test_theorem25(spec):
    assert lib.theorem25_formula(build_group(spec)).verify()


def test_expand_matches_tree():
    F = lib.quaternion_formula(1)
    E = F.expanded()
    assert E.stats() == (658, 9)
    assert F.formal_stats() == (666, 9)
    assert is_norm_one(F.target, E.poly)


def test_json_round_trip():
    for F in (lib.palfy_c4(), lib.g27_formula(), lib.theorem22_formula(build_group("C16"))):
        text = F.dumps()
        back = Formula.loads(text)
        assert back.dumps() == text
        assert back.poly == F.poly and back.verify()


def test_json_errors():
    with pytest.raises(SpecError):
        Formula.loads("not json")
    with pytest.raises(SpecError):
        Formula.loads('{"group": "C4"}')


def test_family_bounds():
    with pytest.raises(SpecError):
        lib.quaternion_formula(4)
    with pytest.raises(SpecError):
        lib.dihedral_formula(1)
    with pytest.raises(SpecError):
        lib.cp2_formula(11)
