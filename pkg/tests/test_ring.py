import pytest

from normforge.errors import ContextMismatch, MixedContext, UnknownVariable
from normforge.groups import build_group, subgroup_generated
from normforge.ring import (FormalPoly, NCPoly, RingContext, is_norm_one,
                            nf_equal, normal_form, stats, substitute, to_latex,
                            to_text)


@pytest.fixture
def c4():
    G = build_group("C4")
    E = subgroup_generated(G, ["s2"])
    return RingContext(G, [E], ["x_E"])


def test_norm_of_variable(c4):
    x = c4.x(0)
    assert is_norm_one(subgroup_generated(c4.group, ["s2"]), x)
    # N_G(x_E) = [G:E]
    assert nf_equal(x.norm(range(4)), c4.const(2))
    assert not is_norm_one(c4.group.trivial(), x)
    assert is_norm_one(c4.group.trivial(), c4.one())


def test_normal_form_rewrites_eliminated(c4):
    G = c4.group
    s2 = G.index("s2")
    x = c4.x(0)
    # s2 and e are one coset; the larger index is eliminated
    assert (x.act(s2)).normal_form() == c4.one() - x
    assert x.act(s2).normal_form().is_reduced()


def test_arithmetic(c4):
    x = c4.x(0)
    y = c4.x(0, 1)
    assert (x + y) * (x - y) == x * x - x * y + y * x - y * y
    assert x.scale(0).is_zero()
    assert (x ** 2) == x * x
    assert stats(x * y * x + 1) == (2, 3)
    assert 1 - x == -(x - 1)


def test_action_is_homomorphism(c4):
    G = c4.group
    p = c4.x(0, 1) * c4.x(0) + 3
    for g in range(4):
        for h in range(4):
            assert p.act(G.mul[g][h]) == p.act(h).act(g)


def test_mixed_context(c4):
    other = RingContext(build_group("C2"), [build_group("C2").whole()])
    with pytest.raises(MixedContext):
        c4.x(0) + other.x(0)


def test_unknown_variable(c4):
    with pytest.raises(UnknownVariable):
        c4.var_index(c4.group.whole())


def test_substitute(c4):
    x = c4.x(0)
    assert substitute(x, 0, c4.one()) == c4.one()
    p = x * x.act(1)
    q = p.substitute({0: x + 1}, c4)
    assert q == (x + 1) * (x.act(1) + 1)


def test_substitute_needs_matching_context(c4):
    G = c4.group
    other = RingContext(G, [G.whole()])
    with pytest.raises(ContextMismatch):
        c4.x(0).substitute({}, other)


def test_formal_poly_keeps_duplicates(c4):
    x = FormalPoly.of(c4.x(0))
    f = x + x - x
    assert len(f) == 3
    assert f.collect() == c4.x(0)
    assert normal_form(c4.x(0)) == f.normal_form()


def test_rendering(c4):
    G = c4.group
    p = c4.x(0) * c4.x(0, G.index("s")) - c4.x(0) * c4.x(0)
    assert to_latex(p) == "-x_{E}^{2} + x_{E}\\sigma(x_{E})"
    assert to_text(p) == "-x_E*x_E + x_E*s(x_E)"
    assert to_text(c4.zero()) == "0"
