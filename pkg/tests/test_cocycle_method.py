import pytest

from normforge.cocycle import (CocycleOnSubgroup, cocycle_identities_check,
                               cocycle_validate)
from normforge.errors import (BadQuotient, CocycleLawFailure,
                              CompatibilityFailure, NonConstantPhiPart,
                              NonzeroCocycleOnTrivialGroup, NormFailure,
                              NormObstruction, NotNormal)
from normforge.groupring import (BContext, BElement, GroupRingElement, b_act,
                                 b_add, b_coerce, identity_check)
from normforge.groups import build_group, subgroup_generated
from normforge.method import (ansatz_solve, assemble, build_system,
                              check_solution, extend_b, integer_solve,
                              family_system, run_pipeline, standard_setup)
from normforge.ring import RingContext, is_norm_one
from normforge.witness import witness, witness_cyclic, witness_klein


# group ring ------------------------------------------------------------

def test_group_ring_basics():
    G = build_group("C4")
    s = GroupRingElement.element(G, G.index("s"))
    N = GroupRingElement.geometric(G, G.index("s"), 4)
    assert identity_check((s - 1) * N, GroupRingElement(G))
    assert N.augmentation() == 4
    assert identity_check(s ** 4, GroupRingElement.one(G))
    assert not identity_check(s, GroupRingElement.one(G))


def test_b_elements():
    G = build_group("Q8")
    U = subgroup_generated(G, ["s"])
    ctx = RingContext(G, [U])
    bc = BContext(G, U, "t", ctx)
    phi = BElement.phi_translate(bc, 0)
    # phi = 1 - t(phi) once the phi[0] part is folded
    assert phi == BElement(bc, ctx.one(), [0, -1])
    both = b_add(phi, b_act(G.index("t"), phi))
    assert b_coerce(both) == ctx.one()
    with pytest.raises(NonConstantPhiPart):
        b_coerce(BElement.phi_translate(bc, 1))
    with pytest.raises(BadQuotient):
        BContext(G, G.trivial(), "t", ctx)
    S3 = build_group("S3")
    with pytest.raises(NotNormal):
        BContext(S3, subgroup_generated(S3, ["s"]), "t", RingContext(S3, []))


# cocycles --------------------------------------------------------------

def test_coboundary_is_cocycle():
    G = build_group("D8")
    U = subgroup_generated(G, ["s2", "t"])
    ctx = RingContext(G, [U])
    v = ctx.x(0, 1) * ctx.x(0) + 2
    beta = CocycleOnSubgroup.coboundary(U, v)
    assert cocycle_validate(beta)
    assert all(cocycle_identities_check(beta).values())


def test_cocycle_law_failure():
    G = build_group("C2")
    ctx = RingContext(G, [G.whole()])
    bad = CocycleOnSubgroup(G.whole(), {1: ctx.x(0)}, ctx)
    assert not cocycle_validate(bad, raise_on_failure=False)
    with pytest.raises(CocycleLawFailure):
        cocycle_validate(bad)


# witnesses -------------------------------------------------------------

def test_cyclic_witness_count():
    G = build_group("Q8")
    U = subgroup_generated(G, ["s"])
    ctx = RingContext(G, [U])
    x = ctx.x(0)
    r = x - x.act(G.index("st"))
    w = witness_cyclic(U, "s", r, x)
    assert w.stats() == (12, 2)


def test_cyclic_witness_obstruction():
    G = build_group("C2")
    ctx = RingContext(G, [G.whole()])
    with pytest.raises(NormObstruction):
        witness_cyclic(G.whole(), 1, ctx.one(), ctx.x(0))


def test_klein_compatibility():
    G = build_group("E(2,2)")
    ctx = RingContext(G, [G.whole()])
    with pytest.raises(CompatibilityFailure):
        witness_klein(G.whole(), 1, 2, ctx.x(0), ctx.zero(), ctx.x(0))


def test_trivial_group_cocycle():
    G = build_group("C2")
    ctx = RingContext(G, [G.whole()])
    T = G.trivial()
    assert witness(T, {0: ctx.zero()}, ctx.x(0)).is_zero()
    with pytest.raises(NonzeroCocycleOnTrivialGroup):
        witness(T, CocycleOnSubgroup(T, {0: ctx.one()}, ctx), ctx.x(0), check=False)


# systems and pipeline --------------------------------------------------

def test_integer_solve():
    assert integer_solve([[2, 3]], [1], 2) is not None
    u, kernel = integer_solve([[2, 3]], [1], 2)
    assert 2 * u[0] + 3 * u[1] == 1 and len(kernel) == 1
    assert integer_solve([[2, 4]], [1], 2) is None


@pytest.mark.parametrize("spec", ["Q8", "D8", "G27"])
def test_ansatz_solutions_check(spec):
    st = standard_setup(spec)
    system = build_system(st.group, st.U, st.sigma, st.pres)
    pool = list(range(len(st.ctx.vars)))
    b = ansatz_solve(system, st.ctx, pool, gens=list(st.pres.gens))
    assert check_solution(system, b, st.ctx)
    fam = {"Q8": ("Q", 1), "D8": ("D", 2), "G27": ("G27", None)}[spec]
    assert check_solution(family_system(st.group, *fam), b, st.ctx)
    beta = extend_b(st.group, st.U, st.sigma, st.pres, b, st.ctx)
    w = witness(st.U, beta, st.ctx.x(0))
    y = assemble(st.group, st.U, st.sigma, b[st.sigma], w, st.ctx.x(0))
    assert is_norm_one(st.group, y)


def test_ansatz_pipeline():
    res = run_pipeline("Q8", solution="ansatz")
    assert is_norm_one(res.setup.group, res.y)


@pytest.mark.parametrize("spec", ["C4", "C8", "C9", "Q16", "D16", "C4xC2"])
def test_pipeline_verifies(spec):
    res = run_pipeline(spec)
    assert is_norm_one(res.setup.group, res.y)


def test_assemble_rejects_wrong_b():
    st = standard_setup("Q8")
    G, U, ctx = st.group, st.U, st.ctx
    with pytest.raises(NormFailure):
        assemble(G, U, st.sigma, ctx.zero(), ctx.zero(), ctx.x(0))
