import numpy as np
import pytest

from normforge import formulas as lib
from normforge.errors import DimensionMismatch
from normforge.groups import all_subgroups, build_group, catalog_specs
from normforge.oracle import (act_matrix, evaluate, model_norm_one,
                              norm_matrix, oracle_check, perturbation,
                              regular_action)
from normforge.ring import RingContext


def test_regular_action_is_homomorphism():
    for sp in catalog_specs(16):
        G = build_group(sp)
        P = regular_action(G)
        n = G.order
        assert (P[0] == np.eye(n, dtype=np.int64)).all()
        for g in range(n):
            assert (P[g] @ P[G.inv[g]] == np.eye(n, dtype=np.int64)).all()
            for h in range(n):
                assert (P[g] @ P[h] == P[G.mul[g][h]]).all()


def test_model_norm_one_every_subgroup_of_q8():
    G = build_group("Q8")
    for H in all_subgroups(G):
        X = model_norm_one(G, H)
        assert (norm_matrix(G, H, X) == np.eye(8, dtype=np.int64)).all()
    assert (model_norm_one(G, G.trivial()) == np.eye(8, dtype=np.int64)).all()


def test_perturbation_keeps_norm():
    G = build_group("D8")
    rng = np.random.default_rng(3)
    for H in all_subgroups(G):
        D = perturbation(G, H, rng)
        assert not norm_matrix(G, H, D).any()


def test_evaluate_constants_and_dimensions():
    G = build_group("C4")
    ctx = RingContext(G, [G.whole()])
    assert (evaluate(ctx.one()) == np.eye(4, dtype=np.int64)).all()
    with pytest.raises(DimensionMismatch):
        evaluate(ctx.x(0), {0: np.eye(3, dtype=np.int64)})


def test_evaluate_respects_action():
    G = build_group("Q8")
    ctx = RingContext(G, [all_subgroups(G)[1], G.whole()])
    rng = np.random.default_rng(0)
    vals = {0: rng.integers(-2, 3, (8, 8)), 1: rng.integers(-2, 3, (8, 8))}
    p = ctx.x(0, 3) * ctx.x(1) - 2 * ctx.x(1, 5) + 1
    P = regular_action(G)
    for g in range(8):
        lhs = evaluate(p.act(g), vals)
        rhs = P[g] @ evaluate(p, vals) @ P[g].T
        assert (lhs == rhs).all()
        assert (act_matrix(G, g, vals[0]) == P[g] @ vals[0] @ P[g].T).all()


def test_oracle_on_reference_formulas():
    F = lib.palfy_c4()
    assert oracle_check(F.group, F.poly)
    Q = lib.quaternion_formula(1)
    assert oracle_check(Q.group, lib.q8_reference(Q.ctx), {0: model_norm_one(Q.group, Q.ctx.vars[0])})


def test_object_fallback_agrees():
    G = build_group("C4")
    ctx = RingContext(G, [G.whole()])
    big = np.full((4, 4), 2**40, dtype=object)
    v = evaluate(ctx.x(0) * ctx.x(0), {0: big})
    assert v.dtype == object and v[0, 0] == 4 * 2**80
