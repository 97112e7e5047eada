"""Numerical cross-check in the matrix ring M_n(Z), n = |G|.

G acts on M_n(Z) by conjugation with its left-regular permutation matrices.
For a subgroup H the diagonal idempotent on a set of right-coset
representatives has norm one for H; adding M - h0(M) for h0 in H keeps the
norm and makes the inputs noncommute.  A formula that is not a formula
generally fails here, independently of the symbolic normal forms.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, MixedContext
from .groups import Subgroup, coset_reps

_INT_LIMIT = 2**62


def regular_action(G):
    """Permutation matrices P_g with P_g e_h = e_{gh}, as a list indexed by g."""
    n = G.order
    out = []
    for g in range(n):
        P = np.zeros((n, n), dtype=np.int64)
        for h in range(n):
            P[G.mul[g][h], h] = 1
        out.append(P)
    return out


def act_matrix(G, g, X):
    """g(X) = P_g X P_g^{-1}, done by index permutation."""
    inv = G.inv[g]
    idx = np.array([G.mul[inv][a] for a in range(G.order)])
    return X[np.ix_(idx, idx)]


def model_norm_one(G, H):
    """Diagonal idempotent on right-coset representatives of H."""
    X = np.zeros((G.order, G.order), dtype=np.int64)
    for r in coset_reps(G, H, "right"):
        X[r, r] = 1
    return X


def perturbation(G, H, rng, spread=1):
    """M - h0(M) with M random and h0 a non-identity element of H (zero if H is trivial)."""
    M = rng.integers(-spread, spread + 1, size=(G.order, G.order)).astype(np.int64)
    others = [h for h in H.members if h != 0]
    if not others:
        return np.zeros_like(M)
    h0 = others[int(rng.integers(len(others)))]
    return M - act_matrix(G, h0, M)


def norm_matrix(G, S, X):
    out = np.zeros_like(X)
    for g in S.members:
        out = out + act_matrix(G, g, X)
    return out


def _bound(values):
    return max((int(np.abs(V).max()) if V.size else 0) for V in values) if values else 0


def evaluate(poly, assignment=None, ctx=None):
    """Evaluate an NCPoly with var v -> assignment[v] (default: the model x_H).

    Uses int64 when a crude magnitude bound allows it, Python integers otherwise.
    """
    if ctx is not None and ctx != poly.ctx:
        raise MixedContext("polynomial is not in the given context")
    ctx = poly.ctx
    G, n = ctx.group, ctx.n
    size = G.order
    values = dict(assignment or {})
    for v, H in enumerate(ctx.vars):
        if v not in values:
            values[v] = model_norm_one(G, H)
        if np.shape(values[v]) != (size, size):
            raise DimensionMismatch(f"value for variable {v} is not {size}x{size}")
    deg = poly.degree()
    m = max(1, _bound([values[v] for v in values]))
    cmax = max((abs(c) for _, c in poly.items()), default=0)
    bound = len(poly) * cmax * (size ** max(deg - 1, 0)) * m ** deg
    dtype = np.int64 if bound < _INT_LIMIT else object
    cache = {}

    def sym(s):
        M = cache.get(s)
        if M is None:
            g, v = s % n, s // n
            M = act_matrix(G, g, values[v]).astype(dtype)
            cache[s] = M
        return M

    eye = np.eye(size, dtype=np.int64).astype(dtype)
    total = np.zeros((size, size), dtype=np.int64).astype(dtype)
    prefixes = {(): eye}
    for w, c in sorted(poly.items()):
        # reuse the longest cached prefix; words are sorted so neighbours share prefixes
        k = len(w)
        while w[:k] not in prefixes:
            k -= 1
        M = prefixes[w[:k]]
        for i in range(k, len(w)):
            M = M @ sym(w[i])
            prefixes[w[: i + 1]] = M
        total = total + c * M
        if len(prefixes) > 4096:
            prefixes = {(): eye}
    return total


def evaluate_tree(F, rng=None, perturb=True, spread=1, inputs=None):
    """Value of the whole formula tree; children are evaluated first.

    ``inputs`` maps subgroup member tuples to the matrix used for that input
    variable, so the same subgroup gets the same value throughout the tree.
    """
    inputs = {} if inputs is None else inputs
    G = F.group
    values = {}
    for v, H in enumerate(F.ctx.vars):
        if v in F.children:
            values[v] = evaluate_tree(F.children[v], rng, perturb, spread, inputs)
            continue
        X = inputs.get(H.members)
        if X is None:
            X = model_norm_one(G, H)
            if perturb and rng is not None:
                X = X + perturbation(G, H, rng, spread)
            inputs[H.members] = X
        values[v] = X
    return evaluate(F.poly, values)


def is_norm_one_matrix(G, S, X):
    N = norm_matrix(G, S, X)
    return bool(np.array_equal(N, np.eye(G.order, dtype=N.dtype)))


def oracle_check(S, poly, assignment=None, ctx=None, seed=None):
    """N_S(evaluate(poly)) = I, on the model inputs or on perturbed ones if ``seed`` is given."""
    G = poly.ctx.group
    if not isinstance(S, Subgroup):
        S = S.whole()
    if assignment is None and seed is not None:
        rng = np.random.default_rng(seed)
        assignment = node_inputs_poly(poly.ctx, rng)
    return is_norm_one_matrix(G, S, evaluate(poly, assignment, ctx))


def node_inputs_poly(ctx, rng, spread=1):
    G = ctx.group
    return {v: model_norm_one(G, H) + perturbation(G, H, rng, spread) for v, H in enumerate(ctx.vars)}


def oracle_check_formula(F, seed=0, trials=2, perturb=True):
    """Evaluate the tree on the model inputs (plus ``trials`` random perturbations)
    and check the norm identity at every node.  Returns True or False."""
    rng = np.random.default_rng(seed)
    runs = [(None, False)] + [(rng, True)] * (trials if perturb else 0)
    for r, pert in runs:
        inputs = {}
        for node in F.nodes():
            X = evaluate_tree(node, r, pert, 1, inputs)
            if not is_norm_one_matrix(F.group, node.target, X):
                return False
    return True
