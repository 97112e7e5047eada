"""Explicit coboundary witnesses: given a 1-cocycle beta on U and a norm-one x
for U, produce w with beta(g) = (g - 1) w for every g in U.

Every function here verifies its output with normal forms before returning.
The verification is what makes the recursion trustworthy, so it is not
optional.
"""
from __future__ import annotations

from .cocycle import CocycleOnSubgroup
from .errors import (CompatibilityFailure, NonzeroCocycleOnTrivialGroup,
                     NormObstruction, VerificationFailure)
from .groups import all_subgroups, prime_factors
from .ring import collected


def _zero(p):
    return collected(p).normal_form().is_zero()


def _geom_apply(p, G, g, k):
    return p.apply({G.power(g, i): 1 for i in range(k)}) if k else p.ctx.zero()


def cyclic_formula(sigma, order, r, x):
    """sum_{k=1}^{N-1} (1 + sigma + ... + sigma^{k-1})(x * sigma^{-k}(r)), no checks.

    Works for collected and formal polynomials alike.
    """
    G = r.ctx.group
    if isinstance(sigma, str):
        sigma = G.index(sigma)
    inv = G.inv[sigma]
    w = r.ctx.zero() if not hasattr(r, "collect") else r.scale(0)
    for k in range(1, order):
        term = x * r.act(G.power(inv, k))
        w = w + _geom_apply(term, G, sigma, k)
    return w


def witness_cyclic(U, sigma, r, x, ctx=None, order=None, check=True):
    """Witness for the cocycle on the cyclic group generated by sigma with beta(sigma) = r.

    ``order`` overrides the cycle length; the recursion uses this when sigma
    acts with order p on an invariant subring even though sigma^p != e.
    """
    G = r.ctx.group
    if isinstance(sigma, str):
        sigma = G.index(sigma)
    N = order or G.element_order(sigma)
    rc = collected(r)
    if check:
        if not _zero(_geom_apply(rc, G, sigma, N)):
            raise NormObstruction("(1 + sigma + ... + sigma^{N-1}) r is not zero")
    if rc.is_zero():
        return rc
    w = cyclic_formula(sigma, N, r, x)
    if check:
        wc = collected(w)
        for i in range(1, N):
            lhs = wc.act(G.power(sigma, i)) - wc
            if not _zero(lhs - _geom_apply(rc, G, sigma, i)):
                raise VerificationFailure(f"cyclic witness fails for sigma^{i}")
    return w


def witness_klein(U, s1, s2, r, s, x, ctx=None, check=True):
    """Witness for U = <s1> x <s2> of type (2, 2) with beta(s1) = r, beta(s2) = s.

    w = (1 + s2)(x) s1(r) + (1 + s1)(x) s2(s) + (1 + s1)(x) (1 + s2)(x) s1(s2 - 1)(r)
    """
    G = r.ctx.group
    s1 = G.index(s1) if isinstance(s1, str) else s1
    s2 = G.index(s2) if isinstance(s2, str) else s2
    if check:
        rc, sc = collected(r), collected(s)
        if not (_zero(rc + rc.act(s1)) and _zero(rc.act(s2) - rc + sc.act(s1) - sc)
                and _zero(sc + sc.act(s2))):
            raise CompatibilityFailure("r, s do not satisfy the compatibility equations")
    x1 = x + x.act(s1)
    x2 = x + x.act(s2)
    t = (r.act(s2) - r).act(s1)
    w = x2 * r.act(s1) + x1 * s.act(s2) + x1 * x2 * t
    if check:
        wc = collected(w)
        if not (_zero(wc.act(s1) - wc - rc) and _zero(wc.act(s2) - wc - sc)):
            raise VerificationFailure("Klein witness fails its coboundary check")
    return w


def _is_cyclic(G, U):
    return any(G.element_order(g) == U.order for g in U.members)


def _least_generator(G, U):
    return min(g for g in U.members if G.element_order(g) == U.order)


def _index_p_normal(G, U, p):
    target = U.order // p
    uset = set(U.members)
    for H in all_subgroups(G):
        if H.order != target or not set(H.members) <= uset:
            continue
        hs = set(H.members)
        if all(G.conj(u, h) in hs for u in U.generators for h in H.generators):
            return H
    raise VerificationFailure("no normal subgroup of index p found")  # impossible for p-groups


def _recurse(U, beta, x, depth, limit):
    G = x.ctx.group
    if depth > limit:
        raise VerificationFailure("recursion deeper than log_p |U|")
    if U.order == 1:
        if not _zero(beta.values[0]):
            raise NonzeroCocycleOnTrivialGroup("nonzero cocycle on the trivial group")
        return x.ctx.zero()
    if _is_cyclic(G, U):
        sigma = _least_generator(G, U)
        return witness_cyclic(U, sigma, beta.values[sigma], x)
    (p,) = prime_factors(U.order)
    Up = _index_p_normal(G, U, p)
    upset = set(Up.members)
    sigma = min(g for g in U.members if g not in upset)
    x1 = _geom_apply(x, G, sigma, p)
    w1 = _recurse(Up, beta.restrict(Up), x1, depth + 1, limit)
    s1 = beta.values[sigma] - (w1.act(sigma) - w1)
    x2 = x.norm(Up.members)
    w2 = witness_cyclic(None, sigma, s1, x2, order=p)
    return w1 + w2


def witness(U, beta, x, ctx=None, check=True):
    """Recursive witness for a p-group U, post-verified on every element of U."""
    if not isinstance(beta, CocycleOnSubgroup):
        beta = CocycleOnSubgroup(U, beta, x.ctx)
    G = x.ctx.group
    n, limit = U.order, 0
    while n > 1:
        n //= min(prime_factors(U.order))
        limit += 1
    w = _recurse(U, beta, x, 0, limit)
    if check:
        for g in U.members:
            if not _zero(w.act(g) - w - beta.values[g]):
                raise VerificationFailure(f"witness fails at {G.name(g)}")
    return w
