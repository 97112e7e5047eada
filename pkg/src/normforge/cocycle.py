"""1-cocycles U -> R with values in a universal ring."""
from __future__ import annotations

from .errors import CocycleLawFailure
from .ring import collected


class CocycleOnSubgroup:
    """A map beta: U -> R, stored as {element index: NCPoly}."""

    def __init__(self, U, values, ctx):
        self.U = U
        self.ctx = ctx
        self.values = {g: collected(values.get(g, ctx.zero())) for g in U.members}

    def __call__(self, g):
        if isinstance(g, str):
            g = self.ctx.group.index(g)
        return self.values[g]

    def restrict(self, V):
        return CocycleOnSubgroup(V, {g: self.values[g] for g in V.members}, self.ctx)

    def is_zero(self):
        return all(v.normal_form().is_zero() for v in self.values.values())

    @classmethod
    def coboundary(cls, U, v):
        """delta(v): g -> (g - 1) v."""
        return cls(U, {g: v.act(g) - v for g in U.members}, v.ctx)


def cocycle_validate(beta, raise_on_failure=True):
    """Check beta(e) = 0 and beta(gh) = beta(g) + g beta(h) for all g, h in U."""
    G = beta.ctx.group
    nf = {g: v.normal_form() for g, v in beta.values.items()}
    if not nf[0].is_zero():
        if raise_on_failure:
            raise CocycleLawFailure("beta(e) != 0")
        return False
    for g in beta.U.members:
        for h in beta.U.members:
            lhs = beta.values[G.mul[g][h]]
            rhs = beta.values[g] + beta.values[h].act(g)
            if not (lhs - rhs).normal_form().is_zero():
                if raise_on_failure:
                    raise CocycleLawFailure(f"cocycle law fails at ({G.name(g)}, {G.name(h)})")
                return False
    return True


def _geom(p, g, k):
    """(1 + g + ... + g^{k-1}) applied to p."""
    G = p.ctx.group
    return p.apply({G.power(g, i): 1 for i in range(k)}) if k else p.ctx.zero()


def cocycle_identities_check(beta):
    """The standard consequences of the cocycle law, checked on every instance.

    Returns a dict of named booleans:
      identity   beta(e) = 0
      powers     beta(g^i) = (1 + g + ... + g^{i-1}) beta(g)
      norm       (1 + g + ... + g^{N-1}) beta(g) = 0, N the order of g
      inverse    beta(g^{-1}) = -g^{-1} beta(g)
      dihedral   (s - 1) beta(t) + (1 + st) beta(s) = 0 whenever t s = s^{-1} t
    """
    G = beta.ctx.group
    U = beta.U.members
    zero = lambda p: p.normal_form().is_zero()  # noqa: E731
    out = {"identity": zero(beta.values[0])}
    ok_pow = ok_norm = ok_inv = ok_dih = True
    for g in U:
        n = G.element_order(g)
        for i in range(1, n + 1):
            if not zero(beta.values[G.power(g, i)] - _geom(beta.values[g], g, i)):
                ok_pow = False
        if not zero(_geom(beta.values[g], g, n)):
            ok_norm = False
        gi = G.inv[g]
        if not zero(beta.values[gi] + beta.values[g].act(gi)):
            ok_inv = False
    for s in U:
        for t in U:
            if G.mul[t][s] == G.mul[G.inv[s]][t]:
                st = G.mul[s][t]
                lhs = beta.values[t].act(s) - beta.values[t] + beta.values[s] + beta.values[s].act(st)
                if not zero(lhs):
                    ok_dih = False
    out.update(powers=ok_pow, norm=ok_norm, inverse=ok_inv, dihedral=ok_dih)
    return out
