"""The integer group ring Z[G] and the finite model of B = Hom(Z[G], R).

A :class:`BElement` is ``ring_part + sum_k phi[k] * sigma^k(phi)`` where phi is
the indicator function of a normal subgroup U of prime index p and sigma
generates G/U.  Only this span is ever needed: the translates of phi add up
to 1, so the k = 0 component is folded into the ring part.
"""
from __future__ import annotations

from .errors import BadQuotient, MixedContext, NonConstantPhiPart, NotNormal
from .groups import is_normal, quotient


class GroupRingElement:
    """Finitely supported integer combination of group elements."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs=None):
        self.group = group
        d = {}
        for g, c in (coeffs or {}).items():
            if isinstance(g, str):
                g = group.index(g)
            if c:
                d[g] = d.get(g, 0) + c
        self.coeffs = {g: c for g, c in d.items() if c}

    @classmethod
    def element(cls, group, g, c=1):
        return cls(group, {g: c})

    @classmethod
    def sum_of(cls, group, elems):
        d = {}
        for g in elems:
            if isinstance(g, str):
                g = group.index(g)
            d[g] = d.get(g, 0) + 1
        return cls(group, d)

    @classmethod
    def geometric(cls, group, g, k):
        """1 + g + ... + g^{k-1}."""
        if isinstance(g, str):
            g = group.index(g)
        return cls.sum_of(group, [group.power(g, i) for i in range(k)])

    @classmethod
    def one(cls, group):
        return cls(group, {0: 1})

    def _coerce(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {0: other})
        if isinstance(other, GroupRingElement):
            if other.group != self.group:
                raise MixedContext("group ring elements over different groups")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.coeffs)
        for g, c in other.coeffs.items():
            d[g] = d.get(g, 0) + c
        return GroupRingElement(self.group, d)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = self.group.mul
        d = {}
        for g, a in self.coeffs.items():
            row = t[g]
            for h, b in other.coeffs.items():
                k = row[h]
                d[k] = d.get(k, 0) + a * b
        return GroupRingElement(self.group, d)

    def __rmul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {g: other * c for g, c in self.coeffs.items()})
        return NotImplemented

    def __pow__(self, k):
        out = GroupRingElement.one(self.group)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement(self.group, {0: other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def augmentation(self):
        return sum(self.coeffs.values())

    def items(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        return f"GroupRingElement({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, (g, c) in enumerate(self.items()):
            name = self.group.names[g]
            body = "" if name == "e" else name
            mag = abs(c)
            coef = str(mag) if (mag != 1 or not body) else ""
            if body and coef:
                coef += "*"
            sign = "-" if c < 0 else ("+" if k else "")
            sep = " " if k else ""
            parts.append(f"{sep}{sign}{' ' if k else ''}{coef}{body}")
        return "".join(parts).strip()


def identity_check(lhs, rhs):
    """True iff two group-ring elements are equal (both sides fully expanded)."""
    return (lhs - rhs).coeffs == {}


# ---------------------------------------------------------------------------
# B elements


class BContext:
    """Data fixing the phi-span: G, normal U of prime index p, sigma generating G/U."""

    def __init__(self, group, U, sigma, ring_ctx):
        if isinstance(sigma, str):
            sigma = group.index(sigma)
        if not is_normal(group, U):
            raise NotNormal("U must be normal in G")
        if group.order % U.order:
            raise BadQuotient("U is not a subgroup of G")
        p = group.order // U.order
        Q, proj = quotient(group, U)
        if Q.order != p or any(p % d == 0 for d in range(2, p)):
            raise BadQuotient(f"G/U has order {Q.order}, not a prime")
        sbar = proj.image[sigma]
        cls = {}
        cur = 0
        for k in range(p):
            cls[cur] = k
            cur = Q.mul[cur][sbar]
        if len(cls) != p:
            raise BadQuotient("sigma does not generate G/U")
        self.group = group
        self.U = U
        self.sigma = sigma
        self.p = p
        self.ring = ring_ctx
        self.class_of = tuple(cls[proj.image[g]] for g in range(group.order))

    def __eq__(self, other):
        return (isinstance(other, BContext) and self.group == other.group
                and self.U == other.U and self.sigma == other.sigma and self.ring == other.ring)

    def __hash__(self):
        return hash((self.U.members, self.sigma))


class BElement:
    """ring_part + sum_k phi[k] sigma^k(phi), canonical with phi[0] == 0."""

    __slots__ = ("bctx", "ring_part", "phi")

    def __init__(self, bctx, ring_part=None, phi=None):
        self.bctx = bctx
        rp = ring_part if ring_part is not None else bctx.ring.zero()
        ph = list(phi) if phi is not None else [0] * bctx.p
        if len(ph) != bctx.p:
            raise ValueError("phi vector has the wrong length")
        c0 = ph[0]
        if c0:
            rp = rp + c0
            ph = [c - c0 for c in ph]
        self.ring_part = rp
        self.phi = tuple(ph)

    @classmethod
    def phi_translate(cls, bctx, k, c=1):
        """c * sigma^k(phi)."""
        v = [0] * bctx.p
        v[k % bctx.p] = c
        return cls(bctx, None, v)

    @classmethod
    def ring(cls, bctx, poly):
        return cls(bctx, poly, None)

    def _check(self, other):
        if not isinstance(other, BElement) or other.bctx != self.bctx:
            raise MixedContext("B elements over different (G, U, sigma)")

    def __add__(self, other):
        self._check(other)
        return BElement(self.bctx, self.ring_part + other.ring_part,
                        [a + b for a, b in zip(self.phi, other.phi)])

    def __neg__(self):
        return BElement(self.bctx, -self.ring_part, [-a for a in self.phi])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return BElement(self.bctx, self.ring_part.scale(c), [c * a for a in self.phi])

    def act(self, g):
        """g acting on B; g * sigma^k(phi) = sigma^{k + k(g)}(phi)."""
        if isinstance(g, str):
            g = self.bctx.group.index(g)
        p = self.bctx.p
        kg = self.bctx.class_of[g]
        v = [0] * p
        for k, c in enumerate(self.phi):
            v[(k + kg) % p] += c
        return BElement(self.bctx, self.ring_part.act(g), v)

    def apply(self, A):
        out = BElement(self.bctx)
        coeffs = getattr(A, "coeffs", A)
        for g, c in coeffs.items():
            out = out + self.act(g).scale(c)
        return out

    def is_ring(self):
        return not any(self.phi)

    def coerce(self):
        """The ring element, if the phi part vanishes."""
        if any(self.phi):
            raise NonConstantPhiPart(f"phi part {self.phi} does not cancel")
        return self.ring_part

    def __eq__(self, other):
        return (isinstance(other, BElement) and self.bctx == other.bctx
                and self.phi == other.phi and self.ring_part == other.ring_part)

    def __repr__(self):
        return f"BElement({self.ring_part!s}; phi={list(self.phi)})"


def b_add(a, b):
    return a + b


def b_act(g, a):
    return a.act(g)


def b_coerce(a):
    return a.coerce()
