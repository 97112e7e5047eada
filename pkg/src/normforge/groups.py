"""Finite groups given by explicit multiplication tables.

Every group used by the library comes from a small catalog of families
(cyclic, elementary abelian, generalized quaternion, dihedral, the modular
group of order p^3, S3) and direct products of those.  Elements are integer
indices ``0..order-1``; index 0 is always the identity.
"""
from __future__ import annotations

import enum
import functools
import os
import re
from dataclasses import dataclass
from itertools import product
from math import prod

from .errors import (
    BoundExceeded,
    NoSuchElement,
    NotAPGroup,
    NotNormal,
    SpecError,
)

DEFAULT_MAX_ORDER = 64


def max_order():
    return int(os.environ.get("NORMFORGE_MAX_ORDER", DEFAULT_MAX_ORDER))


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def prime_factors(n):
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __str__(self):
        return f"C{self.n}"

    def validate(self):
        if self.n < 1:
            raise SpecError(f"cyclic order must be positive, got {self.n}")

    @property
    def order(self):
        return self.n


@dataclass(frozen=True)
class ElemAbelian:
    p: int
    r: int

    def __str__(self):
        return f"E({self.p},{self.r})"

    def validate(self):
        if not _is_prime(self.p):
            raise SpecError(f"E(p, r) needs p prime, got {self.p}")
        if self.r < 1:
            raise SpecError(f"E(p, r) needs r >= 1, got {self.r}")

    @property
    def order(self):
        return self.p**self.r


@dataclass(frozen=True)
class Quaternion:
    """Generalized quaternion group of order m = 2^(n+2), n >= 1."""

    m: int

    def __str__(self):
        return f"Q{self.m}"

    def validate(self):
        if self.m < 8 or self.m & (self.m - 1):
            raise SpecError(f"quaternion order must be a power of 2 >= 8, got {self.m}")

    @property
    def order(self):
        return self.m


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order m = 2^(n+1), n >= 2."""

    m: int

    def __str__(self):
        return f"D{self.m}"

    def validate(self):
        if self.m < 8 or self.m & (self.m - 1):
            raise SpecError(f"dihedral order must be a power of 2 >= 8, got {self.m}")

    @property
    def order(self):
        return self.m


@dataclass(frozen=True)
class ModMax:
    """The group <s, t | s^(p^2) = t^p = 1, ts = s^(p+1) t> of order p^3, p odd."""

    p: int

    def __str__(self):
        return f"G{self.p ** 3}"

    def validate(self):
        if not _is_prime(self.p) or self.p == 2:
            raise SpecError(f"G(p^3) needs an odd prime p, got {self.p}")

    @property
    def order(self):
        return self.p**3


@dataclass(frozen=True)
class Symmetric3:
    def __str__(self):
        return "S3"

    def validate(self):
        pass

    @property
    def order(self):
        return 6


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple

    def __str__(self):
        return "x".join(str(f) for f in self.factors)

    def validate(self):
        if len(self.factors) < 2:
            raise SpecError("a direct product needs at least two factors")
        for f in self.factors:
            f.validate()

    @property
    def order(self):
        return prod(f.order for f in self.factors)


GroupSpec = Cyclic | ElemAbelian | Quaternion | Dihedral | ModMax | Symmetric3 | DirectProduct

_FACTOR_RE = [
    (re.compile(r"C(\d+)$"), lambda m: Cyclic(int(m[1]))),
    (re.compile(r"E\((\d+),(\d+)\)$"), lambda m: ElemAbelian(int(m[1]), int(m[2]))),
    (re.compile(r"Q(\d+)$"), lambda m: Quaternion(int(m[1]))),
    (re.compile(r"D(\d+)$"), lambda m: Dihedral(int(m[1]))),
    (re.compile(r"S3$"), lambda m: Symmetric3()),
]


def _parse_factor(text):
    m = re.fullmatch(r"G(\d+)", text)
    if m:
        order = int(m[1])
        p = round(order ** (1 / 3))
        if p**3 != order:
            raise SpecError(f"G<n> needs n = p^3, got {order}")
        return ModMax(p)
    for rx, make in _FACTOR_RE:
        m = rx.match(text)
        if m:
            return make(m)
    raise SpecError(f"unrecognized group spec {text!r}")


def parse_spec(text):
    """Parse strings such as ``"Q8"``, ``"E(2,2)"`` or ``"Q8xC3"``."""
    text = text.replace(" ", "")
    parts = text.split("x")
    if not all(parts):
        raise SpecError(f"malformed group spec {text!r}")
    factors = []
    for part in parts:
        f = _parse_factor(part)
        factors.extend(f.factors if isinstance(f, DirectProduct) else [f])
    spec = factors[0] if len(factors) == 1 else DirectProduct(tuple(factors))
    spec.validate()
    return spec


# ---------------------------------------------------------------------------
# groups and subgroups


class FiniteGroup:
    """A group as a list of element names plus a Cayley table on indices."""

    def __init__(self, names, mul, generators, spec=None, check=True):
        self.names = tuple(names)
        self.mul = tuple(tuple(row) for row in mul)
        self.order = len(self.names)
        self.identity = 0
        self.generators = tuple(generators)
        self.spec = spec
        self._index = {n: i for i, n in enumerate(self.names)}
        if len(self._index) != self.order:
            raise SpecError("element names must be distinct")
        self.inv = [0] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.mul[a][b] == 0:
                    self.inv[a] = b
                    break
        self.inv = tuple(self.inv)
        if check:
            self._check_axioms()
        self._elem_orders = None
        self._hash = hash((self.names, self.mul))

    def __repr__(self):
        label = self.spec if self.spec is not None else f"order {self.order}"
        return f"FiniteGroup({label})"

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, FiniteGroup)
            and self._hash == other._hash
            and self.names == other.names
            and self.mul == other.mul
        )

    def __hash__(self):
        return self._hash

    def _check_axioms(self):
        n, t = self.order, self.mul
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise SpecError("index 0 is not a two-sided identity")
            if sorted(t[a]) != list(range(n)):
                raise SpecError(f"row {a} is not a permutation")
            if t[a][self.inv[a]] != 0 or t[self.inv[a]][a] != 0:
                raise SpecError(f"element {a} has no two-sided inverse")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise SpecError(f"multiplication is not associative at {(a, b, c)}")
        if generate(self, self.generators) != tuple(range(n)):
            raise SpecError("generator_set does not generate the group")

    # element helpers -----------------------------------------------------
    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise SpecError(f"{name!r} is not an element of {self!r}") from None

    def name(self, g):
        return self.names[g]

    def m(self, *elems):
        """Product of a sequence of elements."""
        out = 0
        for g in elems:
            out = self.mul[out][g]
        return out

    def power(self, g, k):
        if k < 0:
            g, k = self.inv[g], -k
        out = 0
        for _ in range(k % self.element_order(g)):
            out = self.mul[out][g]
        return out

    def conj(self, g, h):
        """g h g^-1."""
        return self.mul[self.mul[g][h]][self.inv[g]]

    def element_order(self, g):
        if self._elem_orders is None:
            orders = []
            for a in range(self.order):
                k, x = 1, a
                while x != 0:
                    x = self.mul[x][a]
                    k += 1
                orders.append(k)
            self._elem_orders = tuple(orders)
        return self._elem_orders[g]

    @property
    def exponent(self):
        from math import lcm

        return lcm(*(self.element_order(g) for g in range(self.order)))

    def is_abelian(self):
        t = self.mul
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def p_of(self):
        """The prime p if this is a nontrivial p-group, else None."""
        f = prime_factors(self.order)
        return next(iter(f)) if len(f) == 1 else None

    def whole(self):
        return Subgroup(self, tuple(range(self.order)), self.generators)

    def trivial(self):
        return Subgroup(self, (0,), ())

    def spec_string(self):
        if self.spec is None:
            raise SpecError("this group has no catalog spec string")
        return str(self.spec)

    def to_json(self):
        return {
            "spec": str(self.spec) if self.spec is not None else None,
            "order": self.order,
            "elements": list(self.names),
            "mul": [list(r) for r in self.mul],
        }


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple
    generators: tuple

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.members == other.members
            and self.parent == other.parent
        )

    def __hash__(self):
        return hash(self.members)

    def __lt__(self, other):
        return self.members < other.members

    def __contains__(self, g):
        return g in self._set

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @functools.cached_property
    def _set(self):
        return frozenset(self.members)

    @property
    def order(self):
        return len(self.members)

    def is_subgroup_of(self, other):
        return self._set <= other._set

    def names(self):
        return [self.parent.names[g] for g in self.members]

    def __repr__(self):
        gens = ",".join(self.parent.names[g] for g in self.generators)
        return f"<{gens}> (order {self.order})"


def generate(G, gens):
    """Sorted member tuple of the subgroup generated by ``gens``."""
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    seen = {0}
    frontier = [0]
    t = G.mul
    while frontier:
        nxt = []
        for a in frontier:
            row = t[a]
            for g in gens:
                b = row[g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(seen))


def _reduce_generators(G, gens):
    """Drop generators that are redundant given the earlier ones."""
    kept, current = [], (0,)
    for g in gens:
        if g in current:
            continue
        kept.append(g)
        current = generate(G, kept)
    return tuple(kept)


def subgroup_generated(G, gens):
    gens = [G.index(g) if isinstance(g, str) else g for g in gens]
    return Subgroup(G, generate(G, gens), _reduce_generators(G, gens))


def subgroup_from_members(G, members):
    members = tuple(sorted(set(members)))
    return Subgroup(G, members, _reduce_generators(G, members))


# ---------------------------------------------------------------------------
# catalog


def _metacyclic(m, k, r, c, spec):
    """Group of elements s^i t^j (i < m, j < k) with t s t^-1 = s^r and t^k = s^c."""

    def name(i, j):
        parts = []
        if i:
            parts.append("s" if i == 1 else f"s{i}")
        if j:
            parts.append("t" if j == 1 else f"t{j}")
        return "".join(parts) or "e"

    elems = [(i, j) for j in range(k) for i in range(m)]
    pos = {e: n for n, e in enumerate(elems)}
    rpow = [pow(r, j, m) for j in range(k)]
    table = []
    for a, b in elems:
        row = []
        for c2, d in elems:
            i = a + c2 * rpow[b]
            j = b + d
            if j >= k:
                j -= k
                i += c
            row.append(pos[(i % m, j)])
        table.append(row)
    gens = [pos[(1, 0)]] if m > 1 else []
    if k > 1:
        gens.append(pos[(0, 1)])
    return FiniteGroup([name(i, j) for i, j in elems], table, gens, spec=spec)


def _symmetric3(spec):
    # s a transposition, t a 3-cycle; elements s^i t^j
    def compose(f, g):
        return tuple(f[g[x]] for x in range(3))

    s, t, e = (1, 0, 2), (1, 2, 0), (0, 1, 2)
    elems, names = [], []
    for j in range(3):
        tj = e
        for _ in range(j):
            tj = compose(tj, t)
        for i in range(2):
            elems.append(compose(s, tj) if i else tj)
            names.append(("s" if i else "") + ("t" if j == 1 else f"t{j}" if j else "") or "e")
    pos = {p: n for n, p in enumerate(elems)}
    table = [[pos[compose(a, b)] for b in elems] for a in elems]
    return FiniteGroup(names, table, [pos[s], pos[t]], spec=spec)


def _direct_product(groups, spec):
    sizes = [G.order for G in groups]
    tuples = list(product(*(range(n) for n in sizes)))
    pos = {t: i for i, t in enumerate(tuples)}
    names = ["(" + ",".join(G.names[x] for G, x in zip(groups, t)) + ")" for t in tuples]
    table = [
        [pos[tuple(G.mul[x][y] for G, x, y in zip(groups, a, b))] for b in tuples]
        for a in tuples
    ]
    gens = []
    for k, G in enumerate(groups):
        for g in G.generators:
            t = [0] * len(groups)
            t[k] = g
            gens.append(pos[tuple(t)])
    return FiniteGroup(names, table, gens, spec=spec, check=False)


def build_group(spec, bound=None):
    """Realize a catalog spec (object or string) as an explicit table."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    spec.validate()
    bound = max_order() if bound is None else bound
    if spec.order > bound:
        raise BoundExceeded(f"{spec} has order {spec.order} > {bound}")
    return _build(spec)


@functools.lru_cache(maxsize=None)
def _build(spec):
    if isinstance(spec, Cyclic):
        return _metacyclic(spec.n, 1, 1, 0, spec)
    if isinstance(spec, ElemAbelian):
        if spec.r == 1:
            return _metacyclic(spec.p, 1, 1, 0, spec)
        return _direct_product([_build(Cyclic(spec.p))] * spec.r, spec)
    if isinstance(spec, Quaternion):
        m = spec.m // 2
        return _metacyclic(m, 2, -1, m // 2, spec)
    if isinstance(spec, Dihedral):
        m = spec.m // 2
        return _metacyclic(m, 2, -1, 0, spec)
    if isinstance(spec, ModMax):
        p = spec.p
        return _metacyclic(p * p, p, p + 1, 0, spec)
    if isinstance(spec, Symmetric3):
        return _symmetric3(spec)
    if isinstance(spec, DirectProduct):
        return _direct_product([_build(f) for f in spec.factors], spec)
    raise SpecError(f"unknown spec {spec!r}")


def catalog_specs(max_order=32):
    """A representative list of catalog groups up to the given order."""
    out = []
    for n in range(1, max_order + 1):
        out.append(Cyclic(n))
    for p in (2, 3, 5, 7):
        r = 2
        while p**r <= max_order:
            out.append(ElemAbelian(p, r))
            r += 1
    m = 8
    while m <= max_order:
        out += [Quaternion(m), Dihedral(m)]
        m *= 2
    if 27 <= max_order:
        out.append(ModMax(3))
    out.append(Symmetric3())
    for a, b in [("C4", "C2"), ("C4", "C4"), ("C8", "C2"), ("Q8", "C2"), ("D8", "C2"),
                 ("C4", "E(2,2)"), ("Q8", "C4"), ("D8", "C4"), ("Q16", "C2"), ("D16", "C2"),
                 ("C9", "C3"), ("Q8", "C3")]:
        spec = parse_spec(f"{a}x{b}")
        if spec.order <= max_order:
            out.append(spec)
    return list(dict.fromkeys(out))


# ---------------------------------------------------------------------------
# subgroup lattice


def all_subgroups(G):
    """Every subgroup of G, ordered by sorted member lists."""
    return _all_subgroups(G)


@functools.lru_cache(maxsize=64)
def _all_subgroups(G):
    cyclic = {}
    for g in range(G.order):
        cyclic.setdefault(generate(G, [g]), g)
    found = {mem: (g,) if g else () for mem, g in cyclic.items()}
    frontier = list(found)
    cyc_items = sorted(cyclic.items())
    while frontier:
        nxt = []
        for mem in frontier:
            mset = set(mem)
            gens = found[mem]
            for cmem, g in cyc_items:
                if g in mset:
                    continue
                new = generate(G, gens + (g,))
                if new not in found:
                    found[new] = _reduce_generators(G, gens + (g,))
                    nxt.append(new)
        frontier = nxt
    return tuple(Subgroup(G, mem, gens) for mem, gens in sorted(found.items()))


def is_normal(G, H):
    hs = H._set
    return all(G.conj(g, h) in hs for g in G.generators for h in H.generators)


def normal_subgroups(G):
    return [H for H in all_subgroups(G) if is_normal(G, H)]


def is_elementary_abelian(G, H=None):
    members = H.members if H is not None else range(G.order)
    members = list(members)
    if len(members) < 2:
        return False
    f = prime_factors(len(members))
    if len(f) != 1:
        return False
    p = next(iter(f))
    t = G.mul
    return all(G.element_order(g) in (1, p) for g in members) and all(
        t[a][b] == t[b][a] for a in members for b in members
    )


def elementary_abelian_subgroups(G):
    return [H for H in all_subgroups(G) if is_elementary_abelian(G, H)]


def maximal_elem_abelian(G):
    ea = elementary_abelian_subgroups(G)
    return [H for H in ea if not any(H is not K and H._set < K._set for K in ea)]


def conjugate_subgroup(G, g, H):
    return Subgroup(
        G,
        tuple(sorted(G.conj(g, h) for h in H.members)),
        tuple(G.conj(g, h) for h in H.generators),
    )


def conjugacy_reps_elem_abelian(G):
    reps, seen = [], set()
    for H in maximal_elem_abelian(G):
        if H.members in seen:
            continue
        reps.append(H)
        for g in range(G.order):
            seen.add(conjugate_subgroup(G, g, H).members)
    return reps


def center(G):
    t = G.mul
    mem = [a for a in range(G.order) if all(t[a][g] == t[g][a] for g in G.generators)]
    return subgroup_from_members(G, mem)


def commutator_subgroup(G):
    t, inv = G.mul, G.inv
    comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(G.order) for b in range(G.order)}
    return subgroup_generated(G, sorted(comms))


def coset_reps(G, H, side="left"):
    """Least element of each left (gH) or right (Hg) coset, sorted."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    t = G.mul
    seen, reps = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        if side == "left":
            seen.update(t[g][h] for h in H.members)
        else:
            seen.update(t[h][g] for h in H.members)
    return reps


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True, eq=False)
class Projection:
    """The natural map G -> G/N; ``image[g]`` is the index of gN in the quotient."""

    source: FiniteGroup
    kernel: Subgroup
    target: FiniteGroup
    image: tuple
    lifts: tuple  # least representative of each coset, by quotient index

    def __call__(self, g):
        return self.image[g]


def quotient(G, N):
    if not is_normal(G, N):
        raise NotNormal(f"{N!r} is not normal in {G!r}")
    reps = coset_reps(G, N, "left")
    image = [0] * G.order
    t = G.mul
    for k, r in enumerate(reps):
        for n in N.members:
            image[t[r][n]] = k
    table = [[image[t[a][b]] for b in reps] for a in reps]
    gens = list(dict.fromkeys(image[g] for g in G.generators if image[g] != 0))
    spec = None if N.order > 1 else G.spec
    Q = FiniteGroup([G.names[r] for r in reps], table, gens, spec=spec, check=False)
    return Q, Projection(G, N, Q, tuple(image), tuple(reps))


def preimage(proj, S):
    members = [g for g in range(proj.source.order) if proj.image[g] in S]
    gens = [proj.lifts[s] for s in S.generators] + list(proj.kernel.generators)
    return Subgroup(proj.source, tuple(members), _reduce_generators(proj.source, gens))


def subgroup_as_group(H):
    """Relabel a subgroup as a standalone group; returns (group, inclusion list)."""
    G = H.parent
    members = H.members
    pos = {g: k for k, g in enumerate(members)}
    table = [[pos[G.mul[a][b]] for b in members] for a in members]
    gens = [pos[g] for g in H.generators]
    return FiniteGroup([G.names[g] for g in members], table, gens, check=False), members


# ---------------------------------------------------------------------------
# classification


class GroupClass(enum.Enum):
    ELEMENTARY_ABELIAN = "ElementaryAbelian"
    EXTRASPECIAL = "Extraspecial"
    ALMOST_EXTRASPECIAL = "AlmostExtraspecial"
    OTHER = "Other"


def _central_quotient_elementary(G, N):
    """Is G/N elementary abelian (N central, order p) and nontrivial?"""
    p = G.p_of()
    if G.order <= N.order:
        return False
    t, inv = G.mul, G.inv
    ns = N._set
    if any(G.power(g, p) not in ns for g in range(G.order)):
        return False
    return all(
        t[t[a][b]][t[inv[a]][inv[b]]] in ns for a in range(G.order) for b in range(a)
    )


def classify(G):
    p = G.p_of()
    if p is None:
        if G.order == 1:
            return GroupClass.OTHER
        raise NotAPGroup(f"{G!r} is not a p-group")
    if is_elementary_abelian(G):
        return GroupClass.ELEMENTARY_ABELIAN
    Z = center(G)
    zorder = Z.order
    if zorder == p:
        kind = GroupClass.EXTRASPECIAL
    elif zorder == p * p and any(G.element_order(z) == p * p for z in Z.members):
        kind = GroupClass.ALMOST_EXTRASPECIAL
    else:
        return GroupClass.OTHER
    for z in Z.members:
        if G.element_order(z) == p:
            N = subgroup_generated(G, [z])
            if _central_quotient_elementary(G, N):
                return kind
    return GroupClass.OTHER


def _invariants(G):
    p = G.p_of()
    n_p = sum(1 for g in range(G.order) if G.element_order(g) == p)
    return (G.order, G.is_abelian(), G.exponent, center(G).order, n_p)


def identify(G):
    """Short label for an (almost) extraspecial group, via catalog invariants."""
    order, abelian, exp, zorder, n_p = _invariants(G)
    p = G.p_of()
    if abelian:
        return f"C{order}" if exp == order else f"Ab{order}"
    if order == 8:
        return "Q8" if n_p == 1 else "D8"
    if order == p**3:
        return f"G{order}" if exp == p * p else f"He{order}"
    if order == 16 and zorder == 4:
        return "C4oD8"
    if order == 32 and zorder == 2:
        return "D8oD8" if n_p == 19 else "Q8oD8"
    kind = classify(G)
    prefix = "ES" if kind is GroupClass.EXTRASPECIAL else "AES"
    return f"{prefix}{order}[exp={exp},n{p}={n_p}]"


def f_set(G, bound=DEFAULT_MAX_ORDER):
    """Isomorphism labels of the (almost) extraspecial subquotients of a p-group."""
    if G.order > bound:
        raise BoundExceeded(f"order {G.order} exceeds bound {bound}")
    p = G.p_of()
    if p is None:
        raise NotAPGroup(f"{G!r} is not a p-group")
    labels = set()
    done = set()
    for H in all_subgroups(G):
        if H.order < p * p or is_elementary_abelian(G, H):
            continue
        key = frozenset(conjugate_subgroup(G, g, H).members for g in range(G.order))
        if key in done:
            continue
        done.add(key)
        Hg, _ = subgroup_as_group(H)
        abelian = Hg.is_abelian()
        for N in normal_subgroups(Hg):
            qorder = Hg.order // N.order
            if qorder < p * p:
                continue
            if abelian and qorder != p * p:
                continue
            Q, _ = quotient(Hg, N)
            if classify(Q) in (GroupClass.EXTRASPECIAL, GroupClass.ALMOST_EXTRASPECIAL):
                labels.add(identify(Q))
    return labels


# ---------------------------------------------------------------------------
# Sylow and central reduction


def sylow_subgroup(G, p):
    a = prime_factors(G.order).get(p, 0)
    target = p**a
    for H in all_subgroups(G):
        if H.order == target:
            return H
    raise NoSuchElement(f"no Sylow {p}-subgroup")  # pragma: no cover


def central_reduction_subgroup(G):
    """<h> with h central of order p and G/<h> not elementary abelian (least h)."""
    p = G.p_of()
    if p is None:
        raise NotAPGroup(f"{G!r} is not a p-group")
    if classify(G) is not GroupClass.OTHER:
        raise NoSuchElement(f"{G!r} is elementary abelian, extraspecial or almost extraspecial")
    for h in center(G).members:
        if G.element_order(h) != p:
            continue
        N = subgroup_generated(G, [h])
        Q, _ = quotient(G, N)
        if not is_elementary_abelian(Q):
            return N
    raise NoSuchElement("no central element of order p with non-elementary-abelian quotient")


def is_isomorphic_catalog(G, H):
    """Invariant-based comparison; adequate for the catalog up to order 32."""
    return _invariants(G) == _invariants(H)
