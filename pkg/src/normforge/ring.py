"""Noncommutative integer polynomials in the symbols g(x_H).

A :class:`RingContext` fixes a group G and a list of subgroups H_0, H_1, ...;
each H_v contributes a variable x_v subject to N_{H_v}(x_v) = 1.  The symbol
g(x_v) is encoded as the integer ``v * |G| + g``, and a monomial is a tuple of
such integers.  :class:`NCPoly` stores a dict from monomials to nonzero ints.

The defining relations sum_{h in H}(gh)(x_v) = 1 (one per left coset gH) are
each solved for the symbol whose element index is largest in its coset.  That
makes the universal ring the free ring on the remaining symbols, and
:meth:`NCPoly.normal_form` computes the unique representative there.
"""
from __future__ import annotations

import re
from itertools import product

from .errors import ContextMismatch, MixedContext, UnknownVariable
from .groups import Subgroup, coset_reps


class RingContext:
    """A group together with the subgroups whose variables are norm-one."""

    def __init__(self, group, subgroups, labels=None):
        self.group = group
        subgroups = tuple(subgroups)
        for H in subgroups:
            if H.parent != group:
                raise ContextMismatch(f"{H!r} is not a subgroup of {group!r}")
        if len({H.members for H in subgroups}) != len(subgroups):
            raise ContextMismatch("context variables must be distinct subgroups")
        self.vars = subgroups
        self.labels = tuple(labels) if labels else self._default_labels()
        n = group.order
        self.n = n
        self.nsyms = n * len(subgroups)
        t = group.mul
        # act_maps[g][s] = symbol of g(s)
        self.act_maps = tuple(
            tuple(v * n + t[g][k] for v in range(len(subgroups)) for k in range(n))
            for g in range(n)
        )
        self.eliminated = {}
        self.cosets = []
        for v, H in enumerate(subgroups):
            cos = []
            for r in coset_reps(group, H, "left"):
                coset = sorted(t[r][h] for h in H.members)
                cos.append(coset)
                m = coset[-1]
                rep = [((), 1)] + [((v * n + k,), -1) for k in coset[:-1]]
                self.eliminated[v * n + m] = rep
            self.cosets.append(cos)
        self._key = (group, tuple(H.members for H in subgroups))

    def _default_labels(self):
        if len(self.vars) == 1:
            return ("x",)
        return tuple(f"x{v}" for v in range(len(self.vars)))

    def __eq__(self, other):
        return self is other or (isinstance(other, RingContext) and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"RingContext({self.group!r}, {list(self.vars)})"

    def sym(self, g, v=0):
        return v * self.n + g

    def split(self, s):
        """Symbol -> (element, var)."""
        return s % self.n, s // self.n

    def var_index(self, H):
        members = H.members if isinstance(H, Subgroup) else tuple(sorted(H))
        for v, K in enumerate(self.vars):
            if K.members == members:
                return v
        raise UnknownVariable(f"no variable for subgroup {members} in {self!r}")

    def x(self, v=0, g=0):
        """The polynomial g(x_v)."""
        if isinstance(g, str):
            g = self.group.index(g)
        return NCPoly(self, {(v * self.n + g,): 1})

    def one(self):
        return NCPoly(self, {(): 1})

    def zero(self):
        return NCPoly(self, {})

    def const(self, c):
        return NCPoly(self, {(): c} if c else {})

    def with_vars(self, extra, labels=None):
        """Context with additional variables appended (existing indices kept)."""
        subs = list(self.vars) + [H for H in extra if H not in self.vars]
        labs = list(self.labels) + list(labels or [f"x{v}" for v in range(len(self.vars), len(subs))])
        return RingContext(self.group, subs, labs[: len(subs)])


def _clean(d):
    return {w: c for w, c in d.items() if c}


class NCPoly:
    """Element of the free ring Z<g(x_H)>, tied to a :class:`RingContext`."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms

    # construction -------------------------------------------------------
    @classmethod
    def from_terms(cls, ctx, items):
        d = {}
        for w, c in items:
            w = tuple(w)
            d[w] = d.get(w, 0) + c
        return cls(ctx, _clean(d))

    def _check(self, other):
        if isinstance(other, int):
            return self.ctx.const(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise MixedContext("polynomials live in different ring contexts")
        return other

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for w, c in other.terms.items():
            v = d.get(w, 0) + c
            if v:
                d[w] = v
            else:
                d.pop(w, None)
        return NCPoly(self.ctx, d)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = {}
        get = d.get
        right = list(other.terms.items())
        for w1, c1 in self.terms.items():
            for w2, c2 in right:
                w = w1 + w2
                d[w] = get(w, 0) + c1 * c2
        return NCPoly(self.ctx, _clean(d))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if not c:
            return self.ctx.zero()
        return NCPoly(self.ctx, {w: c * v for w, v in self.terms.items()})

    def __pow__(self, k):
        out = self.ctx.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.const(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    # group action -------------------------------------------------------
    def act(self, g):
        """Image under the ring automorphism induced by the group element g."""
        if isinstance(g, str):
            g = self.ctx.group.index(g)
        if g == 0:
            return self
        m = self.ctx.act_maps[g].__getitem__
        return NCPoly(self.ctx, {tuple(map(m, w)): c for w, c in self.terms.items()})

    def apply(self, coeffs):
        """sum_g A[g] g(p) for a group-ring element given as {g: int} (or GroupRingElement)."""
        coeffs = getattr(coeffs, "coeffs", coeffs)
        d = {}
        get = d.get
        maps = self.ctx.act_maps
        for g, a in coeffs.items():
            if not a:
                continue
            m = maps[g].__getitem__
            for w, c in self.terms.items():
                w2 = tuple(map(m, w)) if g else w
                d[w2] = get(w2, 0) + a * c
        return NCPoly(self.ctx, _clean(d))

    def norm(self, S):
        """N_S(p) = sum over s in S of s(p)."""
        return self.apply({g: 1 for g in S})

    # rewriting ----------------------------------------------------------
    def normal_form(self):
        elim = self.ctx.eliminated
        if not elim:
            return self
        d = {}
        get = d.get
        nsyms = self.ctx.nsyms
        for w, c in self.terms.items():
            pos = [i for i, s in enumerate(w) if s in elim]
            if not pos:
                d[w] = get(w, 0) + c
                continue
            for s in w:
                if s >= nsyms:
                    raise UnknownVariable(f"symbol {s} is outside {self.ctx!r}")
            segs = []
            prev = 0
            for i in pos:
                segs.append(w[prev:i])
                prev = i + 1
            tail = w[prev:]
            choices = [elim[w[i]] for i in pos]
            for combo in product(*choices):
                word = segs[0]
                coef = c
                for k, (rw, rc) in enumerate(combo):
                    coef *= rc
                    word = word + rw + (segs[k + 1] if k + 1 < len(segs) else tail)
                d[word] = get(word, 0) + coef
        return NCPoly(self.ctx, _clean(d))

    def is_reduced(self):
        elim = self.ctx.eliminated
        return not any(s in elim for w in self.terms for s in w)

    # substitution -------------------------------------------------------
    def substitute(self, mapping, target=None):
        """Replace each g(x_v) by g(mapping[v]).

        ``mapping`` sends var indices to polynomials in the target context;
        unmapped variables are relabeled into the target context, which must
        contain the same subgroup.
        """
        if not isinstance(mapping, dict):
            raise TypeError("mapping must be a dict var -> NCPoly")
        if target is None:
            if mapping:
                target = next(iter(mapping.values())).ctx
            else:
                target = self.ctx
        src = self.ctx
        n = src.n
        if target.group != src.group:
            raise ContextMismatch("substitution needs source and target over the same group")
        for v, q in mapping.items():
            if q.ctx != target:
                raise ContextMismatch(f"replacement for var {v} is not in the target context")
        relabel = {}
        for v, H in enumerate(src.vars):
            if v in mapping:
                continue
            used = any(s // n == v for w in self.terms for s in w)
            if used:
                try:
                    relabel[v] = target.var_index(H)
                except UnknownVariable:
                    raise ContextMismatch(f"target context lacks variable for {H!r}") from None

        def image(s):
            g, v = s % n, s // n
            if v in mapping:
                return mapping[v].act(g)
            return [((relabel[v] * n + g,), 1)]

        return self.map_symbols(target, image)

    def map_symbols(self, target, image):
        """Ring map sending each symbol s to ``image(s)`` (an NCPoly or term list in ``target``)."""
        cache = {}
        d = {}
        get = d.get
        for w, c in self.terms.items():
            partial = [((), c)]
            for s in w:
                img = cache.get(s)
                if img is None:
                    img = image(s)
                    img = list(img.terms.items()) if isinstance(img, NCPoly) else list(img)
                    cache[s] = img
                if len(img) == 1 and img[0][1] == 1:
                    iw = img[0][0]
                    partial = [(pw + iw, pc) for pw, pc in partial]
                else:
                    partial = [(pw + iw, pc * ic) for pw, pc in partial for iw, ic in img]
            for pw, pc in partial:
                d[pw] = get(pw, 0) + pc
        return NCPoly(target, _clean(d))

    def embed(self, target, hom):
        """Transport along an injective homomorphism ``hom`` (list: source elem -> target elem).

        Each g(x_H) goes to hom(g)(x_{hom(H)}); the target context must carry a
        variable for every image subgroup that occurs.
        """
        src = self.ctx
        n, tn = src.n, target.n
        vmap = {}
        for v, H in enumerate(src.vars):
            img = tuple(sorted(hom[h] for h in H.members))
            try:
                vmap[v] = target.var_index(img)
            except UnknownVariable:
                vmap[v] = None
        d = {}
        for w, c in self.terms.items():
            nw = []
            for s in w:
                g, v = s % n, s // n
                if vmap[v] is None:
                    raise ContextMismatch(f"target context lacks image of {src.vars[v]!r}")
                nw.append(vmap[v] * tn + hom[g])
            nw = tuple(nw)
            d[nw] = d.get(nw, 0) + c
        return NCPoly(target, _clean(d))

    # inspection ---------------------------------------------------------
    def degree(self):
        return max((len(w) for w in self.terms), default=0)

    def stats(self):
        """(number of monomials, maximal degree) of the collected polynomial."""
        return len(self.terms), self.degree()

    def words(self):
        """Monomials in degree-lexicographic order over (var, element)."""
        return sorted(self.terms, key=lambda w: (len(w), w))

    def items(self):
        return [(w, self.terms[w]) for w in self.words()]

    def constant(self):
        return self.terms.get((), 0)

    def variables_used(self):
        n = self.ctx.n
        return sorted({s // n for w in self.terms for s in w})

    def __repr__(self):
        if len(self.terms) > 12:
            return f"<NCPoly {len(self.terms)} terms, degree {self.degree()}>"
        return f"NCPoly({to_text(self)})"

    def __str__(self):
        return to_text(self)


# ---------------------------------------------------------------------------
# free-standing API mirroring the methods


def act(g, p):
    return p.act(g)


def apply(A, p):
    return p.apply(A)


def norm(S, p):
    return p.norm(S)


def normal_form(p, ctx=None):
    if ctx is not None and ctx != p.ctx:
        raise MixedContext("polynomial is not in the given context")
    return p.normal_form()


def nf_equal(p, q):
    return (p - q).normal_form().is_zero()


def is_norm_one(S, p, ctx=None):
    """True iff N_S(p) - 1 has zero normal form."""
    if ctx is not None and ctx != p.ctx:
        raise MixedContext("polynomial is not in the given context")
    members = S.members if isinstance(S, Subgroup) else range(S.order)
    return (p.norm(members) - 1).normal_form().is_zero()


def substitute(p, var, replacement):
    return p.substitute({var: replacement}, replacement.ctx)


def stats(p):
    return p.stats()


# ---------------------------------------------------------------------------
# text and LaTeX rendering

_POW_RE = re.compile(r"([st])(\d*)")


def _elem_latex(name):
    if name == "e":
        return ""
    if name.startswith("("):
        inner = name[1:-1].split(",")
        return "(" + ",".join(_elem_latex(x) or "1" for x in inner) + ")"
    out = []
    for letter, k in _POW_RE.findall(name):
        sym = r"\sigma" if letter == "s" else r"\tau"
        out.append(sym + (f"^{{{k}}}" if k else ""))
    return "".join(out) if out else rf"\mathrm{{{name}}}"


def _sym_latex(ctx, s):
    g, v = ctx.split(s)
    label = ctx.labels[v]
    if "_" in label:
        head, sub = label.split("_", 1)
        label = f"{head}_{{{sub}}}"
    elif len(label) > 1 and label[0] == "x":
        label = f"x_{{{label[1:]}}}"
    e = _elem_latex(ctx.group.names[g])
    if not e:
        return label
    if e.count("\\") > 1 or e.startswith("("):
        return f"({e})({label})"
    return f"{e}({label})"


def _word_latex(ctx, w):
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        base = _sym_latex(ctx, w[i])
        parts.append(base if j - i == 1 else f"{base}^{{{j - i}}}")
        i = j
    return "".join(parts)


def to_latex(p):
    if not p.terms:
        return "0"
    chunks = []
    for k, (w, c) in enumerate(p.items()):
        body = _word_latex(p.ctx, w)
        mag = abs(c)
        coef = "" if (mag == 1 and body) else str(mag)
        sign = "-" if c < 0 else "+"
        if k == 0:
            chunks.append(("-" if c < 0 else "") + coef + body)
        else:
            chunks.append(f" {sign} {coef}{body}")
    return "".join(chunks)


def _sym_text(ctx, s):
    g, v = ctx.split(s)
    name = ctx.group.names[g]
    label = ctx.labels[v]
    return label if name == "e" else f"{name}({label})"


def to_text(p):
    if not p.terms:
        return "0"
    chunks = []
    for k, (w, c) in enumerate(p.items()):
        body = "*".join(_sym_text(p.ctx, s) for s in w)
        mag = abs(c)
        coef = "" if (mag == 1 and body) else (str(mag) + ("*" if body else ""))
        sign = "-" if c < 0 else "+"
        if k == 0:
            chunks.append(("-" if c < 0 else "") + coef + body)
        else:
            chunks.append(f" {sign} {coef}{body}")
    return "".join(chunks)


class FormalPoly:
    """Uncollected polynomial: a list of signed monomials, never merged.

    Supports the same operations as :class:`NCPoly`; ``len`` is the number of
    monomials of the expression as written, before like terms are combined.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms

    @classmethod
    def of(cls, p):
        if isinstance(p, FormalPoly):
            return p
        return cls(p.ctx, p.items())

    def _lift(self, other):
        if isinstance(other, int):
            return FormalPoly(self.ctx, [((), other)] if other else [])
        if isinstance(other, NCPoly):
            other = FormalPoly.of(other)
        if not isinstance(other, FormalPoly):
            return NotImplemented
        if other.ctx != self.ctx:
            raise MixedContext("polynomials live in different ring contexts")
        return other

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FormalPoly(self.ctx, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return FormalPoly(self.ctx, [(w, -c) for w, c in self.terms])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FormalPoly(self.ctx, [(w1 + w2, c1 * c2) for w1, c1 in self.terms for w2, c2 in other.terms])

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        return FormalPoly(self.ctx, [(w, c * v) for w, v in self.terms] if c else [])

    def act(self, g):
        if isinstance(g, str):
            g = self.ctx.group.index(g)
        m = self.ctx.act_maps[g].__getitem__
        return FormalPoly(self.ctx, [(tuple(map(m, w)), c) for w, c in self.terms])

    def apply(self, coeffs):
        coeffs = getattr(coeffs, "coeffs", coeffs)
        out = []
        for g, a in sorted(coeffs.items()):
            if a:
                out.extend(self.act(g).scale(a).terms)
        return FormalPoly(self.ctx, out)

    def norm(self, S):
        return self.apply({g: 1 for g in S})

    def collect(self):
        return NCPoly.from_terms(self.ctx, self.terms)

    def normal_form(self):
        return self.collect().normal_form()

    def __len__(self):
        return len(self.terms)

    def degree(self):
        return max((len(w) for w, _ in self.terms), default=0)

    def stats(self):
        return len(self.terms), self.degree()

    def __repr__(self):
        return f"<FormalPoly {len(self.terms)} terms, degree {self.degree()}>"


def collected(p):
    return p.collect() if isinstance(p, FormalPoly) else p
