"""Formulas: verified norm-one polynomials, possibly built from sub-formulas.

A :class:`Formula` is a polynomial ``poly`` in a ring context over the ambient
group, claimed to have norm one for ``target``.  Some context variables may be
bound to child formulas whose targets are exactly those variables' subgroups;
the rest are inputs.  Because a norm-one element may be substituted for any
variable without breaking the norm identity, checking each node in its own
context checks the whole tree, and :meth:`Formula.expand` produces the single
polynomial when that is small enough to be useful.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ContextMismatch, NormFailure, SpecError
from .groups import Subgroup, build_group, subgroup_from_members
from .ring import NCPoly, RingContext, collected, is_norm_one


@dataclass
class Formula:
    ctx: RingContext
    poly: NCPoly
    target: Subgroup
    children: dict = field(default_factory=dict)
    name: str = ""
    info: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self.poly = collected(self.poly)
        for v, child in self.children.items():
            if child.target.members != self.ctx.vars[v].members:
                raise ContextMismatch(f"child for variable {v} targets the wrong subgroup")
            if child.ctx.group != self.ctx.group:
                raise ContextMismatch("child formula lives over a different group")

    @property
    def group(self):
        return self.ctx.group

    # structure ---------------------------------------------------------
    def nodes(self):
        yield self
        for v in sorted(self.children):
            yield from self.children[v].nodes()

    def inputs(self):
        """Subgroups whose variables stay free after all substitutions."""
        out = {}
        for node in self.nodes():
            used = set(node.poly.variables_used())
            for v, H in enumerate(node.ctx.vars):
                if v in used and v not in node.children:
                    out[H.members] = H
        return [out[k] for k in sorted(out)]

    def depth(self):
        return 1 + max((c.depth() for c in self.children.values()), default=0)

    def is_composite(self):
        return bool(self.children)

    def is_leaf(self):
        """True for the bare formula x_H of the target's own variable."""
        if self.children:
            return False
        try:
            v = self.ctx.var_index(self.target)
        except Exception:
            return False
        return self.poly == self.ctx.x(v)

    # verification ------------------------------------------------------
    def verify_node(self):
        return is_norm_one(self.target, self.poly)

    def verify(self, raise_on_failure=False):
        """Every node has norm one for its target in its own context."""
        for node in self.nodes():
            if not node.verify_node():
                if raise_on_failure:
                    raise NormFailure(f"node {node.name or '?'} is not norm one for its target")
                return False
        return True

    # expansion ---------------------------------------------------------
    def expand(self, ctx=None):
        """Substitute all children; the result lives in a context over the inputs."""
        if ctx is None:
            ctx = RingContext(self.group, self.inputs())
        mapping = {v: child.expand(ctx) for v, child in self.children.items()}
        return self.poly.substitute(mapping, ctx)

    def expanded(self):
        """The flattened formula (no children)."""
        if not self.children:
            return self
        ctx = RingContext(self.group, self.inputs())
        return Formula(ctx, self.expand(ctx), self.target, {}, self.name)

    # transport ---------------------------------------------------------
    def transport(self, group, hom, name=None):
        """Image under an injective homomorphism into ``group`` (hom: list of element images)."""
        subs = [subgroup_from_members(group, [hom[h] for h in H.members]) for H in self.ctx.vars]
        ctx = RingContext(group, subs, self.ctx.labels)
        poly = self.poly.embed(ctx, hom)
        target = subgroup_from_members(group, [hom[h] for h in self.target.members])
        kids = {v: c.transport(group, hom) for v, c in self.children.items()}
        return Formula(ctx, poly, target, kids, name or self.name)

    def stats(self):
        return self.poly.stats()

    def formal_stats(self):
        """(monomials, degree) of the expansion written out without combining like terms."""
        kids = {v: c.formal_stats() for v, c in self.children.items()}
        n = self.ctx.n
        total, deg = 0, 0
        for w, _ in self.poly.items():
            count, d = 1, 0
            for s in w:
                k, kd = kids.get(s // n, (1, 1))
                count *= k
                d += kd
            total += count
            deg = max(deg, d)
        return total, deg

    # serialization -----------------------------------------------------
    def to_dict(self):
        G = self.group
        d = {
            "group": G.spec_string(),
            "target": list(self.target.names()),
            "vars": [{"id": v, "subgroup": list(H.names()), "label": self.ctx.labels[v]}
                     for v, H in enumerate(self.ctx.vars)],
            "terms": [{"c": str(c), "w": [[G.name(s % self.ctx.n), s // self.ctx.n] for s in w]}
                      for w, c in self.poly.items()],
        }
        if self.name:
            d["name"] = self.name
        if self.children:
            d["subformulas"] = {str(v): self.children[v].to_dict() for v in sorted(self.children)}
        return d

    def dumps(self):
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d, group=None):
        try:
            G = group or build_group(d["group"])
            subs = [subgroup_from_members(G, [G.index(n) for n in v["subgroup"]]) for v in d["vars"]]
            ids = [v["id"] for v in d["vars"]]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed formula file: {exc}") from None
        if ids != list(range(len(ids))):
            raise SpecError("variable ids must be 0, 1, ... in order")
        labels = [v.get("label") or f"x{v['id']}" for v in d["vars"]]
        ctx = RingContext(G, subs, labels)
        n = G.order
        items = []
        for t in d["terms"]:
            word = []
            for name, var in t["w"]:
                if not 0 <= var < len(subs):
                    raise SpecError(f"unknown variable id {var}")
                word.append(var * n + G.index(name))
            items.append((tuple(word), int(t["c"])))
        poly = NCPoly.from_terms(ctx, items)
        target = (subgroup_from_members(G, [G.index(n) for n in d["target"]])
                  if "target" in d else G.whole())
        kids = {int(k): cls.from_dict(v, G) for k, v in d.get("subformulas", {}).items()}
        return cls(ctx, poly, target, kids, d.get("name", ""))

    @classmethod
    def loads(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"not a JSON formula file: {exc}") from None
        return cls.from_dict(data)


def leaf(ctx, v=0, name=""):
    """The formula x_H for the variable's own subgroup."""
    return Formula(ctx, ctx.x(v), ctx.vars[v], {}, name)
