"""From a presentation of G to a norm-one element y for G.

Fix a normal subgroup U of prime index p and sigma generating G/U.  Let phi be
the indicator function of U and alpha(g) = (1 + sigma + ... + sigma^{k-1})(phi)
for g in the coset sigma^k U.  Unknown ring elements b(s_i), one per
generator, must make alpha - b a 1-cocycle; expanding every relation through
the cocycle rule gives the linear system solved here.  Given a solution, b
restricted to U is a cocycle with values in R, a witness w turns it into a
coboundary, and y = (b(sigma) + (1 - sigma) w) x has norm one for G.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cocycle import CocycleOnSubgroup, cocycle_validate
from .errors import (BadQuotient, InvarianceFailure, NoSolution, NormFailure,
                     SpecError, VerificationFailure)
from .groupring import BContext, BElement, GroupRingElement
from .groups import (Dihedral, ModMax, Quaternion, all_subgroups, build_group,
                     is_normal, prime_factors, subgroup_generated)
from .ring import RingContext, collected, is_norm_one


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """Generators (element indices) and relations as pairs of positive words."""

    group: object
    gens: tuple
    relations: tuple

    def validate(self):
        G = self.group
        if subgroup_generated(G, list(self.gens)).order != G.order:
            raise SpecError("presentation generators do not generate the group")
        for w1, w2 in self.relations:
            for letter in w1 + w2:
                if letter not in self.gens:
                    raise SpecError(f"letter {G.name(letter)} is not a generator")
            if evaluate_word(G, w1) != evaluate_word(G, w2):
                raise SpecError(f"relation {self.word_str(w1)} = {self.word_str(w2)} fails")
        return self

    def word_str(self, w):
        if not w:
            return "e"
        G = self.group
        out = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = G.name(w[i])
            out.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return " ".join(out)

    def __str__(self):
        G = self.group
        rels = ", ".join(f"{self.word_str(a)} = {self.word_str(b)}" for a, b in self.relations)
        return f"<{', '.join(G.name(g) for g in self.gens)} | {rels}>"


def evaluate_word(G, w):
    g = 0
    for letter in w:
        g = G.mul[g][letter]
    return g


def quaternion_presentation(G, n):
    s, t = G.index("s"), G.index("t")
    N = 2 ** (n + 1)
    return Presentation(G, (s, t), (
        ((s,) * N, ()),
        ((s, t, s), (t,)),
        ((t, t), (s,) * (N // 2)),
    )).validate()


def dihedral_presentation(G, n):
    s, t = G.index("s"), G.index("t")
    return Presentation(G, (s, t), (
        ((t, t), ()),
        ((s,) * 2 ** n, ()),
        ((s, t, s), (t,)),
    )).validate()


def modmax_presentation(G, p=3):
    s, t = G.index("s"), G.index("t")
    return Presentation(G, (s, t), (
        ((t,) * p, ()),
        ((s,) * p * p, ()),
        ((s,) * (p + 1) + (t,), (t, s)),
    )).validate()


def canonical_words(G, gens):
    """Shortest word for every element, least in generator order (BFS, appending on the right)."""
    words = {0: ()}
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for letter in gens:
            h = G.mul[g][letter]
            if h not in words:
                words[h] = words[g] + (letter,)
                queue.append(h)
    return words


def cayley_presentation(G, gens=None):
    """The presentation given by the Cayley graph: one relation per non-tree edge."""
    gens = tuple(gens or G.generators)
    words = canonical_words(G, gens)
    rels = []
    for g in sorted(words, key=lambda k: (len(words[k]), words[k])):
        for letter in gens:
            h = G.mul[g][letter]
            w = words[g] + (letter,)
            if words[h] != w:
                rels.append((w, words[h]))
    return Presentation(G, gens, tuple(rels)).validate()


# ---------------------------------------------------------------------------
# the system


@dataclass
class NormEquation:
    """sum_i lhs[i](b(gen_i)) = rhs."""

    lhs: dict
    rhs: int

    def describe(self, G):
        parts = []
        for g, A in sorted(self.lhs.items()):
            if A:
                parts.append(f"({A})*b({G.name(g)})")
        return f"{' + '.join(parts) or '0'} = {self.rhs}"


def build_alpha(G, U, sigma, ring_ctx=None):
    """alpha: G -> B as a function returning BElements with zero ring part."""
    if ring_ctx is None:
        ring_ctx = RingContext(G, [U])
    try:
        bctx = BContext(G, U, sigma, ring_ctx)
    except Exception as exc:
        raise BadQuotient(str(exc)) from exc
    cache = {}

    def alpha(g):
        if isinstance(g, str):
            g = G.index(g)
        if g not in cache:
            k = bctx.class_of[g]
            cache[g] = BElement(bctx, None, [1 if j < k else 0 for j in range(bctx.p)])
        return cache[g]

    alpha.bctx = bctx
    return alpha


def _expand(G, w, alpha):
    """Coefficients of b(letter) and the alpha-part in beta(w) via the cocycle rule."""
    coeffs = {}
    a = None
    prefix = 0
    for letter in w:
        A = coeffs.setdefault(letter, {})
        A[prefix] = A.get(prefix, 0) + 1
        term = alpha(letter).act(prefix)
        a = term if a is None else a + term
        prefix = G.mul[prefix][letter]
    return coeffs, a


def build_system(G, U, sigma, pres):
    """One NormEquation per relation; the right-hand sides are integers."""
    alpha = build_alpha(G, U, sigma)
    bctx = alpha.bctx
    zero = BElement(bctx)
    eqs = []
    for w1, w2 in pres.relations:
        c1, a1 = _expand(G, w1, alpha)
        c2, a2 = _expand(G, w2, alpha)
        lhs = {}
        for g in pres.gens:
            A = GroupRingElement(G, c1.get(g, {})) - GroupRingElement(G, c2.get(g, {}))
            lhs[g] = A
        diff = (a1 or zero) - (a2 or zero)
        rp = diff.coerce()
        if any(w for w in rp.terms if w):
            raise BadQuotient("alpha side has a non-constant ring part")
        eqs.append(NormEquation(lhs, rp.constant()))
    return eqs


def family_system(G, family, n=None):
    """The three equations of the quaternion, dihedral and order-27 families, written out."""
    e = G.index
    geo = GroupRingElement.geometric
    one = GroupRingElement.one(G)
    s, t = e("s"), e("t")
    S = GroupRingElement.element(G, s)
    T = GroupRingElement.element(G, t)
    ST = GroupRingElement.element(G, G.mul[s][t])
    zero = GroupRingElement(G)
    if family == "Q":
        N = 2 ** (n + 1)
        return [
            NormEquation({s: geo(G, s, N), t: zero}, 0),
            NormEquation({s: one + ST, t: S - one}, 0),
            NormEquation({s: -geo(G, s, N // 2), t: one + T}, 1),
        ]
    if family == "D":
        return [
            NormEquation({s: zero, t: one + T}, 0),
            NormEquation({s: geo(G, s, 2 ** n), t: zero}, 2 ** (n - 1)),
            NormEquation({s: one + ST, t: S - one}, 1),
        ]
    if family == "G27":
        return [
            NormEquation({s: zero, t: geo(G, t, 3)}, 0),
            NormEquation({s: geo(G, s, 9), t: zero}, 3),
            NormEquation({s: geo(G, s, 4) - T, t: GroupRingElement.element(G, G.power(s, 4)) - one}, 1),
        ]
    raise SpecError(f"no written system for family {family!r}")


def check_solution(system, b_values, ctx=None):
    """Every equation holds in the universal ring."""
    for eq in system:
        total = None
        for g, A in eq.lhs.items():
            if not A:
                continue
            term = collected(b_values[g]).apply(A)
            total = term if total is None else total + term
        if total is None:
            ok = eq.rhs == 0
        else:
            ok = (total - eq.rhs).normal_form().is_zero()
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# exact integer linear algebra


def integer_solve(rows, rhs, ncols):
    """Solve M u = rhs over Z by unimodular column reduction.

    Returns (particular solution, kernel basis) or None if no integer solution.
    The particular solution has all free coordinates zero.
    """
    m = len(rows)
    cols = [[rows[i][j] for i in range(m)] for j in range(ncols)]
    U = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]  # U[j] = column j
    pivots = []
    pc = 0
    for r in range(m):
        if pc >= ncols:
            break
        while True:
            nz = [j for j in range(pc, ncols) if cols[j][r]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(cols[j][r]), j))
            cols[pc], cols[j0] = cols[j0], cols[pc]
            U[pc], U[j0] = U[j0], U[pc]
            piv = cols[pc][r]
            done = True
            for j in range(pc + 1, ncols):
                v = cols[j][r]
                if v:
                    q = v // piv
                    if q:
                        cj, cp = cols[j], cols[pc]
                        for i in range(r, m):
                            if cp[i]:
                                cj[i] -= q * cp[i]
                        uj, up = U[j], U[pc]
                        for i in range(ncols):
                            if up[i]:
                                uj[i] -= q * up[i]
                    if cols[j][r]:
                        done = False
            if done:
                break
        if cols[pc][r]:
            if cols[pc][r] < 0:
                cols[pc] = [-v for v in cols[pc]]
                U[pc] = [-v for v in U[pc]]
            pivots.append((r, pc))
            pc += 1
    resid = list(rhs)
    z = [0] * ncols
    for r, j in pivots:
        piv = cols[j][r]
        if resid[r] % piv:
            return None
        q = resid[r] // piv
        z[j] = q
        if q:
            for i in range(m):
                resid[i] -= q * cols[j][i]
    if any(resid):
        return None
    u = [0] * ncols
    for j in range(ncols):
        if z[j]:
            for i in range(ncols):
                u[i] += z[j] * U[j][i]
    kernel = [U[j] for j in range(pc, ncols)]
    return u, kernel


def _reduce_by_kernel(u, kernel):
    """Greedy L1 reduction of u by kernel vectors; deterministic."""
    def l1(v):
        return sum(abs(c) for c in v)
    improved = True
    best = l1(u)
    while improved:
        improved = False
        for k in kernel:
            for sgn in (-1, 1):
                cand = [a + sgn * b for a, b in zip(u, k)]
                c = l1(cand)
                if c < best:
                    u, best, improved = cand, c, True
    return u


def ansatz_solve(system, ctx, pool, gens=None, max_order=32):
    """Look for b(s_i) = sum_{H in pool} A_{i,H}(x_H) with A_{i,H} in Z[G]."""
    G = ctx.group
    if G.order > max_order:
        raise NoSolution(f"ansatz limited to |G| <= {max_order}")
    gens = list(gens or sorted({g for eq in system for g in eq.lhs}))
    n = G.order
    unknowns = [(i, v, g) for i in gens for v in pool for g in range(n)]
    elim = ctx.eliminated
    kept = [s for s in range(ctx.nsyms) if s not in elim]
    row_of = {s: k + 1 for k, s in enumerate(kept)}  # row 0 is the constant
    width = len(kept) + 1
    rows, rhs = [], []
    t = G.mul
    for eq in system:
        block = [[0] * len(unknowns) for _ in range(width)]
        for col, (i, v, g) in enumerate(unknowns):
            A = eq.lhs.get(i)
            if not A:
                continue
            for k, c in A.coeffs.items():
                sym = v * n + t[k][g]
                if sym in elim:
                    for w, rc in elim[sym]:
                        r = 0 if not w else row_of[w[0]]
                        block[r][col] += c * rc
                else:
                    block[row_of[sym]][col] += c
        rows.extend(block)
        rhs.extend([eq.rhs] + [0] * (width - 1))
    sol = integer_solve(rows, rhs, len(unknowns))
    if sol is None:
        raise NoSolution("no solution of the linear ansatz over the given variables")
    u, kernel = sol
    u = _reduce_by_kernel(u, kernel)
    out = {i: ctx.zero() for i in gens}
    for (i, v, g), c in zip(unknowns, u):
        if c:
            out[i] = out[i] + ctx.x(v, g).scale(c)
    if not check_solution(system, out, ctx):
        raise VerificationFailure("ansatz solution fails the system")
    return out


# ---------------------------------------------------------------------------
# from b to y


def extend_b(G, U, sigma, pres, b_values, ctx=None):
    """b on all of U from its values on the generators, as a validated cocycle."""
    ctx = ctx or next(iter(b_values.values())).ctx
    alpha = build_alpha(G, U, sigma, ctx)
    bctx = alpha.bctx
    words = canonical_words(G, pres.gens)
    bvals = {g: collected(v) for g, v in b_values.items()}
    values = {}
    for g in U.members:
        beta = BElement(bctx)
        prefix = 0
        for letter in words[g]:
            term = alpha(letter) - BElement.ring(bctx, bvals[letter])
            beta = beta + term.act(prefix)
            prefix = G.mul[prefix][letter]
        values[g] = -beta.coerce()
    cocycle = CocycleOnSubgroup(U, values, ctx)
    cocycle_validate(cocycle)
    return cocycle


def assemble(G, U, sigma, b_sigma, w, x, ctx=None, check=True):
    """y = (b(sigma) + (1 - sigma) w) x, with every claimed property verified."""
    if isinstance(sigma, str):
        sigma = G.index(sigma)
    a = b_sigma + w - w.act(sigma)
    y = a * x
    if check:
        ac = collected(a)
        for u in U.members:
            if not (ac.act(u) - ac).normal_form().is_zero():
                raise InvarianceFailure(f"a is not fixed by {G.name(u)}")
        p = G.order // U.order
        tr = ac.apply({G.power(sigma, i): 1 for i in range(p)})
        if not (tr - 1).normal_form().is_zero():
            raise NormFailure("(1 + sigma + ... + sigma^{p-1})(a) != 1")
        if not is_norm_one(G.whole(), collected(y)):
            raise NormFailure("N_G(y) != 1")
    return y


# ---------------------------------------------------------------------------
# the standard setups


@dataclass
class Setup:
    """Everything the pipeline needs for one group."""

    group: object
    U: object
    sigma: int
    pres: object
    ctx: object
    family: str
    n: int = 0


def standard_setup(spec):
    """U, sigma, presentation and ring context used for each supported family."""
    G = build_group(spec)
    sp = G.spec
    if isinstance(sp, Quaternion):
        n = sp.m.bit_length() - 3
        U = subgroup_generated(G, ["s"])
        ctx = RingContext(G, [U], ["x"])
        return Setup(G, U, G.index("t"), quaternion_presentation(G, n), ctx, "Q", n)
    if isinstance(sp, Dihedral):
        n = sp.m.bit_length() - 2
        u = G.power(G.index("s"), 2 ** (n - 1))
        U = subgroup_generated(G, ["s2", "t"])
        U2 = subgroup_generated(G, [u, G.index("st")])
        ctx = RingContext(G, [U, U2], ["x", "x_2"])
        return Setup(G, U, G.index("s"), dihedral_presentation(G, n), ctx, "D", n)
    if isinstance(sp, ModMax) and sp.p == 3:
        U = subgroup_generated(G, ["s3", "t"])
        H1 = subgroup_generated(G, ["st"])
        ctx = RingContext(G, [U, H1], ["x", "x'"])
        return Setup(G, U, G.index("s"), modmax_presentation(G, 3), ctx, "G27", 3)
    (p,) = prime_factors(G.order) if len(prime_factors(G.order)) == 1 else (None,)
    if p is None:
        raise SpecError("the pipeline needs a p-group")
    maximal = [H for H in all_subgroups(G) if H.order * p == G.order and is_normal(G, H)]
    U = maximal[0]
    sigma = min(g for g in G.generators if g not in U.members)
    pres = cayley_presentation(G)
    ctx = RingContext(G, [U], ["x"])
    return Setup(G, U, sigma, pres, ctx, "generic", 0)


def library_solution(setup):
    """The explicit b-values for the quaternion, dihedral and order-27 families."""
    G, ctx = setup.group, setup.ctx
    e = G.index
    if setup.family == "Q":
        x = ctx.x(0)
        st = e("st")
        N = 2 ** setup.n
        return {
            e("s"): x - x.act(st),
            e("t"): x.apply({G.power(e("s"), i): 1 for i in range(N)}),
        }
    if setup.family == "D":
        x2 = ctx.x(1)
        u = G.power(e("s"), 2 ** (setup.n - 1))
        ut = G.mul[u][e("t")]
        return {
            e("s"): x2.act(e("s")) + x2.act(ut),
            e("t"): x2.apply({e("t"): 1, G.mul[e("t")][u]: 1, 0: -1, u: -1}),
        }
    if setup.family == "G27":
        x1 = ctx.x(1)
        st = e("st")
        b_sigma = x1.apply({0: 1, st: 1, G.mul[st][st]: 1})
        A = GroupRingElement(G, {G.power(e("s"), 6): 1}) - (
            GroupRingElement.element(G, e("s")) * GroupRingElement.sum_of(G, ["e", "s", "s2", "s4"])
            * GroupRingElement.element(G, e("t")))
        b_tau = x1.apply((GroupRingElement.element(G, e("t")) - 1) * A)
        return {e("s"): b_sigma, e("t"): b_tau}
    return None


@dataclass
class PipelineResult:
    setup: Setup
    system: list
    b_values: dict
    cocycle: CocycleOnSubgroup
    w: object
    y: object


def run_pipeline(spec, solution="library", pool=None):
    """build_system -> solution -> extend_b -> witness -> assemble, all verified."""
    from .witness import witness

    st = standard_setup(spec)
    G, U, sigma, ctx = st.group, st.U, st.sigma, st.ctx
    system = build_system(G, U, sigma, st.pres)
    b = library_solution(st) if solution == "library" else None
    if b is None:
        b = ansatz_solve(system, ctx, pool if pool is not None else list(range(len(ctx.vars))),
                         gens=list(st.pres.gens))
    if not check_solution(system, b, ctx):
        raise VerificationFailure("b-values do not solve the system")
    beta = extend_b(G, U, sigma, st.pres, b, ctx)
    x = ctx.x(0)
    w = witness(U, beta, x)
    y = assemble(G, U, sigma, collected(b[sigma]), w, x)
    return PipelineResult(st, system, b, beta, w, y)
