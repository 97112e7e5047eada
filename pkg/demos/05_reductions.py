"""Building formulas for groups with no closed formula of their own.

Run: python3 demos/05_reductions.py
"""
from normforge import formulas as lib
from normforge.groups import build_group
from normforge.ring import to_text

F = lib.sylow_combine(build_group("S3"))
print("S3:", to_text(F.poly), "with", [H.order for H in F.ctx.vars])

for spec in ("C8", "C16", "C27", "Q16", "C4xC2", "Q8xC2", "Q8xC3"):
    F = lib.closed_formula(build_group(spec))
    print(f"{spec}: top node {F.stats()}, {sum(1 for _ in F.nodes())} nodes, verified {F.verify()}")
