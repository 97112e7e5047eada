"""The nonabelian group of order 27 and exponent 9.

Run: python3 demos/04_order27.py
"""
from normforge import formulas as lib
from normforge.groups import subgroup_generated
from normforge.ring import is_norm_one

lhs, rhs = lib.g27_identity()
print("group ring identity holds:", lhs == rhs)

F = lib.g27_formula()
G = F.group
xp = lib.c9_in_g27(G).expanded()
print("x' in terms of x_U:", xp.stats(), " norm one for <st>:",
      is_norm_one(subgroup_generated(G, ["st"]), xp.poly))
for node in F.nodes():
    print(f"  node {node.name}: target order {node.target.order}, {node.stats()}")
print("whole tree verified:", F.verify())
