"""Dihedral groups need two inputs, x for <s2, t> and x_2 for <u, st>.

Run: python3 demos/03_dihedral.py
"""
from normforge import formulas as lib
from normforge.oracle import oracle_check_formula

F = lib.dihedral_formula(2)
print("D8 b-values:")
for g, v in F.info["b"].items():
    print(f"  b({F.group.name(g)}) = {v}")
print("Klein witness written out:", F.info["formal_w"], "  y written out:", F.info["formal_y"])
print("y collected:", F.stats(), " verified:", F.verify(), " oracle:", oracle_check_formula(F))

for n in (3, 4):
    F = lib.dihedral_formula(n)
    print(f"D{F.group.order}: y {F.stats()}, tree depth {F.depth()}, verified {F.verify()}")
