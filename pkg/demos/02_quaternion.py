"""The quaternion family: from the norm equations to y = a x.

Run: python3 demos/02_quaternion.py
"""
from normforge import formulas as lib
from normforge.method import build_system, standard_setup

st = standard_setup("Q8")
G = st.group
print("presentation:", st.pres)
for eq in build_system(G, st.U, st.sigma, st.pres):
    print("  ", eq.describe(G))

for n in (1, 2, 3):
    F = lib.quaternion_formula(n)
    print(f"Q{F.group.order}: w {F.info['w'].stats()}, y {F.stats()}")

F = lib.quaternion_formula(1)
print("Q8 y equals the written-out 26-term element:", F.poly == lib.q8_reference(F.ctx))
fc, fd = F.formal_stats()
E = F.expanded()
print(f"with the C4 formula substituted: {fc} monomials as written, {E.stats()[0]} after collecting, degree {fd}")
