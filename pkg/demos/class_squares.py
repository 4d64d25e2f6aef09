"""Search for a conjugacy class C with C^2 = G in small simple groups."""
import time

from classical_chars import groupsim
from classical_chars.groupsim import GroupSpec

for fam, n, q in (("A", 5, 0), ("PSL", 2, 7), ("A", 6, 0)):
    t0 = time.perf_counter()
    G = groupsim.build_group(GroupSpec(fam, n, q))
    rep = groupsim.find_covering_class(G, workers=2)
    size = len(G.classes[rep.cls])
    order = G.element_order(int(G.reps[rep.cls]))
    print(f"{fam}{n}{f'({q})' if q else ''}: order {G.order}, {len(G.classes)} classes; "
          f"class {rep.cls} (size {size}, element order {order}) squares to G "
          f"[{time.perf_counter() - t0:.2f}s]")

# Frobenius count in S_5: ways to write a fixed 5-cycle as a product of two 3-cycles
G = groupsim.build_group(GroupSpec("S", 5))
ct = groupsim.class_by_cycle_type(G)
x = y = (1, 1, 3)
g = (5,)
direct = groupsim.frobenius_count_direct(G, ct[x], ct[y], G.reps[ct[g]])
print("S_5 factorisations:", direct, "character sum:", groupsim.frobenius_count_formula_sn(5, x, y, g))
