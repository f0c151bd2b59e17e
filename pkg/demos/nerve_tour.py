"""A walk through the cubical nerve of the two-object pair groupoid."""
from cubicat.core import comp, dimension, fixed_point_lattice, truncate
from cubicat.laws import check_all
from cubicat.models import base_category, cube_nerve

# squares labelled by objects a, b at vertices 00, 01, 10, 11
S = cube_nerve(base_category("pair_groupoid", 2), 2)
print(S)
print("cells:", " ".join(S.labels))

x = S.index("a,b,a,b")
print("lower face in direction 2:", S.label(S.d(2, "-", x)))
print("upper face in direction 2:", S.label(S.d(2, "+", x)))
print("dimension:", dimension(S, x), "(constant in direction 1)")

# s_1 turns a cell fixed in direction 1 into one fixed in direction 2
print("s_1:", S.label(S.s(1, x)))

y = S.index("b,a,b,a")
print("a,b,a,b o_2 b,a,b,a =", S.label(comp(S, 2, x, y)))
print("a,b,a,b o_2 a,b,a,b is defined:", comp(S, 2, x, x) is not None)

# the fixed-point sets shrink as directions are added
nodes, edges = fixed_point_lattice(S)
for I, cells in nodes.items():
    print(f"S^{set(I) or '{}'}: {len(cells)} cells")

for m in range(3):
    print(f"truncation to dimension {m}: {len(truncate(S, m))} cells")

report = check_all(S)
print(f"law suites: {len(report.violations)} violations over {report.checked_count} instances")
