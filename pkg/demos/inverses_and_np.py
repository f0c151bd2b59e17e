"""Inverses in a groupoid nerve versus a poset nerve."""
from cubicat.equivalence import np_correspondence
from cubicat.inverses import check_np, ri_inverse, synthesize_inverse_dim0
from cubicat.models import base_category, cube_nerve

groupoid = cube_nerve(base_category("pair_groupoid", 2), 2)
chain = cube_nerve(base_category("chain_poset", 2), 2)

x = groupoid.index("a,b,a,b")
cert = ri_inverse(groupoid, 2, x)
print("search:", groupoid.label(cert.inverse), "evidence", cert.evidence)

# the inductive construction reaches the same cell through inverted faces
built = synthesize_inverse_dim0(groupoid, 2, x)
print("built: ", groupoid.label(built.inverse))
for j, sign, face, z in built.shell:
    print(f"  face d{j}{sign} {groupoid.label(face)} has inverse {groupoid.label(z)}")

print("every groupoid cell with invertible shell is invertible:", check_np(groupoid, 0).passed)

# in the poset 0 -> 1 nothing goes back
edge = chain.index("0,0,1,1")
print("r_1 inverse of 0,0,1,1:", ri_inverse(chain, 1, edge))
for v in check_np(chain, 0).violations:
    print("counterexample:", v.describe(chain.label))

single, classical, mapped = np_correspondence(chain, 0)
print("classical side fails at the corresponding cell:",
      mapped == {(v.bindings["k"], v.bindings["i"], v.cells[0]) for v in classical.violations})
