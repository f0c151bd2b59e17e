"""From a single-set structure to graded cells and back, then words of maps."""
from cubicat.classical import validate_classical
from cubicat.equivalence import check_eta, check_mu, fc, fs
from cubicat.models import base_category, cube_nerve
from cubicat.normalizer import eval_word, format_word, normalize, parse_word

S = cube_nerve(base_category("pair_groupoid", 2), 2)
C = validate_classical(fc(S))
print("graded sizes:", [len(level) for level in C.cells])

a = C.index(2, "a,b,b,a")
print("lower face of a,b,b,a in direction 1:", C.cells[1][C.f(2, 1, "-", a)])

T = fs(C)
print("back to one carrier:", len(T), "cells")
print("mu round trip violations:", len(check_mu(S).violations))
print("eta round trip violations:", len(check_eta(C).violations))

# words read right to left; normal forms put degeneracies first, faces last
for text, level in [("d1- e2", 1), ("d1- d2+", 2), ("e1 e1", 0), ("d2+ g1+", 1)]:
    word = parse_word(text)
    nf = normalize(word, level)
    same = all(eval_word(C, word, level, b) == eval_word(C, nf, level, b) for b in C.level_cells(level))
    print(f"{text:10} at level {level} -> {format_word(nf):8} agrees on every cell: {same}")
