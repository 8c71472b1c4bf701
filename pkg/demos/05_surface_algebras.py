"""From a triangulation quiver with weights to a concrete algebra.

The full quiver carries an arrow permutation of order three.  Its second
permutation (follow the other arrow out of each target) splits the arrows into
cycles, and a weight and scalar on each cycle determine the relations.  Arrows
with weight one on a 2-cycle become virtual: they are products of other arrows
and drop out of the final quiver.
"""

from qaw import build, cartan, complete, spherical
from qaw.families import spherical_weights, wsa, wsa_relations
from qaw.quiver import virtual_arrows

tq, w = spherical_weights(2, 1, a=3, b=2)
q = tq.quiver
print("full quiver:", q.n_vertices, "vertices,", q.n_arrows, "arrows")
for orb in tq.g_orbits:
    names = [q.arrows[x] for x in orb]
    print(f"  cycle {' '.join(names):<40} weight {w.m[names[0]]}  scalar {w.c[names[0]]}")
print("virtual arrows:", [q.arrows[x] for x in virtual_arrows(tq, w)])

print("\na few raw relations:")
for lab, terms in list(wsa_relations(tq, w))[:4]:
    text = ""
    for c, p in terms:
        sign = "-" if c < 0 else "+"
        coeff = "" if abs(c) == 1 else f"{abs(c)}*"
        text += f" {sign} {coeff}{'*'.join(p)}"
    print(f"  {lab}: {text.lstrip(' +')} = 0")

# after eliminating the virtual arrows the ideal is the spherical one
W = build(complete(wsa(tq, w)))
S = build(complete(spherical(2, 1, a=3, b=2)))
print("\nwsa dimension", W.dimension, "| spherical dimension", S.dimension)
print("Cartan matrices equal:", cartan(W) == cartan(S))
