"""Changing generators does not change the algebra.

Replacing an arrow by a unit multiple of itself plus longer cycles is an
automorphism of the completed path algebra, so the quotient by the rewritten
relations is isomorphic to the original.  Its invariants must agree.
"""

from qaw import build, cartan, complete, hsa, parse_element, substitute
from qaw.battery import periods


def invariants(pres):
    A = build(complete(pres))
    return A.dimension, cartan(A), [p for p, *_ in periods(A)]


pres = hsa(2, lam=1)
q = pres.quiver
base = invariants(pres)
print(pres.name, "dimension", base[0], "periods", base[2])

for arrow, text in (("rho", "-rho + rho*omega*gamma*sigma*rho"),
                    ("alpha", "2*alpha + alpha*beta*nu*delta*alpha"),
                    ("nu", "1/3*nu + nu*delta*alpha*beta*nu")):
    new = substitute(pres, arrow, parse_element(text, q))
    print(f"{arrow} -> {text:<38} same invariants: {invariants(new) == base}")

print("\nrewritten relation H2b:", new.sources[new.labels.index("H2b")])
