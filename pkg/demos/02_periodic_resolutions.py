"""Minimal projective resolutions of simple modules, and why the answer is four.

Each syzygy is the kernel of a projective cover.  After four steps the simple
module comes back, and we check the isomorphism by hand.
"""

from qaw import build, complete, hsa, spherical
from qaw.linalg import is_invertible
from qaw.resolve import is_homomorphism, period, simple, syzygy

A = build(complete(spherical(2, 1, a=3, b=2)))
print(A, "\n")

for v in A.vertices:
    r = period(A, v)
    steps = "  ".join(str(tuple(d)) for d in r.dim_vectors)
    print(f"S_{v:<3} period {r.period}:  {steps}")

# Omega^4(S_b1) against S_b1: the recorded witness is a module map with invertible blocks
S = simple(A, "b1")
omega4 = syzygy(S, 4)
h = period(A, "b1").witness
print("\nwitness is a homomorphism:", is_homomorphism(omega4, S, h))
print("witness is invertible:     ", all(is_invertible(m, A.field) for m in h if m))

# higher spherical algebras are periodic too
B = build(complete(hsa(3, lam=2)))
r = period(B, "1")
print(f"\nhsa(3): S_1 period {r.period}, projective covers {r.covers}")
