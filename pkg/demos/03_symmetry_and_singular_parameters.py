"""Symmetrizing forms, and the parameter choice where they disappear.

With m = m' = 1 the scalars only matter through the product ab.  When ab = 1
the relations degenerate: two projectives pick up a second socle element, so
no symmetrizing form can exist and the simple modules stop being periodic.
"""

from qaw import FamilyParams, build, complete, from_params, socle, symmetrizing_form
from qaw.battery import verify

for a, b in (("2", "1"), ("3", "1/3"), ("1", "1")):
    A = build(complete(from_params(FamilyParams("spherical", {"m": 1, "mp": 1}, {"a": a, "b": b}))))
    verdict = symmetrizing_form(A)
    socs = [len(socle(A, v)) for v in A.vertices]
    print(f"a={a:<3} b={b:<4} form {verdict.status:<5} trace forms {verdict.solution_dim:<2} socle dims {socs}")
    if verdict.policy:
        print(f"{'':14}({verdict.policy})")

# the battery knows about this point and marks the failure as expected
fp = FamilyParams("spherical", {"m": 1, "mp": 1}, {"a": "1", "b": "1"})
rep = verify(from_params(fp), fp)
print("\nfailing checks:", [c["name"] for c in rep.checks if c["status"] == "fail"])
print("expected fail:", rep.summary["expected_fail"], " expectation met:", rep.summary["expectation_met"])

# over a prime field the same question has an exact answer
A = build(complete(from_params(FamilyParams("spherical", {"m": 1, "mp": 1}, {"a": "2", "b": "1"}, "F7"))))
print("\nover F7, a=2 b=1:", symmetrizing_form(A).status)
