"""A first look at a spherical algebra: basis, Cartan matrix, socles and normal forms."""

from qaw import build, cartan, complete, normal_form, parse_element, socle, spherical

pres = spherical(1, 2, a=2, b=1)
print(pres.name, "with", len(pres.relations), "relations, degree bound", pres.degree_bound)

# completing the relations gives a confluent rewriting system on paths
rs = complete(pres)
print("rules:", len(rs.rules), " finite:", rs.finite, " nilpotency index:", rs.nilpotency_index)

A = build(rs)
print("dimension:", A.dimension)

print("\nCartan matrix (rows e_i A, columns e_j):")
print("     " + " ".join(f"{v:>3}" for v in A.vertices))
for v, row in zip(A.vertices, cartan(A)):
    print(f"{v:>4} " + " ".join(f"{x:>3}" for x in row))

# each indecomposable projective has a one-dimensional socle spanned by a longest path
print()
for v in A.vertices:
    print(f"soc(e_{v}A) =", ", ".join(A.format(x) for x in socle(A, v)))

# normal forms: a commutativity relation and a path that dies
print()
for expr in ("beta*nu*delta", "beta*nu*delta*rho", "alpha*beta*gamma*sigma"):
    x = parse_element(expr, pres.quiver, pres.field, pres.params)
    print(f"nf({expr}) = {normal_form(x, rs)}")
