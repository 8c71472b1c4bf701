"""Writing presentations by hand, and checking the engine against brute force.

The text format holds a quiver, optional named scalars and a list of
relations.  Anything the rewriting engine says about dimensions can be
re-derived by plain linear algebra on the truncated path space.
"""

from qaw import complete, dimension_matrix, dumps, loads, path_space_dimensions, quotient_basis

TEXT = """
# a Kronecker-like quiver with a loop at the sink
name: kronecker with loop;
field: Q;
bound: 6;
params { t = 3/2; }
quiver {
  vertices: u, v;
  arrows:
    x: u -> v;
    y: u -> v;
    z: v -> v;
}
relations {
  loop: z*z*z;
  twist: x*z = t*y*z*z;
  kill: y*z*z;
}
"""

pres = loads(TEXT)
rs = complete(pres, verify=True)
print(pres.name, "| rules", len(rs.rules), "| confluent", rs.confluent, "| finite", rs.finite)

basis = quotient_basis(rs)
for (s, t), paths in sorted(basis.items()):
    if paths:
        src, dst = pres.quiver.vertices[s], pres.quiver.vertices[t]
        print(f"  e_{src} A e_{dst}: " + ", ".join(str(p) for p in paths))

engine = dimension_matrix(rs)
oracle, finite = path_space_dimensions(pres)
print("engine dims", engine, "| oracle dims", oracle, "| agree:", engine == oracle and finite)

# round trip through the text format, now over F5
again = loads(dumps(pres), field="F5")
print("\nover F5:", dimension_matrix(complete(again)))
print(dumps(again))
