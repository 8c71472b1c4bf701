"""Brute-force quotient dimensions, independent of the rewriting engine.

The truncated path space up to the degree bound is spanned by all words; the
ideal is spanned by every product u*r*v of a relation with paths u, v that
survives truncation.  Gaussian elimination gives the quotient dimension per
pair of endpoints.  This is slow and simple on purpose: it is the reference
the completion is tested against.
"""

from __future__ import annotations

from .groebner import Presentation, paths_by_length
from .linalg import SparseEchelon
from .paths import word_key


def path_space_dimensions(pres: Presentation, bound: int | None = None) -> tuple[list[list[int]], bool]:
    """(dimension matrix of the truncated quotient, whether every word of length equal to the bound vanishes)."""
    q, F = pres.quiver, pres.field
    D = pres.degree_bound if bound is None else bound
    fwd = paths_by_length(q, D)
    bwd = paths_by_length(q, D, from_vertex=False)
    ech = SparseEchelon(F, word_key)
    for r in pres.relations:
        if not r.terms:
            continue
        lo = r.min_degree
        for lu in range(D - lo + 1):
            for u in bwd[r.source, lu]:
                for lv in range(D - lo - lu + 1):
                    for v in fwd[r.target, lv]:
                        ech.add({u + w + v: c for w, c in r.terms.items() if len(u) + len(w) + len(v) <= D})
    n = q.n_vertices
    dims = [[0] * n for _ in range(n)]
    for s in range(n):
        dims[s][s] += 1
        for L in range(1, D + 1):
            for w in fwd[s, L]:
                if w not in ech.pivots:
                    dims[s][q.target[w[-1]]] += 1
    top_vanishes = all(ech.contains({w: F.one}) for s in range(n) for w in fwd[s, D])
    return dims, top_vanishes
