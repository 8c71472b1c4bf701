"""Presentations of the weighted surface, spherical, almost spherical and higher spherical families.

Relation lists are generated as text in the relation grammar with named
scalars (``a``, ``b``, ``lambda``) bound as parameters, then parsed.  The
source text is kept on the presentation so the DSL emitter can write it back
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .coefficients import QQ, Field, field_make
from .groebner import Presentation
from .paths import PathElement, format_element, multiply, parse_element
from .quiver import (
    Quiver,
    QuiverError,
    TriangulationQuiver,
    WeightData,
    builtin,
    virtual_arrows,
)


class FamilyError(ValueError):
    pass


@dataclass
class FamilyParams:
    family: str
    weights: dict[str, int] = dc_field(default_factory=dict)
    scalars: dict[str, object] = dc_field(default_factory=dict)
    field: Field = QQ

    def __post_init__(self):
        if isinstance(self.field, str):
            self.field = field_make(self.field)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "weights": dict(self.weights),
            "scalars": {k: self.field.format(self.field(v)) for k, v in self.scalars.items()},
            "field": str(self.field),
        }


def _default_bound(*weights: int) -> int:
    return 4 * max(weights) + 4


def _cyc(cycle: str, k: int, prefix: str) -> str:
    """Text for (cycle)^k followed by prefix; arrows are space separated."""
    pre = "*".join(prefix.split())
    if k == 0:
        return pre
    body = "*".join(cycle.split())
    power = f"({body})" if k == 1 else f"({body})^{k}"
    return f"{power}*{pre}"


def _nonzero(F: Field, **scalars):
    out = {}
    for name, v in scalars.items():
        x = F(v)
        if x == 0:
            raise FamilyError(f"scalar {name} must be nonzero")
        out[name] = x
    return out


def _positive(**ints):
    for name, v in ints.items():
        if int(v) != v or v < 1:
            raise FamilyError(f"{name} must be a positive integer, got {v}")


def _build(quiver: Quiver, F: Field, texts: list[tuple[str, str]], params: dict, bound: int, name: str,
           triangulation: str | None = None) -> Presentation:
    rels = [parse_element(t, quiver, F, params) for _, t in texts]
    return Presentation(quiver, F, rels, [lab for lab, _ in texts], bound, params, name, triangulation,
                        [t for _, t in texts])


# ---------- spherical ----------

_Z = [
    "alpha beta nu delta alpha", "nu delta alpha beta nu", "beta nu delta rho", "delta alpha beta gamma",
    "beta nu delta alpha beta", "delta alpha beta nu delta", "beta gamma sigma rho", "delta rho omega gamma",
    "gamma sigma rho omega gamma", "rho omega gamma sigma rho", "omega gamma sigma alpha", "sigma rho omega nu",
    "sigma rho omega gamma sigma", "omega gamma sigma rho omega", "sigma alpha beta nu", "omega nu delta alpha",
]


def _commutativity(m: int, mp: int, prime: bool) -> list[tuple[str, str]]:
    tag = "S'" if prime else "S"
    three_a = "mu*omega" if prime else "sigma*rho*omega"
    three_b = "rho*epsilon" if prime else "rho*omega*gamma"
    four_a = "epsilon*sigma" if prime else "omega*gamma*sigma"
    four_b = "gamma*mu" if prime else "gamma*sigma*rho"
    return [
        (f"{tag}1a", f"beta*nu*delta = a*{_cyc('beta gamma sigma alpha', m - 1, 'beta gamma sigma')}"),
        (f"{tag}1b", f"nu*delta*alpha = a*{_cyc('gamma sigma alpha beta', m - 1, 'gamma sigma alpha')}"),
        (f"{tag}2a", f"delta*alpha*beta = b*{_cyc('delta rho omega nu', mp - 1, 'delta rho omega')}"),
        (f"{tag}2b", f"alpha*beta*nu = b*{_cyc('rho omega nu delta', mp - 1, 'rho omega nu')}"),
        (f"{tag}3a", f"{three_a} = a*{_cyc('sigma alpha beta gamma', m - 1, 'sigma alpha beta')}"),
        (f"{tag}3b", f"{three_b} = a*{_cyc('alpha beta gamma sigma', m - 1, 'alpha beta gamma')}"),
        (f"{tag}4a", f"{four_a} = b*{_cyc('omega nu delta rho', mp - 1, 'omega nu delta')}"),
        (f"{tag}4b", f"{four_b} = b*{_cyc('nu delta rho omega', mp - 1, 'nu delta rho')}"),
    ]


def spherical(m: int, mp: int, a=1, b=1, field: Field = QQ, bound: int | None = None) -> Presentation:
    """The spherical algebra on Q^S: eight commutativity and sixteen zero relations."""
    _positive(m=m, mp=mp)
    params = _nonzero(field, a=a, b=b)
    texts = _commutativity(m, mp, prime=False)
    texts += [(f"Z{i + 1}", "*".join(z.split())) for i, z in enumerate(_Z)]
    return _build(builtin("QS"), field, texts, params, bound or _default_bound(m, mp),
                  f"spherical(m={m}, m'={mp})")


def _prime_zero(z: str) -> str:
    w = f" {z} "
    w = w.replace(" sigma rho ", " mu ").replace(" omega gamma ", " epsilon ")
    return w.strip()


def almost_spherical(m: int, mp: int, np_: int, a=1, b=1, field: Field = QQ, bound: int | None = None,
                     closing: bool = True) -> Presentation:
    """The almost spherical algebra on Q^{S'} with m_epsilon = np_ >= 2.

    ``closing`` adds the two relations sigma*rho = (mu*epsilon)^(np_-1)*mu and
    omega*gamma = (epsilon*mu)^(np_-1)*epsilon coming from the epsilon-orbit;
    without them the literal commutativity and zero relations leave an
    infinite-dimensional quotient.
    """
    _positive(m=m, mp=mp, np_=np_)
    if np_ < 2:
        raise FamilyError("almost spherical needs n' >= 2; n' = 1 is the spherical family")
    params = _nonzero(field, a=a, b=b)
    texts = _commutativity(m, mp, prime=True)
    zs = [z if i < 6 else _prime_zero(z) for i, z in enumerate(_Z)]
    zs += ["sigma rho omega", "omega gamma sigma", "gamma sigma rho", "rho omega gamma"]
    texts += [(f"Z'{i + 1}", "*".join(z.split())) for i, z in enumerate(zs)]
    if closing:
        texts += [
            ("E1", f"sigma*rho = {_cyc('mu epsilon', np_ - 1, 'mu')}"),
            ("E2", f"omega*gamma = {_cyc('epsilon mu', np_ - 1, 'epsilon')}"),
        ]
    return _build(builtin("QSprime"), field, texts, params, bound or _default_bound(m, mp, np_),
                  f"almost_spherical(m={m}, m'={mp}, n'={np_})")


# ---------- higher spherical ----------

def hsa(m: int, lam=1, field: Field = QQ, bound: int | None = None, allow_m1: bool = False) -> Presentation:
    """The higher spherical algebra with weight m and scalar lambda on Q^S."""
    _positive(m=m)
    if m < 2 and not allow_m1:
        raise FamilyError("higher spherical algebras need m >= 2 (m = 1 is a weighted surface algebra)")
    lam_f = field(lam)
    if lam_f == 0 and not allow_m1:
        raise FamilyError("lambda must be nonzero")
    params = {"lambda": lam_f}
    A = {
        "beta": _cyc("beta gamma sigma alpha", m - 1, "beta gamma sigma"),
        "gamma": _cyc("gamma sigma alpha beta", m - 1, "gamma sigma alpha"),
        "sigma": _cyc("sigma alpha beta gamma", m - 1, "sigma alpha beta"),
        "alpha": _cyc("alpha beta gamma sigma", m - 1, "alpha beta gamma"),
    }
    texts = [
        ("H1a", f"beta*nu*delta = beta*gamma*sigma + lambda*{A['beta']}"),
        ("H1b", f"nu*delta*alpha = gamma*sigma*alpha + lambda*{A['gamma']}"),
        ("H3a", f"sigma*rho*omega = sigma*alpha*beta + lambda*{A['sigma']}"),
        ("H3b", f"rho*omega*gamma = alpha*beta*gamma + lambda*{A['alpha']}"),
        ("H2b", "alpha*beta*nu = rho*omega*nu"),
        ("H2a", "delta*alpha*beta = delta*rho*omega"),
        ("H4a", "omega*gamma*sigma = omega*nu*delta"),
        ("H4b", "gamma*sigma*rho = nu*delta*rho"),
        ("N1", f"(alpha*beta*gamma*sigma)^{m}*alpha"),
        ("N2", f"(gamma*sigma*alpha*beta)^{m}*gamma"),
    ]
    return _build(builtin("QS"), field, texts, params, bound or _default_bound(m), f"hsa(m={m})")


# ---------- weighted surface algebras ----------

def _g_power_text(tq: TriangulationQuiver, a: int, length: int) -> list[str]:
    return [tq.quiver.arrows[x] for x in tq.g_path(a, length)]


def wsa_relations(tq: TriangulationQuiver, w: WeightData, field: Field = QQ) -> list[tuple[str, list]]:
    """Relations (i)-(iii) on the full triangulation quiver as (label, [(coefficient, arrow names)])."""
    q = tq.quiver
    virt = virtual_arrows(tq, w)
    f, g, bar = tq.f, tq.g, tq.bar
    out = []
    for a in range(q.n_arrows):
        na = q.arrows[a]
        b = bar[a]
        cb = field(w.c[q.arrows[b]])
        A_bar = _g_power_text(tq, b, w.mn(tq, b) - 1)
        out.append((f"i_{na}", [(field.one, [na, q.arrows[f[a]]]), (field.neg(cb), A_bar)]))
    for a in range(q.n_arrows):
        na = q.arrows[a]
        fb = f[bar[a]]
        skip = f[f[a]] in virt or (fb in virt and w.m[q.arrows[bar[a]]] == 1 and tq.n(bar[a]) == 3)
        if not skip:
            out.append((f"ii_{na}", [(field.one, [na, q.arrows[f[a]], q.arrows[g[f[a]]]])]))
    for a in range(q.n_arrows):
        na = q.arrows[a]
        fa = f[a]
        skip = fa in virt or (f[fa] in virt and w.m[q.arrows[fa]] == 1 and tq.n(fa) == 3)
        if not skip:
            out.append((f"iii_{na}", [(field.one, [na, q.arrows[g[a]], q.arrows[f[g[a]]]])]))
    return out


def wsa(tq: TriangulationQuiver, w: WeightData, field: Field = QQ, bound: int | None = None) -> Presentation:
    """The weighted surface algebra, presented on its Gabriel quiver.

    Each virtual arrow theta is replaced by bar(theta)*f(bar(theta)) (relation
    (i) at bar(theta) with A_theta = theta); the relations that become zero
    are dropped.
    """
    try:
        w.validate(tq, field)
    except QuiverError as exc:
        raise FamilyError(str(exc)) from exc
    q = tq.quiver
    virt = virtual_arrows(tq, w)
    gabriel = q.subquiver(q.arrows[v] for v in virt)
    expand: dict[str, list[str]] = {}
    for v in virt:
        b = tq.bar[v]
        expand[q.arrows[v]] = [q.arrows[b], q.arrows[tq.f[b]]]
    changed = True
    while changed:
        changed = False
        for k, word in expand.items():
            new = []
            for x in word:
                if x in expand:
                    new.extend(expand[x])
                    changed = True
                else:
                    new.append(x)
            if len(new) > 4 * q.n_arrows:
                raise FamilyError("virtual arrow substitution does not terminate")
            expand[k] = new
    rels, labels = [], []
    for label, terms in wsa_relations(tq, w, field):
        elt = PathElement.zero(gabriel, field)
        for c, names in terms:
            word = []
            for n in names:
                word.extend(expand.get(n, [n]))
            elt = elt + PathElement.from_word(gabriel, field, gabriel.word(word), c)
        if elt.terms:
            rels.append(elt)
            labels.append(label)
    weights = [w.m[q.arrows[a]] for a in range(q.n_arrows) if a not in virt]
    texts = [format_element(r) for r in rels]
    return Presentation(gabriel, field, rels, labels, bound or _default_bound(*weights), {}, "wsa",
                        None if virt else _cycle_text(tq), texts)


def _cycle_text(tq: TriangulationQuiver) -> str:
    q = tq.quiver
    seen, parts = set(), []
    for a in range(q.n_arrows):
        if a in seen:
            continue
        cyc, b = [], a
        while b not in seen:
            seen.add(b)
            cyc.append(q.arrows[b])
            b = tq.f[b]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts)


def spherical_weights(m: int, mp: int, a=1, b=1, eps_weight: int = 1, field: Field = QQ):
    """Qfull with WeightData realising spherical (eps_weight = 1) or almost spherical parameters."""
    tq = builtin("Qfull")
    w = WeightData.from_orbits(tq, {"alpha": m, "rho": mp, "xi": 1, "epsilon": eps_weight},
                               {"alpha": a, "rho": b}, field)
    return tq, w


# ---------- generator substitution ----------

def substitute(pres: Presentation, arrow: str, replacement: PathElement) -> Presentation:
    """Rewrite every occurrence of ``arrow`` by ``replacement``.

    The replacement must be parallel to the arrow and agree with a nonzero
    multiple of it modulo paths of length >= 2, so the substitution is an
    automorphism of the completed path algebra.
    """
    q, F = pres.quiver, pres.field
    a = q.arrow(arrow)
    if replacement.quiver != q:
        raise FamilyError("replacement lives over another quiver")
    if not replacement.terms or (replacement.source, replacement.target) != (q.source[a], q.target[a]):
        raise FamilyError(f"replacement is not parallel to {arrow}")
    linear = {w: c for w, c in replacement.terms.items() if len(w) <= 1}
    if set(linear) != {(a,)}:
        raise FamilyError(f"replacement is not a unit multiple of {arrow} modulo J^2")
    image = {a: replacement}
    rels = []
    for r in pres.relations:
        out = PathElement.zero(q, F)
        for word, c in r.terms.items():
            acc = None
            for x in word:
                piece = image.get(x) or PathElement.from_word(q, F, (x,))
                acc = piece if acc is None else multiply(acc, piece)
            out = out + acc.scale(c)
        # words beyond the degree bound are zero in the truncated path space
        D = pres.degree_bound
        rels.append(PathElement(q, F, out.source, out.target, {w: c for w, c in out.terms.items() if len(w) <= D}))
    from .paths import format_element

    return Presentation(q, F, rels, list(pres.labels), pres.degree_bound, dict(pres.params),
                        f"{pres.name} [{arrow} -> {format_element(replacement)}]", pres.triangulation,
                        [format_element(r) for r in rels])


def from_params(fp: FamilyParams, bound: int | None = None) -> Presentation:
    """Dispatch a FamilyParams record to its constructor."""
    W, S, F = fp.weights, fp.scalars, fp.field
    if fp.family == "spherical":
        return spherical(W.get("m", 1), W.get("mp", 1), S.get("a", 1), S.get("b", 1), F, bound)
    if fp.family == "almost_spherical":
        return almost_spherical(W.get("m", 1), W.get("mp", 1), W.get("np", 2), S.get("a", 1), S.get("b", 1), F,
                                bound)
    if fp.family == "hsa":
        return hsa(W.get("m", 2), S.get("lambda", 1), F, bound)
    if fp.family == "wsa":
        eps = W.get("np", 1)
        tq, w = spherical_weights(W.get("m", 1), W.get("mp", 1), S.get("a", 1), S.get("b", 1), eps, F)
        return wsa(tq, w, F, bound)
    raise FamilyError(f"unknown family {fp.family!r}")
