"""The verification battery: structural checks run on one presentation.

``verify`` returns a JSON-ready report.  Checks that the family in question
is expected to fail (the singular spherical parameters, where the scalar a*b
equals 1 at m = m' = 1) are tagged so callers can tell an expected failure
from a regression.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import FDAlgebra, build, cartan, socle, symmetrizing_form
from .families import FamilyParams
from .groebner import Presentation, admissibility, complete
from .oracle import path_space_dimensions
from .resolve import period

CHECK_PASS, CHECK_FAIL, CHECK_INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Report:
    instance: dict
    seed: int
    checks: list[dict] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def add(self, name: str, ok, witness=None):
        status = ok if isinstance(ok, str) else (CHECK_PASS if ok else CHECK_FAIL)
        if any(c["name"] == name for c in self.checks):
            raise ValueError(f"duplicate check {name}")
        self.checks.append({"name": name, "status": status, "witness": witness})

    @property
    def passed(self) -> bool:
        return all(c["status"] == CHECK_PASS for c in self.checks)

    @property
    def first_failure(self) -> str | None:
        return next((c["name"] for c in self.checks if c["status"] != CHECK_PASS), None)

    def to_json(self, timings: bool = False) -> dict:
        out = {"instance": self.instance, "seed": self.seed, "passed": self.passed, "summary": self.summary,
               "checks": self.checks}
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(data["instance"], data["seed"], list(data["checks"]), dict(data.get("timings", {})),
                   dict(data.get("summary", {})))


def threads() -> int:
    try:
        return max(1, int(os.environ.get("QAW_THREADS", "1")))
    except ValueError:
        return 1


def _period_job(args):
    A, v, max_k, seed = args
    r = period(A, v, max_k, seed)
    return r.period, r.dim_vectors, [x.status for x in r.verdicts], r.covers


def periods(A: FDAlgebra, max_k: int = 8, seed: int = 0, workers: int | None = None) -> list[tuple]:
    """Period data for every simple module, in vertex order; parallel when QAW_THREADS > 1."""
    workers = threads() if workers is None else workers
    jobs = [(A, v, max_k, seed) for v in range(len(A.vertices))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_period_job, jobs))
    return [_period_job(j) for j in jobs]


def expected_dimension(fp: FamilyParams | None) -> int | None:
    if fp is None:
        return None
    W = fp.weights
    if fp.family == "spherical" or (fp.family == "wsa" and W.get("np", 1) == 1):
        return 16 * W.get("m", 1) + 16 * W.get("mp", 1) + 8
    if fp.family == "hsa":
        return 36 * W.get("m", 2) + 4
    if fp.family in ("almost_spherical", "wsa"):
        return 16 * W.get("m", 1) + 16 * W.get("mp", 1) + 4 * W.get("np", 2) + 4
    return None


def singular_parameters(fp: FamilyParams | None) -> bool:
    """m = m' = 1 with a*b = 1: after rescaling rho and nu the scalar c1 equals 1."""
    if fp is None or fp.family not in ("spherical", "wsa"):
        return False
    W, S, F = fp.weights, fp.scalars, fp.field
    if W.get("m", 1) != 1 or W.get("mp", 1) != 1 or W.get("np", 1) != 1:
        return False
    return F.mul(F(S.get("a", 1)), F(S.get("b", 1))) == F.one


def _fmt(A: FDAlgebra, x: dict) -> str:
    return A.format(x)


ORBIT_ALPHA = ["alpha", "beta", "gamma", "sigma"]
ORBIT_RHO = ["rho", "omega", "nu", "delta"]


def _rot(orb: list[str], start: str) -> list[str]:
    i = orb.index(start)
    return orb[i:] + orb[:i]


def _long_path(orb: list[str], start: str, weight: int) -> str:
    """The path of length 4*weight - 1 along the cycle, starting with ``start``."""
    r = _rot(orb, start)
    return "*".join(r * (weight - 1) + r[:3])


def family_checks(rep: Report, A: FDAlgebra, fp: FamilyParams | None, pres: Presentation):
    if fp is None:
        return
    F = A.field
    fam = fp.family
    m, mp = fp.weights.get("m", 1 if fam != "hsa" else 2), fp.weights.get("mp", 1)
    np_ = fp.weights.get("np", 1 if fam in ("spherical", "hsa") else 2)
    if fam == "wsa":
        np_ = fp.weights.get("np", 1)
    spherical_like = fam == "spherical" or (fam == "wsa" and np_ == 1)
    almost = fam == "almost_spherical" or (fam == "wsa" and np_ >= 2)
    orb1, orb2 = ORBIT_ALPHA, ORBIT_RHO
    el = A.element

    # zero relations of the presentation reduce to zero
    zero_labels = [lab for lab in pres.labels if lab.startswith("Z")]
    if zero_labels:
        bad = [lab for lab in zero_labels if A.from_path_element(pres.relation(lab))]
        rep.add("zero_relations", not bad, {"checked": len(zero_labels), "nonzero": bad})

    if spherical_like or almost:
        prods = [("beta", "rho", m, orb1), ("delta", "gamma", mp, orb2), ("omega", "alpha", mp, orb2),
                 ("sigma", "nu", m, orb1)]
        wit = {}
        for start, arrow, weight, orb in prods:
            expr = f"{_long_path(orb, start, weight)}*{arrow}"
            wit[expr] = _fmt(A, el(expr))
        rep.add("long_path_annihilation", all(v == "0" for v in wit.values()), wit)

    if spherical_like:
        pairs = [("b1", "d1", 0), ("d2", "b2", 0), ("b1", "d2", 1), ("d1", "b2", 1)]
        got = {f"{s}->{t}": A.dims[A.vertex(s)][A.vertex(t)] for s, t, _ in pairs}
        rep.add("slice_dimensions", list(got.values()) == [w for *_, w in pairs], got)

        square_paths = ["alpha*beta*nu", "beta*nu*delta", "nu*delta*alpha", "delta*alpha*beta",
                        "rho*omega*gamma", "omega*gamma*sigma", "gamma*sigma*rho", "sigma*rho*omega"]
        wit, ok = {}, True
        for p in square_paths:
            x = el(p)
            kills_j2 = all(
                not A.mul(x, A.mul(A.unit(g.index), A.unit(h.index)))
                for g in A.generators for h in A.generators if g.target == h.source
            )
            below_socle = any(A.mul(x, A.unit(g.index)) for g in A.generators)
            wit[p] = {"times_J2_zero": kills_j2, "outside_socle": below_socle, "nonzero": bool(x)}
            ok = ok and kills_j2 and below_socle and bool(x)
        rep.add("second_socle_paths", ok, wit)

        wit, ok = {}, True
        for orb, weight in ((orb1, m), (orb2, mp)):
            for start in orb:
                r = _rot(orb, start)
                top = el("*".join(r * weight))
                over = el("*".join(r * (weight + 1)))
                wit["*".join(r)] = {"socle_word": _fmt(A, top), "next_power": _fmt(A, over)}
                ok = ok and bool(top) and not over
        rep.add("socle_words", ok, wit)

        if m == 1 and mp == 1 and not singular_parameters(fp):
            y2 = el("rho*omega*gamma*sigma*rho*omega*gamma*sigma")
            rep.add("square_of_Y_vanishes", not y2, _fmt(A, y2))

    if almost:
        extra = [lab for lab in ("Z'17", "Z'18", "Z'19", "Z'20") if lab in pres.labels]
        if extra:
            bad = [lab for lab in extra if A.from_path_element(pres.relation(lab))]
            rep.add("extra_zero_relations", not bad, {"checked": extra, "nonzero": bad})
        a = el("omega*nu*delta*rho*epsilon*mu")
        b = el("sigma*alpha*beta*gamma*mu*epsilon")
        rep.add("loop_products_vanish", not a and not b,
                {"omega*nu*delta*rho*epsilon*mu": _fmt(A, a), "sigma*alpha*beta*gamma*mu*epsilon": _fmt(A, b)})

    if fam == "hsa":
        y2 = el("rho*omega*gamma*sigma*rho*omega*gamma*sigma")
        rep.add("square_of_Y_reported", CHECK_PASS, _fmt(A, y2))
        xm = el("*".join(orb1 * m))
        xm1 = el("*".join(orb1 * (m + 1)))
        rep.add("nilpotency", bool(xm) and not xm1, {"X^m": _fmt(A, xm), "X^(m+1)": _fmt(A, xm1)})

    if spherical_like or fam == "hsa" or almost:
        (ka, wa), (kr, wr) = _top_power(A, orb1), _top_power(A, orb2)
        prop = bool(wa) and bool(wr) and set(wa) == set(wr) and _proportional(F, wa, wr)
        rep.add("socle_word_proportional", prop,
                {"alpha": {"power": ka, "value": _fmt(A, wa)}, "rho": {"power": kr, "value": _fmt(A, wr)}})


def _top_power(A: FDAlgebra, orb: list[str]) -> tuple[int, dict]:
    """The largest nonzero power of the cycle ``orb`` at its start vertex."""
    cycle = A.element("*".join(orb))
    k, x = 0, {}
    y = cycle
    while y:
        k, x = k + 1, y
        y = A.mul(y, cycle)
    return k, x


def _proportional(F, x: dict, y: dict) -> bool:
    k = next(iter(x))
    r = F.div(y[k], x[k])
    return all(F.mul(r, x[j]) == y[j] for j in x)


def verify(pres: Presentation, fp: FamilyParams | None = None, seed: int = 0, max_k: int = 8,
           oracle: bool = False) -> Report:
    """Build, check symmetry, socles, Cartan symmetry, periods and the family battery."""
    instance = fp.to_json() if fp else {"file": pres.name or "presentation"}
    rep = Report(instance, seed)
    clock = time.perf_counter
    t = clock()
    rs = complete(pres)
    rep.timings["completion"] = clock() - t
    N, ok = admissibility(rs)
    rep.add("admissible", ok, {"nilpotency_index": N, "rules": len(rs.rules), "bound": rs.bound})
    if not ok:
        rep.summary = {"dimension": None}
        return rep
    t = clock()
    A = build(rs)
    rep.timings["build"] = clock() - t
    dim = A.dimension
    exp = expected_dimension(fp)
    rep.add("dimension", exp is None or dim == exp, {"dimension": dim, "expected": exp})
    if oracle:
        t = clock()
        od, fin = path_space_dimensions(pres)
        rep.timings["oracle"] = clock() - t
        rep.add("oracle_dimensions", fin and od == A.dims, {"oracle_total": sum(map(sum, od))})
    t = clock()
    form = symmetrizing_form(A, seed=seed)
    rep.timings["symmetric"] = clock() - t
    rep.add("symmetric", {"found": CHECK_PASS, "none": CHECK_FAIL}.get(form.status, CHECK_INCONCLUSIVE), {"solution_dim": form.solution_dim, "tried": form.candidates_tried,
                                       "policy": form.policy, "verdict": form.status})
    socs = [len(socle(A, v)) for v in range(len(A.vertices))]
    rep.add("socles_one_dimensional", all(s == 1 for s in socs), dict(zip(A.vertices, socs)))
    C = cartan(A)
    rep.add("cartan_symmetric", C == [list(r) for r in zip(*C)], C)
    t = clock()
    pdata = periods(A, max_k, seed)
    rep.timings["periods"] = clock() - t
    for v, (p, dvs, verdicts, covers) in zip(A.vertices, pdata):
        rep.add(f"period_{v}", p == 4, {"period": p, "dim_vectors": dvs, "verdicts": verdicts, "covers": covers})
    family_checks(rep, A, fp, pres)
    rep.summary = {
        "dimension": dim,
        "cartan": C,
        "periods": dict(zip(A.vertices, [p for p, *_ in pdata])),
        "expected_fail": singular_parameters(fp),
    }
    if singular_parameters(fp):
        rep.summary["expectation_met"] = not rep.passed
    return rep
