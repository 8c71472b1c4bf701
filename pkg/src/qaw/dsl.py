"""Reading and writing presentation files.

Example::

    # spherical algebra, m = m' = 1
    field: Q;
    bound: 8;
    params { a = 2; b = 1; }
    quiver {
      vertices: 1, b1, 2, b2, d1, d2;
      arrows:
        alpha: 1 -> b1;
        beta: b1 -> 2;
    }
    triangulation { f: (alpha xi delta)(eta beta nu); }
    relations {
      S1a: beta*nu*delta = a*beta*gamma*sigma;
      Z1: alpha*beta*nu*delta*alpha;
    }

Header statements are ``key: value;``.  Blocks are ``name { statements }``;
statements end with ``;`` and ``#`` starts a comment.
"""

from __future__ import annotations

import re
from pathlib import Path as FsPath

from .coefficients import Field, FieldError, field_make
from .groebner import Presentation, PresentationError
from .paths import PathError, parse_element
from .quiver import Quiver, QuiverError, validate_triangulation


class DSLError(ValueError):
    pass


_LABEL = re.compile(r"^[A-Za-z0-9_'.]+$")
_NAME = re.compile(r"^[A-Za-z0-9_']+$")


def _strip_comments(text: str) -> str:
    return re.sub(r"#[^\n]*", "", text)


def _line(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _split_top(text: str):
    """Yield ('header', key, value, line) and ('block', name, body, line)."""
    i, n = 0, len(text)
    while i < n:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            return
        m = re.compile(r"([A-Za-z_]+)\s*(\{|:)").match(text, i)
        if not m:
            raise DSLError(f"line {_line(text, i)}: expected 'key: value;' or 'block {{ ... }}'")
        name, kind = m.group(1), m.group(2)
        start = m.end()
        if kind == ":":
            end = text.find(";", start)
            if end < 0:
                raise DSLError(f"line {_line(text, i)}: missing ';' after {name}")
            yield "header", name, text[start:end].strip(), _line(text, i)
            i = end + 1
        else:
            end = text.find("}", start)
            if end < 0:
                raise DSLError(f"line {_line(text, i)}: unterminated block {name}")
            yield "block", name, text[start:end], _line(text, i)
            i = end + 1


def _statements(body: str) -> list[str]:
    parts = [s.strip() for s in body.split(";")]
    return [p for p in parts if p]


def _param_value(raw: str, field: Field):
    try:
        return field(raw.replace(" ", ""))
    except (FieldError, ValueError, ZeroDivisionError) as exc:
        raise DSLError(f"bad parameter value {raw!r}") from exc


def loads(text: str, field: Field | str | None = None, bound: int | None = None,
          params: dict | None = None) -> Presentation:
    """Parse a presentation; ``field``, ``bound`` and ``params`` override the file."""
    text = _strip_comments(text)
    headers, blocks = {}, {}
    for kind, name, val, line in _split_top(text):
        store = headers if kind == "header" else blocks
        if name in store:
            raise DSLError(f"line {line}: duplicate {name}")
        store[name] = (val, line)
    unknown = set(headers) - {"field", "bound", "name"} | set(blocks) - {"params", "quiver", "triangulation",
                                                                            "relations"}
    if unknown:
        raise DSLError(f"unknown section(s): {', '.join(sorted(unknown))}")
    try:
        F = field_make(field) if field is not None else field_make(headers.get("field", ("Q", 0))[0])
    except FieldError as exc:
        raise DSLError(str(exc)) from exc
    D = bound
    if D is None and "bound" in headers:
        raw, line = headers["bound"]
        if not raw.isdigit():
            raise DSLError(f"line {line}: bound must be a positive integer")
        D = int(raw)
    pvals = {}
    if "params" in blocks:
        body, line = blocks["params"]
        for st in _statements(body):
            if "=" not in st:
                raise DSLError(f"params block near line {line}: expected 'name = value'")
            k, v = (s.strip() for s in st.split("=", 1))
            pvals[k] = _param_value(v, F)
    for k, v in (params or {}).items():
        pvals[k] = F(v)
    if "quiver" not in blocks:
        raise DSLError("missing quiver block")
    quiver = _parse_quiver(*blocks["quiver"])
    tri = None
    if "triangulation" in blocks:
        body, line = blocks["triangulation"]
        sts = _statements(body)
        if len(sts) != 1 or not sts[0].startswith("f"):
            raise DSLError(f"line {line}: triangulation block must contain 'f: (cycles)'")
        tri = sts[0].split(":", 1)[1].strip()
        try:
            validate_triangulation(quiver, tri)
        except (QuiverError, KeyError) as exc:
            raise DSLError(f"triangulation: {exc}") from exc
    labels, rels, sources = [], [], []
    if "relations" in blocks:
        body, line = blocks["relations"]
        for k, st in enumerate(_statements(body)):
            lab, expr = None, st
            head, sep, rest = st.partition(":")
            if sep and _LABEL.match(head.strip()):
                lab, expr = head.strip(), rest.strip()
            lab = lab or f"r{k + 1}"
            try:
                rels.append(parse_element(expr, quiver, F, pvals))
            except PathError as exc:
                raise DSLError(f"relation {lab}: {exc}") from exc
            labels.append(lab)
            sources.append(expr)
    name = headers.get("name", ("", 0))[0]
    try:
        return Presentation(quiver, F, rels, labels, D, pvals, name, tri, sources)
    except PresentationError as exc:
        raise DSLError(str(exc)) from exc


def _parse_quiver(body: str, line: int) -> Quiver:
    vertices, arrows = None, []
    for st in _statements(body):
        if st.startswith("vertices"):
            _, _, rest = st.partition(":")
            vertices = [v.strip() for v in re.split(r"[,\s]+", rest.strip()) if v.strip()]
            continue
        if st.startswith("arrows"):
            st = st.split(":", 1)[1].strip()
            if not st:
                continue
        m = re.match(r"^([A-Za-z_][A-Za-z0-9_']*)\s*:\s*([A-Za-z0-9_']+)\s*->\s*([A-Za-z0-9_']+)$", st)
        if not m:
            raise DSLError(f"quiver block near line {line}: cannot read {st!r}")
        arrows.append(m.groups())
    if vertices is None:
        raise DSLError(f"quiver block near line {line}: missing 'vertices:'")
    try:
        return Quiver(vertices, arrows)
    except QuiverError as exc:
        raise DSLError(f"quiver: {exc}") from exc


def load(path, **kw) -> Presentation:
    return loads(FsPath(path).read_text(), **kw)


def dumps(pres: Presentation) -> str:
    q, F = pres.quiver, pres.field
    out = []
    if pres.name:
        out.append(f"name: {pres.name};")
    out.append(f"field: {F};")
    out.append(f"bound: {pres.degree_bound};")
    if pres.params:
        body = " ".join(f"{k} = {F.format(v)};" for k, v in pres.params.items())
        out.append(f"params {{ {body} }}")
    out.append("quiver {")
    out.append(f"  vertices: {', '.join(q.vertices)};")
    out.append("  arrows:")
    for name, s, t in q.arrow_triples():
        out.append(f"    {name}: {s} -> {t};")
    out.append("}")
    if pres.triangulation:
        out.append(f"triangulation {{ f: {pres.triangulation}; }}")
    out.append("relations {")
    texts = pres.sources or [str(r) for r in pres.relations]
    for lab, src in zip(pres.labels, texts):
        out.append(f"  {lab}: {src};")
    out.append("}")
    return "\n".join(out) + "\n"


def dump(pres: Presentation, path) -> None:
    FsPath(path).write_text(dumps(pres))
