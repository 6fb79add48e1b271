"""Line-oriented text format for structure constants and certificates.

Grammar (UTF-8, ``#`` starts a comment)::

    dim <N>
    basis <name_1> ... <name_N>
    bracket <a> <b> = <coeff> <name> [+|- <coeff> <name>]...   # index(a) < index(b)
    grading <k>: <names...>
    certificate
    ideal <names...>             # optional, coordinate ideal
    ideal-vector <expr>          # optional, repeatable, arbitrary ideal vectors
    witness <X_name> <Y_name>
    witness <expr> | <expr>

Coefficients are integers or ``p/q``; unlisted brackets are zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from . import linalg as la
from .algebra import LieAlgebra, Subspace
from .errors import ParseError

_ALGEBRA_KEYS = ("dim", "basis", "bracket", "grading")


def _coeff(tok: str, line: int) -> Fraction:
    if "." in tok or "e" in tok.lower():
        raise ParseError(line, f"coefficient {tok!r} is not an integer or p/q rational")
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"bad coefficient {tok!r}") from None


def parse_expr(text: str, index: dict, line: int = 0) -> dict[int, Fraction]:
    """Parse ``c1 name1 + c2 name2 - ...`` (a bare name means coefficient 1)."""
    toks = text.split()
    if toks == ["0"]:
        return {}
    if not toks:
        raise ParseError(line, "empty linear combination")
    out: dict[int, Fraction] = {}
    sign = 1
    pos = 0
    expect_term = True
    while pos < len(toks):
        tok = toks[pos]
        if tok in "+-" and len(tok) == 1:
            if expect_term and pos:
                raise ParseError(line, "two operators in a row")
            sign = -1 if tok == "-" else 1
            expect_term = True
            pos += 1
            continue
        if not expect_term:
            raise ParseError(line, f"expected '+' or '-' before {tok!r}")
        if tok in index:
            c, name = Fraction(1), tok
            pos += 1
        else:
            c = _coeff(tok, line)
            if pos + 1 >= len(toks):
                raise ParseError(line, f"coefficient {tok!r} is missing its basis name")
            name = toks[pos + 1]
            pos += 2
        if name not in index:
            raise ParseError(line, f"unknown basis element {name!r}")
        k = index[name]
        out[k] = out.get(k, Fraction(0)) + sign * c
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError(line, "expression ends with an operator")
    return {k: c for k, c in out.items() if c}


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield no, content


def read_document(text: str):
    """Parse an algebra and its optional certificate section.

    Returns ``(algebra, certificate_or_None)``.
    """
    from .asimple import make_certificate
    from .structure import maximal_abelian_ideal

    dim: Optional[int] = None
    names: Optional[list] = None
    index: dict = {}
    brackets: dict = {}
    grading: dict = {}
    in_cert = False
    ideal_vectors = []
    witnesses = []
    seen_cert = False
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if in_cert and head in _ALGEBRA_KEYS:
            raise ParseError(no, f"{head!r} line inside the certificate section")
        if head == "dim":
            if dim is not None:
                raise ParseError(no, "duplicate dim line")
            try:
                dim = int(rest)
            except ValueError:
                raise ParseError(no, f"dim must be a non-negative integer, got {rest!r}") from None
            if dim < 0:
                raise ParseError(no, "dim must be non-negative")
        elif head == "basis":
            if dim is None:
                raise ParseError(no, "basis line before dim")
            if names is not None:
                raise ParseError(no, "duplicate basis line")
            names = rest.split()
            if len(names) != dim:
                raise ParseError(no, f"basis lists {len(names)} names but dim is {dim}")
            if len(set(names)) != len(names):
                raise ParseError(no, "duplicate basis names")
            bad = [x for x in names if x[0].isdigit() or x[0] in "+-/" or any(ch in x for ch in "=:|;")]
            if bad:
                raise ParseError(no, f"invalid basis name {bad[0]!r}")
            index = {x: i for i, x in enumerate(names)}
        elif head == "bracket":
            if names is None:
                raise ParseError(no, "bracket line before basis")
            lhs, eq, rhs = rest.partition("=")
            pair_ = lhs.split()
            if not eq or len(pair_) != 2:
                raise ParseError(no, "expected 'bracket <a> <b> = <expr>'")
            a, b = pair_
            for x in (a, b):
                if x not in index:
                    raise ParseError(no, f"unknown basis element {x!r}")
            i, j = index[a], index[b]
            if i >= j:
                raise ParseError(no, f"bracket pair must be listed in basis order ({a} comes after {b})"
                                 if i > j else "bracket of an element with itself")
            if (i, j) in brackets:
                raise ParseError(no, f"duplicate bracket for {a}, {b}")
            brackets[(i, j)] = parse_expr(rhs, index, no)
        elif head == "grading":
            if names is None:
                raise ParseError(no, "grading line before basis")
            deg, colon, members = rest.partition(":")
            try:
                k = int(deg)
            except ValueError:
                raise ParseError(no, f"grading degree must be an integer, got {deg!r}") from None
            if not colon:
                raise ParseError(no, "expected 'grading <k>: <names>'")
            if k in grading:
                raise ParseError(no, f"duplicate grading degree {k}")
            ms = members.split()
            for x in ms:
                if x not in index:
                    raise ParseError(no, f"unknown basis element {x!r}")
            grading[k] = ms
        elif head == "certificate":
            if names is None:
                raise ParseError(no, "certificate section before basis")
            if seen_cert:
                raise ParseError(no, "duplicate certificate section")
            in_cert = seen_cert = True
        elif head in ("ideal", "ideal-vector", "witness"):
            if not in_cert:
                raise ParseError(no, f"{head!r} outside the certificate section")
            n = len(names)
            if head == "ideal":
                for x in rest.split():
                    if x not in index:
                        raise ParseError(no, f"unknown basis element {x!r}")
                    ideal_vectors.append(la.unit(n, index[x]))
            elif head == "ideal-vector":
                ideal_vectors.append(_dense(parse_expr(rest, index, no), n))
            else:
                if "|" in rest:
                    xe, _, ye = rest.partition("|")
                    witnesses.append((_dense(parse_expr(xe, index, no), n),
                                      _dense(parse_expr(ye, index, no), n)))
                else:
                    parts = rest.split()
                    if len(parts) != 2 or any(x not in index for x in parts):
                        raise ParseError(no, "expected 'witness <X_name> <Y_name>' or 'witness <expr> | <expr>'")
                    witnesses.append((la.unit(n, index[parts[0]]), la.unit(n, index[parts[1]])))
        else:
            raise ParseError(no, f"unknown directive {head!r}")
    if dim is None:
        raise ParseError(0, "missing dim line")
    if names is None:
        if dim:
            raise ParseError(0, "missing basis line")
        names = []
    g = LieAlgebra.from_names(
        names, {(names[i], names[j]): {names[k]: c for k, c in rhs.items()} for (i, j), rhs in brackets.items()},
        grading=grading or None)
    cert = None
    if seen_cert:
        a = Subspace.span(ideal_vectors, g.dim) if ideal_vectors else maximal_abelian_ideal(g)
        cert = make_certificate(g, a, [x for x, _ in witnesses], [y for _, y in witnesses])
    return g, cert


def _dense(sparse: dict, n: int) -> la.Vector:
    v = [Fraction(0)] * n
    for k, c in sparse.items():
        v[k] = c
    return tuple(v)


def read_algebra(text: str) -> LieAlgebra:
    return read_document(text)[0]


def format_expr(v, names) -> str:
    """Canonical ``c name + c name - ...`` rendering; ``0`` for the zero vector."""
    parts = []
    for k, c in enumerate(v):
        if not c:
            continue
        if not parts:
            parts.append(f"{c} {names[k]}")
        else:
            parts.append(f"{'-' if c < 0 else '+'} {abs(c)} {names[k]}")
    return " ".join(parts) if parts else "0"


def _coordinate_names(s: Subspace, names) -> Optional[list]:
    out = []
    for b in s.basis:
        nz = [k for k, c in enumerate(b) if c]
        if len(nz) != 1:
            return None
        out.append(names[nz[0]])
    return out


def write_algebra(g: LieAlgebra) -> str:
    names = g.names
    lines = [f"dim {g.dim}", "basis " + " ".join(names)]
    for i, j, rhs in g.nonzero_brackets():
        lines.append(f"bracket {names[i]} {names[j]} = " + format_expr(_dense(rhs, g.dim), names))
    layers = {k: _coordinate_names(s, names) for k, s in g.grading.items()}
    if all(v is not None for v in layers.values()):
        for k, members in layers.items():
            lines.append(f"grading {k}: " + " ".join(members))
    else:
        lines.append("# grading omitted: its layers are not spanned by basis elements")
    return "\n".join(lines) + "\n"


def write_certificate(g: LieAlgebra, cert) -> str:
    names = g.names
    lines = ["certificate"]
    coord = _coordinate_names(cert.a, names)
    if coord is not None:
        lines.append("ideal " + " ".join(coord))
    else:
        lines.extend("ideal-vector " + format_expr(b, names) for b in cert.a.basis)
    for x, y in zip(cert.X_basis, cert.Y_witnesses):
        xn, yn = _coordinate_names(Subspace(g.dim, (x,)), names), _coordinate_names(Subspace(g.dim, (y,)), names)
        if xn and yn and 1 in x and 1 in y:
            lines.append(f"witness {xn[0]} {yn[0]}")
        else:
            lines.append(f"witness {format_expr(x, names)} | {format_expr(y, names)}")
    return "\n".join(lines) + "\n"


def write_document(g: LieAlgebra, cert=None) -> str:
    text = write_algebra(g)
    return text + write_certificate(g, cert) if cert is not None else text


def parse_action(text: str, h: LieAlgebra):
    """Action matrices for a semidirect product.

    Grammar: ``names <A names...>`` then one ``action <h_name> = <row> ; <row> ...``
    line per basis element of h (missing elements act by zero).
    """
    from .catalog import SemidirectSpec

    a_names = None
    mats: dict = {}
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        if head == "names":
            a_names = rest.split()
        elif head == "action":
            if a_names is None:
                raise ParseError(no, "action line before names")
            lhs, eq, rhs = rest.partition("=")
            name = lhs.strip()
            if not eq or name not in h.names:
                raise ParseError(no, f"expected 'action <h_name> = rows' with a basis name of h")
            if name in mats:
                raise ParseError(no, f"duplicate action for {name}")
            rows = [[_coeff(t, no) for t in r.split()] for r in rhs.split(";")]
            d = len(a_names)
            if len(rows) != d or any(len(r) != d for r in rows):
                raise ParseError(no, f"action matrix must be {d} x {d}")
            mats[name] = rows
        else:
            raise ParseError(no, f"unknown directive {head!r}")
    if a_names is None:
        raise ParseError(0, "missing names line")
    d = len(a_names)
    zero = [[0] * d for _ in range(d)]
    return SemidirectSpec(h, tuple(mats.get(x, zero) for x in h.names), tuple(a_names))
