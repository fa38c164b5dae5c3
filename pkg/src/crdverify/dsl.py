"""Line-oriented text format for deciders and their predicates.

A decider file::

    name mod_consensus_m2
    species X Y V0
    input X Y
    convention con
    voters0 V0
    voters1 X Y
    rxn 2 X -> V0
    rxn X + Y -> V0
    pred not (lin(X - Y) mod 2 == 0)

``#`` starts a comment, an empty reaction side is ``0`` and coefficients
are written ``k S``. ``convention`` may be omitted for a bare CRN.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .crd import Convention, Crd, VoterError
from .crn import Configuration, Crn, Reaction, SpeciesTable, format_side, valid_name
from .semilinear import And, Coeffs, Mod, Not, Or, Predicate, Threshold


class DslError(ValueError):
    """Parse failure with a 1-based source location."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class DslSyntaxError(DslError):
    pass


class UndeclaredSpecies(DslError):
    pass


class DuplicateSpecies(DslError):
    pass


class BadArrow(DslError):
    pass


class BadConvention(DslError):
    pass


class VoterOverlap(DslError):
    """Voter sets overlap or fail the convention's partition requirement."""


class MalformedCoefficient(DslError):
    pass


class PredicateSyntaxError(DslError):
    pass


@dataclass
class CrdDocument:
    crn: Crn
    inputs: tuple[str, ...] = ()
    seed: Configuration | None = None
    convention: Convention | None = None
    voters0: tuple[str, ...] = ()
    voters1: tuple[str, ...] = ()
    pred: Predicate | None = None
    name: str | None = None
    # directive -> line numbers where it appeared
    spans: dict[str, list[int]] = field(default_factory=dict, compare=False, repr=False)

    @property
    def species(self) -> SpeciesTable:
        return self.crn.species

    @property
    def is_decider(self) -> bool:
        return self.convention is not None

    @property
    def crd(self) -> Crd:
        if self.convention is None:
            raise DslError("document declares no convention; it is a bare CRN")
        return Crd(self.crn, self.inputs, self.convention, self.voters0, self.voters1, self.seed)

    @classmethod
    def from_crd(cls, crd: Crd, pred: Predicate | None = None, name: str | None = None) -> CrdDocument:
        return cls(crd.crn, crd.inputs, crd.seed, crd.convention, crd.voters0, crd.voters1, pred, name)


# --- multisets ---------------------------------------------------------------


def _parse_side(
    text: str, col: int, line: int, species: SpeciesTable, *, near_arrow: tuple[bool, bool] = (False, False)
) -> dict[str, int]:
    """Parse ``2 X + Y`` or ``0``; ``col`` is the 1-based column of ``text[0]``."""
    if text.strip() == "0":
        return {}
    if not text.strip():
        raise BadArrow("empty reaction side (write 0 for no molecules)", line, col)
    out: dict[str, int] = {}
    pieces = text.split("+")
    offset = 0
    for k, piece in enumerate(pieces):
        start = col + offset
        here = start + (len(piece) - len(piece.lstrip()))
        offset += len(piece) + 1
        toks = piece.split()
        if not toks:
            last = k == len(pieces) - 1
            dangling = (k == 0 and near_arrow[0]) or (last and near_arrow[1])
            err = BadArrow if dangling else MalformedCoefficient
            # point at the offending '+': the one before a trailing gap, else the one after
            plus = start - 1 if last and k else start + len(piece)
            raise err("dangling '+'" + (" next to the arrow" if dangling else ""), line, plus)
        if len(toks) == 1:
            coef_text, name = None, toks[0]
            m = re.fullmatch(r"(\d+)([A-Za-z_].*)", name)
            if m:
                coef_text, name = m.group(1), m.group(2)
        elif len(toks) == 2:
            coef_text, name = toks
        else:
            raise MalformedCoefficient(f"cannot read term {piece.strip()!r}", line, here)
        if coef_text is None:
            k_mult = 1
        elif re.fullmatch(r"\d+", coef_text):
            k_mult = int(coef_text)
            if k_mult == 0:
                raise MalformedCoefficient("coefficient must be positive", line, here)
        else:
            raise MalformedCoefficient(f"bad coefficient {coef_text!r}", line, here)
        if not valid_name(name):
            raise MalformedCoefficient(f"bad species name {name!r}", line, here)
        if name not in species:
            raise UndeclaredSpecies(f"undeclared species {name!r}", line, here + piece.strip().rfind(name))
        out[name] = out.get(name, 0) + k_mult
    return out


def parse_multiset(text: str, species: SpeciesTable) -> Configuration:
    """``"2 X + Y"`` (or ``"0"``) as a configuration over ``species``."""
    if not text.strip():
        return species.config({})
    return species.config(_parse_side(text, 1, 1, species))


# --- documents ---------------------------------------------------------------

_DIRECTIVES = ("name", "species", "input", "convention", "voters0", "voters1", "seed", "rxn", "pred")


def _lines(text: str) -> Iterator[tuple[int, str, int, str, int]]:
    """(line, directive, its column, rest of line, column of rest) per non-blank line."""
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    for n, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        m = re.match(r"\s*(\S+)\s*", body)
        assert m is not None
        yield n, m.group(1), m.start(1) + 1, body[m.end():], m.end() + 1


def _names(rest: str, col: int) -> Iterator[tuple[str, int]]:
    for m in re.finditer(r"\S+", rest):
        yield m.group(0), col + m.start()


def parse_crd(text: str) -> CrdDocument:
    """Parse a document; raises a :class:`DslError` subclass on the first problem."""
    lines = list(_lines(text))
    spans: dict[str, list[int]] = {}
    names: list[str] = []
    for n, key, kcol, rest, col in lines:
        if key not in _DIRECTIVES:
            raise DslSyntaxError(f"unknown directive {key!r}", n, kcol)
        spans.setdefault(key, []).append(n)
        if key == "species":
            for name, c in _names(rest, col):
                if not valid_name(name):
                    raise DslSyntaxError(f"bad species name {name!r}", n, c)
                if name in names:
                    raise DuplicateSpecies(f"species {name!r} declared twice", n, c)
                names.append(name)
    if not names:
        raise DslSyntaxError("no species declared", 1, 1)
    table = SpeciesTable(tuple(names))

    for key in ("name", "convention", "input", "voters0", "voters1", "seed", "pred"):
        if len(spans.get(key, [])) > 1:
            raise DslSyntaxError(f"directive {key!r} given twice", spans[key][1], 1)

    doc_name = None
    inputs: list[str] = []
    convention: Convention | None = None
    conv_line = 0
    voters: dict[int, list[str]] = {0: [], 1: []}
    seen_vote: dict[str, int] = {}
    seed = table.config({})
    rxns: list[Reaction] = []
    pred = None

    def declared(name: str, n: int, c: int) -> str:
        if name not in table:
            raise UndeclaredSpecies(f"undeclared species {name!r}", n, c)
        return name

    for n, key, _, rest, col in lines:
        if key == "name":
            doc_name = rest.strip() or None
        elif key == "input":
            for name, c in _names(rest, col):
                if declared(name, n, c) in inputs:
                    raise DuplicateSpecies(f"input {name!r} listed twice", n, c)
                inputs.append(name)
        elif key == "convention":
            word = rest.strip()
            try:
                convention = Convention(word)
            except ValueError:
                raise BadConvention(f"unknown convention {word!r} (expected con, exi, dem or del)", n, col) from None
            conv_line = n
        elif key in ("voters0", "voters1"):
            side = int(key[-1])
            for name, c in _names(rest, col):
                declared(name, n, c)
                if name in seen_vote:
                    if seen_vote[name] == side:
                        raise DuplicateSpecies(f"voter {name!r} listed twice", n, c)
                    raise VoterOverlap(f"species {name!r} votes both 0 and 1", n, c)
                seen_vote[name] = side
                voters[side].append(name)
        elif key == "seed":
            seed = table.config(_parse_side(rest, col, n, table)) if rest.strip() else seed
        elif key == "rxn":
            rxns.append(_parse_reaction(rest, col, n, table))
        elif key == "pred":
            pred = parse_pred(rest, line=n, col=col)

    if convention is None and (voters[0] or voters[1]):
        line = (spans.get("voters0") or spans.get("voters1"))[0]
        raise BadConvention("voter sets given without a convention", line, 1)
    if convention is not None:
        try:
            Crd(Crn(table, ()), tuple(inputs), convention, tuple(voters[0]), tuple(voters[1]))
        except VoterError as exc:
            raise VoterOverlap(str(exc), conv_line, 1) from None
    return CrdDocument(
        Crn(table, tuple(rxns)),
        tuple(inputs),
        seed,
        convention,
        tuple(voters[0]),
        tuple(voters[1]),
        pred,
        doc_name,
        spans,
    )


def _parse_reaction(rest: str, col: int, n: int, table: SpeciesTable) -> Reaction:
    arrow = None
    for m in re.finditer(r"<->|->|=>|<-|[<>=\u2192-]", rest):
        if m.group(0) == "->" and arrow is None:
            arrow = m.start()
            continue
        raise BadArrow(f"unexpected {m.group(0)!r} in reaction; use a single '->'", n, col + m.start())
    if arrow is None:
        raise BadArrow("reaction is missing '->'", n, col + len(rest))
    r = _parse_side(rest[:arrow], col, n, table, near_arrow=(False, True))
    p = _parse_side(rest[arrow + 2:], col + arrow + 2, n, table, near_arrow=(True, False))
    return Reaction(table.config(r), table.config(p))


def load_crd(path: str) -> CrdDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_crd(fh.read())


CORPUS_DIR = Path(__file__).with_name("corpus")


def corpus_names() -> list[str]:
    return sorted(p.stem for p in CORPUS_DIR.glob("*.crd"))


def resolve_path(ref: str) -> Path:
    """A filesystem path, or the name of a shipped corpus file (with or without ``.crd``)."""
    path = Path(ref)
    if path.is_file():
        return path
    shipped = CORPUS_DIR / (ref if ref.endswith(".crd") else ref + ".crd")
    if shipped.is_file():
        return shipped
    raise FileNotFoundError(f"no such file or corpus entry: {ref}")


def load_corpus(name: str) -> CrdDocument:
    return load_crd(str(resolve_path(name)))


def serialize(doc: CrdDocument | Crd, pred: Predicate | None = None, name: str | None = None) -> str:
    """Canonical text; ``parse_crd(serialize(d))`` reproduces ``d``."""
    if isinstance(doc, Crd):
        doc = CrdDocument.from_crd(doc, pred, name)
    sp = doc.species
    out = []
    if doc.name:
        out.append(f"name {doc.name}")
    out.append("species " + " ".join(sp.names))
    if doc.inputs:
        out.append("input " + " ".join(doc.inputs))
    if doc.convention is not None:
        out.append(f"convention {doc.convention.value}")
        if doc.voters0:
            out.append("voters0 " + " ".join(doc.voters0))
        if doc.voters1:
            out.append("voters1 " + " ".join(doc.voters1))
    if doc.seed is not None and any(doc.seed):
        out.append("seed " + format_side(doc.seed, sp))
    for a in doc.crn.reactions:
        out.append("rxn " + a.format(sp))
    p = pred if pred is not None else doc.pred
    if p is not None:
        out.append("pred " + format_pred(p))
    return "\n".join(out) + "\n"


# --- predicates --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op><=|>=|==|!=|[<>()+\-*]))")
_KEYWORDS = {"lin", "mod", "and", "or", "not"}


@dataclass
class _Tok:
    kind: str  # num | name | op | kw | end
    text: str
    col: int


def _tokenize(text: str, line: int, col: int) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PredicateSyntaxError(f"unexpected character {text[pos]!r}", line, col + pos)
        kind = m.lastgroup or "op"
        word = m.group(kind)
        at = col + m.start(kind)
        if kind == "name" and word in _KEYWORDS:
            kind = "kw"
        toks.append(_Tok(kind, word, at))
        pos = m.end()
    toks.append(_Tok("end", "", col + len(text)))
    return toks


class _PredParser:
    def __init__(self, text: str, line: int, col: int):
        self.toks = _tokenize(text, line, col)
        self.i = 0
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None) -> PredicateSyntaxError:
        tok = tok or self.peek()
        found = tok.text or "end of input"
        return PredicateSyntaxError(f"{msg}, found {found!r}", self.line, tok.col)

    def take(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            raise self.error(f"expected {text or kind!r}")
        self.i += 1
        return tok

    def accept(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            self.i += 1
            return True
        return False

    def parse(self) -> Predicate:
        p = self.disj()
        if self.peek().kind != "end":
            raise self.error("expected 'and', 'or' or end of predicate")
        return p

    def disj(self) -> Predicate:
        p = self.conj()
        while self.accept("kw", "or"):
            p = Or(p, self.conj())
        return p

    def conj(self) -> Predicate:
        p = self.unary()
        while self.accept("kw", "and"):
            p = And(p, self.unary())
        return p

    def unary(self) -> Predicate:
        if self.accept("kw", "not"):
            return Not(self.unary())
        if self.accept("op", "("):
            p = self.disj()
            self.take("op", ")")
            return p
        if self.peek().kind == "kw" and self.peek().text == "lin":
            return self.atom()
        raise self.error("expected 'lin(...)', 'not' or '('")

    def integer(self) -> int:
        sign = -1 if self.accept("op", "-") else 1
        return sign * int(self.take("num").text)

    def linear(self) -> Coeffs:
        terms: list[tuple[str, int]] = []
        if self.peek().kind == "op" and self.peek().text == ")":
            return ()
        first = True
        while True:
            sign = 1
            if self.accept("op", "-"):
                sign = -1
            elif not first:
                self.take("op", "+")
                if self.accept("op", "-"):
                    sign = -1
            elif self.accept("op", "+"):
                pass
            k = 1
            if self.peek().kind == "num":
                k = int(self.take("num").text)
                self.accept("op", "*")
            tok = self.peek()
            if tok.kind != "name":
                raise self.error("expected a species name")
            self.i += 1
            terms.append((tok.text, sign * k))
            first = False
            nxt = self.peek()
            if not (nxt.kind == "op" and nxt.text in "+-"):
                return tuple(terms)

    def atom(self) -> Predicate:
        self.take("kw", "lin")
        self.take("op", "(")
        merged: dict[str, int] = {}
        for name, a in self.linear():
            merged[name] = merged.get(name, 0) + a
        coeffs = tuple(merged.items())
        self.take("op", ")")
        tok = self.peek()
        if tok.kind == "kw" and tok.text == "mod":
            self.i += 1
            mtok = self.peek()
            modulus = int(self.take("num").text)
            if modulus < 2:
                raise self.error("modulus must be at least 2", mtok)
            cmp = self.peek()
            if not (cmp.kind == "op" and cmp.text in ("==", "!=")):
                raise self.error("expected '==' or '!='")
            self.i += 1
            atom = Mod(coeffs, self.integer() % modulus, modulus)
            return Not(atom) if cmp.text == "!=" else atom
        if tok.kind == "op" and tok.text in ("<", "<=", ">", ">="):
            self.i += 1
            b = self.integer()
            if tok.text == "<":
                return Threshold(coeffs, b)
            if tok.text == "<=":
                return Threshold(coeffs, b + 1)
            if tok.text == ">":
                return Not(Threshold(coeffs, b + 1))
            return Not(Threshold(coeffs, b))
        raise self.error("expected a comparison or 'mod'")


def parse_pred(text: str, line: int = 1, col: int = 1) -> Predicate:
    """Parse ``lin(...) < b`` / ``lin(...) mod c == b`` atoms under and/or/not."""
    return _PredParser(text, line, col).parse()


def _format_linear(coeffs: Coeffs) -> str:
    parts = []
    for k, (name, a) in enumerate(coeffs):
        mag = abs(a)
        term = name if mag == 1 else f"{mag}*{name}"
        if k == 0:
            parts.append(("-" if a < 0 else "") + term)
        else:
            parts.append(("- " if a < 0 else "+ ") + term)
    return " ".join(parts)


def format_pred(p: Predicate) -> str:
    """Canonical text accepted by :func:`parse_pred`."""
    if isinstance(p, Threshold):
        return f"lin({_format_linear(p.coeffs)}) < {p.bound}"
    if isinstance(p, Mod):
        return f"lin({_format_linear(p.coeffs)}) mod {p.modulus} == {p.residue}"
    if isinstance(p, Not):
        return f"not ({format_pred(p.arg)})"
    if isinstance(p, And):
        left = format_pred(p.left)
        right = format_pred(p.right)
        if isinstance(p.left, Or):
            left = f"({left})"
        if isinstance(p.right, (And, Or)):
            right = f"({right})"
        return f"{left} and {right}"
    if isinstance(p, Or):
        right = format_pred(p.right)
        if isinstance(p.right, Or):
            right = f"({right})"
        return f"{format_pred(p.left)} or {right}"
    raise TypeError(f"not a predicate: {p!r}")
