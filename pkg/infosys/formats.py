"""Line-oriented text formats for posets, systems, frames, cis, ais and maps.

Every file starts with ``kind <name>``. Lines are split like a shell command
line, so ``#`` starts a comment and names with spaces can be quoted. A lone
``:`` separates a witness from its body and a body from its conclusion.
"""

import logging
import shlex
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from .appmap import ApproxMap
from .classic import Ais, Cis
from .errors import KindMismatch, ParseError
from .finposet import FinPoset, hasse_edges, poset_from_pairs
from .frames import Frame
from .isw import Isw, WitnessedSet
from .tokens import TokenOrder

logger = logging.getLogger(__name__)

Kind = Literal["poset", "isw", "frame", "cis", "ais", "map"]
KINDS: tuple[Kind, ...] = ("poset", "isw", "frame", "cis", "ais", "map")

SEP = ":"


@dataclass(frozen=True)
class Document:
    kind: Kind
    body: FinPoset | Isw | Frame | Cis | Ais | ApproxMap
    source_path: str | None = None
    links: Mapping[str, str] = field(default_factory=dict, hash=False)
    relation: frozenset[tuple[str, str]] | None = None


# Reading

@dataclass
class _Line:
    number: int
    words: list[str]


def _lines(text: str, path: str | None) -> list[_Line]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        try:
            words = shlex.split(raw, comments=True)
        except ValueError as e:
            raise ParseError(str(e), number, path) from e
        if words:
            out.append(_Line(number, words))
    return out


class _Reader:
    """Keyword dispatch shared by every kind of file."""

    def __init__(self, lines: list[_Line], path: str | None):
        self.lines = lines
        self.path = path
        self.tokens: tuple[str, ...] | None = None
        self.delta: str | None = None

    def fail(self, line: _Line, message: str) -> ParseError:
        return ParseError(message, line.number, self.path)

    def known(self, line: _Line, names: Iterable[str]) -> frozenset[str]:
        names = frozenset(names)
        if self.tokens is None:
            raise self.fail(line, "tokens must be declared first")
        unknown = names - set(self.tokens)
        if unknown:
            raise self.fail(line, f"unknown token {sorted(unknown)[0]!r}")
        return names

    def declare(self, line: _Line) -> bool:
        """Handle ``tokens`` and ``delta``; False for any other keyword."""
        key, args = line.words[0], line.words[1:]
        if key == "tokens":
            if self.tokens is not None:
                raise self.fail(line, "tokens declared twice")
            if len(set(args)) != len(args):
                raise self.fail(line, "duplicate token")
            if SEP in args:
                raise self.fail(line, f"{SEP!r} is not a token name")
            self.tokens = tuple(args)
            return True
        if key == "delta":
            if len(args) != 1:
                raise self.fail(line, "delta takes one token")
            (self.delta,) = self.known(line, args)
            return True
        return False

    def split(self, line: _Line, args: list[str], parts: int) -> list[list[str]]:
        """Cut args at the separators into exactly ``parts`` groups."""
        groups: list[list[str]] = [[]]
        for word in args:
            if word == SEP:
                groups.append([])
            else:
                groups[-1].append(word)
        if len(groups) != parts:
            raise self.fail(line, f"expected {parts - 1} '{SEP}' separator(s)")
        return groups

    def single(self, line: _Line, group: list[str], what: str) -> str:
        if len(group) != 1:
            raise self.fail(line, f"{what} must be exactly one token")
        (name,) = self.known(line, group)
        return name

    def require_header(self, line: _Line, needs_delta: bool) -> tuple[tuple[str, ...], str | None]:
        if self.tokens is None:
            raise self.fail(line, "missing tokens line")
        if needs_delta and self.delta is None:
            raise self.fail(line, "missing delta line")
        return self.tokens, self.delta


def _header(lines: list[_Line], path: str | None) -> Kind:
    if not lines or lines[0].words[0] != "kind" or len(lines[0].words) != 2:
        raise ParseError("first line must be 'kind <name>'", lines[0].number if lines else 1, path)
    kind = lines[0].words[1]
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", lines[0].number, path)
    return kind


def _read_poset(r: _Reader) -> FinPoset:
    elems: list[str] | None = None
    pairs = []
    for line in r.lines:
        key, args = line.words[0], line.words[1:]
        if key == "elems":
            if elems is not None:
                raise r.fail(line, "elems declared twice")
            elems = args
        elif key == "le":
            if elems is None:
                raise r.fail(line, "elems must be declared first")
            if len(args) != 2:
                raise r.fail(line, "le takes two elements")
            for a in args:
                if a not in elems:
                    raise r.fail(line, f"unknown element {a!r}")
            pairs.append((args[0], args[1]))
        else:
            raise r.fail(line, f"unexpected keyword {key!r}")
    if elems is None:
        raise ParseError("missing elems line", None, r.path)
    return poset_from_pairs(elems, pairs)


def _read_isw(r: _Reader) -> Isw:
    con: set[WitnessedSet] = set()
    ent: list[tuple[_Line, WitnessedSet, str]] = []
    for line in r.lines:
        if r.declare(line):
            continue
        key, args = line.words[0], line.words[1:]
        if key == "con":
            r.require_header(line, True)
            w, body = r.split(line, args, 2)
            con.add(WitnessedSet(r.single(line, w, "witness"), r.known(line, body)))
        elif key == "ent":
            r.require_header(line, True)
            w, body, concl = r.split(line, args, 3)
            p = WitnessedSet(r.single(line, w, "witness"), r.known(line, body))
            ent.append((line, p, r.single(line, concl, "conclusion")))
        else:
            raise r.fail(line, f"unexpected keyword {key!r}")
    for line, p, _ in ent:
        if p not in con:
            raise r.fail(line, f"entailment from ({p.witness},{sorted(p.body)}) which has no con line")
    tokens, delta = _finish(r, True)
    return Isw(tokens, delta, frozenset(con), frozenset((p, a) for _, p, a in ent))


def _finish(r: _Reader, needs_delta: bool) -> tuple[tuple[str, ...], str | None]:
    if r.tokens is None:
        raise ParseError("missing tokens line", None, r.path)
    if needs_delta and r.delta is None:
        raise ParseError("missing delta line", None, r.path)
    return r.tokens, r.delta


def _read_frame(r: _Reader) -> tuple[Frame, frozenset[tuple[str, str]] | None]:
    con_of: dict[str, set[frozenset[str]]] = {}
    ent_of: dict[str, set[tuple[frozenset[str], str]]] = {}
    ent_lines: list[tuple[_Line, str, frozenset[str]]] = []
    declared: set[tuple[str, str]] | None = None
    for line in r.lines:
        if r.declare(line):
            continue
        key, args = line.words[0], line.words[1:]
        if key.startswith("con@") or key.startswith("ent@"):
            r.require_header(line, True)
            node = r.single(line, [key[4:]], "node")
            if key.startswith("con@"):
                lead, body = r.split(line, args, 2)
                if lead:
                    raise r.fail(line, f"{key} takes no witness before '{SEP}'")
                con_of.setdefault(node, set()).add(r.known(line, body))
            else:
                lead, body, concl = r.split(line, args, 3)
                if lead:
                    raise r.fail(line, f"{key} takes no witness before '{SEP}'")
                X = r.known(line, body)
                ent_of.setdefault(node, set()).add((X, r.single(line, concl, "conclusion")))
                ent_lines.append((line, node, X))
        elif key == "R":
            if len(args) != 2:
                raise r.fail(line, "R takes two tokens")
            r.known(line, args)
            declared = declared or set()
            declared.add((args[0], args[1]))
        else:
            raise r.fail(line, f"unexpected keyword {key!r}")
    for line, node, X in ent_lines:
        if X not in con_of.get(node, set()):
            raise r.fail(line, f"entailment at {node} from a set with no con@{node} line")
    tokens, delta = _finish(r, True)
    frame = Frame(
        tokens,
        delta,
        {t: frozenset(con_of.get(t, ())) for t in tokens},
        {t: frozenset(ent_of.get(t, ())) for t in tokens},
    )
    return frame, None if declared is None else frozenset(declared)


def _read_plain(r: _Reader, with_delta: bool) -> Cis | Ais:
    con: set[frozenset[str]] = set()
    ent: list[tuple[_Line, frozenset[str], str]] = []
    for line in r.lines:
        if r.declare(line):
            if line.words[0] == "delta" and not with_delta:
                raise r.fail(line, "a cis has no delta")
            continue
        key, args = line.words[0], line.words[1:]
        if key == "con":
            lead, body = r.split(line, args, 2)
            if lead:
                raise r.fail(line, f"con takes no witness before '{SEP}'")
            con.add(r.known(line, body))
        elif key == "ent":
            body, concl = r.split(line, args, 2)
            ent.append((line, r.known(line, body), r.single(line, concl, "conclusion")))
        else:
            raise r.fail(line, f"unexpected keyword {key!r}")
    for line, X, _ in ent:
        if X not in con:
            raise r.fail(line, "entailment from a set with no con line")
    tokens, delta = _finish(r, with_delta)
    pairs = frozenset((X, a) for _, X, a in ent)
    if with_delta:
        return Ais(tokens, delta, frozenset(con), pairs)
    return Cis(tokens, frozenset(con), pairs)


def _read_map(r: _Reader, base: Path | None) -> tuple[ApproxMap, dict[str, str]]:
    links: dict[str, str] = {}
    rel_lines: list[_Line] = []
    for line in r.lines:
        key, args = line.words[0], line.words[1:]
        if key in ("source", "target"):
            if len(args) != 1:
                raise r.fail(line, f"{key} takes one path")
            links[key] = args[0]
        elif key == "rel":
            rel_lines.append(line)
        else:
            raise r.fail(line, f"unexpected keyword {key!r}")
    for key in ("source", "target"):
        if key not in links:
            raise ParseError(f"missing {key} line", None, r.path)
    root = base or Path(".")
    source = parse(root / links["source"], expect="isw").body
    target = parse(root / links["target"], expect="isw").body

    rel = set()
    for line in rel_lines:
        w, body, concl = r.split(line, line.words[1:], 3)
        r.tokens = source.tokens
        p = WitnessedSet(r.single(line, w, "witness"), r.known(line, body))
        r.tokens = target.tokens
        rel.add((p, r.single(line, concl, "target token")))
    return ApproxMap(source, target, frozenset(rel)), links


def parse_text(text: str, path: str | Path | None = None, expect: Kind | None = None) -> Document:
    """Parse a document held in a string; map files resolve links next to ``path``."""
    where = None if path is None else str(path)
    lines = _lines(text, where)
    kind = _header(lines, where)
    if expect is not None and kind != expect:
        raise KindMismatch(f"{where or 'input'}: expected kind {expect}, found {kind}")
    r = _Reader(lines[1:], where)
    match kind:
        case "poset":
            return Document(kind, _read_poset(r), where)
        case "isw":
            return Document(kind, _read_isw(r), where)
        case "frame":
            frame, declared = _read_frame(r)
            return Document(kind, frame, where, relation=declared)
        case "cis":
            return Document(kind, _read_plain(r, False), where)
        case "ais":
            return Document(kind, _read_plain(r, True), where)
        case "map":
            base = None if path is None else Path(path).parent
            body, links = _read_map(r, base)
            return Document(kind, body, where, links)
    raise ParseError(f"unknown kind {kind!r}", None, where)


def parse(path: str | Path, expect: Kind | None = None) -> Document:
    path = Path(path)
    logger.debug(f"parsing {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", None, str(path)) from e
    return parse_text(text, path, expect)


def parse_state_text(text: str) -> frozenset[str]:
    """Read ``{a,b}``; commas inside parentheses belong to pair names."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"state must be written as {{a,b,...}}, got {text!r}")
    inner = text[1:-1]
    names, depth, current = [], 0, []
    for ch in inner:
        if ch == "," and depth == 0:
            names.append("".join(current).strip())
            current = []
            continue
        depth += {"(": 1, ")": -1}.get(ch, 0)
        current.append(ch)
    last = "".join(current).strip()
    if last or names:
        names.append(last)
    if any(not n for n in names):
        raise ParseError(f"empty name in state {text!r}")
    return frozenset(names)


# Writing

def quote(name: str) -> str:
    """Quote a name only when the line splitter would otherwise break it."""
    if name == SEP:
        return f"'{SEP}'"
    if name and not any(ch.isspace() or ch in "'\"#\\" for ch in name):
        return name
    return shlex.quote(name)


def _words(names: Iterable[str]) -> str:
    return " ".join(quote(n) for n in names)


def _line(*parts: str) -> str:
    return " ".join(p for p in parts if p)


def _body(order: TokenOrder, X: Iterable[str]) -> str:
    return _words(order.ordered(X))


def _write_poset(P: FinPoset) -> list[str]:
    lines = [_line("elems", _words(P.elems))]
    lines += [f"le {quote(x)} {quote(y)}" for x, y in hasse_edges(P)]
    return lines


def _write_isw(S: Isw) -> list[str]:
    o = S.order
    lines = [_line("tokens", _words(S.tokens)), f"delta {quote(S.delta)}"]
    lines += [_line("con", quote(p.witness), SEP, _body(o, p.body)) for p in S.sorted_con]
    for p in S.sorted_con:
        for a in o.ordered(S.closure[p]):
            lines.append(_line("ent", quote(p.witness), SEP, _body(o, p.body), SEP, quote(a)))
    return lines


def _write_frame(F: Frame, declared: frozenset[tuple[str, str]] | None) -> list[str]:
    o = F.order
    lines = [_line("tokens", _words(F.tokens)), f"delta {quote(F.delta)}"]
    for i in F.tokens:
        lines += [_line(f"con@{quote(i)}", SEP, _body(o, X)) for X in o.sort_sets(F.con_of[i])]
    for i in F.tokens:
        for X in o.sort_sets(F.con_of[i]):
            for a in o.ordered(F.cl(i, X)):
                lines.append(_line(f"ent@{quote(i)}", SEP, _body(o, X), SEP, quote(a)))
    if declared is not None:
        for i, j in sorted(declared, key=lambda e: (o.index[e[0]], o.index[e[1]])):
            lines.append(f"R {quote(i)} {quote(j)}")
    return lines


def _write_plain(C: Cis | Ais) -> list[str]:
    o = C.order
    lines = [_line("tokens", _words(C.tokens))]
    if isinstance(C, Ais):
        lines.append(f"delta {quote(C.delta)}")
    lines += [_line("con", SEP, _body(o, X)) for X in C.sorted_con]
    for X in C.sorted_con:
        for a in o.ordered(C.closure[X]):
            lines.append(_line("ent", _body(o, X), SEP, quote(a)))
    return lines


def _write_map(H: ApproxMap, links: Mapping[str, str]) -> list[str]:
    S, T = H.source, H.target
    lines = [f"source {quote(links['source'])}", f"target {quote(links['target'])}"]
    for p in S.sorted_con:
        for b in T.order.ordered(H.image[p]):
            lines.append(_line("rel", quote(p.witness), SEP, _body(S.order, p.body), SEP, quote(b)))
    return lines


def serialize(doc: Document) -> str:
    """Canonical text: declared token order, sets by size then position."""
    match doc.kind:
        case "poset":
            body = _write_poset(doc.body)
        case "isw":
            body = _write_isw(doc.body)
        case "frame":
            body = _write_frame(doc.body, doc.relation)
        case "cis" | "ais":
            body = _write_plain(doc.body)
        case "map":
            body = _write_map(doc.body, doc.links)
        case _:
            raise ValueError(f"unknown kind {doc.kind!r}")
    return "\n".join([f"kind {doc.kind}", *body]) + "\n"


def document_for(body: FinPoset | Isw | Frame | Cis | Ais) -> Document:
    """Wrap a value in a document of the matching kind."""
    for kind, cls in (("poset", FinPoset), ("isw", Isw), ("frame", Frame), ("cis", Cis), ("ais", Ais)):
        if isinstance(body, cls):
            return Document(kind, body)
    raise TypeError(f"no document kind for {type(body).__name__}")
