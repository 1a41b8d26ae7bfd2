"""Lossless CoNLL-U reading and writing.

Tokens keep FEATS, DEPS and MISC as ordered tuples so that a canonical file
survives ``serialize_document(parse_document(text)) == text`` byte for byte.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Optional, Union

logger = logging.getLogger(__name__)

__all__ = [
    "NodeId", "ROOT", "Token", "Sentence", "Document",
    "ConlluError", "ConlluParseError", "SerializationError", "MiscError",
    "parse_node_id", "parse_document", "iter_sentences", "read_document",
    "serialize_sentence", "serialize_document", "misc_attr", "set_misc_attr",
    "check_misc_key",
]

_WORD_RE = re.compile(r"^[1-9][0-9]*$")
_EMPTY_RE = re.compile(r"^([1-9][0-9]*)\.([1-9][0-9]*)$")
_RANGE_RE = re.compile(r"^([1-9][0-9]*)-([1-9][0-9]*)$")


class ConlluError(ValueError):
    pass


class ConlluParseError(ConlluError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class SerializationError(ConlluError):
    pass


class MiscError(ConlluError):
    pass


@dataclass(frozen=True, order=False)
class NodeId:
    """A token ID: word ``3``, empty node ``3.1`` or range ``3-4``.

    ``ROOT`` (word kind, major 0) stands for the virtual root in HEAD and DEPS.
    """

    kind: str
    major: int
    minor: int = 0
    end: int = 0

    def __post_init__(self):
        if self.kind == "word":
            if self.major < 0 or self.minor or self.end:
                raise ValueError(f"bad word id {self!r}")
        elif self.kind == "empty":
            if self.major < 1 or self.minor < 1 or self.end:
                raise ValueError(f"bad empty node id {self!r}")
        elif self.kind == "range":
            if self.major < 1 or self.end < self.major or self.minor:
                raise ValueError(f"bad range id {self!r}")
        else:
            raise ValueError(f"unknown id kind {self.kind!r}")

    @classmethod
    def word(cls, n: int) -> "NodeId":
        return cls("word", n)

    @classmethod
    def empty(cls, major: int, minor: int) -> "NodeId":
        return cls("empty", major, minor)

    @classmethod
    def range(cls, start: int, end: int) -> "NodeId":
        return cls("range", start, 0, end)

    @property
    def is_root(self) -> bool:
        return self.kind == "word" and self.major == 0

    def sort_key(self) -> tuple:
        # ranges precede the first word they cover; empty nodes follow word N
        if self.kind == "range":
            return (self.major, 0, 0)
        if self.kind == "word":
            return (self.major, 1, 0)
        return (self.major, 2, self.minor)

    def __lt__(self, other: "NodeId") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind == "empty":
            return f"{self.major}.{self.minor}"
        if self.kind == "range":
            return f"{self.major}-{self.end}"
        return str(self.major)


ROOT = NodeId.word(0)


def parse_node_id(text: str, allow_root: bool = False) -> NodeId:
    """Parse an ID column value (or a head reference when ``allow_root``)."""
    if allow_root and text == "0":
        return ROOT
    if _WORD_RE.match(text):
        return NodeId.word(int(text))
    m = _EMPTY_RE.match(text)
    if m:
        return NodeId.empty(int(m.group(1)), int(m.group(2)))
    m = _RANGE_RE.match(text)
    if m and not allow_root:
        start, end = int(m.group(1)), int(m.group(2))
        if end < start:
            raise ValueError(f"range end before start: {text!r}")
        return NodeId.range(start, end)
    raise ValueError(f"not a valid ID: {text!r}")


Pairs = tuple  # tuple[tuple[str, Optional[str]], ...]


@dataclass(frozen=True)
class Token:
    id: NodeId
    form: str = "_"
    lemma: str = "_"
    upos: str = "_"
    xpos: str = "_"
    feats: Pairs = ()
    head: Optional[NodeId] = None
    deprel: str = "_"
    deps: tuple = ()  # tuple[tuple[NodeId, str], ...]
    misc: Pairs = ()

    @property
    def is_word(self) -> bool:
        return self.id.kind == "word"

    @property
    def is_empty(self) -> bool:
        return self.id.kind == "empty"

    @property
    def is_range(self) -> bool:
        return self.id.kind == "range"


@dataclass(frozen=True)
class Sentence:
    tokens: tuple = ()
    comments: tuple = ()

    @property
    def sent_id(self) -> Optional[str]:
        for line in self.comments:
            m = re.match(r"#\s*sent_id\s*=\s*(.*)$", line)
            if m:
                return m.group(1).strip()
        return None

    @property
    def words(self) -> list:
        return [t for t in self.tokens if t.is_word]

    @property
    def nodes(self) -> list:
        """Word and empty-node tokens (everything but multiword ranges)."""
        return [t for t in self.tokens if not t.is_range]

    def get(self, node: NodeId) -> Optional[Token]:
        for t in self.tokens:
            if t.id == node:
                return t
        return None


@dataclass(frozen=True)
class Document:
    sentences: tuple = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)


# ---------------------------------------------------------------- MISC access

def check_misc_key(key: str) -> None:
    if not key or any(c in key for c in "=|\t\n\r"):
        raise MiscError(f"illegal MISC key: {key!r}")


def _check_value(value: str) -> None:
    if any(c in value for c in "|\t\n\r"):
        raise MiscError(f"illegal MISC value: {value!r}")


def misc_attr(token: Token, key: str) -> Optional[str]:
    """Return the MISC value stored under ``key``, or None."""
    check_misc_key(key)
    for k, v in token.misc:
        if k == key:
            return "" if v is None else v
    return None


def set_misc_attr(token: Token, key: str, value: str) -> Token:
    """Return a copy of ``token`` with ``key=value`` in MISC.

    An existing key keeps its position; a new key goes last.
    """
    check_misc_key(key)
    _check_value(value)
    misc = list(token.misc)
    for i, (k, _) in enumerate(misc):
        if k == key:
            misc[i] = (key, value)
            break
    else:
        misc.append((key, value))
    return replace(token, misc=tuple(misc))


# ------------------------------------------------------------------- parsing

def _parse_pairs(text: str, column: str, lineno: int, unique: bool) -> Pairs:
    if text == "_":
        return ()
    pairs = []
    seen = set()
    for item in text.split("|"):
        if not item:
            raise ConlluParseError(lineno, f"empty item in {column}")
        key, sep, value = item.partition("=")
        if not sep:
            if column == "FEATS":
                raise ConlluParseError(lineno, f"FEATS item without '=': {item!r}")
            value = None
        if unique and key in seen:
            raise ConlluParseError(lineno, f"duplicate {column} key {key!r}")
        seen.add(key)
        pairs.append((key, value))
    return tuple(pairs)


def _parse_deps(text: str, lineno: int) -> tuple:
    if text == "_":
        return ()
    deps = []
    for item in text.split("|"):
        head, sep, rel = item.partition(":")
        if not sep or not rel:
            raise ConlluParseError(lineno, f"DEPS item is not head:rel: {item!r}")
        try:
            deps.append((parse_node_id(head, allow_root=True), rel))
        except ValueError as exc:
            raise ConlluParseError(lineno, f"bad DEPS head: {exc}") from None
    return tuple(deps)


def _parse_token(line: str, lineno: int) -> Token:
    cols = line.split("\t")
    if len(cols) != 10:
        raise ConlluParseError(lineno, f"expected 10 columns, found {len(cols)}")
    try:
        node = parse_node_id(cols[0])
    except ValueError as exc:
        raise ConlluParseError(lineno, str(exc)) from None
    head: Optional[NodeId] = None
    if cols[6] != "_":
        try:
            head = parse_node_id(cols[6], allow_root=True)
        except ValueError as exc:
            raise ConlluParseError(lineno, f"bad HEAD: {exc}") from None
    if node.kind == "empty" and (cols[6] != "_" or cols[7] != "_"):
        raise ConlluParseError(lineno, "empty node must have HEAD and DEPREL '_'")
    if node.kind == "range" and cols[6:9] != ["_", "_", "_"]:
        raise ConlluParseError(lineno, "multiword range must have HEAD, DEPREL, DEPS '_'")
    return Token(
        id=node, form=cols[1], lemma=cols[2], upos=cols[3], xpos=cols[4],
        feats=_parse_pairs(cols[5], "FEATS", lineno, unique=False),
        head=head, deprel=cols[7],
        deps=_parse_deps(cols[8], lineno),
        misc=_parse_pairs(cols[9], "MISC", lineno, unique=True),
    )


def _check_ids(tokens: list, linenos: list) -> None:
    """Enforce ID ordering, consecutiveness and head ranges."""
    expected_word = 1
    last_minor = {}
    prev = None
    seen = set()
    for tok, lineno in zip(tokens, linenos):
        node = tok.id
        if node in seen:
            raise ConlluParseError(lineno, f"duplicate ID {node}")
        seen.add(node)
        if prev is not None and not prev < node:
            raise ConlluParseError(lineno, f"ID {node} out of order after {prev}")
        prev = node
        if node.kind == "word":
            if node.major != expected_word:
                raise ConlluParseError(lineno, f"expected word ID {expected_word}, found {node}")
            expected_word += 1
        elif node.kind == "empty":
            want = last_minor.get(node.major, 0) + 1
            if node.minor != want:
                raise ConlluParseError(lineno, f"expected empty node {node.major}.{want}, found {node}")
            last_minor[node.major] = node.minor
            if node.major != expected_word - 1:
                raise ConlluParseError(lineno, f"empty node {node} not after word {node.major}")
        elif node.kind == "range" and node.major != expected_word:
            raise ConlluParseError(lineno, f"range {node} does not start at word {expected_word}")
    n_words = expected_word - 1
    nodes = {t.id for t in tokens if not t.is_range}
    for tok, lineno in zip(tokens, linenos):
        if tok.is_range and tok.id.end > n_words:
            raise ConlluParseError(lineno, f"range {tok.id} runs past the last word {n_words}")
        if tok.head is not None and not tok.head.is_root and tok.head not in nodes:
            raise ConlluParseError(lineno, f"HEAD {tok.head} out of range")
        for h, _ in tok.deps:
            if not h.is_root and h not in nodes:
                raise ConlluParseError(lineno, f"DEPS head {h} out of range")


def _build_sentence(comments, tokens, linenos, start_line) -> Sentence:
    if not tokens:
        raise ConlluParseError(start_line, "sentence has no token lines")
    if sum(1 for c in comments if re.match(r"#\s*sent_id\s*=", c)) > 1:
        raise ConlluParseError(start_line, "more than one sent_id comment")
    _check_ids(tokens, linenos)
    return Sentence(tokens=tuple(tokens), comments=tuple(comments))


def iter_sentences(lines: Iterable[str]) -> Iterator[Sentence]:
    """Yield sentences one at a time from an iterable of text lines.

    Accepts CRLF line endings and missing final blank lines, logging a
    warning, so that corpora can be streamed without loading them whole.
    """
    comments: list = []
    tokens: list = []
    linenos: list = []
    start = 1
    warned_crlf = False
    blank_run = 0
    lineno = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw[:-1] if raw.endswith("\n") else raw
        if line.endswith("\r"):
            line = line[:-1]
            if not warned_crlf:
                logger.warning("CRLF line endings normalized to LF")
                warned_crlf = True
        if line == "":
            blank_run += 1
            if blank_run == 2:
                logger.warning("line %d: extra blank line between sentences dropped", lineno)
            if comments or tokens:
                yield _build_sentence(comments, tokens, linenos, start)
                comments, tokens, linenos = [], [], []
            continue
        blank_run = 0
        if not comments and not tokens:
            start = lineno
        if line.startswith("#"):
            if tokens:
                raise ConlluParseError(lineno, "comment line after token lines")
            comments.append(line)
        else:
            tokens.append(_parse_token(line, lineno))
            linenos.append(lineno)
    if comments or tokens:
        logger.warning("input does not end with a blank line")
        yield _build_sentence(comments, tokens, linenos, start)


def parse_document(text: str) -> Document:
    """Parse CoNLL-U text into a :class:`Document`."""
    if text.startswith("\ufeff"):
        text = text[1:]
    lines = [line + "\n" for line in text.split("\n")]
    lines[-1] = lines[-1][:-1]
    if not lines[-1]:
        lines.pop()
    return Document(tuple(iter_sentences(lines)))


def read_document(path) -> Document:
    with open(path, encoding="utf-8-sig", newline="\n") as fh:
        return Document(tuple(iter_sentences(fh)))


# ------------------------------------------------------------- serialization

def _format_pairs(pairs: Pairs) -> str:
    if not pairs:
        return "_"
    return "|".join(k if v is None else f"{k}={v}" for k, v in pairs)


def _format_token(tok: Token) -> str:
    keys = [k for k, _ in tok.misc]
    if len(set(keys)) != len(keys):
        raise SerializationError(f"token {tok.id}: duplicate MISC key")
    for k, v in tok.misc:
        if not k or any(c in k for c in "=|\t\n\r"):
            raise SerializationError(f"token {tok.id}: illegal MISC key {k!r}")
        if v is not None and any(c in v for c in "|\t\n\r"):
            raise SerializationError(f"token {tok.id}: illegal MISC value {v!r}")
    deps = "|".join(f"{h}:{r}" for h, r in tok.deps) or "_"
    cols = [
        str(tok.id), tok.form, tok.lemma, tok.upos, tok.xpos,
        _format_pairs(tok.feats),
        "_" if tok.head is None else str(tok.head),
        tok.deprel, deps, _format_pairs(tok.misc),
    ]
    for c in cols:
        if "\t" in c or "\n" in c:
            raise SerializationError(f"token {tok.id}: tab or newline inside a column")
    return "\t".join(cols)


def serialize_sentence(sentence: Sentence) -> str:
    if not sentence.tokens:
        raise SerializationError("cannot serialize an empty sentence")
    prev = None
    for tok in sentence.tokens:
        if prev is not None and not prev < tok.id:
            raise SerializationError(f"token IDs not increasing at {tok.id}")
        prev = tok.id
    lines = list(sentence.comments)
    lines.extend(_format_token(t) for t in sentence.tokens)
    return "\n".join(lines) + "\n\n"


def serialize_document(doc: Union[Document, Iterable[Sentence]]) -> str:
    """Render sentences in canonical form: LF endings, blank line after each."""
    return "".join(serialize_sentence(s) for s in doc)
