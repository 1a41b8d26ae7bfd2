"""Enhanced dependency graphs: construction, cycle enumeration, validation."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .conllu import ROOT, Document, NodeId, Sentence
from .report import ERROR, INFO, WARNING, Finding, ValidationReport

__all__ = [
    "Edge", "EnhancedGraph", "Cycle", "Cycles", "GraphBuildError",
    "build_graph", "detect_cycles", "validate_sentence", "validate_document",
    "CYCLE_LIMIT",
]

CYCLE_LIMIT = 100


class GraphBuildError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    head: NodeId
    dep: NodeId
    rel: str


@dataclass(frozen=True)
class EnhancedGraph:
    nodes: Tuple[NodeId, ...]  # virtual root first, then document order
    edges: Tuple[Edge, ...]
    from_basic: bool = False   # True when the sentence had no DEPS at all

    def successors(self) -> Dict[NodeId, List[NodeId]]:
        out: Dict[NodeId, List[NodeId]] = {n: [] for n in self.nodes}
        for e in self.edges:
            if e.dep not in out[e.head]:
                out[e.head].append(e.dep)
        return out

    def relations(self, head: NodeId, dep: NodeId) -> Tuple[str, ...]:
        return tuple(e.rel for e in self.edges if e.head == head and e.dep == dep)

    def incoming(self, node: NodeId) -> List[Edge]:
        return [e for e in self.edges if e.dep == node]


def build_graph(sentence: Sentence) -> EnhancedGraph:
    """Graph over word and empty nodes plus root, with edges from DEPS.

    A sentence without any DEPS annotation falls back to the basic tree.
    """
    nodes = (ROOT,) + tuple(t.id for t in sentence.nodes)
    known = set(nodes)
    has_enhanced = any(t.deps for t in sentence.nodes)
    edges = []
    for tok in sentence.nodes:
        pairs = tok.deps if has_enhanced else (
            ((tok.head, tok.deprel),) if tok.head is not None else ())
        for head, rel in pairs:
            if head not in known:
                raise GraphBuildError(f"node {tok.id}: head {head} does not exist")
            edges.append(Edge(head, tok.id, rel))
    return EnhancedGraph(nodes, tuple(edges), from_basic=not has_enhanced)


# --------------------------------------------------------------------- cycles

@dataclass(frozen=True)
class Cycle:
    nodes: Tuple[NodeId, ...]              # starts at its smallest node
    relations: Tuple[Tuple[str, ...], ...]  # relations on each step, closing step last

    @property
    def contains_ref_edge(self) -> bool:
        return any(r == "ref" or r.startswith("acl") for step in self.relations for r in step)


class Cycles(list):
    """List of cycles; ``truncated`` is set when enumeration hit the limit."""

    truncated = False


class _LimitReached(Exception):
    pass


def _reach(start, adj, allowed) -> Set:
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for w in adj.get(v, ()):
            if w in allowed and w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def _elementary_cycles(adj: Dict, order: List, limit: int) -> Tuple[List[List], bool]:
    """Johnson's algorithm: each elementary cycle once, rooted at its least node."""
    found: List[List] = []
    rev: Dict = defaultdict(list)
    for v, ws in adj.items():
        for w in ws:
            rev[w].append(v)

    try:
        for i, s in enumerate(order):
            allowed = set(order[i:])
            component = _reach(s, adj, allowed) & _reach(s, rev, allowed)
            sub = {v: [w for w in adj.get(v, ()) if w in component] for v in component}
            if not sub[s]:
                continue
            blocked: Set = set()
            blocked_by: Dict = defaultdict(set)
            stack: List = []

            def unblock(v):
                todo = [v]
                while todo:
                    u = todo.pop()
                    if u in blocked:
                        blocked.discard(u)
                        todo.extend(blocked_by.pop(u, ()))

            def circuit(v) -> bool:
                closed = False
                stack.append(v)
                blocked.add(v)
                for w in sub[v]:
                    if w == s:
                        found.append(list(stack))
                        if len(found) > limit:
                            raise _LimitReached
                        closed = True
                    elif w not in blocked and circuit(w):
                        closed = True
                if closed:
                    unblock(v)
                else:
                    for w in sub[v]:
                        blocked_by[w].add(v)
                stack.pop()
                return closed

            circuit(s)
    except _LimitReached:
        return found[:limit], True
    return found, False


def detect_cycles(graph: EnhancedGraph, limit: int = CYCLE_LIMIT) -> Cycles:
    """Every elementary cycle of ``graph``, up to ``limit`` of them.

    Each cycle is flagged by :attr:`Cycle.contains_ref_edge` when one of its
    relations is ``ref`` or an ``acl`` subtype, i.e. the cycle runs through a
    relative clause.
    """
    adj = graph.successors()
    order = sorted(graph.nodes)
    raw, truncated = _elementary_cycles(adj, order, limit)
    result = Cycles()
    result.truncated = truncated
    for path in raw:
        steps = tuple(graph.relations(u, path[(k + 1) % len(path)])
                      for k, u in enumerate(path))
        result.append(Cycle(tuple(path), steps))
    return result


# ----------------------------------------------------------------- validation

def _basic_cycles(heads: Dict[NodeId, NodeId]) -> List[List[NodeId]]:
    """Cycles in a functional head map (each node has at most one head)."""
    state: Dict[NodeId, int] = {}
    cycles = []
    for start in sorted(heads):
        path = []
        v = start
        while v in heads and v not in state:
            state[v] = 1
            path.append(v)
            v = heads[v]
        if v in state and state[v] == 1 and v in path:
            cycles.append(path[path.index(v):])
        for u in path:
            state[u] = 2
    return cycles


def _has_edge(deps, head: NodeId, deprel: str) -> bool:
    for h, rel in deps:
        if h == head and (rel == deprel or rel.startswith(deprel + ":")):
            return True
    return False


def validate_sentence(sentence: Sentence, index: int = 1) -> ValidationReport:
    """Check the basic tree and the enhanced graph of one sentence.

    Omitted basic edges are warnings: enhanced graphs may legitimately drop
    them.  Cycles through ``ref``/``acl`` edges are reported as info, other
    cycles as warnings.
    """
    sid = sentence.sent_id
    findings: List[Finding] = []

    def add(severity, code, node, message):
        findings.append(Finding(severity, code, index, node, message, sid))

    words = sentence.words
    empties = [t for t in sentence.tokens if t.is_empty]
    empty_ids = {t.id for t in empties}

    # (a) basic tree over word nodes
    heads: Dict[NodeId, NodeId] = {}
    roots = []
    for tok in words:
        if tok.head is None:
            add(ERROR, "MISSING_HEAD", tok.id, "word has no basic HEAD")
        elif tok.head in empty_ids:
            add(ERROR, "EMPTY_IN_BASIC", tok.id, f"basic HEAD is empty node {tok.head}")
        elif tok.head.is_root:
            roots.append(tok.id)
        else:
            heads[tok.id] = tok.head
    if words and not roots:
        add(ERROR, "NO_ROOT", None, "no word is attached to the root")
    for extra in roots[1:]:
        add(ERROR, "MULTIPLE_ROOTS", extra, f"second basic root (first is {roots[0]})")
    for cyc in _basic_cycles(heads):
        add(ERROR, "BASIC_CYCLE", min(cyc), "basic tree cycle " + " -> ".join(map(str, cyc)))

    # (c) empty nodes live in the enhanced graph only
    for tok in empties:
        if tok.head is not None or tok.deprel != "_":
            add(ERROR, "EMPTY_IN_BASIC", tok.id, "empty node has basic HEAD/DEPREL")

    graph = build_graph(sentence)
    if graph.from_basic:
        return ValidationReport(findings)

    # (b) basic edges should reappear in DEPS
    for tok in words:
        if tok.head is not None and tok.head not in empty_ids \
                and not _has_edge(tok.deps, tok.head, tok.deprel):
            add(WARNING, "BASIC_EDGE_OMITTED", tok.id,
                f"basic edge {tok.head} -{tok.deprel}-> {tok.id} not in DEPS")

    for tok in sentence.nodes:
        if not tok.deps:
            add(ERROR, "MISSING_DEPS", tok.id, "node has no incoming enhanced edge")

    # (d) connectivity of the enhanced graph
    adj = graph.successors()
    undirected: Dict[NodeId, List[NodeId]] = defaultdict(list)
    for e in graph.edges:
        undirected[e.head].append(e.dep)
        undirected[e.dep].append(e.head)
    weak = _reach(ROOT, undirected, set(graph.nodes))
    reachable = _reach(ROOT, adj, set(graph.nodes))
    for tok in words:
        if tok.id not in weak:
            add(ERROR, "ENHANCED_DISCONNECTED", tok.id, "not connected to the root in DEPS")
    for tok in empties:
        if tok.id not in reachable:
            add(WARNING, "EMPTY_UNREACHABLE", tok.id, "empty node not reachable from the root")

    cycles = detect_cycles(graph)
    for cyc in cycles:
        path = " -> ".join(map(str, cyc.nodes + cyc.nodes[:1]))
        if cyc.contains_ref_edge:
            add(INFO, "REF_CYCLE", cyc.nodes[0], f"relative-clause cycle {path}")
        else:
            add(WARNING, "UNEXPECTED_CYCLE", cyc.nodes[0], f"cycle without ref/acl edge {path}")
    if cycles.truncated:
        add(INFO, "CYCLE_LIMIT", None, f"stopped after {CYCLE_LIMIT} cycles")
    return ValidationReport(findings)


def validate_document(doc: Iterable[Sentence], jobs: int = 1) -> ValidationReport:
    """Validate every sentence; findings come back in sentence order."""
    sentences = list(doc)
    indices = range(1, len(sentences) + 1)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(jobs) as pool:
            reports = list(pool.map(validate_sentence, sentences, indices))
    else:
        reports = [validate_sentence(s, i) for s, i in zip(sentences, indices)]
    merged = ValidationReport()
    for r in reports:
        merged = merged.merge(r)
    return merged
