"""Renderings of terms: DOT graphs of nested tapes and indented text trees.

In the DOT output every tape in a direct sum gets its own cluster, every
embedded circuit is a cluster of its own, and generators are boxes.  Edges
are the wires, labelled by the monomial (between tapes) or the sort (inside
circuits) they carry.  Only the DOT source is produced; no layout binary is
needed.
"""

from __future__ import annotations

from itertools import count

from graphviz import Digraph

from kctapes.exceptions import TypeMismatch
from kctapes.terms import (
    Bang,
    CId,
    CIdUnit,
    Cobang,
    Cocopier,
    Codiag,
    Codischarger,
    Copier,
    CSeq,
    CSwap,
    CTensor,
    Diag,
    Discharger,
    Embed,
    Gen,
    Tape,
    Term,
    Trace,
    TId,
    TIdZero,
    TSeq,
    TSum,
    TSwap,
)

# Input and output ports, one node id per summand (tapes) or per wire (circuits).
Ports = tuple[list[str], list[str]]

_SYMBOLS = {
    Discharger: "!",
    Copier: "◁",
    Codischarger: "¡",
    Cocopier: "▷",
    Bang: "!",
    Diag: "◁",
    Cobang: "¡",
    Codiag: "▷",
}


class _DotBuilder:
    def __init__(self, name: str):
        self.root = Digraph(name=name)
        self.root.attr(rankdir="LR")
        self.root.attr("node", fontname="Helvetica", fontsize="10")
        self.root.attr("edge", fontname="Helvetica", fontsize="9")
        self._ids = count()

    def _fresh(self, prefix: str = "n") -> str:
        return f"{prefix}{next(self._ids)}"

    def point(self, graph: Digraph) -> str:
        node = self._fresh()
        graph.node(node, label="", shape="point")
        return node

    def box(self, graph: Digraph, label: str, shape: str = "box") -> str:
        node = self._fresh()
        graph.node(node, label=label, shape=shape)
        return node

    def wire(self, source: str, target: str, label: str, **attrs: str) -> None:
        self.root.edge(source, target, label=label, **attrs)

    def cluster(self, label: str, style: str) -> Digraph:
        sub = Digraph(name=self._fresh("cluster_"))
        sub.attr(label=label, style=style)
        return sub

    # Circuits: one port per wire.

    def circuit(self, graph: Digraph, term: Term) -> Ports:
        match term:
            case CId():
                node = self.point(graph)
                return [node], [node]
            case CIdUnit():
                return [], []
            case Gen(name=name, arity=arity, coarity=coarity):
                node = self.box(graph, name)
                return [node] * len(arity), [node] * len(coarity)
            case CSwap():
                first, second = self.point(graph), self.point(graph)
                return [first, second], [second, first]
            case CSeq(first=first, second=second):
                ins, middle = self.circuit(graph, first)
                after, outs = self.circuit(graph, second)
                for source, target, sort in zip(middle, after, first.cod, strict=True):
                    self.wire(source, target, sort)
                return ins, outs
            case CTensor(left=left, right=right):
                left_ins, left_outs = self.circuit(graph, left)
                right_ins, right_outs = self.circuit(graph, right)
                return left_ins + right_ins, left_outs + right_outs
            case Discharger() | Copier() | Codischarger() | Cocopier():
                node = self.box(graph, _SYMBOLS[type(term)], shape="circle")
                return [node] * len(term.dom), [node] * len(term.cod)
        raise TypeMismatch(f"cannot render circuit {type(term).__name__}")

    # Tapes: one port per summand.

    def tape(self, graph: Digraph, term: Term) -> Ports:
        match term:
            case TId():
                node = self.point(graph)
                return [node], [node]
            case TIdZero():
                return [], []
            case Embed(circuit=circuit):
                sub = self.cluster(str(circuit.dom), "rounded")
                entry, exit_ = self.point(sub), self.point(sub)
                ins, outs = self.circuit(sub, circuit)
                for target, sort in zip(ins, circuit.dom, strict=True):
                    self.wire(entry, target, sort)
                for source, sort in zip(outs, circuit.cod, strict=True):
                    self.wire(source, exit_, sort)
                if not ins and not outs:
                    self.wire(entry, exit_, "", style="dotted")
                graph.subgraph(sub)
                return [entry], [exit_]
            case TSwap():
                first, second = self.point(graph), self.point(graph)
                return [first, second], [second, first]
            case TSeq(first=first, second=second):
                ins, middle = self.tape(graph, first)
                after, outs = self.tape(graph, second)
                for source, target, mono in zip(middle, after, first.cod, strict=True):
                    self.wire(source, target, str(mono))
                return ins, outs
            case TSum(left=left, right=right):
                ports: Ports = ([], [])
                for branch in (left, right):
                    sub = self.cluster("", "dashed")
                    ins, outs = self.tape(sub, branch)
                    graph.subgraph(sub)
                    ports[0].extend(ins)
                    ports[1].extend(outs)
                return ports
            case Bang() | Diag() | Cobang() | Codiag():
                node = self.box(graph, _SYMBOLS[type(term)], shape="diamond")
                return [node] * len(term.dom), [node] * len(term.cod)
            case Trace(mono=mono, body=body):
                sub = self.cluster(f"tr {mono}", "bold")
                ins, outs = self.tape(sub, body)
                graph.subgraph(sub)
                self.wire(outs[0], ins[0], str(mono), style="dashed", constraint="false")
                return ins[1:], outs[1:]
        raise TypeMismatch(f"cannot render tape {type(term).__name__}")


def render_dot(term: Term, name: str = "tape") -> str:
    """Return the DOT source of a tape or circuit."""
    builder = _DotBuilder(name)
    render = builder.tape if isinstance(term, Tape) else builder.circuit
    ins, outs = render(builder.root, term)
    for index, port in enumerate(ins):
        source = builder.box(builder.root, f"in {index}", shape="plaintext")
        builder.wire(source, port, "")
    for index, port in enumerate(outs):
        target = builder.box(builder.root, f"out {index}", shape="plaintext")
        builder.wire(port, target, "")
    return builder.root.source


def _label(term: Term) -> str:
    match term:
        case CId(sort=sort):
            return f"id {sort}"
        case CIdUnit():
            return "id 1"
        case Gen(name=name):
            return f"gen {name}"
        case CSwap(left=left, right=right):
            return f"swap {left} {right}"
        case CSeq() | TSeq():
            return "seq"
        case CTensor():
            return "tensor"
        case TId(mono=mono):
            return f"id {mono}"
        case TIdZero():
            return "id 0"
        case Embed():
            return "tape"
        case TSwap(left=left, right=right):
            return f"swap {left} ⊕ {right}"
        case TSum():
            return "sum"
        case Trace(mono=mono):
            return f"trace {mono}"
    return _SYMBOLS[type(term)]


def _children(term: Term) -> tuple[Term, ...]:
    match term:
        case CSeq(first=first, second=second) | TSeq(first=first, second=second):
            return first, second
        case CTensor(left=left, right=right) | TSum(left=left, right=right):
            return left, right
        case Embed(circuit=circuit):
            return (circuit,)
        case Trace(body=body):
            return (body,)
    return ()


def render_text(term: Term, indent: str = "  ") -> str:
    """Return an indented tree, one node per line with its type."""
    lines: list[str] = []

    def visit(node: Term, depth: int) -> None:
        lines.append(f"{indent * depth}{_label(node)} : {node.dom} → {node.cod}")
        for child in _children(node):
            visit(child, depth + 1)

    visit(term, 0)
    return "\n".join(lines)
