"""JSON code-spec documents.

A code spec is a JSON object::

    {
      "p": 2,
      "graph": {"n": 3, "edges": [[0, 1, 1], [1, 2, 1], [0, 2, 1]]},
      "classical": {"type": "linear", "generators": [[1, 1, 1]]},
      "block_size": 1,
      "roles": ["input", "output", ...],
      "chain": [[[...], ...], [[...]]],
      "labels": ["q1", ...]
    }

`graph` may give `adjacency` (a full matrix) instead of `edges`.  When `roles`
is present the graph includes input vertices (the graph G^C); the code graph
is the subgraph on the outputs, and a missing `classical` entry is read off the
input-to-output edge labels.  `chain` lists the levels of a partition chain,
top level first.  `classical` may also be {"type": "words", "words": [...]}.

A GCQC spec is {"inner": <code spec with "chain">, "outers": [<code spec>, ...]}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from graphconcat.algebra import FpMatrix
from graphconcat.codes import (
    INPUT,
    OUTPUT,
    ClassicalCode,
    CodeError,
    CwsCode,
    EncodingGraph,
)
from graphconcat.concat import PartitionChain
from graphconcat.graph import LabeledGraph


class SpecError(ValueError):
    """Raised for documents that do not follow the schema."""


@dataclass(frozen=True)
class CodeSpec:
    """A parsed code spec: the code plus optional extras carried by the document."""

    code: CwsCode
    with_inputs: EncodingGraph | None = None
    chain: PartitionChain | None = None
    labels: tuple[str, ...] | None = None


def _require(doc: dict[str, Any], key: str) -> Any:
    if key not in doc:
        raise SpecError(f"missing field {key!r}")
    return doc[key]


def graph_from_doc(doc: dict[str, Any], p: int) -> LabeledGraph:
    if "adjacency" in doc:
        a = np.asarray(doc["adjacency"], dtype=np.int64)
        if a.ndim != 2:
            raise SpecError("adjacency must be a matrix")
        return LabeledGraph(FpMatrix(a, p))
    n = int(_require(doc, "n"))
    edges = _require(doc, "edges")
    for e in edges:
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise SpecError(f"edge {e!r} must be [u, v] or [u, v, label]")
    return LabeledGraph.from_edges(n, [tuple(e) for e in edges], p)


def graph_to_doc(g: LabeledGraph) -> dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def classical_from_doc(doc: dict[str, Any], p: int, n: int) -> ClassicalCode:
    kind = _require(doc, "type")
    if kind == "linear":
        gens = np.asarray(_require(doc, "generators"), dtype=np.int64).reshape(-1, n)
        return ClassicalCode(p, n, generators=gens)
    if kind == "words":
        return ClassicalCode(p, n, words=[tuple(w) for w in _require(doc, "words")])
    raise SpecError(f"unknown classical type {kind!r}")


def classical_to_doc(c: ClassicalCode) -> dict[str, Any]:
    if c.generators is not None:
        return {"type": "linear", "generators": c.generators.tolist()}
    return {"type": "words", "words": c.words().tolist()}


def code_from_doc(doc: dict[str, Any]) -> CodeSpec:
    if not isinstance(doc, dict):
        raise SpecError("a code spec must be a JSON object")
    p = int(_require(doc, "p"))
    full = graph_from_doc(_require(doc, "graph"), p)
    with_inputs = None
    if "roles" in doc:
        roles = tuple(doc["roles"])
        if len(roles) != full.n:
            raise SpecError(f"{len(roles)} roles for {full.n} vertices")
        if any(r not in (INPUT, OUTPUT) for r in roles):
            raise SpecError("a code spec may only use input and output roles")
        with_inputs = EncodingGraph(full, roles, tuple(-1 if r == INPUT else 0 for r in roles))
        outs = with_inputs.outputs
        graph = full.induced(outs)
        if "classical" in doc:
            classical = classical_from_doc(doc["classical"], p, len(outs))
        else:
            gen = full.array[np.ix_(with_inputs.inputs, outs)]
            classical = ClassicalCode(p, len(outs), generators=gen)
    else:
        graph = full
        classical = classical_from_doc(_require(doc, "classical"), p, graph.n)
    code = CwsCode(graph, classical, int(doc.get("block_size", 1)))
    chain = None
    if "chain" in doc:
        chain = PartitionChain([np.asarray(lvl, dtype=np.int64).reshape(-1, graph.n) for lvl in doc["chain"]], p)
    labels = tuple(str(x) for x in doc["labels"]) if "labels" in doc else None
    return CodeSpec(code, with_inputs, chain, labels)


def code_to_doc(spec: CodeSpec | CwsCode) -> dict[str, Any]:
    if isinstance(spec, CwsCode):
        spec = CodeSpec(spec)
    code = spec.code
    doc: dict[str, Any] = {"p": code.p}
    if spec.with_inputs is not None:
        doc["graph"] = graph_to_doc(spec.with_inputs.graph)
        doc["roles"] = list(spec.with_inputs.roles)
    else:
        doc["graph"] = graph_to_doc(code.graph)
    doc["classical"] = classical_to_doc(code.classical)
    if code.block_size != 1:
        doc["block_size"] = code.block_size
    if spec.chain is not None:
        doc["chain"] = [lvl.tolist() for lvl in spec.chain.levels]
    if spec.labels is not None:
        doc["labels"] = list(spec.labels)
    return doc


def gcqc_from_doc(doc: dict[str, Any]) -> tuple[CodeSpec, list[CwsCode]]:
    inner = code_from_doc(_require(doc, "inner"))
    if inner.chain is None:
        raise SpecError("the inner code of a GCQC spec needs a chain")
    outers = [code_from_doc(o).code for o in _require(doc, "outers")]
    return inner, outers


def gcqc_to_doc(inner: CodeSpec, outers: list[CwsCode]) -> dict[str, Any]:
    return {"inner": code_to_doc(inner), "outers": [code_to_doc(o) for o in outers]}


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(doc: Any, path: str | Path | None) -> str:
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_code(path: str | Path) -> CodeSpec:
    return code_from_doc(read_json(path))


def same_spec(a: CodeSpec, b: CodeSpec) -> bool:
    """Structural equality used by round-trip checks."""
    chains = (a.chain is None) == (b.chain is None) and (
        a.chain is None or all(x == y for x, y in zip(a.chain.levels, b.chain.levels))  # type: ignore[union-attr]
    )
    inputs = (a.with_inputs is None) == (b.with_inputs is None) and (
        a.with_inputs is None
        or (a.with_inputs.graph == b.with_inputs.graph and a.with_inputs.roles == b.with_inputs.roles)  # type: ignore[union-attr]
    )
    return (
        a.code.graph == b.code.graph
        and a.code.classical == b.code.classical
        and a.code.block_size == b.code.block_size
        and chains
        and inputs
        and a.labels == b.labels
    )


__all__ = [
    "CodeError",
    "CodeSpec",
    "SpecError",
    "code_from_doc",
    "code_to_doc",
    "gcqc_from_doc",
    "gcqc_to_doc",
    "load_code",
    "read_json",
    "same_spec",
    "write_json",
]
