"""Netlist ingestion: parse circuit benchmark files and build the causal DAG.

Two on-disk formats are supported. The `.bench` format is line oriented:

    # comment
    INPUT(1)
    OUTPUT(22)
    10 = NAND(1, 3)

The older `.isc` format lists one numbered entry per line; a gate entry
carries `address name type fanout-count fanin-count` followed by one or more
continuation lines holding the fan-in addresses, and every signal feeding
more than one gate is split into numbered fanout-branch entries
(`address name from stem`). Branch entries are collapsed back into their stem
signal so that one variable represents one logical signal; primary outputs in
`.isc` are the entries nobody consumes (fanout count 0).

Gate function tags are kept but nothing downstream reads them; every analysis
in this package is purely structural.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field


class NetlistError(ValueError):
    """Base class for everything raised while ingesting a netlist."""


class ParseError(NetlistError):
    """Syntactically malformed input; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class SemanticError(NetlistError):
    """Well-formed input that does not describe a consistent circuit."""


class StructureError(NetlistError):
    """A structural impossibility, e.g. a combinational cycle."""


@dataclass(frozen=True)
class Gate:
    output: str
    func: str
    fanins: tuple[str, ...]


@dataclass(frozen=True)
class Circuit:
    """A parsed netlist: signal names in file order, fanout branches collapsed."""

    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    gates: tuple[Gate, ...]

    @property
    def signals(self) -> tuple[str, ...]:
        """All variables (inputs then gate outputs) in file order."""
        return self.inputs + tuple(g.output for g in self.gates)

    def validate(self) -> None:
        declared = set(self.inputs)
        for g in self.gates:
            if g.output in declared:
                raise SemanticError(f"signal {g.output!r} defined twice")
            declared.add(g.output)
        known = set(self.inputs)
        for g in self.gates:
            known.add(g.output)
        for g in self.gates:
            for f in g.fanins:
                if f not in known:
                    raise SemanticError(
                        f"gate {g.output!r} references undefined signal {f!r}")
        for o in self.outputs:
            if o not in known:
                raise SemanticError(f"output {o!r} is not a defined signal")


@dataclass(frozen=True)
class Dag:
    """Causal DAG of a circuit: an edge per (fan-in, gate-output) pair.

    `families` keeps each gate's fan-in list exactly as parsed (duplicates
    and all); `edges` is the deduplicated pair set used for every structural
    computation.
    """

    name: str
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    families: tuple[tuple[str, tuple[str, ...]], ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.nodes)

    def parents(self) -> dict[str, tuple[str, ...]]:
        par: dict[str, list[str]] = {v: [] for v in self.nodes}
        for p, c in self.edges:
            par[c].append(p)
        return {v: tuple(ps) for v, ps in par.items()}

    def topological_order(self) -> tuple[str, ...]:
        """Kahn's algorithm; raises StructureError on a cycle."""
        remaining = {v: set() for v in self.nodes}
        children: dict[str, list[str]] = {v: [] for v in self.nodes}
        for p, c in self.edges:
            remaining[c].add(p)
            children[p].append(c)
        ready = [v for v in self.nodes if not remaining[v]]
        order: list[str] = []
        while ready:
            v = ready.pop()
            order.append(v)
            for c in children[v]:
                remaining[c].discard(v)
                if not remaining[c]:
                    ready.append(c)
        if len(order) != len(self.nodes):
            raise StructureError(f"{self.name}: combinational cycle detected")
        return tuple(order)

    def to_json(self) -> str:
        payload = {
            "name": self.name,
            "nodes": sorted(self.nodes),
            "edges": sorted([p, c] for p, c in self.edges),
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Dag":
        payload = json.loads(text)
        return cls(name=payload["name"],
                   nodes=tuple(payload["nodes"]),
                   edges=tuple((p, c) for p, c in payload["edges"]))


def parse_netlist(text: str, format: str = "bench", name: str = "netlist") -> Circuit:
    """Parse netlist source in the given format ("bench" or "isc")."""
    if format == "bench":
        circuit = _parse_bench(text, name)
    elif format == "isc":
        circuit = _parse_isc(text, name)
    else:
        raise ValueError(f"unknown netlist format {format!r}")
    circuit.validate()
    return circuit


_BENCH_INPUT = re.compile(r"^INPUT\s*\(\s*([^\s()]+)\s*\)$")
_BENCH_OUTPUT = re.compile(r"^OUTPUT\s*\(\s*([^\s()]+)\s*\)$")
_BENCH_GATE = re.compile(r"^([^\s=]+)\s*=\s*([A-Za-z_][\w]*)\s*\(\s*([^()]*)\s*\)$")


def _parse_bench(text: str, name: str) -> Circuit:
    inputs: list[str] = []
    outputs: list[str] = []
    gates: list[Gate] = []
    declared: dict[str, int | None] = {"inputs": None, "outputs": None,
                                       "inverters": 0, "gates": None}
    any_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            for key, pat in (("inputs", r"(\d+)\s+inputs?\b"),
                             ("outputs", r"(\d+)\s+outputs?\b"),
                             ("inverters", r"(\d+)\s+inverters?\b"),
                             ("gates", r"(\d+)\s+gates?\b")):
                m = re.search(pat, line)
                if m:
                    declared[key] = int(m.group(1))
            continue
        if not line:
            continue
        any_content = True
        m = _BENCH_INPUT.match(line)
        if m:
            inputs.append(m.group(1))
            continue
        m = _BENCH_OUTPUT.match(line)
        if m:
            outputs.append(m.group(1))
            continue
        m = _BENCH_GATE.match(line)
        if m:
            out, func, arglist = m.groups()
            fanins = tuple(a.strip() for a in arglist.split(",") if a.strip())
            if not fanins:
                raise ParseError(f"gate {out!r} has no fan-ins", lineno)
            gates.append(Gate(out, func.upper(), fanins))
            continue
        raise ParseError(f"unrecognized statement {line!r}", lineno)
    if not any_content:
        raise ParseError("empty netlist")
    _check_declared(name, declared, len(inputs), len(outputs), len(gates))
    return Circuit(name, tuple(inputs), tuple(outputs), tuple(gates))


def _check_declared(name, declared, n_in, n_out, n_gates) -> None:
    if declared["inputs"] is not None and declared["inputs"] != n_in:
        raise SemanticError(f"{name}: header declares {declared['inputs']} "
                            f"inputs, file defines {n_in}")
    if declared["outputs"] is not None and declared["outputs"] != n_out:
        raise SemanticError(f"{name}: header declares {declared['outputs']} "
                            f"outputs, file defines {n_out}")
    if declared["gates"] is not None:
        total = declared["gates"] + (declared["inverters"] or 0)
        if total != n_gates:
            raise SemanticError(f"{name}: header declares {total} gate lines, "
                                f"file defines {n_gates}")


def _parse_isc(text: str, name: str) -> Circuit:
    # First pass: split entries. An entry starts with "addr name ..."; gate
    # entries expect their fan-in addresses on following continuation lines.
    lines = text.splitlines()
    entries: list[dict] = []   # {"addr", "name", "kind", "fanout", "fanin_addrs"|"stem"}
    addr2entry: dict[int, dict] = {}
    i = 0
    pending: dict | None = None  # gate entry still owed fan-in addresses
    owed = 0
    while i < len(lines):
        lineno = i + 1
        line = lines[i].strip()
        i += 1
        if not line or line.startswith("*"):
            continue
        tokens = line.split()
        if pending is not None:
            # continuation line: fan-in addresses only
            for tok in tokens:
                if not tok.lstrip("-").isdigit():
                    raise ParseError(
                        f"expected fan-in address, got {tok!r}", lineno)
                pending["fanin_addrs"].append(int(tok))
                owed -= 1
            if owed < 0:
                raise ParseError(
                    f"too many fan-in addresses for {pending['name']!r}", lineno)
            if owed == 0:
                pending = None
            continue
        if len(tokens) >= 4 and tokens[2] == "from":
            # fanout branch: addr name from stem [faults...]
            try:
                addr = int(tokens[0])
            except ValueError:
                raise ParseError(f"bad address {tokens[0]!r}", lineno) from None
            entry = {"addr": addr, "name": tokens[1], "kind": "branch",
                     "stem": tokens[3]}
            entries.append(entry)
            addr2entry[addr] = entry
            continue
        if len(tokens) >= 5:
            try:
                addr = int(tokens[0])
                fanout = int(tokens[3])
                fanin = int(tokens[4])
            except ValueError:
                raise ParseError(f"malformed entry {line!r}", lineno) from None
            entry = {"addr": addr, "name": tokens[1], "kind": tokens[2],
                     "fanout": fanout, "fanin_addrs": []}
            entries.append(entry)
            addr2entry[addr] = entry
            if entry["kind"] != "inpt" and fanin > 0:
                pending = entry
                owed = fanin
            continue
        raise ParseError(f"unrecognized entry {line!r}", lineno)
    if pending is not None:
        raise ParseError(f"missing fan-in addresses for {pending['name']!r}")
    if not entries:
        raise ParseError("empty netlist")

    # Resolve every entry to its logical signal: branches collapse to stems.
    name2entry = {e["name"]: e for e in entries}

    def signal_of(entry: dict) -> str:
        seen = set()
        while entry["kind"] == "branch":
            if entry["name"] in seen:
                raise SemanticError(f"branch cycle at {entry['name']!r}")
            seen.add(entry["name"])
            stem = entry["stem"]
            nxt = name2entry.get(stem)
            if nxt is None:
                raise SemanticError(f"branch {entry['name']!r} references "
                                    f"undefined stem {stem!r}")
            entry = nxt
        return entry["name"]

    inputs: list[str] = []
    gates: list[Gate] = []
    for e in entries:
        if e["kind"] == "branch":
            continue
        if e["kind"] == "inpt":
            inputs.append(e["name"])
            continue
        fanins = []
        for a in e["fanin_addrs"]:
            src = addr2entry.get(a)
            if src is None:
                raise SemanticError(f"gate {e['name']!r} references undefined "
                                    f"signal address {a}")
            fanins.append(signal_of(src))
        gates.append(Gate(e["name"], e["kind"].upper(), tuple(fanins)))

    # Primary outputs: entries that feed nothing (fanout count 0).
    outputs = [e["name"] for e in entries
               if e["kind"] not in ("branch",) and e.get("fanout", 1) == 0]
    return Circuit(name, tuple(inputs), tuple(outputs), tuple(gates))


def build_dag(circuit: Circuit) -> Dag:
    """One node per primary input and gate output; one edge per distinct
    (fan-in, output) pair; raises StructureError if the result has a cycle."""
    nodes = circuit.signals
    seen = set()
    edges: list[tuple[str, str]] = []
    families = []
    for g in circuit.gates:
        families.append((g.output, g.fanins))
        for f in g.fanins:
            pair = (f, g.output)
            if pair not in seen:
                seen.add(pair)
                edges.append(pair)
    dag = Dag(circuit.name, nodes, tuple(edges), tuple(families))
    dag.topological_order()   # raises on a cycle
    return dag


def guess_format(path_or_text: str) -> str:
    """Guess "bench" or "isc" from a filename suffix, else from content.

    Content sniffing looks at the first non-comment line only; `.isc` header
    banners are full of `=` signs, so the whole-text check would misfire.
    """
    lowered = path_or_text.lower()
    if lowered.endswith(".bench"):
        return "bench"
    if lowered.endswith(".isc"):
        return "isc"
    for raw in path_or_text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("#", "*")):
            continue
        if "=" in line or line.startswith(("INPUT", "OUTPUT")):
            return "bench"
        return "isc"
    return "bench"
