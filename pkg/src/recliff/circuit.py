"""Layered circuit representation and the text dialect parser/emitter.

The dialect is a strict subset of the stim circuit text format: one
instruction per line, ``TICK`` separates layers, ``QUBIT_COORDS`` lines and
``#`` comments are accepted and ignored, and two-qubit instructions may list
several pairs on one line (``CX 0 1 2 3``).  ``ECR`` is a dialect extension.
Measurements, resets, detectors and noise are rejected: circuits here are
unitary.  Qubit count is 1 + the largest index used by an instruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import tableau as tb
from .gates import GateDef, builtin, builtin_names


class ParseError(ValueError):
    """Input text is not in the circuit dialect."""


#: Names accepted by the parser (all stim names, except the ECR extension).
DIALECT_GATES = (
    "I", "X", "Y", "Z", "H", "S", "S_DAG", "SQRT_X", "SQRT_X_DAG",
    "H_XY", "H_YZ", "C_XYZ", "C_ZYX",
    "CX", "CZ", "SWAP", "ISWAP", "SQRT_XX", "CXSWAP", "CZSWAP", "ECR",
)

_ALIASES = {"CNOT": "CX"}


@dataclass(frozen=True)
class Instruction:
    """One gate application; qubit order encodes roles for asymmetric gates."""

    gate: GateDef
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.qubits) != self.gate.arity:
            raise ValueError(
                f"{self.gate.name} expects {self.gate.arity} qubits, got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubit in {self.gate.name} {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.gate.name} {self.qubits}")

    def __str__(self) -> str:
        return " ".join([self.gate.name, *map(str, self.qubits)])


@dataclass(frozen=True)
class Circuit:
    """A qubit count plus layers of instructions on disjoint qubits.

    Layers are normalised at construction: instructions sort by qubits and
    empty layers are dropped, so structural equality is well defined.
    """

    n: int
    layers: tuple[tuple[Instruction, ...], ...]

    def __post_init__(self) -> None:
        norm = []
        for layer in self.layers:
            if not layer:
                continue
            used: set[int] = set()
            for inst in layer:
                for q in inst.qubits:
                    if q >= self.n:
                        raise ValueError(f"qubit {q} out of range for n={self.n}")
                    if q in used:
                        raise ValueError(f"qubit {q} used twice in one layer")
                    used.add(q)
            norm.append(tuple(sorted(layer, key=lambda i: i.qubits)))
        object.__setattr__(self, "layers", tuple(norm))

    @staticmethod
    def build(layers: Iterable[Iterable[Instruction]], n: int | None = None) -> "Circuit":
        mats = tuple(tuple(layer) for layer in layers)
        if n is None:
            n = 1 + max(
                (q for layer in mats for inst in layer for q in inst.qubits),
                default=-1,
            )
        return Circuit(n, mats)

    def instructions(self) -> Iterator[Instruction]:
        for layer in self.layers:
            yield from layer

    def wire_gates(self, qubit: int) -> list[Instruction]:
        """The timeline of instructions touching one qubit."""
        return [inst for inst in self.instructions() if qubit in inst.qubits]

    def is_empty(self) -> bool:
        return not self.layers


def parse(text: str) -> Circuit:
    """Parse dialect text into a circuit."""
    layers: list[list[Instruction]] = [[]]
    used: set[int] = set()
    max_q = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        name = tokens[0]
        if name == "TICK":
            if len(tokens) > 1:
                raise ParseError(f"line {lineno}: TICK takes no arguments")
            layers.append([])
            used = set()
            continue
        if name.split("(", 1)[0] == "QUBIT_COORDS":
            continue
        if "(" in name:
            raise ParseError(f"line {lineno}: parametric gate {name!r} not supported")
        name = _ALIASES.get(name, name)
        if name not in DIALECT_GATES:
            raise ParseError(f"line {lineno}: unknown or unsupported gate {name!r}")
        gate = builtin(name)
        try:
            targets = [int(tok) for tok in tokens[1:]]
        except ValueError:
            raise ParseError(f"line {lineno}: malformed qubit target in {line!r}") from None
        if any(q < 0 for q in targets):
            raise ParseError(f"line {lineno}: negative qubit index")
        if not targets:
            raise ParseError(f"line {lineno}: {name} needs at least one target")
        if gate.arity == 1:
            groups = [(q,) for q in targets]
        else:
            if len(targets) % 2 != 0:
                raise ParseError(f"line {lineno}: odd number of targets for {name}")
            groups = [tuple(targets[i : i + 2]) for i in range(0, len(targets), 2)]
        for qs in groups:
            if len(set(qs)) != len(qs):
                raise ParseError(f"line {lineno}: repeated qubit within a pair")
            for q in qs:
                if q in used:
                    raise ParseError(f"line {lineno}: qubit {q} reused within a layer")
                used.add(q)
                max_q = max(max_q, q)
            layers[-1].append(Instruction(gate, qs))
    return Circuit.build(layers, n=max_q + 1)


def emit(c: Circuit) -> str:
    """Emit dialect text; round-trips through :func:`parse` layer-exactly."""
    if c.is_empty():
        return ""
    blocks = []
    for layer in c.layers:
        blocks.append("\n".join(str(inst) for inst in layer))
    return "\nTICK\n".join(blocks) + "\n"


def gate_counts(c: Circuit) -> dict[str, int]:
    """Exact tally of instructions by gate name."""
    counts: dict[str, int] = {}
    for inst in c.instructions():
        counts[inst.gate.name] = counts.get(inst.gate.name, 0) + 1
    return counts


def depth(c: Circuit) -> int:
    return len(c.layers)


def two_qubit_count(c: Circuit) -> int:
    return sum(1 for inst in c.instructions() if inst.gate.arity == 2)


def expand_ecr(c: Circuit) -> Circuit:
    """Rewrite each ECR as its S/sqrt(X), CX, X circuit identity.

    A layer containing ECRs becomes three layers; any other instructions in
    that layer ride in the middle layer, so disjointness is preserved.
    """
    s, sx, cx, x = builtin("S"), builtin("SQRT_X"), builtin("CX"), builtin("X")
    out: list[tuple[Instruction, ...]] = []
    for layer in c.layers:
        ecrs = [inst for inst in layer if inst.gate.name == "ECR"]
        if not ecrs:
            out.append(layer)
            continue
        rest = [inst for inst in layer if inst.gate.name != "ECR"]
        pre = [Instruction(s, (i.qubits[0],)) for i in ecrs]
        pre += [Instruction(sx, (i.qubits[1],)) for i in ecrs]
        mid = [Instruction(cx, i.qubits) for i in ecrs] + rest
        post = [Instruction(x, (i.qubits[0],)) for i in ecrs]
        out.extend([tuple(pre), tuple(mid), tuple(post)])
    return Circuit(c.n, tuple(out))


def _is_single_qubit_layer(layer: tuple[Instruction, ...]) -> bool:
    return all(inst.gate.arity == 1 for inst in layer)


def _match_builtin_1q(semantics) -> GateDef | None:
    for name in builtin_names():
        g = builtin(name)
        if g.arity == 1 and g.semantics == semantics:
            return g
    return None


def insert_single_qubit(c: Circuit, position: tuple[int, int], g: GateDef) -> Circuit:
    """Insert a single-qubit gate at a layer boundary on one wire.

    ``position`` is ``(boundary, qubit)`` with ``0 <= boundary <= depth``;
    the gate lands between layers ``boundary - 1`` and ``boundary``.  It merges
    into an adjacent single-qubit layer when possible (fusing with an existing
    gate on that wire if the exact product is again a named gate); entangler
    layers are never modified.  Inserting I is a no-op.
    """
    if g.arity != 1:
        raise ValueError("insert_single_qubit expects a single-qubit gate")
    b, q = position
    if not 0 <= b <= depth(c):
        raise ValueError(f"layer boundary {b} out of range")
    n = max(c.n, q + 1)
    if g.name == "I":
        return Circuit(n, c.layers)
    layers = [list(layer) for layer in c.layers]

    def try_merge(idx: int, gate_first: bool) -> Circuit | None:
        layer = layers[idx]
        if not _is_single_qubit_layer(tuple(layer)):
            return None
        on_wire = [i for i, inst in enumerate(layer) if inst.qubits == (q,)]
        if not on_wire:
            layer.append(Instruction(g, (q,)))
            return Circuit(n, tuple(tuple(l) for l in layers))
        (i,) = on_wire
        existing = layer[i].gate
        pair = (g, existing) if gate_first else (existing, g)
        t = tb.identity(1)
        t = tb.append_gate(t, pair[0], (0,))
        t = tb.append_gate(t, pair[1], (0,))
        fused = _match_builtin_1q(t)
        if fused is None:
            return None
        if fused.name == "I":
            del layer[i]
        else:
            layer[i] = Instruction(fused, (q,))
        return Circuit(n, tuple(tuple(l) for l in layers))

    if b > 0:
        merged = try_merge(b - 1, gate_first=False)
        if merged is not None:
            return merged
    if b < len(layers):
        merged = try_merge(b, gate_first=True)
        if merged is not None:
            return merged
    layers.insert(b, [Instruction(g, (q,))])
    return Circuit(n, tuple(tuple(l) for l in layers))
