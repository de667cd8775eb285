"""Canonical Clifford gate definitions and gateset machinery.

Every gate is defined by its conjugation semantics, image(P) = G P G-dagger,
stored as a small tableau.  From the tableau each GateDef precomputes:

* a lookup table mapping the local bit pattern of a Pauli product on the
  gate's wires to the conjugated pattern and sign (used for fast tableau
  and product updates),
* the per-wire letters whose conjugation stays one-local (the commuting
  letter for CX-like gates, the wire-hopping letter for iSWAP-like ones),
* for single-qubit gates, the induced permutation of the Pauli letters.

The registry covers the standard stim-named gates plus ECR.  ECR's tableau is
built by composing S(x)sqrt(X), CX, X(x)I and asserted against the frozen
golden constant at import, so a sign-convention drift fails immediately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Sequence

import numpy as np

from .pauli import Pauli, PauliProduct, commutes, support
from . import tableau as tb
from .tableau import Tableau

EntanglerClass = Literal["none", "cx_like", "iswap_like", "swap_like"]

# Letter permutations are (image of X, image of Z) as Pauli codes.
LetterPerm = tuple[int, int]
PERM_IDENTITY: LetterPerm = (Pauli.X, Pauli.Z)


def perm_apply(perm: LetterPerm, code: int) -> int:
    if code == Pauli.I:
        return Pauli.I
    if code == Pauli.X:
        return perm[0]
    if code == Pauli.Z:
        return perm[1]
    return perm[0] ^ perm[1]  # Y = X*Z, letter-wise xor


def perm_compose(p: LetterPerm, q: LetterPerm) -> LetterPerm:
    """The permutation "q then p"."""
    return (perm_apply(p, q[0]), perm_apply(p, q[1]))


def perm_invert(p: LetterPerm) -> LetterPerm:
    inv = {perm_apply(p, c): c for c in (Pauli.X, Pauli.Y, Pauli.Z)}
    return (inv[Pauli.X], inv[Pauli.Z])


class GateLut(NamedTuple):
    """Conjugation lookup for local bit patterns on the gate's wires.

    For arity 1 the key is 2x+z (4 entries), for arity 2 it is
    8*x_a + 4*z_a + 2*x_b + z_b (16 entries).  ``out_bits`` holds one output
    array per stored bit, in the same order the key packs them.
    """

    out_bits: tuple[np.ndarray, ...]
    sign: np.ndarray


class GateDef:
    """A named Clifford gate with exact conjugation semantics."""

    __slots__ = (
        "name", "arity", "semantics", "symmetric", "entangler_class",
        "lut", "perm", "bits16", "bits16_inv", "_local_fixed", "_one_local",
    )

    def __init__(self, name: str, arity: int, semantics: Tableau):
        if arity not in (1, 2):
            raise ValueError("gate arity must be 1 or 2")
        if semantics.n != arity:
            raise ValueError("semantics size does not match arity")
        if not semantics.is_symplectic():
            raise ValueError(f"gate {name}: semantics violate the symplectic condition")
        self.name = name
        self.arity = arity
        self.semantics = semantics
        self.lut = self._build_lut()
        if arity == 1:
            self.perm: LetterPerm | None = (
                int(self.lut.out_bits[0][2] * 2 + self.lut.out_bits[1][2]),
                int(self.lut.out_bits[0][1] * 2 + self.lut.out_bits[1][1]),
            )
            self.symmetric = True
            self.entangler_class: EntanglerClass = "none"
            self.bits16: tuple[int, ...] | None = None
            self.bits16_inv: tuple[int, ...] | None = None
            self._local_fixed = (None, None)
            self._one_local = (None, None)
        else:
            self.perm = None
            bits = [
                (int(self.lut.out_bits[0][k]) << 3)
                | (int(self.lut.out_bits[1][k]) << 2)
                | (int(self.lut.out_bits[2][k]) << 1)
                | int(self.lut.out_bits[3][k])
                for k in range(16)
            ]
            inv = [0] * 16
            for k, v in enumerate(bits):
                inv[v] = k
            self.bits16 = tuple(bits)
            self.bits16_inv = tuple(inv)
            self.symmetric = semantics == tb.permute_qubits(semantics, (1, 0))
            self._local_fixed, self._one_local = self._wire_letters()
            self.entangler_class = self._classify()

    def _build_lut(self) -> GateLut:
        size = 4 if self.arity == 1 else 16
        nbits = 2 * self.arity
        outs = [np.zeros(size, dtype=np.uint8) for _ in range(nbits)]
        sign = np.ones(size, dtype=np.int8)
        for key in range(size):
            if self.arity == 1:
                p = PauliProduct(1, (key >> 1) & 1, key & 1)
            else:
                xa, za, xb, zb = (key >> 3) & 1, (key >> 2) & 1, (key >> 1) & 1, key & 1
                p = PauliProduct(2, xa | (xb << 1), za | (zb << 1))
            img = tb.conjugate_product(self.semantics, p)
            if self.arity == 1:
                outs[0][key] = img.x & 1
                outs[1][key] = img.z & 1
            else:
                outs[0][key] = img.x & 1
                outs[1][key] = img.z & 1
                outs[2][key] = (img.x >> 1) & 1
                outs[3][key] = (img.z >> 1) & 1
            sign[key] = img.sign
        return GateLut(tuple(outs), sign)

    def _wire_letters(self):
        fixed: list[Pauli | None] = [None, None]
        one_local: list[Pauli | None] = [None, None]
        for wire in (0, 1):
            for letter in (Pauli.X, Pauli.Y, Pauli.Z):
                img = tb.conjugate_product(
                    self.semantics, PauliProduct.single(2, wire, letter)
                )
                supp = support(img)
                if supp == (wire,):
                    fixed[wire] = letter
                    one_local[wire] = letter
                elif len(supp) == 1:
                    one_local[wire] = letter
        return tuple(fixed), tuple(one_local)

    def _classify(self) -> EntanglerClass:
        stays = [True, True]
        crosses = [True, True]
        for wire in (0, 1):
            for letter in (Pauli.X, Pauli.Y, Pauli.Z):
                img = tb.conjugate_product(
                    self.semantics, PauliProduct.single(2, wire, letter)
                )
                supp = support(img)
                if supp != (wire,):
                    stays[wire] = False
                if supp != (1 - wire,):
                    crosses[wire] = False
        if stays[0] and stays[1]:
            return "none"
        if crosses[0] and crosses[1]:
            return "swap_like"
        has0 = self._local_fixed[0] is not None
        has1 = self._local_fixed[1] is not None
        if has0 and has1:
            return "cx_like"
        if not has0 and not has1:
            return "iswap_like"
        raise ValueError(f"gate {self.name}: entangler with one-sided fixed Pauli")

    def one_local_letter(self, wire: int) -> Pauli | None:
        """Input letter on the wire whose conjugation is one-local, if any."""
        return self._one_local[wire]

    def __repr__(self) -> str:
        return f"GateDef({self.name})"


def commuting_local_pauli(g: GateDef, wire: int) -> Pauli | None:
    """The unique letter that conjugates onto the same single wire, if any.

    CX-like gates have exactly one per wire; iSWAP-like gates have none.
    """
    if g.arity != 2:
        raise ValueError("commuting_local_pauli is defined for two-qubit gates")
    if wire not in (0, 1):
        raise ValueError("wire must be 0 or 1")
    return g._local_fixed[wire]


def classify_entangler(semantics: Tableau) -> EntanglerClass:
    """Entangler class of a two-qubit tableau."""
    return GateDef("_probe", 2, semantics).entangler_class


def _images(n: int, *strings: str) -> Tableau:
    return Tableau.from_images(n, [PauliProduct.from_string(s, n) for s in strings])


def _build_registry() -> dict[str, GateDef]:
    reg: dict[str, GateDef] = {}

    def g1(name, img_x, img_z):
        reg[name] = GateDef(name, 1, _images(1, img_x, img_z))

    # images of (X, Z) under G P G-dagger
    g1("I", "+X0", "+Z0")
    g1("X", "+X0", "-Z0")
    g1("Y", "-X0", "-Z0")
    g1("Z", "-X0", "+Z0")
    g1("H", "+Z0", "+X0")
    g1("S", "+Y0", "+Z0")
    g1("S_DAG", "-Y0", "+Z0")
    g1("SQRT_X", "+X0", "-Y0")
    g1("SQRT_X_DAG", "+X0", "+Y0")
    g1("H_XY", "+Y0", "-Z0")
    g1("H_YZ", "-X0", "+Y0")
    g1("C_XYZ", "+Y0", "+X0")
    g1("C_ZYX", "+Z0", "+Y0")

    def g2(name, img_x0, img_z0, img_x1, img_z1):
        reg[name] = GateDef(name, 2, _images(2, img_x0, img_z0, img_x1, img_z1))

    g2("CX", "+X0*X1", "+Z0", "+X1", "+Z0*Z1")
    g2("CZ", "+X0*Z1", "+Z0", "+Z0*X1", "+Z1")
    g2("SWAP", "+X1", "+Z1", "+X0", "+Z0")
    g2("ISWAP", "+Z0*Y1", "+Z1", "+Y0*Z1", "+Z0")
    # Molmer-Sorensen interaction at maximal entangling angle; golden constant
    # re-derived from the dense matrix exp(-i pi/4 XX) in the test suite.
    g2("SQRT_XX", "+X0", "-Y0*X1", "+X1", "-X0*Y1")

    reg["CXSWAP"] = _composed_from(reg, "CXSWAP", [("CX", (0, 1)), ("SWAP", (0, 1))])
    reg["CZSWAP"] = _composed_from(reg, "CZSWAP", [("CZ", (0, 1)), ("SWAP", (0, 1))])

    # ECR defined by its circuit identity: S(x)sqrt(X), then CX, then X(x)I.
    ecr = _composed_from(
        reg, "ECR", [("S", (0,)), ("SQRT_X", (1,)), ("CX", (0, 1)), ("X", (0,))]
    )
    golden = _images(2, "-Y0*X1", "-Z0", "+X1", "+Z0*Y1")
    if ecr.semantics != golden:
        raise AssertionError("ECR composition disagrees with its golden tableau")
    reg["ECR"] = ecr
    return reg


def _composed_from(reg, name, steps):
    t = tb.identity(2)
    for gate_name, qubits in steps:
        t = tb.append_gate(t, reg[gate_name], qubits)
    return GateDef(name, 2, t)


_REGISTRY = _build_registry()

#: Gates that carry qubit-order roles (control first).
ASYMMETRIC_NOTE = ("CX", "ECR", "CXSWAP", "CZSWAP")


def builtin(name: str) -> GateDef:
    """Look up a built-in gate by its canonical (stim-style) name."""
    alias = {"CNOT": "CX"}
    key = alias.get(name, name)
    try:
        return _REGISTRY[key]
    except KeyError:
        raise ValueError(f"unknown gate: {name!r}") from None


def builtin_names() -> tuple[str, ...]:
    return tuple(_REGISTRY)


#: The six single-qubit basis-change classes, in insertion precedence order.
CLASS_GATE_ORDER = ("I", "H_XY", "H_YZ", "H", "C_XYZ", "C_ZYX")


def class_gate_for_perm(perm: LetterPerm) -> GateDef:
    """The basis-change class gate realising a letter permutation."""
    for name in CLASS_GATE_ORDER:
        if builtin(name).perm == perm:
            return builtin(name)
    raise ValueError(f"no class gate for permutation {perm}")


@dataclass(frozen=True)
class GateSet:
    """A native gateset: one two-qubit entangler plus single-qubit generators."""

    name: str
    entangler: GateDef
    single_qubit_natives: tuple[GateDef, ...]
    _decomp_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.entangler.arity != 2:
            raise ValueError("gateset entangler must be a two-qubit gate")
        if self.entangler.entangler_class not in ("cx_like", "iswap_like"):
            raise ValueError(
                f"{self.entangler.name} is {self.entangler.entangler_class}; "
                "the gateset entangler must be entangling"
            )
        if any(g.arity != 1 for g in self.single_qubit_natives):
            raise ValueError("single-qubit natives must have arity 1")
        reached = {PERM_IDENTITY}
        frontier = [PERM_IDENTITY]
        while frontier:
            cur = frontier.pop()
            for g in self.single_qubit_natives:
                nxt = perm_compose(g.perm, cur)
                if nxt not in reached:
                    reached.add(nxt)
                    frontier.append(nxt)
        if len(reached) != 6:
            raise ValueError(
                "single-qubit natives do not generate all Pauli-basis changes "
                f"(got {len(reached)} of 6 classes)"
            )

    def decompose(self, g: GateDef) -> tuple[tuple[GateDef, ...], PauliProduct]:
        return decompose_single_qubit(g, self)

    def insertion_cost(self, class_gate: GateDef) -> int:
        """Length of the gate's full native identity, residual Pauli included."""
        word, residual = self.decompose(class_gate)
        return len(word) + (0 if residual.is_identity() else 1)


def decompose_single_qubit(
    g: GateDef, natives: GateSet
) -> tuple[tuple[GateDef, ...], PauliProduct]:
    """Shortest native word equal to g up to a trailing Pauli.

    Returns ``(word, residual)`` with g == word followed by residual, exactly.
    The search is breadth-first over basis-change classes in the order the
    natives are listed, so ties resolve deterministically.
    """
    if g.arity != 1:
        raise ValueError("decompose_single_qubit expects a single-qubit gate")
    cache_key = (g.name, g.perm, _exact_key(g.semantics))
    if cache_key in natives._decomp_cache:
        return natives._decomp_cache[cache_key]

    words: dict[LetterPerm, tuple[GateDef, ...]] = {PERM_IDENTITY: ()}
    queue: list[LetterPerm] = [PERM_IDENTITY]
    while queue and g.perm not in words:
        cur = queue.pop(0)
        for native in natives.single_qubit_natives:
            nxt = perm_compose(native.perm, cur)
            if nxt not in words:
                words[nxt] = words[cur] + (native,)
                queue.append(nxt)
    if g.perm not in words:
        raise ValueError(
            f"natives {[n.name for n in natives.single_qubit_natives]} "
            f"cannot realise {g.name}"
        )
    word = words[g.perm]

    t = tb.identity(1)
    for step in word:
        t = tb.append_gate(t, step, (0,))
    flip_x = t.image_x(0).sign != g.semantics.image_x(0).sign
    flip_z = t.image_z(0).sign != g.semantics.image_z(0).sign
    residual = _residual_for(t.image_x(0), t.image_z(0), flip_x, flip_z)

    check = t.copy()
    check._apply_gate(_pauli_gate(residual), (0,))
    if check != g.semantics:
        raise AssertionError(f"decomposition of {g.name} failed exactness check")
    result = (word, residual)
    natives._decomp_cache[cache_key] = result
    return result


def _residual_for(img_x, img_z, flip_x: bool, flip_z: bool) -> PauliProduct:
    for letter in (Pauli.I, Pauli.X, Pauli.Y, Pauli.Z):
        r = PauliProduct.single(1, 0, letter) if letter != Pauli.I else PauliProduct(1)
        if (not commutes(r, img_x)) == flip_x and (not commutes(r, img_z)) == flip_z:
            return r
    raise AssertionError("no single-qubit Pauli realises the sign fix")


def _pauli_gate(p: PauliProduct) -> GateDef:
    return builtin(p.local(0).letter) if not p.is_identity() else builtin("I")


def _exact_key(t: Tableau) -> tuple:
    return (
        t.n,
        t._xs.tobytes(),
        t._zs.tobytes(),
        t._signs.tobytes(),
    )


def all_single_qubit_cliffords() -> list[GateDef]:
    """The 24 single-qubit Cliffords mod phase, as the closure of {S, sqrt(X)}.

    Gates whose tableau matches a named built-in keep that name; the rest are
    named by their generating word.  Deterministic order: breadth-first by
    word length, S before sqrt(X).
    """
    gens = [builtin("S"), builtin("SQRT_X")]
    named = {
        _exact_key(builtin(n).semantics): builtin(n)
        for n in ("I", "X", "Y", "Z", "H", "S", "S_DAG", "SQRT_X", "SQRT_X_DAG",
                  "H_XY", "H_YZ", "C_XYZ", "C_ZYX")
    }
    seen: dict[tuple, GateDef] = {}
    start = tb.identity(1)
    seen[_exact_key(start)] = named[_exact_key(start)]
    queue: list[tuple[Tableau, tuple[str, ...]]] = [(start, ())]
    order = [seen[_exact_key(start)]]
    while queue:
        cur, word = queue.pop(0)
        for gen in gens:
            nxt = tb.append_gate(cur, gen, (0,))
            key = _exact_key(nxt)
            if key in seen:
                continue
            nxt_word = word + (gen.name,)
            gate = named.get(key) or GateDef("*".join(nxt_word), 1, nxt)
            seen[key] = gate
            order.append(gate)
            queue.append((nxt, nxt_word))
    return order


#: Built-in gateset names accepted by the CLI and the compiler helpers.
TARGET_ENTANGLERS = {
    "cx": "CX",
    "cz": "CZ",
    "sqrt_xx": "SQRT_XX",
    "ecr": "ECR",
    "iswap": "ISWAP",
}

NATIVE_SETS = {
    "s_sx": ("S", "SQRT_X"),
    "class6": ("H", "H_XY", "H_YZ", "C_XYZ", "C_ZYX"),
}


def builtin_gateset(target: str, natives: str = "s_sx") -> GateSet:
    """A named gateset, e.g. ``builtin_gateset("ecr", "s_sx")``."""
    if target not in TARGET_ENTANGLERS:
        raise ValueError(f"unknown target gateset {target!r}; "
                         f"choose from {sorted(TARGET_ENTANGLERS)}")
    if natives not in NATIVE_SETS:
        raise ValueError(f"unknown native set {natives!r}; "
                         f"choose from {sorted(NATIVE_SETS)}")
    return GateSet(
        name=target,
        entangler=builtin(TARGET_ENTANGLERS[target]),
        single_qubit_natives=tuple(builtin(n) for n in NATIVE_SETS[natives]),
    )
