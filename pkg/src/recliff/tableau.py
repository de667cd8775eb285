"""Stabilizer tableaux: the images of all generators X_j, Z_j under a circuit.

A tableau records how a unitary stabilizer circuit propagates each generator,
image(P) = C P C-dagger, with gates folded in time order.  Two circuits are
equivalent iff their tableaux are equal, which makes the tableau the
equivalence certificate used throughout the compiler.

Storage is generator-major: row g of the bit matrices is the image of
generator g, with the interleaved row order X_0, Z_0, X_1, Z_1, ...
The printed form (see :func:`pretty`) transposes to the qubit-major table
layout with a sign row, matching how tableaux are usually displayed.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np

from .pauli import PauliProduct, SignVector, support

if TYPE_CHECKING:  # pragma: no cover
    from .circuit import Circuit
    from .gates import GateDef

_PHASE_NP = np.array(
    [
        [0, 0, 0, 0],
        [0, 0, 1, 3],
        [0, 3, 0, 1],
        [0, 1, 3, 0],
    ],
    dtype=np.int64,
)


def _bits_from_int(value: int, n: int) -> np.ndarray:
    nbytes = max(1, (n + 7) // 8)
    raw = np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].copy()

def _int_from_bits(bits: np.ndarray) -> int:
    if bits.size == 0:
        return 0
    packed = np.packbits(bits.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


class Tableau:
    """Images of the 2n Pauli generators under a unitary stabilizer circuit."""

    __slots__ = ("n", "_xs", "_zs", "_signs")

    def __init__(self, n: int, xs: np.ndarray, zs: np.ndarray, signs: np.ndarray):
        self.n = n
        self._xs = xs
        self._zs = zs
        self._signs = signs

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_images(n: int, images: Sequence[PauliProduct]) -> "Tableau":
        """Build from the 2n images in interleaved order X_0, Z_0, ..."""
        if len(images) != 2 * n:
            raise ValueError(f"expected {2 * n} images, got {len(images)}")
        xs = np.zeros((2 * n, n), dtype=np.uint8)
        zs = np.zeros((2 * n, n), dtype=np.uint8)
        signs = np.ones(2 * n, dtype=np.int8)
        for g, img in enumerate(images):
            if img.n != n:
                raise ValueError("image qubit count mismatch")
            xs[g] = _bits_from_int(img.x, n)
            zs[g] = _bits_from_int(img.z, n)
            signs[g] = img.sign
        return Tableau(n, xs, zs, signs)

    def copy(self) -> "Tableau":
        return Tableau(self.n, self._xs.copy(), self._zs.copy(), self._signs.copy())

    # -- accessors ---------------------------------------------------------

    def image_x(self, j: int) -> PauliProduct:
        """Image of the generator X_j."""
        return self._image(2 * j)

    def image_z(self, j: int) -> PauliProduct:
        """Image of the generator Z_j."""
        return self._image(2 * j + 1)

    def images(self) -> list[PauliProduct]:
        """All 2n images, interleaved X_0, Z_0, X_1, Z_1, ..."""
        return [self._image(g) for g in range(2 * self.n)]

    def _image(self, g: int) -> PauliProduct:
        return PauliProduct(
            self.n,
            _int_from_bits(self._xs[g]),
            _int_from_bits(self._zs[g]),
            int(self._signs[g]),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tableau):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self._xs, other._xs)
            and np.array_equal(self._zs, other._zs)
            and np.array_equal(self._signs, other._signs)
        )

    __hash__ = None  # type: ignore[assignment]

    # -- mutation (private, used by the builders below) ---------------------

    def _apply_gate(self, gate: "GateDef", qubits: Sequence[int]) -> None:
        if gate.arity != len(qubits):
            raise ValueError(f"{gate.name} expects {gate.arity} qubits, got {len(qubits)}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"duplicate qubit in {gate.name} {qubits}")
        for q in qubits:
            if not 0 <= q < self.n:
                raise ValueError(f"qubit {q} out of range for n={self.n}")
        lut = gate.lut
        if gate.arity == 1:
            (q,) = qubits
            key = 2 * self._xs[:, q] + self._zs[:, q]
            self._xs[:, q] = lut.out_bits[0][key]
            self._zs[:, q] = lut.out_bits[1][key]
            self._signs *= lut.sign[key]
        else:
            a, b = qubits
            key = (
                8 * self._xs[:, a]
                + 4 * self._zs[:, a]
                + 2 * self._xs[:, b]
                + self._zs[:, b]
            )
            self._xs[:, a] = lut.out_bits[0][key]
            self._zs[:, a] = lut.out_bits[1][key]
            self._xs[:, b] = lut.out_bits[2][key]
            self._zs[:, b] = lut.out_bits[3][key]
            self._signs *= lut.sign[key]

    # -- bulk views ----------------------------------------------------------

    def letter_array(self) -> np.ndarray:
        """Pauli codes (2x+z) of every image entry, shape (2n, n)."""
        return (2 * self._xs + self._zs).astype(np.uint8)

    def sign_array(self) -> np.ndarray:
        """Image signs as +/-1, shape (2n,)."""
        return self._signs.copy()

    def relabel_wires(self, sigma: Sequence[int]) -> "Tableau":
        """Relabel image supports by sigma, leaving generator indices alone.

        This expresses "the same map with output wires renamed": generator j's
        image content moves from wire q to wire sigma[q].
        """
        if sorted(sigma) != list(range(self.n)):
            raise ValueError(f"not a permutation of 0..{self.n - 1}: {sigma}")
        perm = np.asarray(sigma, dtype=np.int64)
        xs = np.empty_like(self._xs)
        zs = np.empty_like(self._zs)
        xs[:, perm] = self._xs
        zs[:, perm] = self._zs
        return Tableau(self.n, xs, zs, self._signs.copy())

    # -- checks -------------------------------------------------------------

    def is_symplectic(self) -> bool:
        """Pairwise (anti)commutation matches a valid generating set."""
        m = (self._xs.astype(np.int64) @ self._zs.T.astype(np.int64)
             + self._zs.astype(np.int64) @ self._xs.T.astype(np.int64)) % 2
        want = np.zeros_like(m)
        for j in range(self.n):
            want[2 * j, 2 * j + 1] = 1
            want[2 * j + 1, 2 * j] = 1
        return bool(np.array_equal(m, want))


def identity(n: int) -> Tableau:
    """The trivial tableau: every generator maps to itself with sign +."""
    if n < 0:
        raise ValueError("qubit count must be non-negative")
    xs = np.zeros((2 * n, n), dtype=np.uint8)
    zs = np.zeros((2 * n, n), dtype=np.uint8)
    for j in range(n):
        xs[2 * j, j] = 1
        zs[2 * j + 1, j] = 1
    return Tableau(n, xs, zs, np.ones(2 * n, dtype=np.int8))


def append_gate(t: Tableau, gate: "GateDef", qubits: Sequence[int]) -> Tableau:
    """New tableau with one more gate folded onto the output side."""
    out = t.copy()
    out._apply_gate(gate, tuple(qubits))
    return out


def from_circuit(circuit: "Circuit") -> Tableau:
    """Fold every instruction of the circuit, in time order, over identity(n)."""
    t = identity(circuit.n)
    for layer in circuit.layers:
        for inst in layer:
            t._apply_gate(inst.gate, inst.qubits)
    return t


def conjugate_product(t: Tableau, p: PauliProduct) -> PauliProduct:
    """Image of an arbitrary Pauli product under the tableau's circuit.

    Decomposes p into generators (X factors first, then Z factors, each in
    ascending qubit order, with one i per Y) and multiplies the corresponding
    images, tracking the phase exponent mod 4.  A unitary image of a Hermitian
    operator is Hermitian, so the net phase is always real.
    """
    if p.n != t.n:
        raise ValueError(f"size mismatch: product n={p.n}, tableau n={t.n}")
    n = t.n
    px = _bits_from_int(p.x, n).astype(np.int64)
    pz = _bits_from_int(p.z, n).astype(np.int64)
    exponent = int((px * pz).sum())  # one i per Y in the canonical form
    if p.sign < 0:
        exponent += 2
    acc_x = np.zeros(n, dtype=np.uint8)
    acc_z = np.zeros(n, dtype=np.uint8)
    rows = [2 * j for j in range(n) if px[j]] + [2 * j + 1 for j in range(n) if pz[j]]
    for g in rows:
        if t._signs[g] < 0:
            exponent += 2
        acc_code = 2 * acc_x + acc_z
        row_code = 2 * t._xs[g] + t._zs[g]
        exponent += int(_PHASE_NP[acc_code, row_code].sum())
        acc_x ^= t._xs[g]
        acc_z ^= t._zs[g]
    exponent &= 3
    if exponent & 1:
        raise AssertionError("conjugated Hermitian product came out imaginary")
    return PauliProduct(
        n, _int_from_bits(acc_x), _int_from_bits(acc_z), 1 if exponent == 0 else -1
    )


def equal(t1: Tableau, t2: Tableau) -> bool:
    """Exact tableau equality, signs included."""
    return t1 == t2


def equal_up_to_sign(t1: Tableau, t2: Tableau) -> tuple[bool, SignVector | None]:
    """Letter-exact equality; on success also the per-generator sign flips.

    Returns ``(True, flips)`` when all supports and local Paulis match, where
    ``flips`` holds -1 exactly on generators whose signs disagree.  Returns
    ``(False, None)`` otherwise.
    """
    if t1.n != t2.n:
        return False, None
    if not (np.array_equal(t1._xs, t2._xs) and np.array_equal(t1._zs, t2._zs)):
        return False, None
    flips = tuple(int(a * b) for a, b in zip(t1._signs, t2._signs))
    return True, SignVector(flips)


def permute_qubits(t: Tableau, perm: Sequence[int]) -> Tableau:
    """Relabel qubits: generator j becomes generator perm[j], supports follow."""
    n = t.n
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    perm = np.asarray(perm, dtype=np.int64)
    row_new = np.empty(2 * n, dtype=np.int64)
    for j in range(n):
        row_new[2 * j] = 2 * perm[j]
        row_new[2 * j + 1] = 2 * perm[j] + 1
    xs = np.zeros_like(t._xs)
    zs = np.zeros_like(t._zs)
    signs = np.ones_like(t._signs)
    xs[row_new[:, None], perm[None, :]] = t._xs
    zs[row_new[:, None], perm[None, :]] = t._zs
    signs[row_new] = t._signs
    return Tableau(n, xs, zs, signs)


def pretty(t: Tableau) -> str:
    """Qubit-major table with a sign row; ``_`` marks identity entries.

    Layout (stable, documented in the README)::

              X0  Z0  X1  Z1
        +/-    +   +   +   +
          0    X   Z   _   Z
          1    X   _   X   Z
    """
    n = t.n
    if n == 0:
        return "(empty tableau)"
    label_w = max(3, len(str(n - 1)))
    cell_w = len(f"Z{n - 1}")
    codes = "IZXY"

    def line(label: str, cells: list[str]) -> str:
        return label.rjust(label_w) + "  " + "  ".join(c.rjust(cell_w) for c in cells)

    header = [f"{p}{j}" for j in range(n) for p in ("X", "Z")]
    signs = ["+" if s > 0 else "-" for s in t._signs]
    lines = [line("", header), line("+/-", signs)]
    for q in range(n):
        cells = []
        for g in range(2 * n):
            letter = codes[2 * t._xs[g, q] + t._zs[g, q]]
            cells.append("_" if letter == "I" else letter)
        lines.append(line(str(q), cells))
    return "\n".join(lines)
