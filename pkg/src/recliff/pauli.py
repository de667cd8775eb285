"""Signed multi-qubit Pauli products in binary symplectic form.

A Pauli product over n qubits is stored as two n-bit integers (one X bit and
one Z bit per qubit) plus a sign in {+1, -1}.  Qubit j carries Y iff both bits
are set, I iff both are clear.  Products of Hermitian Pauli operators can pick
up factors of i; internally we track the phase exponent modulo 4 and only
expose it at the boundary of :func:`multiply_exact`.  Every operation used by
the tableau machinery combines operators whose net phase is real.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum


class Pauli(IntEnum):
    """Single-qubit Pauli, coded so that value == 2*x_bit + z_bit."""

    I = 0
    Z = 1
    X = 2
    Y = 3

    @property
    def letter(self) -> str:
        return "IZXY"[self]

    @staticmethod
    def from_letter(letter: str) -> "Pauli":
        try:
            return {"I": Pauli.I, "X": Pauli.X, "Y": Pauli.Y, "Z": Pauli.Z}[letter]
        except KeyError:
            raise ValueError(f"not a Pauli letter: {letter!r}") from None


# _PHASE[a][b] = exponent of i in the single-qubit product a*b, with Y = i*X*Z.
# Indices are Pauli codes (I=0, Z=1, X=2, Y=3); entries are 0, 1 or 3 (= -1 mod 4).
_PHASE = (
    (0, 0, 0, 0),
    (0, 0, 1, 3),
    (0, 3, 0, 1),
    (0, 1, 3, 0),
)


class PhaseError(ValueError):
    """A product that must be real carried a factor of +/-i."""


@dataclass(frozen=True)
class PauliProduct:
    """Signed Pauli product on n qubits: sign * tensor of local Paulis.

    ``x`` and ``z`` are bit masks (bit j = qubit j).  ``sign`` is +1 or -1;
    factors of i never appear in a stored product.
    """

    n: int
    x: int = 0
    z: int = 0
    sign: int = 1

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("bit mask exceeds qubit count")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "PauliProduct":
        return PauliProduct(n)

    @staticmethod
    def single(n: int, qubit: int, pauli: Pauli, sign: int = 1) -> "PauliProduct":
        if not 0 <= qubit < n:
            raise ValueError(f"qubit {qubit} out of range for n={n}")
        x = ((pauli >> 1) & 1) << qubit
        z = (pauli & 1) << qubit
        return PauliProduct(n, x, z, sign)

    @staticmethod
    def from_string(text: str, n: int | None = None) -> "PauliProduct":
        """Parse the textual syntax, e.g. ``-X0*Y2`` or ``+I``.

        The optional sign prefix is followed by ``*``-separated letter/index
        terms; ``I`` (no index) denotes the identity product.
        """
        s = text.strip()
        sign = 1
        if s.startswith(("+", "-")):
            if s[0] == "-":
                sign = -1
            s = s[1:]
        if not s:
            raise ValueError(f"empty Pauli string: {text!r}")
        x = z = 0
        top = -1
        if s != "I":
            for term in s.split("*"):
                term = term.strip()
                if len(term) < 2 or term[0] not in "XYZ":
                    raise ValueError(f"bad Pauli term {term!r} in {text!r}")
                p = Pauli.from_letter(term[0])
                q = int(term[1:])
                if q < 0:
                    raise ValueError(f"negative qubit index in {text!r}")
                if (x >> q) & 1 or (z >> q) & 1:
                    raise ValueError(f"duplicate qubit {q} in {text!r}")
                x |= ((p >> 1) & 1) << q
                z |= (p & 1) << q
                top = max(top, q)
        size = n if n is not None else top + 1
        return PauliProduct(size, x, z, sign)

    # -- accessors ---------------------------------------------------------

    def local(self, qubit: int) -> Pauli:
        """The Pauli acting on one qubit."""
        if not 0 <= qubit < self.n:
            raise ValueError(f"qubit {qubit} out of range for n={self.n}")
        return Pauli(2 * ((self.x >> qubit) & 1) + ((self.z >> qubit) & 1))

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def __str__(self) -> str:
        head = "+" if self.sign > 0 else "-"
        if self.is_identity():
            return head + "I"
        terms = [f"{self.local(j).letter}{j}" for j in support(self)]
        return head + "*".join(terms)


def support(p: PauliProduct) -> tuple[int, ...]:
    """Qubit indices where the product is non-identity, ascending."""
    bits = p.x | p.z
    out = []
    j = 0
    while bits:
        if bits & 1:
            out.append(j)
        bits >>= 1
        j += 1
    return tuple(out)


def commutes(a: PauliProduct, b: PauliProduct) -> bool:
    """True iff the binary symplectic form of a and b is even."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    return (((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) & 1) == 0


def _phase_exponent(a: PauliProduct, b: PauliProduct) -> int:
    """Exponent of i in the product a*b (sign factors folded in), mod 4."""
    e = 0 if a.sign > 0 else 2
    e += 0 if b.sign > 0 else 2
    overlap = (a.x | a.z) & (b.x | b.z)
    j = 0
    while overlap:
        if overlap & 1:
            ca = 2 * ((a.x >> j) & 1) + ((a.z >> j) & 1)
            cb = 2 * ((b.x >> j) & 1) + ((b.z >> j) & 1)
            e += _PHASE[ca][cb]
        overlap >>= 1
        j += 1
    return e & 3


def multiply_exact(a: PauliProduct, b: PauliProduct) -> tuple[PauliProduct, bool]:
    """Operator product a*b as ``(product, imaginary)``.

    The true operator equals ``product * (i if imaginary else 1)``.  The sign
    convention for an odd i-power: i^1 maps to (+1, imaginary) and
    i^3 = -i to (-1, imaginary).
    """
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    e = _phase_exponent(a, b)
    sign = -1 if e >= 2 else 1
    return PauliProduct(a.n, a.x ^ b.x, a.z ^ b.z, sign), bool(e & 1)


def multiply(a: PauliProduct, b: PauliProduct) -> PauliProduct:
    """Product a*b with any +/-i phase dropped to a sign (flagged variant:
    :func:`multiply_exact`)."""
    return multiply_exact(a, b)[0]


def multiply_strict(a: PauliProduct, b: PauliProduct) -> PauliProduct:
    """Product a*b, raising :class:`PhaseError` if the result is imaginary."""
    prod, imag = multiply_exact(a, b)
    if imag:
        raise PhaseError(f"product ({a}) * ({b}) carries a factor of i")
    return prod


@dataclass(frozen=True)
class SignVector:
    """2n signs indexed by generators in the order X_0, Z_0, ..., X_{n-1}, Z_{n-1}."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) % 2 != 0:
            raise ValueError("sign vector length must be even")
        if any(s not in (1, -1) for s in self.entries):
            raise ValueError("signs must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.entries) // 2

    def x(self, j: int) -> int:
        return self.entries[2 * j]

    def z(self, j: int) -> int:
        return self.entries[2 * j + 1]

    def all_positive(self) -> bool:
        return all(s == 1 for s in self.entries)

    @staticmethod
    def positive(n: int) -> "SignVector":
        return SignVector((1,) * (2 * n))


class FrameSolveError(ValueError):
    """The frame system is inconsistent: inputs were not a valid tableau."""


def solve_frame(images: list[PauliProduct], required_flips: SignVector) -> PauliProduct:
    """Pauli product F anticommuting with exactly the flagged generator images.

    ``images`` holds the 2n generator images of a unitary tableau in the
    interleaved order X_0, Z_0, ..., X_{n-1}, Z_{n-1}.  Because those images
    form a symplectic basis, the GF(2) system has the closed-form solution

        F = prod_j image(X_j)^{flip(Z_j)} * image(Z_j)^{flip(X_j)}

    (the symplectic pairing is the dual basis pairing).  The result is
    normalised to sign +1; F is unique up to global phase.
    """
    if len(images) != 2 * required_flips.n:
        raise ValueError("images and flips disagree on qubit count")
    if not images:
        return PauliProduct(0)
    n = images[0].n
    f = PauliProduct(n)
    for j in range(required_flips.n):
        if required_flips.z(j) < 0:
            f = multiply(f, images[2 * j])
        if required_flips.x(j) < 0:
            f = multiply(f, images[2 * j + 1])
    f = PauliProduct(n, f.x, f.z, 1)
    for g, img in enumerate(images):
        want_flip = required_flips.entries[g] < 0
        if commutes(f, img) == want_flip:
            raise FrameSolveError(
                "no Pauli frame realises the requested sign flips; "
                "generator images do not form a symplectic basis"
            )
    return f
