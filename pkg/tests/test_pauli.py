import itertools
import random

import numpy as np
import pytest

from recliff import (
    FrameSolveError,
    Pauli,
    PauliProduct,
    PhaseError,
    SignVector,
    commutes,
    multiply,
    multiply_exact,
    solve_frame,
    support,
)
from recliff.pauli import multiply_strict
from recliff.tableau import from_circuit, identity
from recliff import builtin, random_clifford_circuit, RandomCircuitSpec

from matrix_oracle import pauli_matrix


def pp(text, n=None):
    return PauliProduct.from_string(text, n)


class TestConstruction:
    def test_single(self):
        p = PauliProduct.single(3, 1, Pauli.Y)
        assert p.local(0) == Pauli.I
        assert p.local(1) == Pauli.Y
        assert str(p) == "+Y1"

    def test_string_round_trip(self):
        for text in ("+X0", "-X0*Y2", "+I", "-Z0*X1*X2*X3"):
            assert str(pp(text)) == text

    def test_rejects_bad_sign(self):
        with pytest.raises(ValueError):
            PauliProduct(2, 0, 0, sign=2)

    def test_rejects_out_of_range_bits(self):
        with pytest.raises(ValueError):
            PauliProduct(1, x=2)

    def test_rejects_duplicate_qubit_in_string(self):
        with pytest.raises(ValueError):
            pp("+X0*Z0")


class TestMultiply:
    def test_distributive_example(self):
        # (X0 X1) * (Z0) * (Z0 Z1) has the letters of X0 Y1
        acc = multiply(multiply(pp("+X0*X1", 2), pp("+Z0", 2)), pp("+Z0*Z1", 2))
        want = pp("+X0*Y1", 2)
        assert (acc.x, acc.z) == (want.x, want.z)

    def test_identity_neutral(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randrange(1, 6)
            p = PauliProduct(
                n,
                rng.getrandbits(n),
                rng.getrandbits(n),
                rng.choice((1, -1)),
            )
            prod, imag = multiply_exact(PauliProduct.identity(n), p)
            assert prod == p and not imag

    def test_x_times_z_is_minus_i_y(self):
        prod, imag = multiply_exact(pp("+X0", 1), pp("+Z0", 1))
        assert imag and prod == pp("-Y0", 1)
        # cross-check against explicit 2x2 matrices
        got = pauli_matrix(pp("+X0", 1)) @ pauli_matrix(pp("+Z0", 1))
        assert np.allclose(got, -1j * pauli_matrix(pp("+Y0", 1)))

    def test_strict_raises_on_imaginary(self):
        with pytest.raises(PhaseError):
            multiply_strict(pp("+X0", 1), pp("+Z0", 1))

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            multiply(pp("+X0", 1), pp("+X0", 2))

    def test_exact_against_matrices(self):
        # every 1- and 2-qubit signed pair, phase included
        for n in (1, 2):
            ops = [
                PauliProduct(n, x, z, s)
                for x in range(2 ** n)
                for z in range(2 ** n)
                for s in (1, -1)
            ]
            for a, b in itertools.product(ops, repeat=2):
                prod, imag = multiply_exact(a, b)
                got = pauli_matrix(a) @ pauli_matrix(b)
                want = pauli_matrix(prod) * (1j if imag else 1)
                assert np.allclose(got, want), (str(a), str(b))

    def test_associative_random(self):
        rng = random.Random(3)
        for _ in range(200):
            n = rng.randrange(1, 6)
            ops = [
                PauliProduct(n, rng.getrandbits(n), rng.getrandbits(n), rng.choice((1, -1)))
                for _ in range(3)
            ]
            a, b, c = ops

            def exact(p, q):
                prod, imag = multiply_exact(p, q)
                return prod, (1 if imag else 0)

            ab, e1 = exact(a, b)
            left, e2 = exact(ab, c)
            bc, e3 = exact(b, c)
            right, e4 = exact(a, bc)
            assert (left.x, left.z) == (right.x, right.z)
            # phases must agree mod 4: sign encodes i^2
            def phase(p, e):
                return ((0 if p.sign > 0 else 2) + e) % 4
            assert phase(left, e1 + e2) == phase(right, e3 + e4)


class TestCommutes:
    def test_canonical_anticommuting_pair(self):
        assert not commutes(pp("+X0", 1), pp("+Z0", 1))

    def test_xx_vs_zz(self):
        assert commutes(pp("+X0*X1", 2), pp("+Z0*Z1", 2))

    def test_self_commutes(self):
        rng = random.Random(11)
        for _ in range(20):
            n = rng.randrange(1, 8)
            p = PauliProduct(n, rng.getrandbits(n), rng.getrandbits(n))
            assert commutes(p, p)

    def test_exhaustive_against_matrices(self):
        # all 16 one-qubit and all 256 two-qubit pairs
        for n in (1, 2):
            ops = [PauliProduct(n, x, z) for x in range(2 ** n) for z in range(2 ** n)]
            for a, b in itertools.product(ops, repeat=2):
                ma, mb = pauli_matrix(a), pauli_matrix(b)
                assert commutes(a, b) == np.allclose(ma @ mb, mb @ ma)


class TestSupport:
    def test_mixed(self):
        assert support(pp("+X0*Z1*Y2", 3)) == (0, 1, 2)

    def test_identity(self):
        assert support(PauliProduct.identity(4)) == ()

    def test_weight_four(self):
        assert support(pp("+Z0*X1*X2*X3", 4)) == (0, 1, 2, 3)


def _random_tableau(n, seed):
    if n == 1:
        from recliff.tableau import append_gate

        rng = random.Random(seed)
        t = identity(1)
        for _ in range(4):
            t = append_gate(t, builtin(rng.choice(["S", "SQRT_X", "H"])), (0,))
        return t
    spec = RandomCircuitSpec(n=n, entangler_layers=3, seed=seed, entangler=builtin("CX"))
    return from_circuit(random_clifford_circuit(spec))


class TestSolveFrame:
    def test_all_positive_gives_identity(self):
        t = _random_tableau(3, seed=5)
        f = solve_frame(t.images(), SignVector.positive(3))
        assert f.is_identity()

    def test_matches_brute_force(self):
        n = 3
        t = _random_tableau(n, seed=9)
        images = t.images()
        for flipped in range(2 * n):
            entries = [1] * (2 * n)
            entries[flipped] = -1
            flips = SignVector(tuple(entries))
            f = solve_frame(images, flips)
            matches = [
                PauliProduct(n, x, z)
                for x in range(2 ** n)
                for z in range(2 ** n)
                if all(
                    (not commutes(PauliProduct(n, x, z), images[g]))
                    == (flips.entries[g] < 0)
                    for g in range(2 * n)
                )
            ]
            assert len(matches) == 1
            assert (f.x, f.z) == (matches[0].x, matches[0].z)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_all_flip_patterns(self, n):
        t = _random_tableau(n, seed=20 + n)
        images = t.images()
        for pattern in range(2 ** (2 * n)):
            entries = tuple(
                -1 if (pattern >> g) & 1 else 1 for g in range(2 * n)
            )
            flips = SignVector(entries)
            f = solve_frame(images, flips)
            for g, img in enumerate(images):
                assert (not commutes(f, img)) == (entries[g] < 0)

    def test_inconsistent_inputs_detected(self):
        # X0 listed twice cannot be a generating set
        images = [pp("+X0", 1), pp("+X0", 1)]
        with pytest.raises(FrameSolveError):
            solve_frame(images, SignVector((1, -1)))


class TestSignVector:
    def test_interleaved_accessors(self):
        sv = SignVector((1, -1, -1, 1))
        assert sv.n == 2
        assert sv.x(0) == 1 and sv.z(0) == -1
        assert sv.x(1) == -1 and sv.z(1) == 1

    def test_length_must_be_even(self):
        with pytest.raises(ValueError):
            SignVector((1,))
