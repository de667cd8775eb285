import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from recliff import Circuit, PauliProduct, Tableau, parse

# 4-qubit interleaved stabilizer-measurement circuit used as the golden
# worked example throughout the suite.
WORKED_EXAMPLE_TEXT = """\
H 0
TICK
CX 0 1
CX 2 3
TICK
CX 0 2
TICK
CX 1 3
TICK
H 0
"""

# Its tableau (all signs +).
WORKED_EXAMPLE_IMAGES = [
    "+X0", "+Z0*X1*X2*X3",
    "+X1*X3", "+X0*Z1",
    "+X2*X3", "+X0*Z2",
    "+X3", "+X0*Z1*Z2*Z3",
]

# Tableau of the bare 4-ECR skeleton of the worked example.
ECR_SKELETON_IMAGES = [
    "-X0*Y1*X2*X3", "+Z0",
    "-Y1*X3", "+Z0*X1*X3",
    "+Z0*Z2*X3", "-Z0*Y2",
    "+X3", "-Z0*Z1*Y2*Z3",
]

# Signs of the fully compiled worked example over ECR with {S, sqrt(X)}.
COMPILED_SIGNS = (1, 1, 1, 1, 1, -1, 1, -1)

CX_IMAGES = ["+X0*X1", "+Z0", "+X1", "+Z0*Z1"]
ECR_IMAGES = ["-Y0*X1", "-Z0", "+X1", "+Z0*Y1"]
SQRT_XX_IMAGES = ["+X0", "-Y0*X1", "+X1", "-X0*Y1"]

# 5-qubit weight-4 X-stabiliser measurement circuit (appendix example).
FAN_OUT_TEXT = """\
H 0
TICK
CX 0 1
TICK
CX 0 2
TICK
CX 0 3
TICK
CX 0 4
TICK
H 0
"""

FAN_OUT_IMAGES = [
    "+X0", "+Z0*X1*X2*X3*X4",
    "+X1", "+X0*Z1",
    "+X2", "+X0*Z2",
    "+X3", "+X0*Z3",
    "+X4", "+X0*Z4",
]

# Tableau of the bare 4-iSWAP ladder on 5 qubits (all signs +).
ISWAP_LADDER_IMAGES = [
    "+Z0*Z1*Z2*Z3*X4", "+Z4",
    "+Y0*Z4", "+Z0",
    "+Y1*Z4", "+Z1",
    "+Y2*Z4", "+Z2",
    "+Y3*Z4", "+Z3",
]

# Basis-change lookup grid: rows and columns ordered by the (X-image, Z-image)
# pairs below; entry = gate mapping the row pair onto the column pair.
LOOKUP_PAIR_ORDER = [
    ("X", "Y"), ("X", "Z"), ("Y", "X"), ("Y", "Z"), ("Z", "X"), ("Z", "Y"),
]
LOOKUP_GRID = [
    ["I", "H_YZ", "H_XY", "C_XYZ", "C_ZYX", "H"],
    ["H_YZ", "I", "C_XYZ", "H_XY", "H", "C_ZYX"],
    ["H_XY", "C_ZYX", "I", "H", "H_YZ", "C_XYZ"],
    ["C_ZYX", "H_XY", "H", "I", "C_XYZ", "H_YZ"],
    ["C_XYZ", "H", "H_YZ", "C_ZYX", "I", "H_XY"],
    ["H", "C_XYZ", "C_ZYX", "H_YZ", "H_XY", "I"],
]


def images_tableau(strings: list[str]) -> Tableau:
    n = len(strings) // 2
    return Tableau.from_images(n, [PauliProduct.from_string(s, n) for s in strings])


@pytest.fixture
def worked_example() -> Circuit:
    return parse(WORKED_EXAMPLE_TEXT)


@pytest.fixture
def worked_example_tableau() -> Tableau:
    return images_tableau(WORKED_EXAMPLE_IMAGES)


@pytest.fixture
def fan_out_circuit() -> Circuit:
    return parse(FAN_OUT_TEXT)
