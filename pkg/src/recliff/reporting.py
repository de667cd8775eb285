"""Gate-distribution reports and circuit-to-circuit comparisons.

X-type single-qubit gates are sqrt(X) rotations and their kin (SQRT_X,
SQRT_X_DAG, X, Y, and H_YZ before expansion); Z-type are phase rotations
(S, S_DAG, Z, and H_XY before expansion).  H and the cycle gates are neither,
so the x+z split only tiles the full single-qubit count for circuits
expressed over {S, sqrt(X)} and Paulis, which is where the split is used.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .circuit import Circuit, depth, gate_counts, two_qubit_count

X_TYPE = frozenset({"SQRT_X", "SQRT_X_DAG", "X", "Y", "H_YZ"})
Z_TYPE = frozenset({"S", "S_DAG", "Z", "H_XY"})


@dataclass(frozen=True)
class Report:
    """Exact gate tallies for one circuit."""

    counts: dict[str, int]
    x_type_count: int
    z_type_count: int
    single_qubit_count: int
    two_qubit_count: int
    depth: int
    total: int

    def to_dict(self) -> dict:
        return {
            "counts": dict(sorted(self.counts.items())),
            "x_type": self.x_type_count,
            "z_type": self.z_type_count,
            "two_qubit": self.two_qubit_count,
            "depth": self.depth,
            "total": self.total,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        """Gate histogram for plotting: ``name,count`` rows, header always."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "count"])
        for name, count in sorted(self.counts.items()):
            writer.writerow([name, count])
        return buf.getvalue()


def report(c: Circuit) -> Report:
    counts = gate_counts(c)
    x_type = sum(v for k, v in counts.items() if k in X_TYPE)
    z_type = sum(v for k, v in counts.items() if k in Z_TYPE)
    singles = sum(
        v for k, v in counts.items() if _arity(k) == 1
    )
    return Report(
        counts=counts,
        x_type_count=x_type,
        z_type_count=z_type,
        single_qubit_count=singles,
        two_qubit_count=two_qubit_count(c),
        depth=depth(c),
        total=sum(counts.values()),
    )


def _arity(name: str) -> int:
    from .gates import builtin

    return builtin(name).arity


_CATEGORIES = ("x_type", "z_type", "single_qubit_total", "two_qubit", "total")


@dataclass(frozen=True)
class Comparison:
    """Category-wise count ratios a/b; categories with a zero denominator are
    reported as undefined rather than dropped silently."""

    ratios: dict[str, float]
    undefined: tuple[str, ...]

    def to_dict(self) -> dict:
        out = {"ratios": {k: self.ratios[k] for k in sorted(self.ratios)}}
        if self.undefined:
            out["undefined"] = sorted(self.undefined)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def compare(a: Report, b: Report) -> Comparison:
    pairs = {
        "x_type": (a.x_type_count, b.x_type_count),
        "z_type": (a.z_type_count, b.z_type_count),
        "single_qubit_total": (a.single_qubit_count, b.single_qubit_count),
        "two_qubit": (a.two_qubit_count, b.two_qubit_count),
        "total": (a.total, b.total),
    }
    ratios: dict[str, float] = {}
    undefined: list[str] = []
    for key, (num, den) in pairs.items():
        if den == 0:
            undefined.append(key)
        else:
            ratios[key] = num / den
    return Comparison(ratios=ratios, undefined=tuple(undefined))
