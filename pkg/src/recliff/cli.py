"""Command-line front end: compile, verify, generate, stats, compare.

Exit codes: 0 success (verify: equivalent), 1 verify found the circuits
inequivalent, 2 parse error, 3 compilation error, 4 verification failure.
Paths may be ``-`` for stdin/stdout.
"""

from __future__ import annotations

import itertools
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import tableau as tb
from .circuit import Circuit, ParseError, emit, parse
from .circuit import expand_ecr as _expand_ecr_transform
from .compiler import (
    CompileError,
    VerificationError,
    compile_circuit,
    compile_with_iswap_heuristic,
)
from .gates import NATIVE_SETS, TARGET_ENTANGLERS, builtin_gateset
from .generators import (
    RandomCircuitSpec,
    SurfaceCodeSpec,
    random_clifford_circuit,
    surface_code_syndrome_extraction,
)
from .pauli import solve_frame
from .reporting import compare as compare_reports, report

EXIT_PARSE = 2
EXIT_COMPILE = 3
EXIT_VERIFY = 4


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_circuit(path: str) -> Circuit:
    try:
        return parse(_read_text(path))
    except ParseError as exc:
        click.echo(f"parse error in {path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)


@click.group()
@click.version_option()
def main() -> None:
    """Retarget Clifford circuits onto alternative native gatesets."""


@main.command("compile")
@click.argument("inputs", nargs=-1, required=True)
@click.option("--target", required=True, type=click.Choice(sorted(TARGET_ENTANGLERS)))
@click.option("--natives", default="s_sx", type=click.Choice(sorted(NATIVE_SETS)))
@click.option("--frame", "frame_mode", default="report",
              type=click.Choice(["report", "fold", "none"]))
@click.option("--iswap-heuristic", is_flag=True,
              help="Allow crossing entangler class via virtual SWAP insertion.")
@click.option("--expand-ecr", is_flag=True,
              help="Emit each ECR as its S/sqrt(X), CX, X circuit identity.")
@click.option("--show-tableau", is_flag=True,
              help="Print source and compiled tableaux to stderr.")
@click.option("--output", "-o", default=None,
              help="Output circuit path (single input; default stdout).")
@click.option("--metadata", "metadata_path", default=None,
              help="Write compilation metadata JSON to this path.")
@click.option("--jobs", default=1, show_default=True,
              help="Compile multiple input files concurrently.")
def cmd_compile(inputs, target, natives, frame_mode, iswap_heuristic,
                expand_ecr, show_tableau, output, metadata_path, jobs):
    """Compile circuit files onto the target gateset."""
    gs = builtin_gateset(target, natives)
    sources = [(path, _load_circuit(path)) for path in inputs]
    if len(sources) > 1 and output is not None:
        click.echo("--output is only valid with a single input", err=True)
        sys.exit(EXIT_COMPILE)

    def run(item):
        path, source = item
        if iswap_heuristic:
            return path, source, compile_with_iswap_heuristic(
                source, gs, frame_mode=frame_mode
            )
        return path, source, compile_circuit(source, gs, frame_mode=frame_mode)

    try:
        if jobs > 1 and len(sources) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(run, sources))
        else:
            results = [run(item) for item in sources]
    except VerificationError as exc:
        click.echo(f"verification failure: {exc}", err=True)
        sys.exit(EXIT_VERIFY)
    except (CompileError, ValueError) as exc:
        click.echo(f"compilation error: {exc}", err=True)
        sys.exit(EXIT_COMPILE)

    for path, source, result in results:
        circuit = _expand_ecr_transform(result.circuit) if expand_ecr else result.circuit
        text = emit(circuit)
        if show_tableau:
            click.echo(f"# source tableau ({path})", err=True)
            click.echo(tb.pretty(tb.from_circuit(source)), err=True)
            click.echo("# compiled tableau", err=True)
            click.echo(tb.pretty(tb.from_circuit(result.circuit)), err=True)
        if len(results) == 1:
            _write_text(output, text)
        else:
            out = Path(path).with_suffix(f".{target}.stim")
            out.write_text(text)
            click.echo(f"{path} -> {out}", err=True)
        if metadata_path is not None and len(results) == 1:
            _write_text(metadata_path, json.dumps(result.metadata(source), indent=2) + "\n")
    sys.exit(0)


@main.command("verify")
@click.argument("file_a")
@click.argument("file_b")
@click.option("--up-to-frame", is_flag=True,
              help="Accept per-generator sign differences; print the frame witness.")
@click.option("--up-to-permutation", is_flag=True,
              help="Accept a wire relabelling; print the permutation witness.")
def cmd_verify(file_a, file_b, up_to_frame, up_to_permutation):
    """Check tableau equivalence of two circuit files."""
    a = _load_circuit(file_a)
    b = _load_circuit(file_b)
    if a.n != b.n:
        click.echo(f"not equivalent: qubit counts differ ({a.n} vs {b.n})")
        sys.exit(1)
    ta = tb.from_circuit(a)
    t_b = tb.from_circuit(b)

    perms = [tuple(range(a.n))]
    if up_to_permutation:
        if a.n > 8:
            click.echo("permutation search is limited to 8 qubits", err=True)
            sys.exit(EXIT_VERIFY)
        perms = [tuple(p) for p in itertools.permutations(range(a.n))]
    for sigma in perms:
        cand = t_b.relabel_wires(sigma) if up_to_permutation else t_b
        if up_to_frame:
            ok, flips = tb.equal_up_to_sign(ta, cand)
            if ok:
                frame = solve_frame(ta.images(), flips)
                click.echo(f"equivalent up to frame {frame}"
                           + (f" and permutation {list(sigma)}" if up_to_permutation else ""))
                sys.exit(0)
        elif ta == cand:
            click.echo("equivalent"
                       + (f" up to permutation {list(sigma)}" if up_to_permutation else ""))
            sys.exit(0)
    click.echo("not equivalent")
    sys.exit(1)


@main.group("generate")
def cmd_generate() -> None:
    """Construct benchmark circuits."""


@cmd_generate.command("surface-code")
@click.option("--distance", required=True, type=int)
@click.option("--output", "-o", default=None)
def cmd_generate_surface(distance, output):
    """One unitary syndrome-extraction round of the rotated surface code."""
    try:
        circuit = surface_code_syndrome_extraction(SurfaceCodeSpec(distance))
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_COMPILE)
    _write_text(output, emit(circuit))


@cmd_generate.command("random-clifford")
@click.option("--qubits", required=True, type=int)
@click.option("--entanglers", "layers", required=True, type=int,
              help="Number of entangler layers (floor(n/2) pairs each).")
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--entangler", default="cx", type=click.Choice(sorted(TARGET_ENTANGLERS)))
@click.option("--output", "-o", default=None)
def cmd_generate_random(qubits, layers, seed, entangler, output):
    """Seed-deterministic random Clifford circuit."""
    from .gates import builtin

    try:
        spec = RandomCircuitSpec(
            n=qubits,
            entangler_layers=layers,
            seed=seed,
            entangler=builtin(TARGET_ENTANGLERS[entangler]),
        )
        circuit = random_clifford_circuit(spec)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_COMPILE)
    _write_text(output, emit(circuit))


@main.command("stats")
@click.argument("input_path")
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "csv"]))
@click.option("--output", "-o", default=None)
def cmd_stats(input_path, fmt, output):
    """Gate-distribution report for a circuit file."""
    circuit = _load_circuit(input_path)
    rep = report(circuit)
    text = rep.to_json() + "\n" if fmt == "json" else rep.to_csv()
    _write_text(output, text)


@main.command("compare")
@click.argument("file_a")
@click.argument("file_b")
@click.option("--output", "-o", default=None)
def cmd_compare(file_a, file_b, output):
    """Category-wise gate-count ratios of two circuit files (a/b)."""
    rep_a = report(_load_circuit(file_a))
    rep_b = report(_load_circuit(file_b))
    _write_text(output, compare_reports(rep_a, rep_b).to_json() + "\n")


if __name__ == "__main__":
    main()
