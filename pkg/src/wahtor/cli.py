"""Batch command-line front end: fci | vqe | wahtor | mutual-info.

Runs are driven by a TOML config; every Table-style benchmark molecule ships
with a ready-made config next to its fixture.  Reports are JSON with sorted
keys and mutual-information matrices are CSV, so identical config + seed
reproduces byte-identical files.

Exit codes: 0 converged, 2 parse/config errors, 3 numerical errors,
4 completed without reaching the convergence tolerance.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import analysis, data
from .errors import (
    ConsistencyError,
    DegenerateError,
    EncodingError,
    GroupError,
    NumericalError,
    ParseError,
    ScaleError,
    UnsupportedError,
    WahtorError,
)
from .integrals import FixtureMetadata, SpatialIntegrals, load_fcidump, load_metadata
from .loop import TrustRegionOptions, WahtorOptions, wahtor_run
from .pauli import jordan_wigner, pauli_expectation, spatial_to_spin_hamiltonian
from .simulator import AnsatzCircuit, apply_ansatz, hf_reference
from .vqe import VqeOptions, vqe_multistart

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERICAL = 3
EXIT_NOT_CONVERGED = 4

_PARSE_ERRORS = (ParseError, ConsistencyError, GroupError, FileNotFoundError,
                 tomllib.TOMLDecodeError, KeyError, ValueError)
_NUMERICAL_ERRORS = (NumericalError, EncodingError, ScaleError,
                     DegenerateError, UnsupportedError)


@dataclass
class RunConfig:
    fcidump_path: Path
    metadata_path: Path
    name: str
    ansatz_depth: int = 2
    entangler: tuple[tuple[int, int], ...] = ()
    n_starts: int = 20
    seed: int = 1
    threads: int = 1
    include_core_energy: bool = False
    output_path: Path | None = None
    vqe: VqeOptions = field(default_factory=VqeOptions)
    trust_region: TrustRegionOptions = field(default_factory=TrustRegionOptions)
    outer_energy_tol: float = 1e-6
    max_outer_iterations: int = 50

    @classmethod
    def from_toml(cls, path) -> "RunConfig":
        raw = tomllib.loads(Path(path).read_text())
        run = raw.get("run", {})
        if "fixture" in run:
            fcidump_path, metadata_path = data.fixture_paths(run["fixture"])
            name = run["fixture"]
        else:
            base = Path(path).parent
            fcidump_path = (base / run["fcidump"]).resolve()
            metadata_path = (base / run["metadata"]).resolve()
            name = fcidump_path.stem
        wahtor_section = raw.get("wahtor", {})
        config = cls(
            fcidump_path=fcidump_path,
            metadata_path=metadata_path,
            name=name,
            ansatz_depth=int(run.get("depth", 2)),
            entangler=tuple(tuple(p) for p in run["entangler"])
            if isinstance(run.get("entangler"), list) else (),
            n_starts=int(run.get("n_starts", 20)),
            seed=int(run.get("seed", 1)),
            include_core_energy=bool(run.get("include_core_energy", False)),
            output_path=Path(run["output"]) if "output" in run else None,
            vqe=VqeOptions(**raw.get("vqe", {})),
            trust_region=TrustRegionOptions(**raw.get("trust_region", {})),
            outer_energy_tol=float(wahtor_section.get("outer_energy_tol", 1e-6)),
            max_outer_iterations=int(wahtor_section.get("max_outer_iterations", 50)),
        )
        config.validate()
        return config

    def validate(self):
        if self.ansatz_depth < 1:
            raise ValueError("depth must be at least 1")
        if self.n_starts < 1:
            raise ValueError("n_starts must be at least 1")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        for p in (self.fcidump_path, self.metadata_path):
            if not Path(p).exists():
                raise FileNotFoundError(f"missing input file {p}")

    def wahtor_options(self) -> WahtorOptions:
        return WahtorOptions(
            outer_energy_tol=self.outer_energy_tol,
            max_outer_iterations=self.max_outer_iterations,
            n_starts=self.n_starts,
            seed=self.seed,
            vqe=self.vqe,
            trust_region=self.trust_region,
        )

    def load(self) -> tuple[SpatialIntegrals, FixtureMetadata]:
        return load_fcidump(self.fcidump_path), load_metadata(self.metadata_path)

    def circuit(self, n_qubits: int) -> AnsatzCircuit:
        return AnsatzCircuit(n_qubits=n_qubits, depth=self.ansatz_depth,
                             entangler=self.entangler)

    def output_dir(self, command: str) -> Path:
        out = self.output_path or Path(f"wahtor_{command}_{self.name}")
        out.mkdir(parents=True, exist_ok=True)
        return out


def _core_shift(config: RunConfig, ints: SpatialIntegrals) -> float:
    return ints.core_energy if config.include_core_energy else 0.0


def _write_report(out_dir: Path, payload: dict) -> Path:
    path = out_dir / "report.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _reference_energies(ints, meta):
    h_qubit = jordan_wigner(spatial_to_spin_hamiltonian(ints))
    ref = hf_reference(2 * ints.m, ints.n_electrons)
    e_hf = pauli_expectation(h_qubit, ref)
    solution = analysis.fci_solve(h_qubit, ints.n_electrons)
    return h_qubit, ref, e_hf, solution


def cmd_fci(config: RunConfig) -> int:
    ints, meta = config.load()
    shift = _core_shift(config, ints)
    solution = analysis.fci_of_integrals(ints)
    occupations, _ = analysis.natural_orbitals(solution, ints.m)
    energy = solution.energy + shift
    print(f"{config.name}: FCI energy {energy:.9f} Hartree"
          f"{' (core included)' if shift else ''}")
    print("natural occupations:", " ".join(f"{o:.6f}" for o in occupations))
    out = config.output_dir("fci")
    _write_report(out, {
        "command": "fci",
        "name": config.name,
        "energy": energy,
        "core_energy": ints.core_energy,
        "include_core_energy": config.include_core_energy,
        "n_electrons": ints.n_electrons,
        "natural_occupations": occupations.tolist(),
        "reference_fci": meta.reference_energies.get("fci"),
    })
    return EXIT_OK


def cmd_vqe(config: RunConfig) -> int:
    ints, meta = config.load()
    shift = _core_shift(config, ints)
    h_qubit, ref, e_hf, solution = _reference_energies(ints, meta)
    circuit = config.circuit(2 * ints.m)
    multistart = vqe_multistart(h_qubit, circuit, ref, config.n_starts,
                                config.seed, config.vqe)
    best = multistart.best
    epsilon = analysis.correlation_fraction(best.energy, e_hf, solution.energy)
    print(f"{config.name}: best VQE {best.energy + shift:.9f} Hartree "
          f"(start {best.seed}, epsilon {epsilon:.4f})")
    out = config.output_dir("vqe")
    _write_report(out, {
        "command": "vqe",
        "name": config.name,
        "best_energy": best.energy + shift,
        "epsilon": epsilon,
        "hf_energy": e_hf + shift,
        "fci_energy": solution.energy + shift,
        "n_starts": config.n_starts,
        "seed": config.seed,
        "depth": config.ansatz_depth,
        "start_energies": [r.energy + shift for r in multistart.results],
        "converged": all(r.converged for r in multistart.results),
    })
    return EXIT_OK if all(r.converged for r in multistart.results) else EXIT_NOT_CONVERGED


def _mutual_info_files(out_dir, matrices):
    names = {}
    for label, matrix in matrices.items():
        path = out_dir / f"mutual_information_{label}.csv"
        path.write_text(matrix.to_csv())
        path.with_suffix(".json").write_text(matrix.to_json() + "\n")
        names[label] = path.name
    return names


def cmd_wahtor(config: RunConfig) -> int:
    ints, meta = config.load()
    shift = _core_shift(config, ints)
    h_qubit, ref, e_hf, solution = _reference_energies(ints, meta)
    circuit = config.circuit(2 * ints.m)
    state, report = wahtor_run(ints, meta.symmetry_groups, circuit,
                               config.wahtor_options())

    occupations, natural = analysis.natural_orbitals(solution, ints.m)
    delta = analysis.delta_metric(state.accumulated_rotation, natural,
                                  meta.symmetry_groups)
    eps_vqe = analysis.correlation_fraction(
        report["initial_vqe_energy"], e_hf, solution.energy)
    eps_wahtor = analysis.correlation_fraction(
        report["final_energy"], e_hf, solution.energy)

    # the five mutual-information panels
    vqe_state = apply_ansatz(circuit, np.asarray(report["initial_theta"]), ref)
    final_state = apply_ansatz(circuit, np.asarray(report["final_theta"]), ref)
    aligned = natural[:, analysis.match_columns(np.eye(ints.m), natural)]
    ground_rotated = analysis.ground_state_in_basis(ints, state.accumulated_rotation)
    ground_natural = analysis.ground_state_in_basis(ints, aligned)
    matrices = {
        "vqe_state_hf_basis": analysis.mutual_information(vqe_state),
        "wahtor_state_rotated_basis": analysis.mutual_information(final_state),
        "ground_hf_basis": analysis.mutual_information(solution.ground_vector),
        "ground_rotated_basis": analysis.mutual_information(ground_rotated.ground_vector),
        "ground_natural_basis": analysis.mutual_information(ground_natural.ground_vector),
    }

    out = config.output_dir("wahtor")
    csv_paths = _mutual_info_files(out, matrices)
    payload = dict(report)
    payload["iterations"] = [
        {**entry,
         "vqe_energy": entry["vqe_energy"] + shift,
         "post_rotation_energy": entry["post_rotation_energy"] + shift}
        for entry in report["iterations"]]
    payload.update({
        "command": "wahtor",
        "name": config.name,
        "final_energy": report["final_energy"] + shift,
        "initial_vqe_energy": report["initial_vqe_energy"] + shift,
        "hf_energy": e_hf + shift,
        "fci_energy": solution.energy + shift,
        "epsilon_vqe": eps_vqe,
        "epsilon_wahtor": eps_wahtor,
        "delta": delta if delta is not None else "HF~NO",
        "natural_occupations": occupations.tolist(),
        "mutual_information_files": csv_paths,
        "reference": meta.reference_energies,
    })
    _write_report(out, payload)
    label = f"{delta:.4f}" if delta is not None else "HF~NO"
    print(f"{config.name}: WAHTOR {report['final_energy'] + shift:.9f} Hartree "
          f"(epsilon {eps_vqe:.4f} -> {eps_wahtor:.4f}, delta {label})")
    return EXIT_OK if report["converged"] else EXIT_NOT_CONVERGED


def cmd_mutual_info(config: RunConfig, which_state: str) -> int:
    ints, meta = config.load()
    h_qubit, ref, e_hf, solution = _reference_energies(ints, meta)
    occupations, natural = analysis.natural_orbitals(solution, ints.m)
    if which_state == "ground-hf":
        psi = solution.ground_vector
    elif which_state == "ground-natural":
        aligned = natural[:, analysis.match_columns(np.eye(ints.m), natural)]
        psi = analysis.ground_state_in_basis(ints, aligned).ground_vector
    elif which_state == "vqe-hf":
        circuit = config.circuit(2 * ints.m)
        multistart = vqe_multistart(h_qubit, circuit, ref, config.n_starts,
                                    config.seed, config.vqe)
        psi = apply_ansatz(circuit, multistart.best.theta, ref)
    else:
        raise ValueError(f"unknown state {which_state!r}")
    matrix = analysis.mutual_information(psi)
    out = config.output_dir("mutual_info")
    path = out / f"mutual_information_{which_state.replace('-', '_')}.csv"
    path.write_text(matrix.to_csv())
    path.with_suffix(".json").write_text(matrix.to_json() + "\n")
    print(f"{config.name}: wrote {path} "
          f"({matrix.significant_pairs()} pairs above 1e-3)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wahtor",
        description="VQE with trust-region molecular-orbital optimization.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("fci", "vqe", "wahtor", "mutual-info"):
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True, help="TOML run configuration")
        cmd.add_argument("--seed", type=int, default=None, help="override config seed")
        cmd.add_argument("--threads", type=int, default=None,
                         help="cap for internal parallelism (runs are sequential)")
        cmd.add_argument("--output", default=None, help="override output directory")
        if name == "mutual-info":
            cmd.add_argument("--state", default="ground-hf",
                             choices=["ground-hf", "ground-natural", "vqe-hf"])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_toml(args.config)
        if args.seed is not None:
            config.seed = args.seed
        if args.threads is not None:
            config.threads = args.threads
            config.validate()
        if args.output is not None:
            config.output_path = Path(args.output)
        if args.command == "fci":
            return cmd_fci(config)
        if args.command == "vqe":
            return cmd_vqe(config)
        if args.command == "wahtor":
            return cmd_wahtor(config)
        return cmd_mutual_info(config, args.state)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except WahtorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
