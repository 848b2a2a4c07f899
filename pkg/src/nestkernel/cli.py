"""Command-line front end.

    nestkernel kernel-set problem.json
    nestkernel decompose problem.json --pretty
    nestkernel bil problem.json
    nestkernel lie-closure problem.json
    nestkernel decomposable problem.json --seed 3 --samples 64
    nestkernel check-invariants --cases 100 --max-dim 6

Exit codes:
    0: every mandatory check passed
    1: at least one mandatory check failed
    2: input error (unreadable/malformed JSON, missing fields, dimension mismatch)
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

from . import properties as props
from .decompose import decompose, verify_decomposition
from .errors import DimensionMismatch, LatticeError, NotAMember
from .io import (ProblemError, digest, load_problem, matrix_to_json, pair_to_json,
                 subspace_to_json, vector_to_json)
from .kernel import analyze, bil, kernel_set
from .lattice import to_nest
from .liemod import (DEFAULT_SAMPLES, OperatorSpace, Status, check_decomposable, contains,
                     lie_bracket, lie_module_closure, nest_algebra)
from .linalg import Matrix, projector, rank
from .random_instances import (random_lattice, random_matrix, random_nest_instance,
                               random_partition)

log = logging.getLogger("nestkernel")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2


class Report:
    def __init__(self, command: str, inputs_digest: str, field: str):
        self.command = command
        self.inputs_digest = inputs_digest
        self.field = field
        self.results: dict = {}
        self.checks: list[dict] = []

    def check(self, name: str, passed: bool, detail: str = "", mandatory: bool = True) -> None:
        self.checks.append({"name": name, "passed": bool(passed), "mandatory": mandatory,
                            "detail": detail})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks if c["mandatory"])

    def to_json(self) -> dict:
        return {"command": self.command, "inputs_digest": self.inputs_digest,
                "field": self.field, "results": self.results, "checks": self.checks,
                "passed": self.passed}


def _require(prob, *names):
    for name in names:
        if name == "matrix" and prob.matrix is None:
            raise ProblemError("problem file needs a 'matrix'")
        if name == "lattice" and prob.lattice is None:
            raise ProblemError("problem file needs a 'nest' or 'lattice'")
        if name == "nest":
            if prob.lattice is None:
                raise ProblemError("problem file needs a 'nest'")
            try:
                prob.lattice = to_nest(prob.lattice)
            except LatticeError as exc:
                raise ProblemError(str(exc)) from None
    if prob.matrix is not None and prob.lattice is not None:
        if prob.matrix.nrows != prob.lattice.ambient_dim:
            raise DimensionMismatch(f"matrix of size {prob.matrix.nrows} with a lattice on "
                                    f"dimension {prob.lattice.ambient_dim}")


def cmd_kernel_set(prob, args, report: Report) -> None:
    _require(prob, "matrix", "lattice")
    T, L = prob.matrix, prob.lattice
    tab = analyze(T, L)
    ks = kernel_set(T, L)
    r = rank(T)
    B = bil(T, L)
    report.results = {
        "rank": r,
        "lattice_size": len(L),
        "is_nest": L.is_chain,
        "kernel_set": [{"source": subspace_to_json(e.source), **pair_to_json(e.pair)} for e in ks],
        "omega": [{"P": subspace_to_json(P), **pair_to_json(tab.omega(p))}
                  for p, P in enumerate(L)],
    }
    report.check("omega_in_bil", all(tab.omega(p) in B for p in range(len(L))))
    bound = len(ks) <= r + 1
    detail = f"|Omega|={len(ks)}, rank+1={r + 1}"
    # the cardinality bound is guaranteed for nests only; other lattices just report it
    report.check("kernel_set_size_bound", bound, detail, mandatory=L.is_chain)
    if L.is_chain:
        report.check("kernel_set_totally_ordered", ks.is_totally_ordered())


def cmd_decompose(prob, args, report: Report) -> None:
    _require(prob, "matrix", "nest")
    T, N = prob.matrix, prob.lattice
    D = decompose(T, N)
    ver = verify_decomposition(D, N)
    report.results = {
        "rank": rank(T),
        "k": D.k,
        "m": len(D.terms),
        "slices": [{"phi_prev": subspace_to_json(s.phi_prev), "phi": subspace_to_json(s.phi),
                    "psi": subspace_to_json(s.psi), "matrix": matrix_to_json(s.matrix)}
                   for s in D.slices],
        "terms": [{"x": vector_to_json(t.x), "y": vector_to_json(t.y), "slice": t.slice_index}
                  for t in D.terms],
        "sigma_chain": ver.sigma_chain,
    }
    for c in ver.checks:
        report.check(c.name, c.passed, c.detail)


def cmd_bil(prob, args, report: Report) -> None:
    _require(prob, "matrix", "lattice")
    T, L = prob.matrix, prob.lattice
    B = bil(T, L)
    report.results = {"size": len(B), "pairs": [pair_to_json(p) for p in B]}
    report.check("contains_extremes", B.contains_extremes())
    report.check("closed_under_pair_operations", B.is_closed())
    ok = all((projector(p.q) @ T @ projector(p.p)).is_zero() for p in B)
    report.check("pairs_annihilate_T", ok, "Q T P = 0 by projector products")


def _matrices_field(prob, key: str) -> list[Matrix]:
    from .io import parse_matrix
    return [parse_matrix(m, prob.field) for m in prob.raw.get(key, [])]


def cmd_lie_closure(prob, args, report: Report) -> None:
    _require(prob, "nest")
    if not prob.generators:
        raise ProblemError("problem file needs 'generators'")
    N = prob.lattice
    M = lie_module_closure(prob.generators, N)
    algebra = nest_algebra(N)
    report.results = {"dim": M.dim, "nest_algebra_dim": algebra.dim,
                      "basis": [matrix_to_json(B) for B in M.basis],
                      "all_trace_zero": all(B.trace() == 0 for B in M.basis)}
    report.check("contains_generators", all(contains(M, g) for g in prob.generators))
    closed = all(contains(M, lie_bracket(A, B)) for A in M.basis for B in algebra.basis)
    report.check("bracket_closed", closed, "[M, T(N)] is contained in M")
    if "expect_dim" in prob.raw:
        report.check("expected_dimension", M.dim == prob.raw["expect_dim"],
                     f"dim={M.dim}, expected={prob.raw['expect_dim']}")
    for X in _matrices_field(prob, "expect_in"):
        report.check("expected_member", contains(M, X), repr(X))
    for X in _matrices_field(prob, "expect_not_in"):
        report.check("expected_non_member", not contains(M, X), repr(X))


def cmd_decomposable(prob, args, report: Report) -> None:
    _require(prob, "matrix", "nest")
    T, N = prob.matrix, prob.lattice
    if prob.module_basis is not None:
        M = OperatorSpace.span(prob.module_basis, N.ambient_dim)
        module_src = "module_basis"
    elif prob.generators:
        M = lie_module_closure(prob.generators, N)
        module_src = "lie_closure(generators)"
    else:
        raise ProblemError("problem file needs 'module_basis' or 'generators'")
    if not contains(M, T):
        raise ProblemError("matrix is not an element of the module")
    seed, samples = args.resolved_seed, args.resolved_samples
    v = check_decomposable(T, M, N, seed=seed, samples=samples)
    report.results = {
        "status": v.status.value,
        "stage": v.stage,
        "module": {"source": module_src, "dim": M.dim},
        "witness": None if v.witness is None else
        [{"x": vector_to_json(t.x), "y": vector_to_json(t.y)} for t in v.witness],
        "certificate": v.certificate,
        "seed": v.seed,
        "samples": v.samples,
    }
    if v.status is Status.NOT_DECOMPOSABLE:
        report.check("certificate_present", bool(v.certificate))
    if v.status is Status.DECOMPOSABLE:
        total = sum((t.matrix() for t in v.witness), Matrix.zeros(N.ambient_dim))
        ok = total == T and all(rank(t.matrix()) == 1 and contains(M, t.matrix())
                                for t in v.witness)
        report.check("witness_valid", ok)
    if "expect_status" in prob.raw:
        report.check("expected_status", v.status.value == prob.raw["expect_status"],
                     f"got {v.status.value}")


def run_invariant_suite(cases: int, max_dim: int, seed: int) -> dict:
    """Run every property over ``cases`` seeded random instances each."""
    rng = random.Random(seed)
    nest_cases = [random_nest_instance(rng, 2, max_dim) for _ in range(cases)]
    lattice_cases = []
    for _ in range(cases):
        L = random_lattice(rng, 2, min(max_dim, 6))
        lattice_cases.append((random_matrix(rng, L.ambient_dim), L))
    partitions = [(T, random_partition(rng, N)) for T, N in nest_cases]
    suites = {
        "lattice_laws": [(props.check_lattice_laws, (L,)) for _, L in lattice_cases],
        "order_maps": [(props.check_order_maps, c) for c in lattice_cases],
        "bil_identities": [(props.check_bil_identities, c) for c in lattice_cases],
        "bil_closure": [(props.check_bil_closure, c) for c in nest_cases],
        "kernel_map_on_nests": [(props.check_kernel_map_nest, c) for c in nest_cases],
        "kernel_set_bound": [(props.check_kernel_set_bound, c) for c in nest_cases],
        "sigma": [(props.check_sigma, c) for c in nest_cases],
        "decomposition": [(props.check_decomposition, c) for c in nest_cases],
        "truncations": [(props.check_truncations, c) for c in partitions],
        "vector_supports": [(props.check_vector_supports, (N,)) for _, N in nest_cases],
        "independence": [(props.check_independence, (random.Random(seed * 7919 + i), N))
                         for i, (_, N) in enumerate(nest_cases)],
        "witnesses": [(props.check_witnesses, (T, N, seed)) for T, N in nest_cases],
    }
    out = {}
    for name, jobs in suites.items():
        failed = []
        for i, (fn, fargs) in enumerate(jobs):
            bad = fn(*fargs)
            if bad:
                failed.append({"case": i, "violations": bad[:3]})
        out[name] = {"cases": len(jobs), "passed": len(jobs) - len(failed),
                     "failed": len(failed), "failures": failed[:5]}
    return out


def cmd_check_invariants(prob, args, report: Report) -> None:
    seed = args.resolved_seed
    cases = args.cases if args.cases is not None else prob.raw.get("cases", 50) if prob else 50
    max_dim = args.max_dim if args.max_dim is not None else (
        prob.raw.get("max_dim", 6) if prob else 6)
    results = run_invariant_suite(cases, max_dim, seed)
    report.results = {"seed": seed, "cases": cases, "max_dim": max_dim, "properties": results}
    for name, res in results.items():
        report.check(name, res["failed"] == 0, f"{res['passed']}/{res['cases']} passed")


COMMANDS = {
    "kernel-set": cmd_kernel_set,
    "decompose": cmd_decompose,
    "bil": cmd_bil,
    "lie-closure": cmd_lie_closure,
    "decomposable": cmd_decomposable,
    "check-invariants": cmd_check_invariants,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nestkernel",
        description="Kernel maps, kernel sets and rank-one decompositions over finite nests.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("problem", nargs="?", help="JSON problem file")
    parser.add_argument("--seed", type=int, default=None, help="random seed (default: 0)")
    parser.add_argument("--samples", type=int, default=None,
                        help=f"random probe vectors for 'decomposable' (default: {DEFAULT_SAMPLES})")
    parser.add_argument("--field", choices=["Q", "Qi"], default=None,
                        help="scalar field (default: file value, else Q)")
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON report")
    parser.add_argument("--cases", type=int, default=None,
                        help="random instances per property for 'check-invariants' (default: 50)")
    parser.add_argument("--max-dim", type=int, default=None,
                        help="largest dimension for 'check-invariants' (default: 6)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        if args.problem is None:
            if args.command != "check-invariants":
                raise ProblemError(f"'{args.command}' needs a problem file")
            raw = None
        else:
            try:
                raw = json.loads(Path(args.problem).read_text())
            except OSError as exc:
                raise ProblemError(f"cannot read {args.problem}: {exc}") from None
            except json.JSONDecodeError as exc:
                raise ProblemError(f"malformed JSON in {args.problem}: {exc}") from None
        prob = load_problem(raw, args.field) if raw is not None else None
        field = prob.field if prob else (args.field or "Q")
        args.resolved_seed = args.seed if args.seed is not None else (
            prob.seed if prob and prob.seed is not None else 0)
        args.resolved_samples = args.samples if args.samples is not None else (
            prob.samples if prob and prob.samples is not None else DEFAULT_SAMPLES)
        report = Report(args.command, digest(raw), field)
        start = time.perf_counter()
        COMMANDS[args.command](prob, args, report)
        log.info("%s finished in %.3fs", args.command, time.perf_counter() - start)
    except (ProblemError, DimensionMismatch, LatticeError, NotAMember) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    text = json.dumps(report.to_json(), indent=2 if args.pretty else None)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    failed = [c["name"] for c in report.checks if c["mandatory"] and not c["passed"]]
    mandatory = sum(c["mandatory"] for c in report.checks)
    print(f"{args.command}: {mandatory - len(failed)}/{mandatory} mandatory checks passed",
          file=sys.stderr)
    if failed:
        print(f"FAILED checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
