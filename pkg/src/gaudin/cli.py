"""Command-line front end.

Exit codes: 0 success, 1 invariant or theorem violation, 2 I/O or parse
error, 3 unsupported regime (atypical data, unfactorable polynomials,
size guards).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .bethe import (
    BethePoint,
    bae_check_direct,
    eigenvalue_conservation,
    gaudin_eigenvalues,
    admissible_sites,
    populate,
    verify_r_invariance,
)
from .errors import (
    AtypicalUnsupported,
    EngineError,
    InvalidInput,
    TooLarge,
    UnsupportedFactorization,
    UnsupportedIrrationalRamification,
)
from .rational import Poly, qq
from .reps import TensorSystem, gl11_module, gl11_spectrum_report
from .spaces import kernel_spaces, space_weight_polys, verify_operator_to_population
from .weights import ParitySequence, ProblemData, Weight

UNSUPPORTED = (
    AtypicalUnsupported,
    UnsupportedFactorization,
    TooLarge,
    UnsupportedIrrationalRamification,
)


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(_fail(f"cannot read input: {exc}", 2))


def _emit(payload, out_path):
    text = jsonio.dumps(payload)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(message, code):
    sys.stderr.write(message + "\n")
    return code


def _parse_samples(text):
    return [qq(part.strip()) for part in text.split(",") if part.strip()]


def cmd_population(args) -> int:
    data = _load(args.input)
    try:
        problem = jsonio.problem_from_json(data["problem"])
        seed = jsonio.point_from_json(problem, data["seed"])
        samples = _parse_samples(args.samples)
        pop = populate(seed, samples, max_depth=args.max_depth)
        invariant = verify_r_invariance(pop)
        payload = jsonio.population_to_json(pop)
        payload["R_invariant"] = invariant
        payload["components"] = {
            ",".join(map(str, parity)): len(points)
            for parity, points in pop.by_parity().items()
        }
        if problem.points is not None:
            table = []
            for point in pop.points():
                sites = admissible_sites(point)
                table.append(
                    {
                        "node": jsonio.point_to_json(point),
                        "admissible": sites,
                        "eigenvalues": {
                            str(k): jsonio.scalar_to_json(v)
                            for k, v in zip(
                                range(1, problem.n_points + 1), gaudin_eigenvalues(point)
                            )
                        }
                        if len(sites) == problem.n_points
                        else None,
                    }
                )
            payload["eigenvalue_table"] = table
            payload["eigenvalues_conserved"] = eigenvalue_conservation(pop)
        else:
            payload["eigenvalue_table"] = None
    except (KeyError, InvalidInput) as exc:
        return _fail(f"bad input: {exc}", 2)
    except UNSUPPORTED as exc:
        return _fail(f"unsupported: {exc}", 3)
    except EngineError as exc:
        return _fail(f"engine failure: {exc}", 1)
    _emit(payload, args.out)
    ok = payload["R_invariant"] and payload.get("eigenvalues_conserved", True)
    return 0 if ok else 1


def cmd_check_bae(args) -> int:
    data = _load(args.input)
    try:
        problem = jsonio.problem_from_json(data["problem"])
        parity = jsonio.parity_from_json(data["parity"])
        tlists = [[jsonio.scalar_from_json(t) for t in row] for row in data["t"]]
        satisfied = bae_check_direct(problem, parity, tlists)
    except (KeyError, InvalidInput) as exc:
        return _fail(f"bad input: {exc}", 2)
    except UNSUPPORTED as exc:
        return _fail(f"unsupported: {exc}", 3)
    except EngineError as exc:
        return _fail(f"engine failure: {exc}", 1)
    _emit({"satisfied": satisfied}, args.out)
    return 0 if satisfied else 1


def cmd_rpdo_equal(args) -> int:
    data = _load(args.input)
    try:
        fa = jsonio.factorization_from_json(data["A"])
        fb = jsonio.factorization_from_json(data["B"])
        equal = fa.same_operator(fb)
    except (KeyError, InvalidInput) as exc:
        return _fail(f"bad input: {exc}", 2)
    except EngineError as exc:
        return _fail(f"engine failure: {exc}", 1)
    _emit({"equal": equal}, args.out)
    return 0 if equal else 1


def cmd_space(args) -> int:
    data = _load(args.input)
    try:
        problem = jsonio.problem_from_json(data["problem"])
        seed = jsonio.point_from_json(problem, data["seed"])
        samples = _parse_samples(args.samples)
        pop = populate(seed, samples, max_depth=args.max_depth)
        space = kernel_spaces(pop)
        report = verify_operator_to_population(pop)
        payload = {
            "space": jsonio.space_to_json(space),
            "TW": [jsonio.poly_to_json(t) for t in space_weight_polys(space)],
            "verification": report,
        }
    except (KeyError, InvalidInput) as exc:
        return _fail(f"bad input: {exc}", 2)
    except UNSUPPORTED as exc:
        return _fail(f"unsupported: {exc}", 3)
    except EngineError as exc:
        return _fail(f"engine failure: {exc}", 1)
    _emit(payload, args.out)
    return 0


def cmd_gl11_spectrum(args) -> int:
    data = _load(args.input)
    try:
        weights = data["weights"]
        points = [jsonio.scalar_from_json(z) for z in data["points"]]
        modules = [
            gl11_module(jsonio.scalar_from_json(str(p)), jsonio.scalar_from_json(str(q)))
            for p, q in weights
        ]
        system = TensorSystem(modules, points)
        report = gl11_spectrum_report(system)
    except (KeyError, InvalidInput) as exc:
        return _fail(f"bad input: {exc}", 2)
    except UNSUPPORTED as exc:
        return _fail(f"unsupported: {exc}", 3)
    except EngineError as exc:
        return _fail(f"engine failure: {exc}", 1)
    _emit(report, args.out)
    ok = report["counts_match"] and report["eigenvalues_match"]
    return 0 if ok else 1


def _selftest_problem() -> tuple[ProblemData, BethePoint]:
    x3m1 = Poly((-1, 0, 0, 1))
    problem = ProblemData(
        2,
        1,
        [Weight(2, 1, (1, 1, 0))] * 3,
        ts=[x3m1, x3m1, Poly.one()],
    )
    seed = BethePoint(problem, ParitySequence.standard(2, 1), [Poly.one(), Poly.one()])
    return problem, seed


def cmd_selftest(args) -> int:
    try:
        _, seed = _selftest_problem()
        pop = populate(seed, [qq(0), qq(1), qq(2)])
        checks = {
            "population_size": len(pop.nodes),
            "three_components": len(pop.by_parity()) == 3,
            "R_invariant": verify_r_invariance(pop),
            "bijection": verify_operator_to_population(pop)["space_polys_match"],
        }
    except EngineError as exc:
        return _fail(f"selftest failure: {exc}", 1)
    _emit(checks, args.out)
    ok = checks["three_components"] and checks["R_invariant"] and checks["bijection"]
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaudin",
        description="Exact Bethe-ansatz population engine for gl(M|N) Gaudin models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", default="-", help="input JSON file (default stdin)")
        p.add_argument("--out", default=None, help="output JSON file (default stdout)")
        p.add_argument("--max-depth", type=int, default=16)
        p.add_argument("--samples", default="0,1,2", help="comma-separated scalars")
        p.add_argument("--jobs", type=int, default=1, help="parallelism budget (advisory)")

    p = sub.add_parser("population", help="explore a population and verify invariants")
    common(p)
    p.set_defaults(func=cmd_population)

    p = sub.add_parser("check-bae", help="exact residue check of explicit Bethe roots")
    common(p)
    p.set_defaults(func=cmd_check_bae)

    p = sub.add_parser("rpdo-equal", help="compare two complete factorizations")
    common(p)
    p.set_defaults(func=cmd_rpdo_equal)

    p = sub.add_parser("space", help="kernel space, weight polynomials, bijection check")
    common(p)
    p.set_defaults(func=cmd_space)

    p = sub.add_parser("gl11-spectrum", help="divisor/eigenvector report for gl(1|1)")
    common(p)
    p.set_defaults(func=cmd_gl11_spectrum)

    p = sub.add_parser("selftest", help="run the built-in worked example")
    common(p)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
