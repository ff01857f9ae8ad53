"""JSON wire formats.

Scalars serialize as ``"p/q"`` (or ``"p"`` for integers), polynomials as
ascending coefficient arrays, rational functions as ``{num, den}`` pairs.
All emitters sort keys so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bethe import BethePoint, Population
from .errors import InvalidInput
from .rational import Poly, RatFun, qq
from .skew import CompleteFactorization, DiffOp, OreFraction
from .weights import ParitySequence, ProblemData, Weight


def scalar_to_json(x: Fraction) -> str:
    return str(qq(x))


def scalar_from_json(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, int):
        return Fraction(s)
    raise InvalidInput(f"bad scalar payload: {s!r}")


def poly_to_json(p: Poly) -> list[str]:
    return [scalar_to_json(c) for c in p.coeffs]


def poly_from_json(data) -> Poly:
    if not isinstance(data, list):
        raise InvalidInput(f"bad polynomial payload: {data!r}")
    return Poly([scalar_from_json(c) for c in data])


def ratfun_to_json(f: RatFun) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfun_from_json(data) -> RatFun:
    if not isinstance(data, dict) or "num" not in data:
        raise InvalidInput(f"bad rational-function payload: {data!r}")
    return RatFun(poly_from_json(data["num"]), poly_from_json(data.get("den", ["1"])))


def diffop_to_json(op: DiffOp) -> list[dict]:
    return [ratfun_to_json(c) for c in op.coeffs]


def diffop_from_json(data) -> DiffOp:
    return DiffOp([ratfun_from_json(c) for c in data])


def fraction_to_json(fr: OreFraction) -> dict:
    m = fr.minimal()
    return {"num": diffop_to_json(m.num), "den": diffop_to_json(m.den)}


def parity_from_json(data) -> ParitySequence:
    return ParitySequence(data)


def factorization_to_json(fac: CompleteFactorization) -> dict:
    return {
        "parity": list(fac.parity.entries),
        "factors": [ratfun_to_json(a) for a in fac.coefficients],
    }


def factorization_from_json(data) -> CompleteFactorization:
    return CompleteFactorization(
        parity_from_json(data["parity"]),
        [ratfun_from_json(a) for a in data["factors"]],
    )


def problem_to_json(problem: ProblemData) -> dict:
    out = {
        "M": problem.m,
        "N": problem.n,
        "parity": list(problem.parity.entries),
        "weights": [[scalar_to_json(c) for c in w.coords] for w in problem.weights],
    }
    if problem.points is not None:
        out["points"] = [scalar_to_json(z) for z in problem.points]
    else:
        out["Ts"] = [poly_to_json(t) for t in problem.ts_standard]
    return out


def problem_from_json(data) -> ProblemData:
    try:
        m, n = int(data["M"]), int(data["N"])
        weights = [Weight(m, n, [scalar_from_json(c) for c in row]) for row in data["weights"]]
        points = data.get("points")
        if points is not None:
            points = [scalar_from_json(z) for z in points]
        ts = data.get("Ts")
        if ts is not None:
            ts = [poly_from_json(t) for t in ts]
        parity = parity_from_json(data["parity"]) if "parity" in data else None
        return ProblemData(m, n, weights, points=points, ts=ts, parity=parity)
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed problem payload: {exc}") from exc


def point_to_json(point: BethePoint) -> dict:
    return {
        "parity": list(point.parity.entries),
        "ys": [poly_to_json(y) for y in point.ys],
    }


def point_from_json(problem: ProblemData, data) -> BethePoint:
    return BethePoint(
        problem,
        parity_from_json(data["parity"]),
        [poly_from_json(y) for y in data["ys"]],
    )


def population_to_json(pop: Population) -> dict:
    keys = list(pop.nodes.keys())
    index = {k: i for i, k in enumerate(keys)}
    return {
        "problem": problem_to_json(pop.problem),
        "nodes": [point_to_json(pop.nodes[k]) for k in keys],
        "edges": [
            {
                "from": index[e.source],
                "to": index[e.target],
                "direction": e.direction,
                "kind": e.kind,
                **({"scalar": scalar_to_json(e.scalar)} if e.scalar is not None else {}),
            }
            for e in pop.edges
        ],
        "R": fraction_to_json(pop.operator()),
    }


def space_to_json(space) -> dict:
    return {
        "Vbasis": [ratfun_to_json(f) for f in space.vbasis],
        "Ubasis": [ratfun_to_json(f) for f in space.ubasis],
    }


def dumps(payload) -> str:
    return json.dumps(_plain(payload), sort_keys=True, indent=2) + "\n"


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return scalar_to_json(value)
    if isinstance(value, Poly):
        return poly_to_json(value)
    if isinstance(value, RatFun):
        return ratfun_to_json(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    raise InvalidInput(f"cannot serialize {type(value).__name__}")
