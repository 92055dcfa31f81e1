"""Command-line front end: JSON in, JSON (or a plain table) out.

Exit codes: 0 success, 1 a check failed or the input is mathematically invalid, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from importlib import resources
from typing import Callable, Sequence

from .algebra import AlgebraSpec
from .cartan import (
    CartanError,
    OrientationError,
    cartan_violations,
    derived_constants,
    dynkin_type,
    minimal_symmetrizer,
    quadratic_form,
    validate_cartan,
)
from .construct import generalized_simple, injective, projective, simple
from .functors import (
    CriteriaDisagreement,
    classify_tau_locally_free,
    is_gorenstein_projective,
    tau,
    tau_minus,
    tau_orbit,
)
from .linalg import FieldDescriptor
from .pimod import embed_as_pi, ext1_pi, ext2_pi, hom_pi, q_complex
from .rep import (
    NotLocallyFreeError,
    Representation,
    coxeter_matrix,
    ext1_dim,
    hom_dim,
    is_isomorphic,
    is_locally_free,
    projective_dimension_vectors,
    validate,
)
from .roots import NotDynkinError, positive_roots, reflection_closure_oracle

SCHEMA = 1
log = logging.getLogger("symquiver")

FIXTURES = ("a2_d22", "b2", "b3", "c3", "g2", "rank3_example", "affine_a1")
DYNKIN_FIXTURES = ("a2_d22", "b2", "b3", "c3", "g2")


def load_fixture(name: str) -> dict:
    path = resources.files("symquiver") / "fixtures" / f"{name}.json"
    return json.loads(path.read_text())


def fixture_spec(name: str, kind: str = "H", field: FieldDescriptor | None = None) -> AlgebraSpec:
    return AlgebraSpec.from_json(load_fixture(name), kind=kind, field=field)


# I/O helpers


def _read_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _problem(data: dict, args, kind: str = "H") -> AlgebraSpec:
    return AlgebraSpec.from_json(data, kind=kind, field=args.field)


def _load_rep(path: str, args) -> Representation:
    data = _read_json(path)
    prob = _read_json(args.problem) if getattr(args, "problem", None) else data.get("problem")
    if prob is None:
        raise ValueError(f"{path}: no embedded problem; pass --problem FILE")
    spec = _problem(prob, args, data.get("kind", "H"))
    return Representation.from_json(spec, data)


def _pairs_json(d: dict) -> dict:
    return {f"{i + 1},{j + 1}": v for (i, j), v in sorted(d.items())}


def _table(obj, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            nested = isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], dict))
            if nested and v:
                lines.append(f"{indent}{k}:")
                lines.append(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if obj and isinstance(obj[0], dict):
            keys = list(obj[0])
            rows = [keys] + [[json.dumps(r.get(k)) for k in keys] for r in obj]
            widths = [max(len(str(row[c])) for row in rows) for c in range(len(keys))]
            return "\n".join(indent + "  ".join(str(x).ljust(w) for x, w in zip(row, widths)) for row in rows)
        return "\n".join(f"{indent}{json.dumps(x)}" for x in obj)
    return f"{indent}{json.dumps(obj)}"


def _emit(args, payload) -> None:
    if args.format == "table":
        print(_table(payload))
    elif isinstance(payload, dict):
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2))
    else:
        print(json.dumps(payload))


# subcommands


def cmd_cartan_check(args) -> int:
    data = _read_json(args.file)
    problems = cartan_violations(data["cartan"])
    if problems:
        _emit(args, {"valid": False, "violations": problems})
        return 1
    try:
        spec = _problem(data, args)
    except (CartanError, OrientationError, ValueError) as exc:
        _emit(args, {"valid": False, "violations": [str(exc)]})
        return 1
    c = spec.cartan
    dc = derived_constants(c, spec.symmetrizer)
    _emit(args, {
        "valid": True,
        "cartan": c.to_lists(),
        "symmetrizer": list(spec.symmetrizer),
        "minimal": tuple(spec.symmetrizer) == minimal_symmetrizer(c),
        "dynkin": dynkin_type(c).label(),
        "orientation": [[i + 1, j + 1] for i, j in sorted(spec.orientation)],
        "g": _pairs_json(dc.g),
        "f": _pairs_json(dc.f),
        "k": _pairs_json(dc.k),
    })
    return 0


def cmd_roots_list(args) -> int:
    c = validate_cartan(_read_json(args.file)["cartan"])
    try:
        roots = positive_roots(c)
    except NotDynkinError as exc:
        oracle = reflection_closure_oracle(c, cap=args.cap)
        log.info("%s; oracle capped=%s", exc, oracle.capped)
        _emit(args, {"error": str(exc), "oracle_capped": oracle.capped, "oracle_count": len(oracle.roots)})
        return 1
    _emit(args, sorted(list(r) for r in roots))
    return 0


def cmd_algebra_info(args) -> int:
    spec = _problem(_read_json(args.file), args, "Pi" if args.pi else "H")
    dc = spec.derived
    out = {
        "kind": spec.kind,
        "n": spec.n,
        "dynkin": dynkin_type(spec.cartan).label(),
        "symmetrizer": list(spec.symmetrizer),
        "field": spec.field.to_json(),
        "arrows": [f"alpha:{i + 1}:{j + 1}:{g + 1}" for i, j, g in spec.arrows],
        "loops": [f"eps:{i + 1}" for i in range(spec.n)],
        "g": _pairs_json(dc.g),
        "f": _pairs_json(dc.f),
    }
    if spec.kind == "H":
        out["projective_dims"] = [list(v) for v in projective_dimension_vectors(spec)]
    if args.relations:
        out["relations"] = spec.relations()
    _emit(args, out)
    return 0


_BUILDERS: dict[str, Callable] = {"E": generalized_simple, "S": simple, "P": projective, "I": injective}


def cmd_module_build(args) -> int:
    data = _read_json(args.file)
    spec = _problem(data, args)
    i = args.vertex - 1
    if not 0 <= i < spec.n:
        raise ValueError(f"vertex {args.vertex} out of range 1..{spec.n}")
    m = _BUILDERS[args.kind](spec, i)
    out = m.to_json()
    out["problem"] = spec.to_json()
    _emit(args, out)
    return 0


def cmd_module_validate(args) -> int:
    m = _load_rep(args.file, args)
    bad = validate(m)
    lf, ranks = is_locally_free(m)
    _emit(args, {
        "valid": not bad,
        "violations": [{"relation": v.relation, "where": v.where, "witness": v.witness} for v in bad],
        "dims": list(m.dims),
        "locally_free": lf,
        "rank_vector": list(ranks) if ranks else None,
    })
    return 1 if bad else 0


def cmd_hom(args) -> int:
    m, n = _load_rep(args.m, args), _load_rep(args.n, args)
    _emit(args, {"hom": hom_dim(m, n)})
    return 0


def cmd_ext(args) -> int:
    m, n = _load_rep(args.m, args), _load_rep(args.n, args)
    if args.pi:
        if m.spec.kind == "H":
            m = embed_as_pi(m)
        if n.spec.kind == "H":
            n = embed_as_pi(n)
        qmn, qnm = q_complex(m, n), q_complex(n, m)
        try:
            e2 = ext2_pi(m, n, qmn)
        except ValueError:
            e2 = None
        e1 = ext1_pi(m, n, qmn)
        _emit(args, {"hom": hom_pi(m, n, qmn), "ext1": e1, "ext2": e2, "symmetric": e1 == ext1_pi(n, m, qnm)})
        return 0
    _emit(args, {"hom": hom_dim(m, n), "ext1": ext1_dim(m, n)})
    return 0


def cmd_tau_orbit(args) -> int:
    spec = _problem(_read_json(args.file), args)
    orbit = tau_orbit(spec, args.vertex - 1, cap=args.cap)
    _emit(args, {
        "vertex": args.vertex,
        "terminated": orbit.terminated,
        "length": len(orbit.items),
        "members": [{"k": k, "rank": list(r), "dims": list(m.dims)} for k, (m, r) in enumerate(orbit.items)],
    })
    return 0


def cmd_classify(args) -> int:
    spec = _problem(_read_json(args.file), args)
    ranks = classify_tau_locally_free(spec, cap=args.cap)
    _emit(args, {"dynkin": dynkin_type(spec.cartan).label(), "count": len(ranks), "rank_vectors": [list(r) for r in ranks]})
    return 0


def cmd_gp_check(args) -> int:
    m = _load_rep(args.file, args)
    try:
        gp = is_gorenstein_projective(m)
    except CriteriaDisagreement as exc:
        _emit(args, {"gorenstein_projective": None, "error": str(exc)})
        return 1
    _emit(args, {"gorenstein_projective": gp, "dims": list(m.dims)})
    return 0


# the built-in regression suite


def _suite_dynkin(rng: random.Random) -> list[tuple[str, object, Callable[[], object]]]:
    checks: list[tuple[str, object, Callable[[], object]]] = []

    def rank3_constants():
        spec = fixture_spec("rank3_example")
        d = spec.derived
        return [list(spec.symmetrizer), d.g[0, 1], d.f[0, 1], d.f[1, 0], d.g[1, 2], d.f[1, 2], d.f[2, 1]]

    checks.append(("rank3 symmetrizer and constants", [[9, 6, 2], 2, 2, 3, 3, 1, 3], rank3_constants))

    def b2_dims():
        spec = fixture_spec("b2")
        return [projective(spec, 0).dim(), projective(spec, 1).dim(), injective(spec, 0).dim(), injective(spec, 1).dim()]

    checks.append(("B2 dim P1, P2, I1, I2", [2, 3, 4, 1], b2_dims))
    checks.append(("A2 D=(2,2) dim P2", 4, lambda: projective(fixture_spec("a2_d22"), 1).dim()))
    checks.append(("B2 Coxeter matrix", [[-1, 2], [-1, 1]], lambda: coxeter_matrix(fixture_spec("b2"))))

    def ext_e2_e1():
        spec = fixture_spec("b2")
        return ext1_dim(generalized_simple(spec, 1), generalized_simple(spec, 0))

    checks.append(("B2 Ext1(E2, E1)", 2, ext_e2_e1))

    for name in DYNKIN_FIXTURES:
        def classify(name=name):
            spec = fixture_spec(name)
            return sorted(list(r) for r in classify_tau_locally_free(spec))

        def oracle(name=name):
            return sorted(list(r) for r in reflection_closure_oracle(fixture_spec(name).cartan).roots)

        checks.append((f"{name} tau-locally free = positive roots", oracle(), classify))

    def gp_a2():
        spec = fixture_spec("a2_d22")
        mods = [simple(spec, 0), simple(spec, 1), projective(spec, 0), projective(spec, 1)]
        return [is_gorenstein_projective(m) for m in mods]

    checks.append(("A2 D=(2,2) GP of S1, S2, P1, P2", [True, False, True, True], gp_a2))

    def b3_witness():
        c = fixture_spec("b3").cartan
        roots = reflection_closure_oracle(c).roots
        return [(1, 2, 1) in roots, quadratic_form(c, minimal_symmetrizer(c), (1, 2, 1))]

    checks.append(("B3 (1,2,1) not a root, q = 3", [False, 3], b3_witness))

    def tau_roundtrip():
        spec = fixture_spec("b2")
        out = []
        for i in range(spec.n):
            for m, _ in tau_orbit(spec, i).items[1:]:
                out.append(bool(is_isomorphic(tau_minus(tau(m)), m, rng=rng)))
        return out

    checks.append(("B2 tau^- tau(M) isomorphic to M off the projectives", [True, True], tau_roundtrip))
    return checks


def _suite_extra(rng: random.Random) -> list[tuple[str, object, Callable[[], object]]]:
    def affine_orbit():
        return tau_orbit(fixture_spec("affine_a1"), 0, cap=6).capped

    def affine_oracle():
        return reflection_closure_oracle(fixture_spec("affine_a1").cartan, cap=50).capped

    def affine_complex():
        spec = fixture_spec("affine_a1")
        m = embed_as_pi(projective(spec, 0))
        n = embed_as_pi(projective(spec, 1))
        qc = q_complex(m, n)
        return qc.is_complex()

    return [
        ("affine tau-orbit reaches the cap", True, affine_orbit),
        ("affine reflection closure capped", True, affine_oracle),
        ("affine Q-complex is a complex", True, affine_complex),
    ]


SUITES = {"dynkin": (_suite_dynkin,), "all": (_suite_dynkin, _suite_extra)}


def run_suite(name: str, seed: int) -> list[dict]:
    rng = random.Random(seed)
    checks = [c for build in SUITES[name] for c in build(rng)]
    report = []
    for label, expected, thunk in checks:
        t0 = time.perf_counter()
        try:
            actual = thunk()
        except Exception as exc:  # a crash is a failed check, reported like any other
            actual = f"error: {type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - t0
        report.append({"name": label, "expected": expected, "actual": actual,
                       "pass": actual == expected, "elapsed": round(elapsed, 4)})
        log.info("%s: %s (%.3fs)", label, "pass" if actual == expected else "FAIL", elapsed)
    return report


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.seed)
    ok = all(r["pass"] for r in report)
    if args.format == "table":
        print(_table(report))
    else:
        print(json.dumps({"schema": SCHEMA, "suite": args.suite, "seed": args.seed, "pass": ok,
                          "checks": report}, indent=2, default=list))
    return 0 if ok else 1


# parser


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    sup = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=("json", "table"), **({"default": "json"} if defaults else sup))
    p.add_argument("--seed", type=int, **({"default": 0} if defaults else sup))
    p.add_argument("--field", type=FieldDescriptor.parse, **({"default": None} if defaults else sup))
    p.add_argument("-v", "--verbose", action="store_true", **({"default": False} if defaults else sup))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_options(False)
    parser = argparse.ArgumentParser(prog="symquiver", parents=[_global_options(True)],
                                     description="Exact computations for H(C,D,Omega) and Pi(C,D).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(group, name, func, help_text):
        p = group.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    cartan = sub.add_parser("cartan").add_subparsers(dest="action", required=True)
    add(cartan, "check", cmd_cartan_check, "validate a problem file and echo derived constants").add_argument("file")

    roots = sub.add_parser("roots").add_subparsers(dest="action", required=True)
    p = add(roots, "list", cmd_roots_list, "positive roots, sorted")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=1000)

    alg = sub.add_parser("algebra").add_subparsers(dest="action", required=True)
    p = add(alg, "info", cmd_algebra_info, "arrows, constants and relations")
    p.add_argument("file")
    p.add_argument("--relations", action="store_true")
    p.add_argument("--pi", action="store_true")

    mod = sub.add_parser("module").add_subparsers(dest="action", required=True)
    p = add(mod, "build", cmd_module_build, "emit E_i, S_i, P_i or I_i")
    p.add_argument("file")
    p.add_argument("--kind", choices=sorted(_BUILDERS), required=True)
    p.add_argument("--vertex", type=int, required=True)
    p = add(mod, "validate", cmd_module_validate, "check the defining relations")
    p.add_argument("file")
    p.add_argument("--problem")

    p = add(sub, "hom", cmd_hom, "dim Hom(M, N)")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("--problem")

    p = add(sub, "ext", cmd_ext, "dim Ext^1(M, N), or the Pi-complex report with --pi")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("--pi", action="store_true")
    p.add_argument("--problem")

    p = add(sub, "tau-orbit", cmd_tau_orbit, "P_i, tau^-(P_i), ... up to a cap")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--cap", type=int, default=64)

    p = add(sub, "classify", cmd_classify, "rank vectors of all tau-locally free modules")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=256)

    p = add(sub, "gp-check", cmd_gp_check, "Gorenstein-projectivity of a module")
    p.add_argument("file")
    p.add_argument("--problem")

    p = add(sub, "verify", cmd_verify, "run the built-in regression suite")
    p.add_argument("--suite", choices=sorted(SUITES), default="dynkin")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    log.info("seed %d", args.seed)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"symquiver: cannot read input: {exc}", file=sys.stderr)
        return 2
    except (CartanError, OrientationError, NotDynkinError, NotLocallyFreeError, ValueError) as exc:
        print(f"symquiver: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
