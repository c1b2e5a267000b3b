"""Command-line front end.

Exit codes: 0 on success or pass, 1 when a computed result misses a stated
expectation, 2 on usage errors (unknown flags, unknown algebra, bad files).
`--json` switches every subcommand to machine-readable output with sorted
keys; two runs over the same inputs produce byte-identical documents.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .actions import sl2_decompose, weight_decompose
from .algebra import AlgebraSpec, LawViolation, builtin_names, parse_builtin
from .constructions import km_window
from .algebra import killing_form
from .jordan import closure_check, counterexample_suite, jordan_identity_defect, jordan_structure_constants
from .linalg import Matrix, Subspace
from .scenarios import run_all, run_scenario, scenario_ids
from .serialize import (
    algebra_from_json,
    algebra_to_json,
    format_scalar,
    parse_scalar,
    partial_to_json,
    solution_to_json,
    subspace_to_json,
)
from .solver import (
    BILINEAR_KINDS,
    HOM_LIE,
    parse_kind,
    solve_bilinear,
    solve_qder,
    solve_structures,
)
from .window import solve_window

USAGE_ERROR = 2
EXPECTATION_FAILURE = 1


class UsageError(Exception):
    pass


def _resolve_algebra(spec: str) -> AlgebraSpec:
    path = Path(spec)
    if spec.endswith(".json") or path.is_file():
        try:
            doc = json.loads(path.read_text())
            return algebra_from_json(doc)
        except FileNotFoundError:
            raise UsageError(f"algebra file not found: {spec}")
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise UsageError(f"cannot read algebra file {spec}: {e}")
    try:
        return parse_builtin(spec)
    except ValueError as e:
        raise UsageError(str(e))


def _emit(doc, as_json: bool, human: str) -> None:
    if as_json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(human)


def _cmd_solve(args) -> int:
    alg = _resolve_algebra(args.algebra)
    kind = parse_kind(args.kind)
    sol = solve_structures(alg, kind)
    doc = solution_to_json(str(kind), algebra_to_json(alg), sol.space, alg.dim)
    _emit(doc, args.json, f"{args.kind} on {args.algebra}: solution space of dim {sol.dim}")
    return 0


def _cmd_bilinear(args) -> int:
    alg = _resolve_algebra(args.algebra)
    if args.kind not in BILINEAR_KINDS:
        raise UsageError(f"unknown bilinear kind {args.kind!r}; choose from {', '.join(BILINEAR_KINDS)}")
    space = solve_bilinear(alg, args.kind)
    doc = solution_to_json(args.kind, algebra_to_json(alg), space, alg.dim)
    _emit(doc, args.json, f"{args.kind} forms on {args.algebra}: dim {space.dim}")
    return 0


def _cmd_qder(args) -> int:
    alg = _resolve_algebra(args.algebra)
    sol = solve_qder(alg, args.module)
    doc = {
        "algebra": algebra_to_json(alg),
        "module": args.module,
        "pairs_dim": sol.dim,
        "d_component_dim": sol.d_component().dim,
        "pairs_basis": subspace_to_json(sol.space)["basis"],
    }
    _emit(doc, args.json, f"quasiderivation pairs on {args.algebra} ({args.module}): dim {sol.dim}, "
                          f"D-component dim {sol.d_component().dim}")
    return 0


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated indices, got {text!r}")


def _cmd_decompose(args) -> int:
    alg = _resolve_algebra(args.algebra)
    sol = solve_structures(alg, parse_kind(args.kind))
    doc: dict = {"algebra": algebra_to_json(alg), "kind": args.kind, "space_dim": sol.dim}
    lines = [f"{args.kind} space on {args.algebra}: dim {sol.dim}"]
    if args.torus is None and args.triple is None:
        raise UsageError("decompose needs --torus and/or --triple")
    if args.torus is not None:
        torus = [alg.basis_vector(i) for i in _parse_indices(args.torus)]
        comps = weight_decompose(alg, torus, sol.space)
        doc["weights"] = [
            {"weight": [format_scalar(w) for w in c.weight], "dim": c.component.dim} for c in comps
        ]
        lines += [f"  weight {tuple(str(w) for w in c.weight)}: dim {c.component.dim}" for c in comps]
    if args.triple is not None:
        idx = _parse_indices(args.triple)
        if len(idx) != 3:
            raise UsageError("--triple needs exactly three indices")
        triple = tuple(alg.basis_vector(i) for i in idx)
        dims = sl2_decompose(alg, triple, sol.space)  # type: ignore[arg-type]
        doc["irreducible_dims"] = dims
        lines.append(f"  irreducible dims: {dims}")
    _emit(doc, args.json, "\n".join(lines))
    return 0


def _cmd_jordan(args) -> int:
    if args.counterexample:
        rep = counterexample_suite()
        ok = rep.phi_member and rep.psi_member and not rep.product_member
        _emit(
            {"counterexample": rep.to_json(), "verified": ok},
            args.json,
            f"non-closure witness at truncation order {rep.truncation_order}, "
            f"triple {rep.violating_triple}: verified={ok}",
        )
        return 0 if ok else EXPECTATION_FAILURE
    if args.algebra is None:
        raise UsageError("jordan needs --algebra or --counterexample")
    alg = _resolve_algebra(args.algebra)
    sol = solve_structures(alg, HOM_LIE)
    verdict = closure_check(sol)
    doc: dict = {"algebra": algebra_to_json(alg), "space_dim": sol.dim, "closed": verdict.closed}
    if verdict.closed and sol.dim:
        jalg = jordan_structure_constants(sol, verdict)
        defect = jordan_identity_defect(jalg)
        doc["jordan_identity_holds"] = defect is None
        doc["structure_constants"] = algebra_to_json(jalg)["table"]
        human = (f"structure space on {args.algebra} (dim {sol.dim}) is closed; "
                 f"jordan identity holds: {defect is None}")
    elif verdict.closed:
        human = f"structure space on {args.algebra} is zero; trivially closed"
    else:
        w = verdict.witness
        doc["witness"] = {
            "pair": [w.phi_index, w.psi_index],
            "violating_triple": list(w.violating_triple),
            "residual": [format_scalar(x) for x in w.residual],
        }
        human = (f"structure space on {args.algebra} is NOT closed: product of basis maps "
                 f"{w.phi_index},{w.psi_index} fails at triple {w.violating_triple}")
    _emit(doc, args.json, human)
    return 0


def _load_twist(path: str, dim: int):
    try:
        doc = json.loads(Path(path).read_text())
        n = int(doc["n"])
        comps = []
        for vectors in doc["components"]:
            comps.append(
                Subspace.from_spanning(
                    [tuple(parse_scalar(x) for x in v) for v in vectors], dim
                )
            )
        return comps, n
    except FileNotFoundError:
        raise UsageError(f"twist file not found: {path}")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"cannot read twist file {path}: {e}")


def _cmd_window(args) -> int:
    alg = _resolve_algebra(args.algebra)
    twist = _load_twist(args.twist, alg.dim) if args.twist else None
    pa = km_window(alg, killing_form(alg), args.window, twist=twist)
    sol = solve_window(pa, args.shift)
    ident_in = sol.full.space.contains(Matrix.identity(pa.dim).flatten())
    doc = {
        "window_algebra": partial_to_json(pa),
        "shift": args.shift,
        "solution_dim": sol.full.dim,
        "identity_member": ident_in,
        "inner_report": sol.inner.to_json(),
    }
    _emit(
        doc,
        args.json,
        f"window N={args.window} on {args.algebra}: ambient dim {pa.dim}, solution dim {sol.full.dim}, "
        f"identity member: {ident_in}\ninner report: {sol.inner.to_json()}",
    )
    return 0


def _cmd_reproduce(args) -> int:
    if args.all == (args.id is not None):
        raise UsageError("give exactly one of a scenario id or --all")
    results = run_all() if args.all else [run_scenario_checked(args.id)]
    doc = {"results": [r.to_json() for r in results]}
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for r in results:
            print(f"[{r.status.upper():11}] {r.id}: {r.description}")
    return 0 if all(r.status != "fail" for r in results) else EXPECTATION_FAILURE


def run_scenario_checked(scenario_id: str):
    try:
        return run_scenario(scenario_id)
    except KeyError:
        raise UsageError(f"unknown scenario {scenario_id!r}; see `homlie list`")


def _cmd_validate(args) -> int:
    path = Path(args.algebra)
    if not path.is_file():
        raise UsageError(f"validate needs an algebra file, not found: {args.algebra}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise UsageError(f"not valid JSON: {e}")
    try:
        alg = algebra_from_json(doc)
    except LawViolation as e:
        _emit(
            {"valid": False, "law": e.law, "witness": list(e.witness),
             "residual": [format_scalar(x) for x in e.residual]},
            args.json,
            f"INVALID: {e.law} fails on basis tuple {e.witness}",
        )
        return EXPECTATION_FAILURE
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"malformed algebra description: {e}")
    _emit(
        {"valid": True, "dim": alg.dim, "flavor": alg.flavor},
        args.json,
        f"valid {alg.flavor} algebra of dim {alg.dim}",
    )
    return 0


def _cmd_list(args) -> int:
    doc = {
        "builtins": builtin_names(),
        "structure_kinds": ["hom-lie", "hom-cyclic", "hom-2nilp", "delta:<p/q>", "multiplicative-check-only"],
        "bilinear_kinds": list(BILINEAR_KINDS),
        "scenarios": scenario_ids(),
    }
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print("builtin algebras:", ", ".join(doc["builtins"]))
        print("structure kinds: ", ", ".join(doc["structure_kinds"]))
        print("bilinear kinds:  ", ", ".join(doc["bilinear_kinds"]))
        print("scenarios:")
        for sid in doc["scenarios"]:
            print(f"  {sid}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homlie",
        description="Exact computation of twisted-structure spaces on structure-constant algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algebra=True):
        if algebra:
            p.add_argument("--algebra", required=True, help="builtin name (sl2, trunc_poly:3, ...) or JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("solve", help="solve a structure-kind identity")
    common(p)
    p.add_argument("--kind", default="hom-lie", help="hom-lie | hom-cyclic | hom-2nilp | delta:<p/q>")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("bilinear", help="solve a bilinear-form identity")
    common(p)
    p.add_argument("--kind", default="asym-cocycle", help=" | ".join(BILINEAR_KINDS))
    p.set_defaults(fn=_cmd_bilinear)

    p = sub.add_parser("qder", help="quasiderivation pairs")
    common(p)
    p.add_argument("--module", default="adjoint", choices=["adjoint", "coadjoint"])
    p.set_defaults(fn=_cmd_qder)

    p = sub.add_parser("decompose", help="weight/irreducible decomposition of a solved space")
    common(p)
    p.add_argument("--kind", default="hom-lie")
    p.add_argument("--torus", help="comma-separated basis indices acting as a torus")
    p.add_argument("--triple", help="three basis indices forming a 3-dim simple triple")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("jordan", help="closure under the symmetrized product")
    p.add_argument("--algebra", help="builtin name or JSON file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--counterexample", action="store_true", help="run the non-closure construction")
    p.set_defaults(fn=_cmd_jordan)

    p = sub.add_parser("window", help="solve over a degree-truncated loop model")
    common(p)
    p.add_argument("--window", type=int, required=True, help="degree bound N >= 2")
    p.add_argument("--shift", type=int, help="restrict to one degree shift")
    p.add_argument("--twist", help="JSON file with a cyclic grading {n, components}")
    p.set_defaults(fn=_cmd_window)

    p = sub.add_parser("reproduce", help="run registered verification scenarios")
    p.add_argument("id", nargs="?", help="scenario id")
    p.add_argument("--all", action="store_true", help="run every scenario")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_reproduce)

    p = sub.add_parser("validate", help="validate an algebra JSON file")
    common(p)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("list", help="list builtins, kinds and scenarios")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_ERROR if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except (LawViolation, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXPECTATION_FAILURE


if __name__ == "__main__":
    sys.exit(main())
