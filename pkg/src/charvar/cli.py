"""Command-line interface.

Every command builds a :class:`CommandResult`. ``--json`` prints it as a
versioned envelope; otherwise a short human-readable table is printed.
Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import census, rep_lab
from .errors import AuditMismatch, CharVarError
from .exact_arith import IntMatrix, smith_normal_form
from .torus_groups import GroupSpec, abelian_generator, abelianize, classify

SCHEMA = "charvar/1"


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "status": self.status, "diagnostics": list(self.diagnostics)}
        if self.status == "ok":
            out["payload"] = self.payload
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _spec_arg(text: str) -> GroupSpec:
    try:
        return GroupSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _complex_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _read_json(path: Path, flag: str = "--in") -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"{flag}: no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON in {path}: {exc}") from None


def _write_json(path: Path | None, obj: Any) -> None:
    if path is not None:
        Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


# -- commands --------------------------------------------------------------------


def cmd_classify(args) -> dict:
    return {"n": list(args.n.exponents), "kind": classify(args.n).value}


def cmd_abelianize(args) -> dict:
    return abelianize(args.n).to_json()


def cmd_generator(args) -> dict:
    return {"n": list(args.n.exponents), **abelian_generator(args.n).to_json()}


def cmd_snf(args) -> dict:
    obj = _read_json(args.matrix, "--matrix")
    try:
        mat = IntMatrix.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--matrix: not an integer matrix: {exc}") from None
    return smith_normal_form(mat).to_json()


def cmd_count_sl2(args) -> dict:
    out: dict[str, Any] = {"n": list(args.n.exponents)}
    if args.formula and not args.both:
        out["method"] = "formula"
        out["component_count"] = census.sl2_components_formula(args.n)
        return out
    report = census.sl2_components_enumerate(args.n, budget=args.budget, witnesses=args.witness)
    out.update(report.to_json(witness=args.witness))
    out["method"] = "enumeration"
    if args.both:
        value = census.sl2_components_formula(args.n)
        out["method"] = "both"
        out["formula"] = value
        out["enumeration"] = report.component_count
        if value != report.component_count:
            raise AuditMismatch(f"formula gives {value}, enumeration gives {report.component_count}")
    out["dimension"] = census.component_dimension(2, args.n.r)
    return out


def cmd_count_free_product(args) -> dict:
    return {
        "n": list(args.n.exponents),
        "m": args.m,
        "component_count": census.free_product_components_gl(args.m, args.n),
    }


def cmd_count_roots(args) -> dict:
    classes = census.nth_root_classes(args.m, args.root_order)
    out = {"m": args.m, "root_order": args.root_order, "count": classes.count}
    if args.witness:
        out["representatives"] = [[q.to_json() for q in rep] for rep in classes.representatives]
    return out


def cmd_count_de(args) -> dict:
    out: dict[str, Any] = {"n": list(args.n.exponents), "m": args.m}
    report = census.de_components(args.m, args.n, budget=args.budget, witnesses=args.witness)
    if report is None:
        out.update(empty=True, component_count=0)
        return out
    out["empty"] = False
    out.update(report.to_json(witness=args.witness))
    return out


def cmd_count_gl2(args) -> dict:
    return {"n": list(args.n.exponents), "component_count": census.gl2_irr_components(args.n)}


def cmd_count_bound(args) -> dict:
    check = census.mccrudden_bound_check(args.m, args.root_order, budget=args.budget)
    return {"m": args.m, "root_order": args.root_order, **check._asdict()}


def _load_rep(args) -> rep_lab.Representation:
    obj = _read_json(args.input)
    try:
        rep = rep_lab.Representation.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--in: not a representation: {exc}") from None
    if args.tol is not None:
        rep = rep_lab.Representation(rep.spec, rep.matrices, args.tol)
    return rep


def _rep_summary(rep: rep_lab.Representation) -> dict:
    check = rep_lab.verify_relations(rep)
    return {
        "max_residual": check.max_residual,
        "central": check.central,
        "omega": _complex_json(check.omega) if check.central else None,
    }


def cmd_rep_build(args) -> dict:
    obj = _read_json(args.input)
    try:
        config = rep_lab.EigenConfig.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"--in: not an eigenvalue configuration: {exc}") from None
    tol = args.tol if args.tol is not None else rep_lab.VERIFY_TOL
    rep = rep_lab.build_representation(config, seed=args.seed, tol=tol)
    _write_json(args.out, rep.to_json())
    return {"representation": rep.to_json(), **_rep_summary(rep)}


def cmd_rep_verify(args) -> dict:
    rep = _load_rep(args)
    out = _rep_summary(rep)
    if out["central"]:
        out["free_product"] = bool(abs(complex(*out["omega"]) - 1) <= rep.tol)
    return out


def cmd_rep_sdr(args) -> dict:
    rep = rep_lab.sdr_step(_load_rep(args), args.s)
    _write_json(args.out, rep.to_json())
    return {"representation": rep.to_json(), **_rep_summary(rep)}


def cmd_rep_zflow(args) -> dict:
    rep = rep_lab.z_flow(_load_rep(args), args.k)
    _write_json(args.out, rep.to_json())
    return {"representation": rep.to_json(), **_rep_summary(rep)}


def cmd_rep_path(args) -> dict:
    path = rep_lab.path_to_abelian(_load_rep(args), steps=args.steps, seed=args.seed)
    _write_json(args.out, {"path": [p.to_json() for p in path]})
    return {
        "samples": len(path),
        "max_residual": max(rep_lab.verify_relations(p).max_residual for p in path),
        "endpoint_commutator": rep_lab.max_commutator_norm(path[-1].matrices),
        "endpoint": path[-1].to_json(),
    }


def cmd_rep_invariant(args) -> dict:
    rep = _load_rep(args)
    return {"invariants": [_complex_json(rep_lab.double_coset_invariant(a, rep.tol)) for a in rep.matrices]}


def cmd_rep_irreducible(args) -> dict:
    rep = _load_rep(args)
    return {
        "irreducible": rep_lab.is_irreducible_sl2(rep),
        "max_commutator": rep_lab.max_commutator_norm(rep.matrices),
    }


def cmd_rep_eigenspan(args) -> dict:
    rep = _load_rep(args)
    return {"checks": [rep_lab.eigenspan_check(a, args.k)._asdict() for a in rep.matrices]}


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")

    parser = _Parser(prog="charvar", description="Torus knot and link group invariants.", parents=[common])
    parser.set_defaults(json=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def spec_cmd(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--n", type=_spec_arg, required=True, help="exponents, e.g. 5,7")
        p.set_defaults(func=func)
        return p

    spec_cmd("classify", cmd_classify, "knot or link")
    spec_cmd("abelianize", cmd_abelianize, "abelianization via Smith normal form")
    spec_cmd("generator", cmd_generator, "explicit generator of a knot group's abelianization")

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    p.add_argument("--matrix", type=Path, required=True, help="IntMatrix JSON file")
    p.set_defaults(func=cmd_snf)

    count = sub.add_parser("count", parents=[common], help="component counts")
    csub = count.add_subparsers(dest="what", required=True, parser_class=_Parser)

    def count_cmd(name, func, help_, n=True, m=False, root_order=False, budget=False, witness=False):
        p = csub.add_parser(name, parents=[common], help=help_)
        if n:
            p.add_argument("--n", type=_spec_arg, required=True)
        if m:
            p.add_argument("--m", type=_positive_int, required=True)
        if root_order:
            p.add_argument("--root-order", type=_positive_int, required=True)
        if budget:
            p.add_argument("--budget", type=_positive_int, default=census.DEFAULT_BUDGET)
        if witness:
            p.add_argument("--witness", action="store_true", help="include one representative per orbit")
        p.set_defaults(func=func)
        return p

    p = count_cmd("sl2", cmd_count_sl2, "irreducible SL(2,C) components", budget=True, witness=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--formula", action="store_true", help="closed formula only")
    mode.add_argument("--both", action="store_true", help="formula and enumeration, must agree")
    count_cmd("free-product", cmd_count_free_product, "GL(m,C) components for the free product", m=True)
    count_cmd("roots", cmd_count_roots, "conjugacy classes of n-th roots of I", n=False, m=True, root_order=True, witness=True)
    count_cmd("de", cmd_count_de, "distinct-eigenvalue GL(m,C) components", m=True, budget=True, witness=True)
    count_cmd("gl2", cmd_count_gl2, "irreducible GL(2,C) components, coprime pairs")
    count_cmd("bound", cmd_count_bound, "root-class bound at the identity", n=False, m=True, root_order=True, budget=True)

    rep = sub.add_parser("rep", parents=[common], help="explicit matrix representations")
    rsub = rep.add_subparsers(dest="op", required=True, parser_class=_Parser)

    def rep_cmd(name, func, help_, out=True):
        p = rsub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--in", dest="input", type=Path, required=True)
        if out:
            p.add_argument("--out", type=Path, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)
        p.set_defaults(func=func)
        return p

    rep_cmd("build", cmd_rep_build, "build from eigenvalue configuration")
    rep_cmd("verify", cmd_rep_verify, "relation residual and central charge", out=False)
    rep_cmd("sdr", cmd_rep_sdr, "retract central charge toward the unit circle").add_argument(
        "--s", type=float, default=1.0
    )
    rep_cmd("zflow", cmd_rep_zflow, "multiply generators by exp(2 pi i k / n_i)").add_argument(
        "--k", type=int, default=1
    )
    rep_cmd("path", cmd_rep_path, "deform to an abelian representation").add_argument(
        "--steps", type=_positive_int, default=20
    )
    rep_cmd("invariant", cmd_rep_invariant, "double-coset invariant a*d of each 2x2 matrix", out=False)
    rep_cmd("irreducible", cmd_rep_irreducible, "irreducibility of a 2-dimensional representation", out=False)
    rep_cmd("eigenspan", cmd_rep_eigenspan, "compare eigenvector spans of A and A^k", out=False).add_argument(
        "--k", type=int, default=2
    )
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[CommandResult, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.func(args)
    except UsageError as exc:
        return CommandResult("error", diagnostics=[f"usage: {exc}"]), 2
    except CharVarError as exc:
        return CommandResult("error", diagnostics=[f"{type(exc).__name__}: {exc}"]), 1
    except ValueError as exc:
        return CommandResult("error", diagnostics=[f"InvalidInput: {exc}"]), 1
    return CommandResult("ok", payload), 0


def _humanize(payload: Any) -> Any:
    if isinstance(payload, dict):
        if set(payload) == {"num", "den"}:
            return f"{payload['num']}/{payload['den']}" if payload["den"] != 1 else str(payload["num"])
        return {k: _humanize(v) for k, v in payload.items()}
    if isinstance(payload, list):
        return [_humanize(v) for v in payload]
    return payload


def _render(payload: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        width = max((len(str(k)) for k in payload), default=0)
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_render(value, indent + 1))
            else:
                lines.append(f"{pad}{str(key).ljust(width)}  {_fmt(value)}")
    elif isinstance(payload, list):
        for item in payload:
            sub = _render(item, indent + 1)
            if sub:
                lines.append(f"{pad}-" + sub[0][len(pad) + 1 :])
                lines.extend(sub[1:])
    else:
        lines.append(f"{pad}{_fmt(payload)}")
    return lines


def _is_flat(value) -> bool:
    if isinstance(value, dict):
        return False
    return all(not isinstance(v, (dict, list)) for v in value)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if value is None:
        return "-"
    return str(value)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    result, code = run(argv)
    as_json = "--json" in argv
    if as_json:
        print(json.dumps(result.to_json(), sort_keys=True, default=_json_default))
    elif result.status == "ok":
        print("\n".join(_render(_humanize(result.payload))))
    else:
        for line in result.diagnostics:
            print(f"error: {line}", file=sys.stderr)
    return code


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


if __name__ == "__main__":
    raise SystemExit(main())
