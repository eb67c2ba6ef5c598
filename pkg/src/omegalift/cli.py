"""Command-line driver: single-case verification, family sweeps, and a
normalizer-element calculator.

Exit codes: 0 all checks pass, 1 verification failure (witnesses emitted),
2 usage error, 3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from .checks import associativity_check, power_consistency_check
from .kottwitz import SectionError, build_section, kappa
from .omega import AlcoveError, omega_for_lattice
from .rootsys import (
    CartanType,
    CocharLattice,
    RootSystem,
    build_root_system,
    coroot_lattice,
    coweight_lattice,
    lattice_for_isogeny,
)
from .tits import (
    TitsElement,
    multiply,
    power,
    serialize_element,
    sign_element,
    torus_element,
    weyl_lift,
)
from .weyl import longest_element, simple_reflection

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

DEFAULT_SEED = 1729
SEED_ENV = "OMEGA_LIFT_SEED"

FAMILIES = "ABCDEFG"


class UsageError(Exception):
    pass


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"bad {SEED_ENV} value {env!r}") from exc
    return DEFAULT_SEED


def lattice_from_spec(rs: RootSystem, spec: str) -> CocharLattice:
    if spec == "adjoint":
        return coweight_lattice(rs)
    if spec == "sc":
        return coroot_lattice(rs)
    if spec.startswith("coweights:"):
        body = spec.split(":", 1)[1]
        try:
            indices = [int(tok) for tok in body.split(",") if tok]
        except ValueError as exc:
            raise UsageError(f"bad coweight list {body!r}") from exc
        if not indices:
            raise UsageError("empty coweight list")
        try:
            return lattice_for_isogeny(rs, indices)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(f"bad isogeny spec {spec!r}; expected adjoint, sc, or coweights:i,j")


def _root_system(family: str, rank: int, rank_cap: int | None = None) -> RootSystem:
    try:
        return build_root_system(CartanType(family, rank), rank_cap=rank_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out_path: str | None) -> None:
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    rs = _root_system(args.type, args.rank)
    lattice = lattice_from_spec(rs, args.isogeny)
    cert = build_section(lattice, seed=seed)
    _emit(cert.to_json(), args.out)
    return EXIT_OK if cert.all_passed() else EXIT_FAIL


def enumerate_isogeny_lattices(rs: RootSystem):
    """All distinct lattices between the coroot and coweight lattices,
    sc first, in deterministic subset order."""
    seen = []
    for size in range(len(rs.minuscule_indices()) + 1):
        for subset in itertools.combinations(rs.minuscule_indices(), size):
            lat = lattice_for_isogeny(rs, subset)
            if lat not in [p[1] for p in seen]:
                seen.append((subset, lat))
    return seen


def _sweep_ranks(family: str, max_rank: int):
    if family == "A":
        return range(1, max_rank + 1)
    if family in "BC":
        return range(2, max_rank + 1)
    if family == "D":
        return range(3, max_rank + 1)
    if family == "E":
        return [l for l in (6, 7, 8) if l <= max(max_rank, 8)]
    if family == "F":
        return [4]
    return [2]


def _sweep_case(task):
    family, rank, subset, seed = task
    rs = build_root_system(CartanType(family, rank))
    lat = lattice_for_isogeny(rs, subset)
    cert = build_section(lat, seed=seed)
    return cert.to_dict()


def _sweep_properties(task):
    family, rank, seed, triples = task
    rs = build_root_system(CartanType(family, rank))
    lat = coweight_lattice(rs)
    return {
        "type": f"{family}{rank}",
        "samples": triples,
        "associativity": associativity_check(lat, triples, seed),
        "power_consistency": power_consistency_check(lat, max(triples // 10, 10), seed + 1),
    }


def _tsv_report(report: dict) -> str:
    lines = ["type\trank\tlattice\tomega_order\tstructure\tstrategy\tiota_homomorphic\tall_checks"]
    for case in report["cases"]:
        structure = "x".join(str(d) for d in case["omega"]["structure"]["torsion"]) or "1"
        checks = case["checks"]
        lines.append("\t".join([
            case["type"],
            str(case["rank"]),
            case["lattice"]["name"],
            str(case["omega"]["order"]),
            structure,
            case["strategy"],
            str(checks["iota_homomorphic"]).lower(),
            str(all(checks.values())).lower(),
        ]))
    lines.append("")
    return "\n".join(lines)


def cmd_sweep(args) -> int:
    seed = _resolve_seed(args.seed)
    families = args.families or FAMILIES
    for f in families:
        if f not in FAMILIES:
            raise UsageError(f"unknown family {f!r}")
    case_tasks = []
    prop_tasks = []
    for family in families:
        for rank in _sweep_ranks(family, args.max_rank):
            rs = build_root_system(CartanType(family, rank))
            for subset, _lat in enumerate_isogeny_lattices(rs):
                case_tasks.append((family, rank, subset, seed))
            if args.triples:
                prop_tasks.append((family, rank, seed, args.triples))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            cases = list(pool.map(_sweep_case, case_tasks))
            properties = list(pool.map(_sweep_properties, prop_tasks))
    else:
        cases = [_sweep_case(t) for t in case_tasks]
        properties = [_sweep_properties(t) for t in prop_tasks]

    strategies: dict[str, int] = {}
    iota_true = []
    iota_false = []
    for case in cases:
        strategies[case["strategy"]] = strategies.get(case["strategy"], 0) + 1
        label = f"{case['type']}/{case['lattice']['name']}"
        if case["checks"]["iota_homomorphic"]:
            iota_true.append(label)
        else:
            iota_false.append(label)
    all_pass = (all(all(c["checks"].values()) for c in cases)
                and all(p["associativity"] and p["power_consistency"]
                        for p in properties))
    report = {
        "schema_version": 1,
        "seed": seed,
        "config": {
            "families": families,
            "max_rank": args.max_rank,
            "triples": args.triples,
        },
        "summary": {
            "cases": len(cases),
            "strategies": strategies,
            "iota_homomorphic": iota_true,
            "iota_not_homomorphic": iota_false,
            "all_pass": all_pass,
        },
        "properties": properties,
        "cases": cases,
    }
    if args.format == "tsv":
        _emit(_tsv_report(report), args.out)
    else:
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK if all_pass else EXIT_FAIL


_TOKEN = re.compile(
    r"\s*(rho_\d+|eps_\d+|alphav_\d+|N\(w0\)|N\(s_?\d+\)|"
    r"sgn\(\s*(?:eps_\d+|alphav_\d+)\s*\)|\*|\^|\(|\)|-?\d+)"
)


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise UsageError(f"cannot parse expression at {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    def __init__(self, tokens, lattice, og):
        self.tokens = tokens
        self.pos = 0
        self.lattice = lattice
        self.og = og

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> TitsElement:
        out = self.expr()
        if self.peek() is not None:
            raise UsageError(f"unexpected token {self.peek()!r}")
        return out

    def expr(self) -> TitsElement:
        acc = self.term()
        while self.peek() == "*":
            self.take()
            acc = multiply(acc, self.term())
        return acc

    def term(self) -> TitsElement:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not re.fullmatch(r"-?\d+", tok):
                raise UsageError("expected an integer exponent after ^")
            return power(base, int(tok))
        return base

    def atom(self) -> TitsElement:
        tok = self.take()
        if tok is None:
            raise UsageError("expression ended unexpectedly")
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise UsageError("missing closing parenthesis")
            return inner
        lat = self.lattice
        rs = lat.rs
        try:
            if tok.startswith("rho_"):
                i = int(tok[4:])
                idx = self.og.rho_index.get(i)
                if idx is None:
                    raise UsageError(
                        f"rho_{i} is not in the stabilizer for this lattice")
                el = self.og.elements[idx]
                return TitsElement.from_parts(lat, el.lam, None, el.w)
            if tok.startswith("eps_"):
                i = int(tok[4:])
                return torus_element(lat, rs.coweights[i - 1])
            if tok.startswith("alphav_"):
                i = int(tok[7:])
                return torus_element(lat, rs.coroot(rs.simple[i - 1]))
            if tok == "N(w0)":
                return weyl_lift(lat, longest_element(rs))
            if tok.startswith("N(s"):
                i = int(tok[3:-1].lstrip("_"))
                return weyl_lift(lat, simple_reflection(rs, i))
            if tok.startswith("sgn("):
                inner = tok[4:-1].strip()
                if inner.startswith("eps_"):
                    v = rs.coweights[int(inner[4:]) - 1]
                else:
                    v = rs.coroot(rs.simple[int(inner[7:]) - 1])
                return sign_element(lat, v)
        except IndexError as exc:
            raise UsageError(f"index out of range in {tok!r}") from exc
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        raise UsageError(f"unknown atom {tok!r}")


def cmd_element(args) -> int:
    seed = _resolve_seed(args.seed)
    rs = _root_system(args.type, args.rank)
    lattice = lattice_from_spec(rs, args.isogeny)
    og = omega_for_lattice(lattice)
    tokens = _tokenize(args.expr)
    if not tokens:
        raise UsageError("empty expression")
    element = _ExprParser(tokens, lattice, og).parse()
    cls = kappa(element)
    payload = {
        "schema_version": 1,
        "seed": seed,
        "type": f"{args.type}{args.rank}",
        "lattice": lattice.name or "",
        "expression": args.expr,
        "normal_form": serialize_element(element),
        "kappa": {"torsion": list(cls[0]), "free": list(cls[1])},
        "is_identity": element.is_identity(),
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omegalift",
        description="Exact alcove-stabilizer lifts into the torus-normalizer model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"sampling seed (fallback: ${SEED_ENV}, then {DEFAULT_SEED})")
    common.add_argument("--out", default=None, help="also write the output to this file")

    p_verify = sub.add_parser("verify", parents=[common],
                              help="build and check one certificate")
    p_verify.add_argument("--type", required=True, choices=list(FAMILIES))
    p_verify.add_argument("--rank", required=True, type=int)
    p_verify.add_argument("--isogeny", default="adjoint",
                          help="adjoint | sc | coweights:i,j")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="certificates for every family, rank, and lattice")
    p_sweep.add_argument("--families", default=None,
                         help="subset of ABCDEFG (default: all)")
    p_sweep.add_argument("--max-rank", type=int, default=9)
    p_sweep.add_argument("--triples", type=int, default=100,
                         help="associativity samples per (family, rank); 0 disables")
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--format", choices=["json", "tsv"], default="json")
    p_sweep.set_defaults(func=cmd_sweep)

    p_elt = sub.add_parser("element", parents=[common],
                           help="evaluate a normalizer expression to normal form")
    p_elt.add_argument("--type", required=True, choices=list(FAMILIES))
    p_elt.add_argument("--rank", required=True, type=int)
    p_elt.add_argument("--isogeny", default="adjoint")
    p_elt.add_argument("--expr", required=True,
                       help="products/powers of rho_i, eps_i, alphav_i, N(w0), N(s_i), sgn(...)")
    p_elt.set_defaults(func=cmd_element)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except SectionError as exc:
        payload = {"error": str(exc), "witness": exc.witness}
        print(json.dumps(payload, indent=2), file=sys.stderr)
        code = EXIT_FAIL
    except (AlcoveError, AssertionError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        code = EXIT_INTERNAL
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
