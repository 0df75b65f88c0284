"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid or infeasible input,
3 engine/oracle disagreement, 4 a verification suite found a failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from typing import Sequence

import numpy as np

from . import __version__
from .cycliccode import (DEFAULT_CODE_CAP, code_from_cosets, code_from_generator, cyclic_code_from_json,
                         cyclotomic_cosets, cyclotomic_structure, enumerate_cyclic_codes, factor_xn_minus_1)
from .errors import CyclequivError
from .gf import FieldSpec, field_from_order, field_new
from .groupcode import ElemAbelianGroup, enumerate_group_ideals, verify_ci_groupcode
from .linearcode import Permutation, centralizer_check, code_from_ring_element, permute_code, projector_verify
from .oracle import (DEFAULT_CAP, PermGroup, cayley_automorphism_group, equivalence_search, factorial_fits,
                     fusion_control_check, is_prime_power, maps_into, _arrays, _invariant_under_conjugates,
                     paut_bruteforce, two_closure, verify_ci_code, verify_theorem_2closed)
from .polyring import Poly
from .solving import Status, coefficient_partition, is_ci_certified, multiplier_perm, test_equivalence, units

SCHEMA = 1
DEFAULT_SEED = 20240917
EXIT_USAGE, EXIT_INPUT, EXIT_DISAGREE, EXIT_FAIL = 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _field(args) -> FieldSpec:
    if args.modulus is not None:
        f = field_from_order(args.q)
        return field_new(f.p, f.k, [int(c) for c in args.modulus.split(",")])
    return field_from_order(args.q)


def _load_code(path: str):
    with (sys.stdin if path == "-" else open(path)) as fh:
        return cyclic_code_from_json(json.load(fh))


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    return int(os.environ.get("CYCLEQUIV_THREADS", "1"))


# -- commands -------------------------------------------------------------------

def cmd_cosets(args) -> tuple[dict, int]:
    cosets = cyclotomic_cosets(args.n, args.q)
    return {"n": args.n, "q": args.q, "cosets": [list(c) for c in cosets]}, 0


def cmd_factor(args) -> tuple[dict, int]:
    field = _field(args)
    st = cyclotomic_structure(args.n, field)
    return {
        "n": args.n, "field": field.to_json(),
        "factors": [f.to_json() for f in factor_xn_minus_1(args.n, field)],
        "pairing": [{"coset": list(c), "factor": f.to_json()} for c, f in zip(st.cosets, st.factors)],
        "pairing_method": st.pairing,
    }, 0


def cmd_codes(args) -> tuple[dict, int]:
    field = _field(args)
    codes = enumerate_cyclic_codes(args.n, field, cap=args.cap)
    return {"n": args.n, "field": field.to_json(), "count": len(codes),
            "codes": [c.to_json() for c in codes]}, 0


def cmd_idempotent(args) -> tuple[dict, int]:
    if args.file:
        code = _load_code(args.file)
    else:
        field = _field(args)
        if args.cosets is not None:
            cos = [[int(x) for x in part.split(",") if x.strip()] for part in args.cosets.split(";") if part.strip()]
            code = code_from_cosets(args.n, field, cos)
        elif args.generator is not None:
            code = code_from_generator(Poly.from_coeffs(field, [int(c) for c in args.generator.split(",")]), args.n)
        else:
            raise UsageError("give a code file, --cosets or --generator")
    part = coefficient_partition(code.idempotent)
    out = code.to_json()
    out["partition"] = [list(b) for b in part.blocks()]
    return out, 0


def _agreement(status: Status, witness) -> bool | None:
    if status is Status.INCONCLUSIVE:
        return None
    return (status is Status.EQUIVALENT) == (witness is not None)


def cmd_equiv(args) -> tuple[dict, int]:
    left, right = _load_code(args.left), _load_code(args.right)
    verdict = test_equivalence(left, right, threads=_threads(args))
    out = verdict.to_json(timings=not args.no_timings)
    code = 0
    if args.oracle:
        if factorial_fits(left.n, args.cap):
            rep = equivalence_search(left.linear, right.linear, cap=args.cap, threads=_threads(args))
            out["oracle"] = rep.to_json(timings=not args.no_timings)
            out["agreement"] = _agreement(verdict.status, rep.witness)
            if out["agreement"] is False:
                code = EXIT_DISAGREE
        else:
            out["oracle"] = None
            out["oracle_skipped"] = f"{left.n}! exceeds cap {args.cap}"
    return out, code


def cmd_oracle(args) -> tuple[dict, int]:
    left = _load_code(args.left)
    timings = not args.no_timings
    if args.right:
        right = _load_code(args.right)
        return equivalence_search(left.linear, right.linear, cap=args.cap, threads=_threads(args)).to_json(timings), 0
    t0 = time.perf_counter()
    g = paut_bruteforce(left.linear, cap=args.cap, threads=_threads(args))
    return {"checked": math.factorial(left.n), "witness": None, "paut_order": g.order,
            "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3) if timings else 0.0}, 0


# -- verification suites ------------------------------------------------------------

def _suite_ci_cyclic(args, timings):
    field = _field(args)
    certified = is_ci_certified(args.n)
    codes = enumerate_cyclic_codes(args.n, field, cap=args.code_cap)
    exhaustive = factorial_fits(args.n, args.cap)
    rng = np.random.default_rng(args.seed)
    checks = []
    for c in codes:
        if exhaustive:
            rep = verify_ci_code(c, cap=args.cap, threads=_threads(args)).to_json(timings)
        else:
            rep = _sampled_ci(c, rng, args.samples)
        checks.append(rep)
    failures = [r for r in checks if not r["passed"]]
    return {
        "label": "certified" if certified else "exploratory",
        "mode": "exhaustive" if exhaustive else "sampled",
        "codes": len(codes),
        "perms_per_code": math.factorial(args.n) if exhaustive else args.samples,
        "checks": checks,
    }, (not failures) or not certified


def _sampled_ci(code, rng, samples: int) -> dict:
    """Random-permutation probe used when Sym(n) is beyond the cap."""
    n, lin = code.n, code.linear
    perms = np.array([rng.permutation(n) for _ in range(samples)], dtype=np.int64).reshape(samples, n)
    basis, checks = _arrays(lin)
    cyc = _invariant_under_conjugates(basis, checks, perms, [(i + 1) % n for i in range(n)], lin.field)
    sub = perms[cyc]
    matched = np.zeros(sub.shape[0], dtype=bool)
    for m in units(n):
        matched |= maps_into(basis, sub, _arrays(permute_code(lin, multiplier_perm(m, n)))[1], lin.field)
    bad = sub[~matched]
    counter = None
    if bad.shape[0]:
        counter = {"permutation": bad[0].tolist()}
    return {"subject": {"cosets": [list(c) for c in code.zero_cosets], "dim": code.dim},
            "checked": samples, "cyclic_images": int(cyc.sum()), "counterexample": counter,
            "passed": counter is None}


def _suite_ci_groupcode(args, timings):
    group = ElemAbelianGroup(args.p, args.d)
    field = _field(args)
    if not factorial_fits(group.order, args.cap):
        raise CyclequivError(f"{group.order}! exceeds cap {args.cap}")
    checks = [verify_ci_groupcode(gc, cap=args.cap, threads=_threads(args)).to_json(timings)
              for gc in enumerate_group_ideals(group, field)]
    return {"group": group.to_json(), "ideals": len(checks), "perms_per_ideal": math.factorial(group.order),
            "checks": checks}, all(r["passed"] for r in checks)


def _suite_two_closure(args, timings):
    field = _field(args)
    if args.n > 8:
        raise CyclequivError("two-closure suite is limited to n <= 8")
    shift = PermGroup.shift_group(args.n)
    closure = two_closure(shift)
    checks = []
    for c in enumerate_cyclic_codes(args.n, field, cap=args.code_cap):
        checks.append({"cosets": [list(x) for x in c.zero_cosets],
                       "closure_fixes_code": verify_theorem_2closed(c.linear, shift)})
    ok = all(r["closure_fixes_code"] for r in checks)
    out = {"shift_closure_order": closure.order, "checks": checks}
    if is_prime_power(args.n):
        out["p_group_closure"] = is_prime_power(closure.order)
        ok = ok and out["p_group_closure"]
    return out, ok


def _suite_projector(args, timings):
    field = _field(args)
    shift = Permutation.shift(args.n)
    checks = []
    for c in enumerate_cyclic_codes(args.n, field, cap=args.code_cap):
        e = c.idempotent
        checks.append({
            "cosets": [list(x) for x in c.zero_cosets],
            "idempotent": e * e == e,
            "projector": projector_verify(e, c.linear),
            "commutes_with_shift": centralizer_check(e, shift),
            "span_matches_generator": code_from_ring_element(
                type(e).from_poly(c.generator, c.n)) == c.linear,
        })
    ok = all(all(v for k, v in r.items() if k != "cosets") for r in checks)
    return {"codes": len(checks), "checks": checks}, ok


def _suite_fusion(args, timings):
    field = _field(args)
    if not factorial_fits(args.n, args.cap) or args.n > 8:
        raise CyclequivError("fusion suite needs n <= 8")
    checks = []
    for c in enumerate_cyclic_codes(args.n, field, cap=args.code_cap):
        y = cayley_automorphism_group(c.idempotent)
        z = paut_bruteforce(c.linear, cap=args.cap)
        contained = y <= z
        checks.append({"cosets": [list(x) for x in c.zero_cosets], "aut_cayley_order": y.order,
                       "paut_order": z.order, "centralizer_in_paut": contained,
                       "controls_fusion": contained and fusion_control_check(y, z, args.n)})
    ok = all(r["centralizer_in_paut"] and r["controls_fusion"] for r in checks)
    return {"codes": len(checks), "checks": checks}, ok


SUITES = {
    "ci-cyclic": _suite_ci_cyclic,
    "ci-groupcode": _suite_ci_groupcode,
    "two-closure": _suite_two_closure,
    "projector": _suite_projector,
    "fusion": _suite_fusion,
}


def cmd_verify(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    body, ok = SUITES[args.suite](args, not args.no_timings)
    body["passed"] = bool(ok)
    if not args.no_timings:
        body["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return body, 0 if ok else EXIT_FAIL


# -- plumbing ---------------------------------------------------------------------------

def _add_field_args(p, q_required=True):
    p.add_argument("--q", type=int, required=q_required, help="field order (a prime power)")
    p.add_argument("--modulus", help="comma-separated ascending coefficients of the field modulus")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclequiv", description="Equivalence of semisimple cyclic codes by multiplier solving sets.")
    parser.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--threads", type=int, default=None, help="worker cap (env CYCLEQUIV_THREADS)")
    common.add_argument("--no-timings", action="store_true", help="zero elapsed_ms fields for byte-stable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cosets", parents=[common], help="q-cyclotomic cosets mod n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("factor", parents=[common], help="factor x^n - 1 and pair factors with cosets")
    p.add_argument("--n", type=int, required=True)
    _add_field_args(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("codes", parents=[common], help="enumerate all cyclic codes of length n")
    p.add_argument("--n", type=int, required=True)
    _add_field_args(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CODE_CAP)
    p.set_defaults(func=cmd_codes)

    p = sub.add_parser("idempotent", parents=[common], help="generating idempotent of a cyclic code")
    p.add_argument("file", nargs="?", help="code-spec JSON (or give --n/--q with --cosets/--generator)")
    p.add_argument("--n", type=int)
    _add_field_args(p, q_required=False)
    p.add_argument("--cosets", help="zero cosets, e.g. '1,2,4;0'")
    p.add_argument("--generator", help="generator coefficients, ascending, e.g. '1,1,0,1'")
    p.set_defaults(func=cmd_idempotent)

    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of two cyclic codes")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--oracle", action="store_true", help="cross-check against the Sym(n) brute force")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("verify", parents=[common], help="run a theorem-verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--n", type=int)
    _add_field_args(p)
    p.add_argument("--p", type=int, default=2, help="group prime for ci-groupcode")
    p.add_argument("--d", type=int, default=2, help="group rank for ci-groupcode")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max permutations scanned")
    p.add_argument("--code-cap", type=int, default=DEFAULT_CODE_CAP)
    p.add_argument("--samples", type=int, default=10_000, help="random permutations when Sym(n) exceeds --cap")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="brute-force PAut or equivalence search")
    p.add_argument("left")
    p.add_argument("right", nargs="?")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_oracle)
    return parser


def _config(args) -> dict:
    skip = {"func"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    cfg["threads"] = _threads(args)
    return cfg


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, code = args.func(args)
    except UsageError as exc:
        print(f"cyclequiv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CyclequivError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"cyclequiv: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {"schema": SCHEMA, "command": args.command, "config": _config(args), "result": result}
    if args.format == "json":
        print(json.dumps(report, sort_keys=False))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
