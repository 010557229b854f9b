"""Command-line front end.

Subcommands: tn, theta, transfer, complete, keyconst, adams, verify.
Output formats: pretty (default), json, tsv.  Every result is a document
with the fields command, inputs, result, citations; JSON output is
canonical (sorted keys) and byte-stable across runs.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 unsupported input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .completion import (ModuleExpr, hat_tn, l_complete, parse_module_expr,
                         verify_main_theorem)
from .intlinalg import Presentation
from .lambda_free import (adams, key_constant, mono_str, tn_presented,
                          _is_prime, _partition_count)
from .symrep import partitions, transfer_matrix, transfer_spectrum
from .theta_free import (UnsupportedTorsionError, free_theta_basis,
                         theta_tn_presented)
from .theta_free import mono_str as theta_mono_str


class UsageError(Exception):
    pass


class UnsupportedInputError(Exception):
    pass


def _expr_to_presentation(expr: ModuleExpr) -> Presentation:
    """Integral model of a finitely generated expression (Zp_hat -> Z)."""
    if expr.p_inverted or expr.prufer:
        raise UnsupportedInputError(
            "expression must be finitely generated (no Z[1/p] or Zp_inf)")
    parts = [Presentation.free(expr.free + expr.complete)]
    parts += [Presentation.cyclic(n) for n in expr.cyclic]
    return Presentation.direct_sum(*parts)


def _parse_expr(text: str, p: int | None) -> ModuleExpr:
    probe = p if p is not None else 2
    try:
        expr = parse_module_expr(text, probe)
    except ValueError as e:
        raise UsageError(str(e))
    if p is None and (expr.p_inverted or expr.prufer or expr.complete):
        raise UsageError("expression mentions the prime p; pass --p")
    return expr


def _require_prime(p: int):
    if not _is_prime(p):
        raise UsageError(f"--p must be prime, got {p}")


def cmd_tn(args) -> dict:
    expr = _parse_expr(args.module, args.p)
    if args.p is not None:
        _require_prime(args.p)
        if expr.p_inverted or expr.prufer:
            raise UnsupportedInputError(
                "completed weight pieces need a finitely generated "
                "expression (no Z[1/p] or Zp_inf)")
        group = str(hat_tn(expr, args.n, args.p))
    else:
        group = str(tn_presented(_expr_to_presentation(expr), args.n))
    return {
        "command": "tn",
        "inputs": {"module": args.module, "n": args.n, "p": args.p},
        "result": {"group": group},
        "citations": ["weight-graded piece of the free lambda-ring, "
                      "computed by the reflexive-coequalizer presentation"],
    }


def cmd_theta(args) -> dict:
    _require_prime(args.p)
    expr = _parse_expr(args.module, args.p)
    try:
        group = theta_tn_presented(args.p, _expr_to_presentation(expr), args.n)
    except UnsupportedTorsionError as e:
        raise UnsupportedInputError(str(e))
    basis = [theta_mono_str(m) for m in free_theta_basis(args.p, args.n)]
    return {
        "command": "theta",
        "inputs": {"module": args.module, "n": args.n, "p": args.p},
        "result": {"group": str(group), "free_basis": basis},
        "citations": ["weight-graded piece of the free theta-ring at p, "
                      "with theta as a formal generator shift"],
    }


def cmd_transfer(args) -> dict:
    if args.m < 1 or args.p < 1:
        raise UsageError("--m and --p must be >= 1")
    t = transfer_matrix(args.m, args.p)
    spectrum = transfer_spectrum(args.m, args.p)
    matrix = t.paper_basis_matrix() if args.basis == "paper" else t.matrix
    if args.basis == "paper":
        labels = ["(" + ",".join(map(str, partitions(args.m)[i])) + ")"
                  for i in t.paper_permutation]
    else:
        labels = ["(" + ",".join(map(str, lam)) + ")"
                  for lam in partitions(args.m)]
    return {
        "command": "transfer",
        "inputs": {"m": args.m, "p": args.p, "basis": args.basis},
        "result": {
            "matrix": matrix.to_rows(),
            "basis_labels": labels,
            "char_poly": list(spectrum.char_poly),
            "eigenvalues": list(spectrum.eigenvalues),
            "nilpotency_index_mod_p": spectrum.nilpotency_index,
        },
        "citations": ["restriction-induction transfer on the symmetric-group "
                      "representation ring, summed over ordered p-part "
                      "compositions; eigenvalues p^(parts of the cycle type)"],
    }


def cmd_complete(args) -> dict:
    _require_prime(args.p)
    expr = _parse_expr(args.expr, args.p)
    r = l_complete(expr)
    return {
        "command": "complete",
        "inputs": {"expr": args.expr, "p": args.p},
        "result": {"L0": str(r.L0), "L1": str(r.L1)},
        "citations": ["derived p-completion computed atomwise; nothing above "
                      "L1 at this height"],
    }


def cmd_keyconst(args) -> dict:
    _require_prime(args.p)
    k = key_constant(args.n, args.p, args.max_k)
    return {
        "command": "keyconst",
        "inputs": {"n": args.n, "p": args.p, "max_k": args.max_k},
        "result": {"k": k, "bound": _partition_count(args.n)},
        "citations": ["least truncation level whose mod-p weight pieces "
                      "agree with the untruncated ones through weight n"],
    }


def cmd_adams(args) -> dict:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    psi = adams(args.n)
    terms = {mono_str(mono): c for mono, c in sorted(psi.terms.items())}
    return {
        "command": "adams",
        "inputs": {"n": args.n},
        "result": {"expression": str(psi), "terms": terms},
        "citations": ["Adams operation expanded in lambda-monomials via the "
                      "Newton recursion"],
    }


# ---------------------------------------------------------------- verify


def _suite_t2cyclic(max_m: int):
    for m in range(2, max_m + 1):
        got = tn_presented(Presentation.cyclic(m), 2)
        if m % 2:
            want = sorted((m, m))
        else:
            want = sorted(x for x in (2 * m, m // 2) if x > 1)
        ok = (got.free_rank == 0
              and sorted(got.torsion_invariants) == want)
        yield (f"T2(Z/{m})", ok)


def _suite_appendix_b(_max_m):
    golden = {
        (2, 2): [[3, 1], [1, 3]],
        (3, 3): [[10, 1, 8], [1, 10, 8], [8, 8, 19]],
        (4, 4): [[35, 1, 20, 45, 15], [1, 35, 20, 15, 45],
                 [20, 20, 56, 60, 60], [45, 15, 60, 115, 81],
                 [15, 45, 60, 81, 115]],
    }
    for (m, p), want in golden.items():
        t = transfer_matrix(m, p)
        yield (f"t({m},{p}) matrix", t.paper_basis_matrix().to_rows() == want)
        try:
            transfer_spectrum(m, p)
            yield (f"t({m},{p}) spectrum", True)
        except ArithmeticError:
            yield (f"t({m},{p}) spectrum", False)


def _suite_completion(_max_m):
    table = [
        ("Z", 2, "Zp_hat", "0"),
        ("Z/8", 2, "Z/8", "0"),
        ("Z/9", 2, "0", "0"),
        ("Z[1/p]", 3, "0", "0"),
        ("Zp_inf", 3, "0", "Zp_hat"),
        ("Zp_hat", 5, "Zp_hat", "0"),
    ]
    for text, p, l0, l1 in table:
        r = l_complete(parse_module_expr(text, p))
        yield (f"L({text}) at p={p}", (str(r.L0), str(r.L1)) == (l0, l1))


def _suite_main_theorem(_max_m):
    for p in (2, 3):
        for n in (1, 2, 3):
            k = key_constant(n, p)
            for pres in (Presentation.free(1), Presentation.cyclic(p),
                         Presentation.cyclic(p * p)):
                ok = verify_main_theorem(pres, n, p, k)
                yield (f"truncation check n={n} p={p}", ok)


_SUITES = {
    "t2cyclic": _suite_t2cyclic,
    "appendix-b": _suite_appendix_b,
    "completion": _suite_completion,
    "main-theorem": _suite_main_theorem,
}


def cmd_verify(args) -> dict:
    if args.suite == "none":
        names = []
    elif args.suite == "all":
        names = list(_SUITES)
    elif args.suite in _SUITES:
        names = [args.suite]
    else:
        raise UsageError(f"unknown suite {args.suite!r}; choose from "
                         f"{['none', 'all'] + list(_SUITES)}")
    max_m = args.max_m if args.max_m is not None else 50
    checks = []
    for name in names:
        for label, ok in _SUITES[name](max_m):
            checks.append({"suite": name, "check": label, "passed": ok})
    passed = all(c["passed"] for c in checks)
    return {
        "command": "verify",
        "inputs": {"suite": args.suite, "max_m": max_m},
        "result": {"passed": passed, "checks": checks},
        "citations": ["reproduction suites for the cyclic weight-2 "
                      "classification, the transfer golden matrices, the "
                      "completion atom table, and the truncation comparison"],
    }


# ---------------------------------------------------------------- output


def _flatten(prefix, value, rows):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list):
        rows.append((prefix, " ".join(json.dumps(v, sort_keys=True)
                                      if isinstance(v, (dict, list))
                                      else str(v) for v in value)))
    else:
        rows.append((prefix, str(value)))


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, separators=(", ", ": "))
    if fmt == "tsv":
        rows = []
        _flatten("", doc, rows)
        return "\n".join(f"{k}\t{v}" for k, v in rows)
    lines = [f"{doc['command']}: " + ", ".join(
        f"{k}={v}" for k, v in doc["inputs"].items() if v is not None)]
    for k in doc["result"]:
        v = doc["result"][k]
        if k == "matrix":
            lines.append("matrix:")
            lines.extend("  " + " ".join(f"{x:>4}" for x in row) for row in v)
        elif k == "checks":
            for c in v:
                status = "ok" if c["passed"] else "FAIL"
                lines.append(f"  [{status}] {c['suite']}: {c['check']}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerops",
        description="Exact computer algebra for free lambda- and theta-rings, "
                    "derived p-completion, and symmetric-group transfers.")
    parser.add_argument("--format", choices=("json", "tsv", "pretty"),
                        default="pretty")
    # accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "pretty"),
                        default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("tn", parents=[common],
                       help="weight piece of the free lambda-ring")
    s.add_argument("--module", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int)
    s.set_defaults(run=cmd_tn)

    s = sub.add_parser("theta", parents=[common], help="weight piece of the free theta-ring")
    s.add_argument("--module", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(run=cmd_theta)

    s = sub.add_parser("transfer", parents=[common], help="symmetric-group transfer operator")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--basis", choices=("paper", "canonical"),
                   default="canonical")
    s.set_defaults(run=cmd_transfer)

    s = sub.add_parser("complete", parents=[common], help="derived p-completion of an expression")
    s.add_argument("--expr", required=True)
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(run=cmd_complete)

    s = sub.add_parser("keyconst", parents=[common], help="least sufficient truncation level")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--max-k", type=int, dest="max_k")
    s.set_defaults(run=cmd_keyconst)

    s = sub.add_parser("adams", parents=[common], help="Adams operation in lambda-monomials")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(run=cmd_adams)

    s = sub.add_parser("verify", parents=[common], help="run reproduction suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--max-m", type=int, dest="max_m")
    s.add_argument("--max-k", type=int, dest="max_k")
    s.set_defaults(run=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.run(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except UnsupportedInputError as e:
        print(f"unsupported input: {e}", file=sys.stderr)
        return 3
    print(render(doc, args.format))
    if args.subcommand == "verify" and not doc["result"]["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
