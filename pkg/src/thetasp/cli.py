"""Command-line front end.  Every subcommand prints one JSON document.

Exit status: 0 on success, 1 when a verification fails, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import charsum, partitions, whittaker
from .cyclotomic import QScalar
from .matgroup import identities
from .matgroup.symplectic import CATALOG, build_element
from .partitions import Partition, frac_str
from .suites import SUITES


class InputError(ValueError):
    pass


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _param(text: str):
    """key=value with value a JSON literal; strings are read as rationals where possible."""
    if "=" not in text:
        raise InputError(f"--param expects key=value, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        val = json.loads(raw)
    except json.JSONDecodeError:
        val = raw
    return key, _rationalize(val)


def _rationalize(v):
    if isinstance(v, list):
        return [_rationalize(x) for x in v]
    if isinstance(v, float):
        raise InputError("give rationals as strings like \"1/2\", not floats")
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            return v
    return v


# ---------------------------------------------------------------------------
# subcommands: each returns (payload, ok)

def cmd_collapse(a):
    lam = _partition(a.partition)
    return {"input": list(lam), "collapse": list(partitions.sp_collapse(lam))}, True


def cmd_dominance(a):
    lam, mu = _partition(a.lam), _partition(a.mu)
    return {"lambda": list(lam), "mu": list(mu), "order": partitions.dominance_compare(lam, mu).value}, True


def cmd_orbit(a):
    return {
        "n": a.n, "r": a.r,
        "pre_collapse": list(partitions.theta_orbit_pre_collapse(a.n, a.r)),
        "orbit": list(partitions.conjectured_orbit(a.n, a.r)),
    }, True


def cmd_gk_dim(a):
    lam = _partition(a.partition)
    n = a.n if a.n is not None else lam.total // 2
    return {"partition": list(lam), "n": n, "gk_dim": frac_str(partitions.gk_dimension(lam, n))}, True


def cmd_dim_check(a):
    rep = partitions.dimension_equation_check(a.n, a.r)
    return rep.to_json(), rep.satisfied


def cmd_build(a):
    params = dict(_param(p) for p in a.param or [])
    for key in ("n", "r", "a"):
        v = getattr(a, key)
        if v is not None:
            params[key] = v
    el = build_element(a.name, **params)
    return {
        "name": a.name,
        "size": el.mat.size,
        "symplectic": True,
        "signed_permutation": el.is_signed_permutation(),
        "matrix": el.mat.to_json(),
    }, True


def cmd_identity(a):
    rep = identities.verify_integral_transport(a.step, a.n, a.r, a.a)
    return rep.to_json(), rep.passed


def cmd_gauss(a):
    spec = charsum.LocalFieldSpec(a.p, a.n)
    g = charsum.gauss_sum(a.t, spec)
    norm = g.value * g.value.conj()
    out = {"p": a.p, "n": a.n, "t": a.t, "g": g.value.to_json(), "normalised": g.to_json()}
    if a.t % a.n:
        out["norm_is_p"] = norm == a.p
        return out, out["norm_is_p"]
    out["is_minus_one"] = g.value == -1
    return out, out["is_minus_one"]


def cmd_unit_integral(a):
    spec = charsum.LocalFieldSpec(a.p, a.n)
    val = charsum.unit_integral(a.m, a.t, spec)
    out = {"p": a.p, "n": a.n, "m": a.m, "t": a.t, "value": val.to_json(), "is_zero": val.is_zero()}
    if a.m == 1:
        out["equals_gauss_over_p"] = val == QScalar(charsum.gauss_sum(a.t, spec).value, -1, a.p)
    return out, True


def cmd_hilbert(a):
    spec = charsum.LocalFieldSpec(a.p, a.n)
    e = charsum.tame_hilbert(a.v1, a.u1, a.v2, a.u2, spec)
    return {"p": a.p, "n": a.n, "a": [a.v1, a.u1], "b": [a.v2, a.u2], "omega": spec.omega, "exponent": e}, True


def cmd_beta(a):
    ok = whittaker.beta_crosscheck(a.n, a.r, a.a)
    return {
        "n": a.n, "r": a.r, "a": a.a,
        "beta": frac_str(whittaker.beta_exponent(a.n, a.r, a.a)),
        "from_exponents": frac_str(whittaker.beta_from_exponents(a.n, a.r, a.a)),
        "crosscheck": ok,
    }, ok


def cmd_pipeline(a):
    rep = whittaker.exponent_pipeline(a.n)
    return rep.to_json(), rep.ok


def cmd_theorem2(a):
    res = whittaker.theorem2_rhs(a.n, a.n1, a.n2, with_gauss_factor=a.with_gauss_factor, p=a.p)
    return res.to_json(), True


def cmd_verify(a):
    names = list(SUITES) if a.suite == "all" else [a.suite]
    results = []
    for name in names:
        if name == "identities":
            results.append(SUITES[name](a.n))
        else:
            results.append(SUITES[name]())
    ok = all(r.passed for r in results)
    if len(results) == 1:
        return results[0].to_json(), ok
    return {"passed": ok, "suites": [r.to_json() for r in results]}, ok


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thetasp", description=__doc__.splitlines()[0])
    _format_flags(ap, argparse.SUPPRESS)
    ap.set_defaults(pretty=False)
    # the format flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    _format_flags(common, argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help)

    p = command("collapse", help="symplectic collapse of a partition")
    p.add_argument("partition")
    p.set_defaults(func=cmd_collapse)

    p = command("dominance", help="compare two partitions in dominance order")
    p.add_argument("lam")
    p.add_argument("mu")
    p.set_defaults(func=cmd_dominance)

    p = command("orbit", help="conjectured theta orbit for (n, r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_orbit)

    p = command("gk-dim", help="Gelfand-Kirillov dimension of an orbit")
    p.add_argument("partition")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_gk_dim)

    p = command("dim-check", help="dimension equation for (n, r); exit 1 if it fails")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_dim_check)

    p = command("build", help="build a named symplectic element")
    p.add_argument("name", choices=CATALOG)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--param", action="append", help="extra parameter key=value (JSON value)")
    p.set_defaults(func=cmd_build)

    p = command("identity", help="verify a conjugation step")
    p.add_argument("step", choices=sorted(identities.TRANSPORT_STEPS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--a", type=int)
    p.set_defaults(func=cmd_identity)

    p = command("gauss", help="n-th order Gauss sum over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(func=cmd_gauss)

    p = command("unit-integral", help="integral over the units of (e,p)^t psi(p^-m e)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(func=cmd_unit_integral)

    p = command("hilbert", help="tame Hilbert symbol of p^v1 u1 and p^v2 u2")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--v1", type=int, default=0)
    p.add_argument("--u1", type=int, default=1)
    p.add_argument("--v2", type=int, default=0)
    p.add_argument("--u2", type=int, default=1)
    p.set_defaults(func=cmd_hilbert)

    p = command("beta", help="descent exponent beta and its cross-check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=cmd_beta)

    p = command("pipeline", help="q-exponent of the second Whittaker term")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_pipeline)

    p = command("theorem2", help="assemble the unramified Whittaker formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n1", type=int, default=0)
    p.add_argument("--n2", type=int, default=0)
    p.add_argument("--with-gauss-factor", action="store_true")
    p.add_argument("--p", type=int, default=None, help="prime for the Gauss factor (default: smallest p = 1 mod n)")
    p.set_defaults(func=cmd_theorem2)

    p = command("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    p.add_argument("--n", type=int, help="restrict the transport checks of the identities suite to this n")
    p.set_defaults(func=cmd_verify)
    return ap


def _format_flags(parser, default) -> None:
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", default=default, help="JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", default=default, help="human-readable output")


def _pretty(payload, out) -> None:
    if isinstance(payload, dict) and "checks" in payload:
        out.write(f"suite {payload['suite']}: {'PASS' if payload['passed'] else 'FAIL'} "
                  f"({payload['total'] - payload['failed']}/{payload['total']})\n")
        width = max((len(c["id"]) for c in payload["checks"]), default=0)
        for c in payload["checks"]:
            out.write(f"  {'ok  ' if c['passed'] else 'FAIL'} {c['id']:<{width}}  {c['anchor']}\n")
        return
    if isinstance(payload, dict) and "suites" in payload:
        for s in payload["suites"]:
            _pretty(s, out)
        return
    if isinstance(payload, dict) and "formula" in payload:
        out.write(payload["formula"] + "\n")
        return
    for k, v in payload.items():
        out.write(f"{k}: {json.dumps(v, sort_keys=True)}\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, ok = args.func(args)
    except (InputError, ValueError, TypeError, KeyError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 2
    if args.pretty:
        _pretty(payload, out)
    else:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
