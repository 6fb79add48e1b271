"""Command-line entry point: ``abelred <command> [FILE] [options]``.

Exit status: 0 for a positive result, 1 for a negative or inconclusive
mathematical verdict, 2 for malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import asimple, catalog, coadjoint, fileformat, structure
from . import linalg as la
from .algebra import Subspace
from .errors import AbelredError, NoShift, ParseError

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ------------------------------------------------------------------ rendering

def _plain(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _render(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append(f"{key}:")
            for item in value:
                lines.append("  - " + json.dumps(item, sort_keys=False))
        elif isinstance(value, (list, dict)):
            lines.append(f"{key}: {json.dumps(value)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(payload: dict, as_json: bool, out) -> None:
    payload = _plain(payload)
    out.write(json.dumps(payload, indent=2) + "\n" if as_json else _render(payload) + "\n")


def _names_of(g, s: Subspace) -> list:
    return [fileformat.format_expr(b, g.names) for b in s.basis]


# ------------------------------------------------------------------ inputs

def _read_text(path, stdin) -> str:
    if path in (None, "-"):
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(args, stdin):
    return fileformat.read_document(_read_text(args.file, stdin))


def _parse_assignments(g, spec: str) -> la.Vector:
    v = [Fraction(0)] * g.dim
    for item in filter(None, (p.strip() for p in spec.split(","))):
        name, eq, val = item.partition("=")
        if not eq:
            raise InputError(f"expected name=value, got {item!r}")
        name = name.strip()
        if name not in g.names:
            raise InputError(f"unknown basis element {name!r}")
        try:
            v[g.index(name)] = fileformat._coeff(val.strip(), 0)
        except ParseError:
            raise InputError(f"bad value {val.strip()!r} for {name}") from None
    return tuple(v)


def _ideal(g, args, cert=None) -> Subspace:
    if getattr(args, "ideal", None):
        names = args.ideal.replace(",", " ").split()
        for x in names:
            if x not in g.names:
                raise InputError(f"unknown basis element {x!r}")
        return Subspace.span((g.e(x) for x in names), g.dim)
    if cert is not None:
        return cert.a
    return structure.maximal_abelian_ideal(g)


def _certificate(g, args, embedded):
    if getattr(args, "cert", None):
        text = _read_text(args.cert, None)
        if "dim " not in text:
            text = fileformat.write_algebra(g) + text
        return fileformat.read_document(text)[1]
    return embedded


# ------------------------------------------------------------------ commands

def cmd_analyze(args, stdin, out) -> int:
    g, _ = _load(args, stdin)
    r = structure.analyze(g)
    payload = {
        "command": "analyze",
        "dim": r.dim,
        "nilpotent": r.nilpotent,
        "step": r.step,
        "series_dims": [s.dim for s in r.series],
        "center_dim": r.center.dim,
        "center": _names_of(g, r.center),
        "second_center_dim": r.second_center.dim,
        "derived_dim": r.derived.dim,
        "metabelian": r.is_metabelian,
        "grading_valid": r.declared_grading_valid,
        "stratification_valid": r.stratification_valid,
        "carnot_rank": r.carnot_rank,
        "abelian_ideal_dim": r.abelian_ideal.dim if r.abelian_ideal else None,
        "abelian_ideal": _names_of(g, r.abelian_ideal) if r.abelian_ideal else None,
        "notes": r.notes,
    }
    _emit(payload, args.json, out)
    return EXIT_OK


def _cert_payload(g, cert):
    return [{"X": fileformat.format_expr(x, g.names), "Y": fileformat.format_expr(y, g.names),
             "bracket": fileformat.format_expr(b, g.names)}
            for x, y, b in zip(cert.X_basis, cert.Y_witnesses, cert.brackets)]


def cmd_asimple(args, stdin, out) -> int:
    g, embedded = _load(args, stdin)
    cert = _certificate(g, args, embedded)
    caveats = []
    verdict = None
    if cert is not None:
        check = asimple.verify_certificate(g, cert)
        if check:
            verdict = asimple.ASimpleVerdict(asimple.PROVEN_YES, "supplied certificate verified", cert)
        else:
            where = "" if check.index is None else f" at witness {check.index + 1}"
            caveats.append(f"supplied certificate rejected{where}: {check.reason}")
    if verdict is None:
        if structure.is_nilpotent(g) and structure.is_metabelian(g):
            a = _ideal(g, args)
            verdict = asimple.decide(g, a, seed=args.seed, budget=args.budget)
        else:
            verdict = asimple.decide(g, seed=args.seed, budget=args.budget)
    payload = {"command": "asimple", "status": verdict.status, "reason": verdict.reason,
               "seed": args.seed, "budget": args.budget, "caveats": caveats}
    if verdict.certificate is not None:
        payload["ideal"] = _names_of(g, verdict.certificate.a)
        payload["certificate"] = _cert_payload(g, verdict.certificate)
    _emit(payload, args.json, out)
    return EXIT_OK if verdict.status == asimple.PROVEN_YES else EXIT_NEGATIVE


def _need_certificate(g, args, embedded):
    cert = _certificate(g, args, embedded)
    if cert is None:
        verdict = asimple.decide(g, seed=getattr(args, "seed", 0))
        cert = verdict.certificate
    if cert is None:
        return None
    asimple.verify_certificate(g, cert).raise_for_failure()
    return cert


def cmd_basis(args, stdin, out) -> int:
    g, embedded = _load(args, stdin)
    cert = _need_certificate(g, args, embedded)
    if cert is None:
        _emit({"command": "basis", "status": "NO_CERTIFICATE",
               "reason": "no A-simplicity certificate available"}, args.json, out)
        return EXIT_NEGATIVE
    cb = asimple.canonical_basis(g, cert)
    fmt = lambda v: fileformat.format_expr(v, g.names)  # noqa: E731
    relations = []
    for i in range(cb.n):
        for j in range(cb.n):
            relations.append({"i": i + 1, "j": j + 1, "delta": int(i == j),
                              "C_I": list(cb.C_I[i][j]), "C_a": list(cb.C_a[i][j])})
    payload = {
        "command": "basis", "status": "OK",
        "Z0": fmt(cb.Z0), "Z_I": [fmt(v) for v in cb.Z_I], "Y_j": [fmt(v) for v in cb.Y_j],
        "Y_a": [fmt(v) for v in cb.Y_a], "X_i": [fmt(v) for v in cb.X_i],
        "relations": relations,
    }
    _emit(payload, args.json, out)
    return EXIT_OK


def _verdict_payload(g, v):
    an = v.analysis
    return {"mu": list(an.mu), "status": v.status, "reasons": v.reasons,
            "orbit_dim": an.orbit_dim, "isotropy_dim": an.isotropy.dim,
            "dim_condition": an.dim_condition_holds, "isotropy_in_a": an.isotropy_in_a,
            "T_injective": an.T_injective}


def cmd_equivalence(args, stdin, out) -> int:
    g, embedded = _load(args, stdin)
    a = _ideal(g, args, None)
    if args.random:
        rep = coadjoint.generic_scan(g, a, trials=args.trials, bound=args.bound, seed=args.seed)
        caveats = rep.verdicts[0].caveats
        status = coadjoint.EQUIVALENT if rep.equivalent_count == rep.trials else coadjoint.NOT_EQUIVALENT
        payload = {"command": "equivalence", "status": status, "label": rep.label,
                   "seed": rep.seed, "trials": rep.trials, "bound": rep.bound,
                   "ideal": _names_of(g, a), "max_orbit_dim": rep.max_orbit_dim,
                   "equivalent_fraction": rep.equivalent_fraction,
                   "representative_mu": list(rep.representative), "caveats": caveats,
                   "samples": [_verdict_payload(g, v) for v in rep.verdicts]}
    else:
        if args.mu is None:
            raise InputError("give --mu name=value,... or --random")
        v = coadjoint.equivalence_verdict(g, a, _parse_assignments(g, args.mu))
        status = v.status
        payload = {"command": "equivalence", "ideal": _names_of(g, a), **_verdict_payload(g, v),
                   "caveats": v.caveats}
    _emit(payload, args.json, out)
    return EXIT_OK if status == coadjoint.EQUIVALENT else EXIT_NEGATIVE


def cmd_psi(args, stdin, out) -> int:
    g, embedded = _load(args, stdin)
    cert = _need_certificate(g, args, embedded)
    if cert is None:
        _emit({"command": "psi", "status": "NO_CERTIFICATE",
               "reason": "no A-simplicity certificate available"}, args.json, out)
        return EXIT_NEGATIVE
    cb = asimple.canonical_basis(g, cert)
    mu = _parse_assignments(g, args.mu or "")
    an = coadjoint.analyze_momentum(g, cert.a, mu, X=cb.X_i, basis=cb)
    payload = {"command": "psi", "mu": list(mu), "psi": an.psi, "psi_nonzero": an.psi != 0,
               "T_injective": an.T_injective, "M": [list(r) for r in an.M_matrix]}
    _emit(payload, args.json, out)
    return EXIT_OK if an.psi != 0 else EXIT_NEGATIVE


def cmd_shift(args, stdin, out) -> int:
    g, _ = _load(args, stdin)
    a = _ideal(g, args)
    mu = _parse_assignments(g, args.mu or "")
    mt = _parse_assignments(g, args.mu_tilde or "")
    try:
        y = coadjoint.coadjoint_shift(g, a, mu, mt)
    except NoShift as exc:
        _emit({"command": "shift", "status": "NO_SHIFT", "reason": str(exc)}, args.json, out)
        return EXIT_NEGATIVE
    _emit({"command": "shift", "status": "OK", "Y": fileformat.format_expr(y, g.names),
           "Y_coordinates": list(y)}, args.json, out)
    return EXIT_OK


def cmd_semidirect(args, stdin, out) -> int:
    h = fileformat.read_algebra(_read_text(args.file, stdin))
    spec = fileformat.parse_action(_read_text(args.action, None), h)
    g = catalog.semidirect(spec)
    if args.emit:
        out.write(fileformat.write_algebra(g))
        return EXIT_OK
    nu = [Fraction(0)] * spec.dim_a
    for item in filter(None, (p.strip() for p in (args.nu or "").split(","))):
        name, eq, val = item.partition("=")
        if not eq or name.strip() not in spec.a_names:
            raise InputError(f"bad --nu entry {item!r}")
        nu[spec.a_names.index(name.strip())] = fileformat._coeff(val.strip(), 0)
    stab = catalog.h_nu_stabilizer(spec, nu)
    trivial = stab.dim == 0
    payload = {"command": "semidirect", "nu": nu, "stabilizer_dim": stab.dim,
               "stabilizer": [fileformat.format_expr(b, h.names) for b in stab.basis],
               "status": "TRIVIAL_STABILIZER" if trivial else "NONTRIVIAL_STABILIZER",
               "caveats": ["infinitesimal only: a discrete stabilizer is invisible here"]}
    _emit(payload, args.json, out)
    return EXIT_OK if trivial else EXIT_NEGATIVE


def _known_certificate(family, params, g):
    if family == "f24":
        return asimple.make_certificate(g, structure.maximal_abelian_ideal(g),
                                        [g.e("X1"), g.e("X2")], [g.e("Y1"), g.e("Y2")])
    if family == "jet":
        return asimple.jet_certificate(*params)
    if family in ("heisenberg", "filiform"):
        return asimple.certify_onedim_center(g, structure.maximal_abelian_ideal(g)).certificate
    return None


def cmd_catalog(args, stdin, out) -> int:
    if args.family == "list":
        for name, (_, arity) in catalog.FAMILIES.items():
            out.write(f"{name} ({arity} parameter{'s' if arity != 1 else ''})\n")
        return EXIT_OK
    try:
        g = catalog.build(args.family, *args.params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    cert = None if args.no_certificate else _known_certificate(args.family, args.params, g)
    out.write(fileformat.write_document(g, cert))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelred", description="Exact Lie algebra toolkit for reduction by abelian ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, file=True):
        if file:
            sp.add_argument("file", nargs="?", help="algebra file (default: standard input)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    common(sub.add_parser("analyze", help="structure report"))

    sp = common(sub.add_parser("asimple", help="A-simplicity verdict"))
    sp.add_argument("--cert", help="certificate file (algebra section optional)")
    sp.add_argument("--ideal", help="basis names spanning the abelian ideal")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=64)

    sp = common(sub.add_parser("basis", help="canonical basis from a certificate"))
    sp.add_argument("--cert")

    sp = common(sub.add_parser("equivalence", help="equivalence verdict at mu"))
    sp.add_argument("--mu", help="covector as name=value,...")
    sp.add_argument("--random", action="store_true", help="sample random integer covectors")
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--bound", type=int, default=10 ** 4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ideal")

    sp = common(sub.add_parser("psi", help="determinant psi(mu) in the canonical basis"))
    sp.add_argument("--mu")
    sp.add_argument("--cert")

    sp = common(sub.add_parser("shift", help="solve for the coadjoint shift"))
    sp.add_argument("--mu")
    sp.add_argument("--mu-tilde", dest="mu_tilde")
    sp.add_argument("--ideal")

    sp = common(sub.add_parser("semidirect", help="stabilizer of nu for h acting on A"))
    sp.add_argument("--action", required=True, help="action file: 'names ...' and 'action h = rows'")
    sp.add_argument("--nu", help="covector on A as name=value,...")
    sp.add_argument("--emit", action="store_true", help="print the semidirect algebra instead")

    sp = common(sub.add_parser("catalog", help="print a built-in algebra"), file=False)
    sp.add_argument("family", help="family name, or 'list'")
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--no-certificate", action="store_true")
    return p


COMMANDS = {
    "analyze": cmd_analyze, "asimple": cmd_asimple, "basis": cmd_basis,
    "equivalence": cmd_equivalence, "psi": cmd_psi, "shift": cmd_shift,
    "semidirect": cmd_semidirect, "catalog": cmd_catalog,
}


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "random", False) and getattr(args, "mu", None):
        stderr.write("abelred: --mu and --random are mutually exclusive\n")
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args, stdin, stdout)
    except (InputError, AbelredError, ValueError) as exc:
        stderr.write(f"abelred: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
