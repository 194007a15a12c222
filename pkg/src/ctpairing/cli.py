"""Command-line interface.

Subcommands:
  pair    full pairing matrix, per-entry local tables, and the rank bound
  entry   a single pairing value with its local table
  kummer  twisted Kummer quartic and covariants for each supplied model
  verify  model <-> (xi, m) round trips and internal consistency checks

Exit codes: 0 success, 1 validation failure, 2 unresolved entries,
3 internal inconsistency.
"""

import argparse
import json
import sys

from gmpy2 import mpq

from .engine import (PairingContext, ParityInconsistency, matrix_values,
                     pairing_matrix, rank_report, torsion_two_dim)
from .kummer import kummer_quartic
from .models import selmer_from_model
from .problem import ProblemError, cassels_image, load_problem
from .twisted import covariants, twisted_kummer


def _fmt_place(place):
    return "inf" if place is None else str(place)


def _fmt_q(value):
    if isinstance(value, float):
        return "%.6g" % value
    return str(mpq(value))


def _fmt_poly(poly, names):
    """A multivariate polynomial as a plain text sum."""
    parts = []
    for mono in sorted(poly.coeffs, reverse=True):
        c = poly.coeffs[mono]
        term = "*".join(["%s^%d" % (names[i], e) if e > 1 else names[i]
                         for i, e in enumerate(mono) if e]) or "1"
        parts.append(("+ " if c > 0 else "- ")
                     + (term if abs(c) == 1 and term != "1"
                        else "%s*%s" % (abs(c), term) if term != "1"
                        else str(abs(c))))
    text = " ".join(parts) if parts else "0"
    return text[2:] if text.startswith("+ ") else "-" + text[2:] \
        if text.startswith("- ") else text


def _poly_json(poly):
    return [[list(mono), str(c)]
            for mono, c in sorted(poly.coeffs.items(), reverse=True)]


def _table_rows(table):
    return [{"place": _fmt_place(d.place),
             "point": [_fmt_q(c) for c in d.point],
             "gamma_class": str(d.gamma_class),
             "symbol": d.symbol} for d in table]


def _print_table(table, out):
    print("  place | local point | gamma class | symbol", file=out)
    for d in table:
        print("  %5s | (%s) | %s | %d"
              % (_fmt_place(d.place), " : ".join(_fmt_q(c) for c in d.point),
                 d.gamma_class, d.symbol), file=out)


def _entry_json(e):
    out = {"value": e.value, "provenance": e.provenance}
    if e.detail:
        out["detail"] = e.detail
    if e.point is not None:
        out["point"] = [str(mpq(c)) for c in e.point]
    if e.a is not None:
        out["a"] = str(e.a)
    if e.gamma is not None:
        out["gamma"] = _poly_json(e.gamma)
    if e.table:
        out["local_table"] = _table_rows(e.table)
    return out


def _context(problem):
    opts = problem.options
    return PairingContext(problem.algebra, hints=problem.hints(),
                          prime=opts["prime"], precision=opts["precision"],
                          height_bound=opts["height_bound"],
                          seed=opts["seed"], tries=opts["tries"])


def _mw_checks(problem, ctx, labels, reps, values):
    """Images of supplied Mordell-Weil points must lie in the kernel of
    the pairing matrix.  Returns a list of check dicts."""
    checks = []
    n = len(reps)
    for pt in problem.mw_points:
        name = "(" + " : ".join(str(c) for c in pt) + ")"
        try:
            images = cassels_image(problem.algebra, pt)
        except ValueError as err:
            checks.append({"point": name, "ok": False, "note": str(err)})
            continue
        coords = None
        for image in images:
            for mask in range(2 ** n):
                acc = image
                for i in range(n):
                    if mask >> i & 1:
                        acc = acc * reps[i]
                if acc.is_trivial(prime=ctx.prime, seed=ctx.seed):
                    coords = [mask >> i & 1 for i in range(n)]
                    break
            if coords is not None:
                break
        if coords is None:
            checks.append({"point": name, "ok": False,
                           "note": "image is not in the span of the basis"})
            continue
        in_kernel = all(
            sum(coords[j] * values[i][j] for j in range(n)) % 2 == 0
            for i in range(n)
            if all(values[i][j] is not None for j in range(n)))
        checks.append({"point": name, "ok": in_kernel,
                       "note": "image coordinates (%s)"
                       % ", ".join("%s:%d" % (labels[i], coords[i])
                                   for i in range(n))})
    return checks


def _cmd_pair(problem, args, out):
    ctx = _context(problem)
    labels = [label for label, _ in problem.gens]
    reps = [rep for _, rep in problem.gens]
    entries = pairing_matrix(ctx, problem.gens)
    values = matrix_values(entries)
    status = 0
    torsion = torsion_two_dim(problem.curve)
    try:
        report = rank_report(values, torsion,
                             deficient_places=problem.deficient_places)
    except ParityInconsistency as err:
        print("inconsistency: %s" % err, file=sys.stderr)
        return 3
    checks = _mw_checks(problem, ctx, labels, reps, values)
    if any(not c["ok"] for c in checks):
        status = 3
    elif not report.complete:
        status = 2

    if args.format == "structured":
        doc = {"labels": labels,
               "matrix": values,
               "entries": [[_entry_json(e) for e in row] for row in entries],
               "rank": {"selmer_dim": report.selmer_dim,
                        "torsion_dim": report.torsion_dim,
                        "bound_before": report.bound_before,
                        "pairing_rank": report.pairing_rank,
                        "bound_after": report.bound_after,
                        "complete": report.complete,
                        "parity_checked": report.parity_checked},
               "mw_checks": checks}
        json.dump(doc, out, indent=1, sort_keys=True)
        print(file=out)
        return status

    width = max(len(s) for s in labels)
    head = " ".join("%*s" % (width, s) for s in labels)
    print("pairing matrix (basis %s):" % ", ".join(labels), file=out)
    print("%*s  %s" % (width, "", head), file=out)
    for i, row in enumerate(values):
        cells = " ".join("%*s" % (width, "?" if v is None else v)
                         for v in row)
        print("%*s  %s" % (width, labels[i], cells), file=out)
    for i in range(len(labels)):
        for j in range(len(labels)):
            e = entries[i][j]
            print("", file=out)
            print("<%s, %s> = %s  [%s]"
                  % (labels[i], labels[j],
                     "?" if e.value is None else e.value, e.provenance),
                  file=out)
            if e.detail:
                print("  " + e.detail, file=out)
            if e.point is not None:
                print("  rational point (%s), a = %s"
                      % (" : ".join(str(mpq(c)) for c in e.point), e.a),
                      file=out)
            if e.gamma is not None:
                print("  gamma = %s"
                      % _fmt_poly(e.gamma, ["x1", "x2", "x3", "x4"]),
                      file=out)
            if e.table:
                _print_table(e.table, out)
    print(file=out)
    print("2-torsion dimension: %d" % report.torsion_dim, file=out)
    print("pairing rank: %d%s" % (report.pairing_rank,
                                  "" if report.complete else " (partial)"),
          file=out)
    if report.parity_checked:
        print("deficiency parity check: passed", file=out)
    for c in checks:
        print("Mordell-Weil point %s: %s -- %s"
              % (c["point"], "in kernel" if c["ok"] else "FAILED",
                 c["note"]), file=out)
    print("rank bound %d -> %d" % (report.bound_before, report.bound_after),
          file=out)
    return status


def _cmd_entry(problem, args, out):
    by_label = dict(problem.gens)
    for name in (args.eps, args.eta):
        if name not in by_label:
            print("unknown label %r" % name, file=sys.stderr)
            return 1
    ctx = _context(problem)
    try:
        res = ctx.entry(by_label[args.eps], by_label[args.eta])
    except ArithmeticError as err:
        print("unresolved: %s" % err, file=sys.stderr)
        return 2
    if args.format == "structured":
        json.dump({"eps": args.eps, "eta": args.eta,
                   "entry": _entry_json(res)}, out, indent=1, sort_keys=True)
        print(file=out)
        return 0
    print("<%s, %s> = %d" % (args.eps, args.eta, res.value), file=out)
    if res.point is not None:
        print("rational point (%s), a = %s"
              % (" : ".join(str(mpq(c)) for c in res.point), res.a), file=out)
    if res.gamma is not None:
        print("gamma = %s" % _fmt_poly(res.gamma, ["x1", "x2", "x3", "x4"]),
              file=out)
    if res.table:
        _print_table(res.table, out)
    return 0


def _cmd_kummer(problem, args, out):
    names = ["x1", "x2", "x3", "x4"]
    doc = {"kummer": None, "twists": {}}
    quartic = kummer_quartic(problem.curve).primitive_normalized()
    doc["kummer"] = quartic
    if args.format != "structured":
        print("Kummer quartic: %s" % _fmt_poly(quartic, names), file=out)
    for label, model in sorted(problem.models.items()):
        surface = twisted_kummer(model)
        covs = covariants(model)
        doc["twists"][label] = (surface, covs)
        if args.format != "structured":
            print(file=out)
            print("%s: twisted quartic %s"
                  % (label, _fmt_poly(surface, names)), file=out)
            for k, cov in enumerate(covs):
                print("%s: covariant F%d = %s"
                      % (label, k, _fmt_poly(cov, names)), file=out)
    if args.format == "structured":
        json.dump({"kummer": _poly_json(doc["kummer"]),
                   "twists": {label: {"quartic": _poly_json(surface),
                                      "covariants": [_poly_json(c)
                                                     for c in covs]}
                              for label, (surface, covs)
                              in doc["twists"].items()}},
                  out, indent=1, sort_keys=True)
        print(file=out)
    return 0


def _cmd_verify(problem, args, out):
    opts = problem.options
    failures = 0
    results = []
    for label, model in sorted(problem.models.items()):
        rep = dict(problem.gens + problem.aux)[label]
        ok = model.char_check()
        results.append(("determinant condition (%s)" % label, ok))
        failures += not ok
        recovered = selmer_from_model(model)
        ok = recovered.equals(rep, prime=opts["prime"], seed=opts["seed"])
        results.append(("model round trip (%s)" % label, ok))
        failures += not ok
    from .models import standard_model
    std = standard_model(problem.algebra)
    ok = std.char_check()
    results.append(("determinant condition (identity)", ok))
    failures += not ok
    ok = (twisted_kummer(std)
          == kummer_quartic(problem.curve).primitive_normalized())
    results.append(("identity twist recovers the Kummer quartic", ok))
    failures += not ok
    if args.format == "structured":
        json.dump({"checks": [{"name": n, "ok": bool(v)}
                              for n, v in results]},
                  out, indent=1, sort_keys=True)
        print(file=out)
    else:
        for name, ok in results:
            print("%s: %s" % (name, "ok" if ok else "FAILED"), file=out)
    return 3 if failures else 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="ctpair",
        description="Cassels-Tate pairing on the 2-Selmer group of a "
                    "genus 2 Jacobian over Q")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {"pair": _cmd_pair, "entry": _cmd_entry,
                "kummer": _cmd_kummer, "verify": _cmd_verify}
    for name, help_text in [
            ("pair", "full pairing matrix and rank bound"),
            ("entry", "a single pairing value with its local table"),
            ("kummer", "twisted Kummer quartics and covariants"),
            ("verify", "round-trip and consistency checks")]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="path to the problem JSON file")
        p.add_argument("--prime", type=int, default=None,
                       help="splitting prime override")
        p.add_argument("--precision", type=int, default=None,
                       help="base p-adic working precision")
        p.add_argument("--height-bound", type=int, default=None,
                       help="height bound for rational point search")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomised choices")
        p.add_argument("--format", choices=["text", "structured"],
                       default="text")
        if name == "entry":
            p.add_argument("--eps", required=True,
                           help="label of the first argument")
            p.add_argument("--eta", required=True,
                           help="label of the second argument")
    args = parser.parse_args(argv)
    overrides = {"prime": args.prime, "precision": args.precision,
                 "height_bound": args.height_bound, "seed": args.seed}
    try:
        problem = load_problem(args.problem, overrides=overrides)
    except ProblemError as err:
        print("invalid problem: %s" % err, file=sys.stderr)
        return 1
    try:
        return commands[args.command](problem, args, sys.stdout)
    except ParityInconsistency as err:
        print("inconsistency: %s" % err, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
