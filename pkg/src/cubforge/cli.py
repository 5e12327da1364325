"""Command line front end.

Exit codes: 0 every requested check passed, 2 a verification failed,
3 catalog data is missing, 4 the command line was not understood.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import cubature as cub
from . import designs as des
from . import hilbert as hil
from . import victoir as vic
from .datafiles import DataUnavailable
from .exactnum import FieldElement, render
from .reflect import groups as grp
from .reflect import sobolev as sob
from .reflect.basis import printed_certificate

EXIT_OK, EXIT_FAIL, EXIT_DATA, EXIT_USAGE = 0, 2, 3, 4
_STATUS = {EXIT_OK: "pass", EXIT_FAIL: "fail", EXIT_DATA: "data-unavailable", EXIT_USAGE: "usage"}


@dataclass
class CommandResult:
    status: int
    lines: list[str] = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    @property
    def report(self) -> str:
        return "\n".join(self.lines)

    def to_json(self, command: str) -> str:
        body = {"command": command, "status": _STATUS[self.status], "exit": self.status,
                "report": self.lines, "data": self.payload}
        return json.dumps(body, default=_jsonable, indent=2, sort_keys=True)


def _jsonable(x):
    if isinstance(x, FieldElement):
        return render(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _ok(flag: bool) -> int:
    return EXIT_OK if flag else EXIT_FAIL


def _write(text: str, out: str | None, lines: list[str]) -> None:
    if out:
        Path(out).write_text(text)
        lines.append(f"written to {out}")
    else:
        lines.append(text.rstrip("\n"))


# ---------------------------------------------------------------------------
# designs and orthogonal arrays
# ---------------------------------------------------------------------------

def _design_report(d: des.BlockDesign, t: int, lam=None) -> CommandResult:
    rep = des.verify_design(d, t)
    ok = rep.balanced and (lam is None or rep.lam == lam)
    lines = [f"v={d.v} b={d.b} block sizes {rep.block_sizes}",
             f"lambda by level {rep.lambdas}; balanced={rep.balanced} regular={rep.regular} max_t={rep.max_t}"]
    if lam is not None and rep.lam != lam:
        lines.append(f"stated lambda {lam} but found {rep.lam}")
    lines += rep.failures
    return CommandResult(_ok(ok), lines, {"v": d.v, "b": d.b, "t": t, "lambdas": rep.lambdas,
                                          "balanced": rep.balanced, "regular": rep.regular})


def cmd_designs(a) -> CommandResult:
    if a.action == "verify":
        d, t, lam = des.read_design(a.file)
        return _design_report(d, a.t or t, lam if a.t in (None, t) else None)
    if a.action == "catalog":
        d, t, lam = des.catalog_design(a.name, a.data_dir)
        return _design_report(d, t, lam)
    d, t, _ = des.read_design(a.file)
    derived = des.derive_design(d, a.point, t)
    rep = des.verify_design(derived, t - 1)
    lines = []
    _write("\n".join([f"v={derived.v} t={t - 1} lambda={rep.lam}"]
                     + [" ".join(map(str, b)) for b in derived.blocks]) + "\n", a.out, lines)
    return CommandResult(_ok(rep.balanced), lines, {"v": derived.v, "b": derived.b})


def cmd_oa(a) -> CommandResult:
    if a.action == "verify":
        arr = des.read_oa(a.file)
        rep = des.verify_oa(arr, a.t)
        lines = [f"N={arr.N} l={arr.l} strength {rep.strength} (requested {a.t}) "
                 f"centrally symmetric={rep.centrally_symmetric}"]
        if rep.violation:
            lines.append(f"unbalanced columns {rep.violation}")
        return CommandResult(_ok(rep.passed), lines,
                             {"N": arr.N, "l": arr.l, "strength": rep.strength, "passed": rep.passed,
                              "centrally_symmetric": rep.centrally_symmetric})
    if a.action == "gen-trivial":
        arr = des.trivial_oa(a.l)
    elif a.action == "gen-nr":
        arr = des.nordstrom_robinson()
    else:
        arr = des.dual_bch_oa(augment=a.augment)
    text = "\n".join("".join("+" if x > 0 else "-" for x in row) for row in arr.rows) + "\n"
    lines = []
    _write(text, a.out, lines)
    return CommandResult(EXIT_OK, lines, {"N": arr.N, "l": arr.l})


# ---------------------------------------------------------------------------
# cubature and substitution
# ---------------------------------------------------------------------------

def _verification(F: cub.CubatureFormula, index: int | None, degree: int | None) -> CommandResult:
    if index is None and degree is None:
        if F.mode is None:
            raise UsageError("formula states no index or degree; pass --index or --degree")
        index, degree = (F.order, None) if F.mode == "index" else (None, F.order)
    rep = cub.verify_index(F, index) if index is not None else cub.verify_degree(F, degree)
    lines = [f"{F.domain} m={F.m} points={F.size} {rep.mode} {rep.order}: "
             f"{'valid' if rep.valid else 'INVALID'} ({rep.checked} monomials, exact={rep.exact})"]
    for alpha, diff in rep.failures[:10]:
        lines.append(f"  monomial {hil.monomial_name(alpha)} off by {diff}")
    return CommandResult(_ok(rep.valid), lines,
                         {"points": F.size, "mode": rep.mode, "order": rep.order, "valid": rep.valid,
                          "failures": [[list(al), str(d)] for al, d in rep.failures]})


def cmd_cubature(a) -> CommandResult:
    if a.action == "verify":
        return _verification(cub.read_formula(a.file), a.index, a.degree)
    if a.action == "gen":
        F = cub.catalog_formula(a.catalog, a.m, a.variant)
    else:
        F = cub.read_formula(a.file)
        if a.to_sphere:
            F = cub.to_sphere(F, a.q)
        elif a.halve:
            F = cub.halve_antipodal(F)
        elif a.square:
            F = cub.square_points(F)
        elif a.sqrt:
            F = cub.sqrt_points(F)
    lines = [f"{F.domain} m={F.m} points={F.size} {F.mode} {F.order}"]
    _write(cub.dumps(F), a.out, lines)
    return CommandResult(EXIT_OK, lines, {"points": F.size})


def cmd_victoir(a) -> CommandResult:
    if a.action == "run":
        t0 = time.perf_counter()
        res = vic.run_pipeline(a.pipeline, a.data_dir)
        lines = [f"{res.name}: {res.points} points on S^{res.formula.m - 1}, "
                 f"{res.formula.mode} {res.formula.order} {'verified' if res.verified else 'FAILED'} "
                 f"in {time.perf_counter() - t0:.1f}s"]
        lines += [f"  {s}" for s in res.steps]
        if a.out:
            cub.write_formula(res.formula, a.out)
            lines.append(f"written to {a.out}")
        return CommandResult(_ok(res.verified), lines,
                             {"pipeline": res.name, "points": res.points, "verified": res.verified,
                              "steps": list(res.steps)})
    F = cub.read_formula(a.file)
    slots = [vic.OrbitSlot.of(F, i) for i in a.slot]
    if a.design:
        d, _, _ = des.read_design(a.design)
        if len(slots) == 1 and len(d.block_sizes()) == 1:
            G = vic.substitute_design(F, slots[0], d)
        else:
            G = vic.substitute_regular(F, slots, d)
    else:
        G = vic.substitute_oa(F, slots, des.read_oa(a.oa))
    lines = [f"{F.size} -> {G.size} points"]
    _write(cub.dumps(G), a.out, lines)
    return CommandResult(EXIT_OK, lines, {"before": F.size, "after": G.size})


# ---------------------------------------------------------------------------
# reflection groups
# ---------------------------------------------------------------------------

def cmd_reflect(a) -> CommandResult:
    g = grp.group_data(a.group)
    if a.action == "orbit":
        corners = [a.corner] if a.corner else range(1, g.rank + 1)
        sizes = {k: grp.corner_orbit(g, k).size for k in corners}
        lines = [f"{g.label} corner {k}: orbit size {n}" for k, n in sizes.items()]
        ok = True
        if g.printed_sizes:
            bad = [k for k, n in sizes.items() if g.printed_sizes[k - 1] != n]
            ok = not bad
            if bad:
                lines.append(f"differs from the reference sizes at corners {bad}")
        return CommandResult(_ok(ok), lines, {"group": g.label, "sizes": sizes})
    if a.action == "uvectors":
        table = sob.u_vectors(g)
        lines = [f"u{lab} = [{', '.join(render(x) for x in vec)}]" for lab, vec in table.items()]
        ok = True
        if a.compare:
            for c in sob.compare_with_printed(g):
                ok &= c.matches
                lines.append(f"degree {c.label}: " + ("matches reference" if c.matches else
                             f"differs from reference at corners {list(c.mismatched)}"))
        return CommandResult(_ok(ok), lines, {"group": g.label, "u": table})
    if a.action == "certify":
        res = sob.certify_nonexistence(g, a.degree)
        if not res:
            return CommandResult(EXIT_FAIL, [f"{g.label} degree {a.degree}: no certificate ({res.reason})"],
                                 {"group": g.label, "degree": a.degree, "found": False})
        combo = " + ".join(f"({render(c)}) u{lab}" for lab, c in res.coefficients.items())
        lines = [f"{g.label} degree {a.degree}: {combo} = [{', '.join(render(x) for x in res.vector)}] > 0",
                 f"no {g.label}-invariant Euclidean design of degree {a.degree} on the corner orbits"]
        payload = {"group": g.label, "degree": a.degree, "found": True,
                   "coefficients": res.coefficients, "vector": res.vector}
        try:
            coefs, vec = printed_certificate(g.label)
            chk = sob.validate_certificate(sob.u_vectors(g), coefs, vec)
            lines.append(f"reference certificate {coefs}: valid={chk.valid} literal={chk.literal}")
            payload["reference_valid"] = chk.valid
        except KeyError:
            pass
        return CommandResult(EXIT_OK, lines, payload)
    # classify
    fam = sob.classify_weights(g, a.t)
    lines = [f"{g.label} t={a.t}: free weights {['w%d' % i for i in fam.free] or 'none'}"]
    for i, (c, coefs) in (fam.affine_in(fam.free).items() if fam.free or fam.base else []):
        terms = " ".join(f"+ ({render(v)}) w{f}" for f, v in coefs.items() if f != i and not v.is_zero())
        if i not in fam.free:
            lines.append(f"  w{i} = {render(c)} {terms}".rstrip())
    verts = fam.vertices()
    lines.append(f"  {len(verts)} vertices of the nonnegative region")
    ok = bool(verts)
    payload = {"group": g.label, "t": a.t, "free": fam.free, "vertices": verts}
    if a.check_appendix:
        cmp = sob.compare_reference_families(g, data_dir=a.data_dir)
        ok = ok and cmp.valid
        lines.append(f"reference families: symbolic={cmp.symbolic} mismatched={list(cmp.mismatched)} "
                     f"samples={cmp.samples} failures={len(cmp.failures)} empty={len(cmp.empty)}")
        for ident, fr, inside, euclid in cmp.failures:
            lines.append(f"  {ident} at {fr}: in solved family={inside} euclidean check={euclid}")
        payload["reference"] = {"symbolic": cmp.symbolic, "samples": cmp.samples,
                                "failures": [list(map(str, f)) for f in cmp.failures]}
    return CommandResult(_ok(ok), lines, payload)


# ---------------------------------------------------------------------------
# Hilbert identities
# ---------------------------------------------------------------------------

def _identity_report(ident: hil.HilbertIdentity, expanded: bool = False) -> CommandResult:
    rep = hil.verify_identity(ident)
    rat = hil.rationality_report(ident)
    bound = hil.lower_bound(ident.m, ident.q)
    lines = [hil.render_identity(ident, compact=not expanded),
             f"{ident.n} terms (lower bound {bound}); {'valid' if rep.valid else 'INVALID'}; "
             f"coefficient field degree {rat.degree}"]
    for e, lhs, rhs in rep.failures[:10]:
        lines.append(f"  {hil.monomial_name(e)}: left {render(lhs)} right {render(rhs)}")
    return CommandResult(_ok(rep.valid), lines,
                         {"m": ident.m, "q": ident.q, "terms": ident.n, "valid": rep.valid,
                          "lower_bound": bound, "rational": rat.all_rational, "field_degree": rat.degree,
                          "failures": [hil.monomial_name(e) for e, _, _ in rep.failures]})


def cmd_hilbert(a) -> CommandResult:
    if a.action == "verify":
        return _identity_report(hil.read_identity(a.file), a.expanded)
    if a.action == "catalog":
        ident = hil.catalog_identity(a.name, k=a.k, a=Fraction(a.a) if a.a else None)
        res = _identity_report(ident, a.expanded)
        if a.out:
            hil.write_identity(ident, a.out)
            res.lines.append(f"written to {a.out}")
        return res
    if a.action == "from-cubature":
        F = cub.read_formula(a.file)
        q = a.q or F.order
        if q is None:
            raise UsageError("formula states no index; pass --q")
        ident = hil.cubature_to_identity(F, q)
        res = _identity_report(ident, a.expanded)
        if a.out:
            hil.write_identity(ident, a.out)
            res.lines.append(f"written to {a.out}")
        return res
    rep = hil.no_pm1_representation(a.m, a.q)
    lines = [f"m={a.m} q={a.q}: {rep.forms} forms with entries 0, +1, -1; rank {rep.rank}, "
             f"with target {rep.augmented_rank}: {'representable' if rep.feasible else 'not representable'}"]
    if rep.target_ratio:
        lines.append(f"coefficient ratio x1^{a.q - 2}x2^2 : x1^{a.q - 4}x2^4 is "
                     f"{rep.target_ratio[0]}:{rep.target_ratio[1]} in the target and "
                     f"{rep.form_ratio[0]}:{rep.form_ratio[1]} in every form")
    if rep.witness:
        lines.append(f"witness {({hil.monomial_name(e): c for e, c in rep.witness.items()})} "
                     f"checked={rep.witness_checked}")
    if rep.solution:
        lines.append("representation: " + " + ".join(
            f"{c} ({' '.join(map(str, f))})^{a.q}" for c, f in rep.solution))
    # success means the expected verdict was certified by both routes
    ok = rep.feasible or rep.witness_checked
    return CommandResult(_ok(ok), lines,
                         {"m": a.m, "q": a.q, "forms": rep.forms, "feasible": rep.feasible,
                          "rank": rep.rank, "augmented_rank": rep.augmented_rank,
                          "witness_checked": rep.witness_checked,
                          "solution": [[str(c), list(f)] for c, f in rep.solution or []]})


# ---------------------------------------------------------------------------
# reproduction targets
# ---------------------------------------------------------------------------

REPRO_TARGETS = ("ex45", "ex46", "main2i_m16", "main2ii_m25", "orbit-sizes", "certify-all",
                 "ns2", "appendix-e8", "identities")
_CERTIFY = (("F4", 12), ("H3", 12), ("H4", 24), ("E6", 10), ("E7", 12), ("E8", 16))


def _merge(results: list[tuple[str, CommandResult]]) -> CommandResult:
    worst = max((r.status for _, r in results), default=EXIT_OK)
    lines = []
    for name, r in results:
        lines.append(f"[{_STATUS[r.status]}] {name}")
        lines += [f"    {ln}" for ln in r.lines]
    return CommandResult(worst, lines, {name: r.payload for name, r in results})


def cmd_repro(a) -> CommandResult:
    t = a.target
    if t in ("ex45", "ex46", "main2i_m16", "main2ii_m25"):
        name = {"ex45": "ex45_s6_91", "ex46": "ex46_s8_457"}.get(t, t)
        res = cmd_victoir(argparse.Namespace(action="run", pipeline=name, data_dir=a.data_dir, out=None))
        if t == "ex45" and res.status == EXIT_OK:
            F = vic.run_pipeline(name, a.data_dir).formula
            res = _merge([("pipeline", res),
                          ("identity", _identity_report(hil.cubature_to_identity(F, 6)))])
        return res
    if t == "orbit-sizes":
        groups = a.group and [a.group] or ["F4", "H3", "H4", "E6", "E7", "E8"]
        return _merge([(g, cmd_reflect(argparse.Namespace(action="orbit", group=g, corner=None)))
                       for g in groups])
    if t == "certify-all":
        out = []
        for g, d in _CERTIFY:
            hit = cmd_reflect(argparse.Namespace(action="certify", group=g, degree=d))
            miss = sob.certify_nonexistence(g, d - 2)
            if miss:
                hit.status = EXIT_FAIL
                hit.lines.append(f"unexpected certificate at degree {d - 2}")
            else:
                hit.lines.append(f"degree {d - 2}: no certificate, as expected")
            out.append((f"{g} degree {d}", hit))
        return _merge(out)
    if t in ("ns2", "appendix-e8"):
        groups = ["E8"] if t == "appendix-e8" else ([a.group] if a.group else ["F4", "H3", "H4", "E6", "E7", "E8"])
        out = []
        for g in groups:
            deg = sob.reference_families(g, a.data_dir)[0].degree
            out.append((g, cmd_reflect(argparse.Namespace(action="classify", group=g, t=deg,
                                                          check_appendix=True, data_dir=a.data_dir))))
        return _merge(out)
    # identities
    cases = [("sawa91", {}), ("reznick", {}), ("schur", {}), ("hurwitz", {})]
    cases += [("kurschak", {"k": k}) for k in (1, 2, 3)]
    cases += [("ns_family", {"a": x}) for x in (Fraction(1, 192), Fraction(1, 150), Fraction(1, 120))]
    out = [(f"{n} {kw}" if kw else n, _identity_report(hil.catalog_identity(n, **kw))) for n, kw in cases]
    same = hil.normalized_points(hil.identity_to_cubature(hil.schur())) == \
        hil.normalized_points(hil.identity_to_cubature(hil.hurwitz()))
    out.append(("schur and hurwitz give the same cubature",
                CommandResult(_ok(same), [f"normalized points and weights equal: {same}"])))
    return _merge(out)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--data-dir", default=None, help="catalog data directory (else $CUBFORGE_DATA)")
    common.add_argument("--json", action="store_true", help="print the structured payload as JSON")

    p = _Parser(prog="cubforge", description="Exact cubature formulae, designs and Hilbert identities.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("designs", parents=[common]).add_subparsers(dest="action", required=True)
    x = d.add_parser("verify", parents=[common])
    x.add_argument("file")
    x.add_argument("--t", type=int)
    x = d.add_parser("derive", parents=[common])
    x.add_argument("file")
    x.add_argument("--point", type=int, required=True)
    x.add_argument("--out")
    x = d.add_parser("catalog", parents=[common])
    x.add_argument("name", choices=sorted(des.DESIGN_CATALOG))

    o = sub.add_parser("oa", parents=[common]).add_subparsers(dest="action", required=True)
    x = o.add_parser("verify", parents=[common])
    x.add_argument("file")
    x.add_argument("--t", type=int, required=True)
    x = o.add_parser("gen-trivial", parents=[common])
    x.add_argument("--l", type=int, required=True)
    x.add_argument("--out")
    x = o.add_parser("gen-nr", parents=[common])
    x.add_argument("--out")
    x = o.add_parser("gen-dual-bch", parents=[common])
    x.add_argument("--augment", action="store_true", help="add the all-ones word (centrally symmetric)")
    x.add_argument("--out")

    c = sub.add_parser("cubature", parents=[common]).add_subparsers(dest="action", required=True)
    x = c.add_parser("verify", parents=[common])
    x.add_argument("file")
    g = x.add_mutually_exclusive_group()
    g.add_argument("--index", type=int)
    g.add_argument("--degree", type=int)
    x = c.add_parser("transform", parents=[common])
    x.add_argument("file")
    g = x.add_mutually_exclusive_group(required=True)
    g.add_argument("--to-sphere", action="store_true")
    g.add_argument("--halve", action="store_true")
    g.add_argument("--square", action="store_true")
    g.add_argument("--sqrt", action="store_true")
    x.add_argument("--q", type=int)
    x.add_argument("--out")
    x = c.add_parser("gen", parents=[common])
    x.add_argument("--catalog", required=True, choices=cub.CATALOG_NAMES)
    x.add_argument("--m", type=int, required=True)
    x.add_argument("--variant", default="derived", choices=("derived", "printed"))
    x.add_argument("--out")

    v = sub.add_parser("victoir", parents=[common]).add_subparsers(dest="action", required=True)
    x = v.add_parser("run", parents=[common])
    x.add_argument("--pipeline", required=True, choices=vic.PIPELINES)
    x.add_argument("--out")
    x = v.add_parser("substitute", parents=[common])
    x.add_argument("file")
    x.add_argument("--slot", type=int, action="append", required=True, help="orbit index, repeatable")
    g = x.add_mutually_exclusive_group(required=True)
    g.add_argument("--design")
    g.add_argument("--oa")
    x.add_argument("--out")

    r = sub.add_parser("reflect", parents=[common]).add_subparsers(dest="action", required=True)
    x = r.add_parser("orbit", parents=[common])
    x.add_argument("--group", required=True)
    x.add_argument("--corner", type=int)
    x = r.add_parser("certify", parents=[common])
    x.add_argument("--group", required=True)
    x.add_argument("--degree", type=int, required=True)
    x = r.add_parser("classify", parents=[common])
    x.add_argument("--group", required=True)
    x.add_argument("--t", type=int, required=True)
    x.add_argument("--check-appendix", action="store_true")
    x = r.add_parser("uvectors", parents=[common])
    x.add_argument("--group", required=True)
    x.add_argument("--compare", action="store_true", help="compare with the shipped reference tables")

    h = sub.add_parser("hilbert", parents=[common]).add_subparsers(dest="action", required=True)
    x = h.add_parser("verify", parents=[common])
    x.add_argument("file")
    x.add_argument("--expanded", action="store_true")
    x = h.add_parser("from-cubature", parents=[common])
    x.add_argument("file")
    x.add_argument("--q", type=int)
    x.add_argument("--out")
    x.add_argument("--expanded", action="store_true")
    x = h.add_parser("catalog", parents=[common])
    x.add_argument("--name", required=True, choices=hil.CATALOG)
    x.add_argument("--k", type=int)
    x.add_argument("--a")
    x.add_argument("--out")
    x.add_argument("--expanded", action="store_true")
    x = h.add_parser("nopm1", parents=[common])
    x.add_argument("--m", type=int, required=True)
    x.add_argument("--q", type=int, default=8)

    x = sub.add_parser("repro", parents=[common])
    x.add_argument("target", choices=REPRO_TARGETS)
    x.add_argument("--group")
    return p


_HANDLERS = {"designs": cmd_designs, "oa": cmd_oa, "cubature": cmd_cubature, "victoir": cmd_victoir,
             "reflect": cmd_reflect, "hilbert": cmd_hilbert, "repro": cmd_repro}


def run(argv: list[str] | None = None) -> tuple[CommandResult, bool, str]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, [str(exc).rstrip()]), "--json" in argv, " ".join(argv)
    command = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    try:
        res = _HANDLERS[args.command](args)
    except UsageError as exc:
        res = CommandResult(EXIT_USAGE, [str(exc)])
    except (DataUnavailable, sob.BasisUnavailable) as exc:
        res = CommandResult(EXIT_DATA, [str(exc)])
    except (ValueError, KeyError, FileNotFoundError, vic.SubstitutionError, grp.UnsupportedGroup) as exc:
        res = CommandResult(EXIT_USAGE, [f"error: {exc}"])
    return res, args.json, command


def main(argv: list[str] | None = None) -> int:
    res, as_json, command = run(argv)
    if as_json:
        print(res.to_json(command))
    else:
        print(res.report)
    return res.status


if __name__ == "__main__":
    sys.exit(main())
