"""jumploci command line: Betti tables, resonance germs, flatness checks, sections,
characteristic varieties and the verification suites."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cdga import CDGA, InvalidCDGA, chevalley_eilenberg
from .conn import (GOneForm, classify_metabelian_hom, in_F1, is_flat, mc_defect,
                   rep_on_section, section_point_form)
from .exactnum.linalg import zeros
from .exactnum.scalars import as_fraction
from .liealg import InvalidLieAlgebra, LieAlgebra, catalog, metabelian, sl2
from .polyz import TorusBundleGroup, charvar, character_torus
from .reson import (describe_det_locus, germ_report, pi_membership, random_rational,
                    trivial_resonance, twisted_dims)
from .sl2 import NotARepresentation, det_theta, parse_rep
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# inputs


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from exc


def load_lie(ref: str) -> LieAlgebra:
    """A JSON file, or the name of a built-in catalog algebra."""
    if os.path.exists(ref):
        data = _read_json(ref)
        try:
            h = LieAlgebra.from_json(data)
        except InvalidLieAlgebra as exc:
            raise UsageError(f"{ref}: {exc}") from exc
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{ref}: malformed Lie algebra ({exc})") from exc
        h.name = h.name or os.path.splitext(os.path.basename(ref))[0]
        return h
    try:
        return catalog(ref)
    except KeyError as exc:
        raise UsageError(f"no such file or catalog algebra: {ref}") from exc


def load_cdga(args) -> CDGA:
    if getattr(args, "cdga", None):
        if not os.path.exists(args.cdga):
            raise UsageError(f"no such file: {args.cdga}")
        try:
            return CDGA.from_json(_read_json(args.cdga))
        except InvalidCDGA as exc:
            raise UsageError(f"{args.cdga}: {exc}") from exc
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise UsageError(f"{args.cdga}: malformed CDGA ({exc})") from exc
    if getattr(args, "lie", None):
        return chevalley_eilenberg(load_lie(args.lie))
    raise UsageError("give --lie FILE or --cdga FILE")


def load_bundle(path) -> TorusBundleGroup:
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    try:
        return TorusBundleGroup.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_form(text: str) -> GOneForm:
    """Rows of sl2 coordinates, from a JSON file or an inline JSON list."""
    data = _read_json(text) if os.path.exists(text) else None
    if data is None:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--omega: neither a file nor a JSON matrix ({exc})") from exc
    if isinstance(data, dict):
        data = data.get("omega", data.get("matrix"))
    try:
        return GOneForm([[as_fraction(x) for x in row] for row in data])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--omega: {exc}") from exc


def parse_jordan(text: str):
    """'2:2,0:1' -> [(2, 2), (0, 1)] (eigenvalue:size)."""
    out = []
    for part in text.split(","):
        lam, _, size = part.partition(":")
        out.append((Fraction(lam.strip()), int(size or 1)))
    return out


def _rep(args):
    try:
        return parse_rep(args.rep or "2")
    except (NotARepresentation, ValueError) as exc:
        raise UsageError(f"--rep: {exc}") from exc


# ---------------------------------------------------------------------------
# output


def emit(args, payload: dict, table_lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2, default=str))
    else:
        for line in table_lines:
            print(line)


# ---------------------------------------------------------------------------
# commands


def cmd_betti(args) -> int:
    A = load_cdga(args)
    b = A.betti()
    emit(args, {"betti": b, "dims": A.dims, "euler": A.euler_characteristic()},
         [" ".join(str(x) for x in b)])
    return 0


def cmd_resonance(args) -> int:
    A = load_cdga(args)
    theta = _rep(args)
    degrees = [args.degree] if args.degree is not None else list(range(A.top + 1))
    reports = [germ_report(A, theta, i, seed=args.seed, samples=args.samples or 30) for i in degrees]
    lines = []
    for r in reports:
        line = f"degree {r['degree']}: {r['kind']}"
        if r["kind"] == "cone":
            line += (f", cone over P(H^1) x V(det theta), dim H^1 = {r['cone']['h1_dim']},"
                     f" V(det theta) = {r['cone']['det_locus']}, exceptions = {r['exceptions']}"
                     f"/{len(r['evidence'])}")
        lines.append(line)
    emit(args, {"rep": list(theta.dims), "seed": args.seed, "reports": reports}, lines)
    return 0 if all(r.get("exceptions", 0) == 0 for r in reports) else 1


def cmd_mc_check(args) -> int:
    A = load_cdga(args)
    if not args.omega:
        raise UsageError("mc-check needs --omega")
    omega = load_form(args.omega)
    if omega.shape != (A.dims[1], 3):
        raise UsageError(f"omega must be {A.dims[1]} x 3 (one sl2 row per basis 1-form)")
    flat = is_flat(A, sl2(), omega)
    defect = mc_defect(A, sl2(), omega)
    payload = {"flat": flat, "rank": omega.rank(), "rank_one_locus": in_F1(A, omega),
               "defect": [[str(x) for x in r] for r in defect]}
    lines = [f"flat: {'yes' if flat else 'no'}", f"rank: {omega.rank()}",
             f"in rank-one locus: {'yes' if payload['rank_one_locus'] else 'no'}"]
    if flat and args.rep:
        theta = _rep(args)
        dims = twisted_dims(A, theta, omega)
        payload["twisted_dims"] = dims
        lines.append("twisted cohomology: " + " ".join(str(d) for d in dims))
    emit(args, payload, lines)
    return 0 if flat else 1


def _classify(h, jordan, phi):
    if jordan is not None:
        return classify_metabelian_hom(jordan, phi).to_json()
    r = phi.rank()
    return {"kind": "rank-one" if r <= 1 else f"rank-{r}", "rank": r}


def cmd_rep_scan(args) -> int:
    jordan = parse_jordan(args.jordan) if args.jordan else None
    if jordan is not None:
        h = metabelian(jordan)
    elif args.lie:
        h = load_lie(args.lie)
    else:
        raise UsageError("give --lie FILE or --jordan DATA")
    k = sl2()
    sections = []
    if args.section:
        data = _read_json(args.section)
        for sec in data if isinstance(data, list) else [data]:
            sections.append((
                [[as_fraction(x) for x in r] for r in sec.get("base", zeros(h.dim, 3))],
                [[[as_fraction(x) for x in r] for r in D] for D in sec["dirs"]]))
    else:
        import random

        rng = random.Random(args.seed)
        for _ in range(args.samples or 10):
            D = [[random_rational(rng) for _ in range(3)] for _ in range(h.dim)]
            sections.append((zeros(h.dim, 3), [D]))
    out = []
    lines = []
    for n, (base, dirs) in enumerate(sections):
        res = rep_on_section(h, k, base, dirs, seed=args.seed)
        sols = []
        for pt in res.points:
            phi = section_point_form(base, dirs, pt)
            sols.append({"params": [str(x) for x in pt], "class": _classify(h, jordan, phi)})
        curves = [{"equation": c["equation"],
                   "samples": [{"params": [str(x) for x in s],
                                "class": _classify(h, jordan, section_point_form(base, dirs, s))}
                               for s in c["samples"]]} for c in res.curves]
        out.append({"section": n, "entire": res.entire, "solutions": sols, "curves": curves,
                    "unresolved": [str(u) for u in res.unresolved]})
        desc = ", ".join(f"({', '.join(s['params'])}) {s['class']['kind']}" for s in sols)
        lines.append(f"section {n}: " + ("entire section" if res.entire else desc or "no solutions")
                     + (f"; {len(curves)} curve(s)" if curves else ""))
    emit(args, {"algebra": h.name, "sections": out}, lines)
    return 0 if not any(s["unresolved"] for s in out) else 1


def cmd_pi_locus(args) -> int:
    A = load_cdga(args)
    theta = _rep(args)
    h1 = A.betti()[1] if A.top >= 1 else 0
    payload = {"h1_dim": h1, "det_theta": str(det_theta(theta)),
               "det_locus": describe_det_locus(theta)}
    lines = [f"Pi = P(H^1) x V(det theta), dim H^1 = {h1}, V(det theta) = {payload['det_locus']}"]
    code = 0
    if args.omega:
        omega = load_form(args.omega)
        member = pi_membership(A, theta, omega)
        payload["member"] = member
        lines.append(f"omega in Pi: {'yes' if member else 'no'}")
        code = 0 if member else 1
    emit(args, payload, lines)
    return code


def cmd_charvar(args) -> int:
    G = load_bundle(args.bundle)
    degrees = [args.degree] if args.degree is not None else list(range(G.n + 2))
    try:
        cvs = [charvar(G, i) for i in degrees]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    torus = character_torus(G)
    emit(args, {"group": G.to_json(), "character_torus": torus,
                "degrees": [cv.to_json() for cv in cvs]},
         [f"degree {cv.degree}: {cv.summary()}" for cv in cvs])
    return 0


def cmd_certify(args) -> int:
    A = load_cdga(args)
    degrees = [args.degree] if args.degree is not None else list(range(A.top + 1))
    verdicts = [trivial_resonance(A, i, seed=args.seed, n_lines=args.samples or 50) for i in degrees]
    lines = []
    for v in verdicts:
        line = f"degree {v.degree}: {v.kind}"
        if v.kind == "probabilistically_trivial":
            line += f" ({v.n_lines} lines, seed {v.seed})"
        lines.append(line)
    emit(args, {"verdicts": [v.to_json() for v in verdicts]}, lines)
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        try:
            results.append(run_suite(name, seed=args.seed, samples=args.samples))
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    lines = []
    for r in results:
        ok = r.checked - len(r.failures)
        lines.append(f"{r.name}: {'pass' if r.passed else 'FAIL'} ({ok}/{r.checked} agreements)")
        for f in r.failures[:5]:
            lines.append("  counterexample: " + json.dumps(f, sort_keys=True, default=str))
    emit(args, {"results": [r.to_json() for r in results]}, lines)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jumploci", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algebra=True):
        if algebra:
            sp.add_argument("--lie", help="Lie algebra JSON file or catalog name (uses its CE algebra)")
            sp.add_argument("--cdga", help="CDGA JSON file")
        sp.add_argument("--format", choices=("json", "table"), default="table")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=None)

    sp = sub.add_parser("betti", help="Betti numbers of a CDGA or a Lie algebra")
    common(sp)
    sp.set_defaults(fn=cmd_betti)

    sp = sub.add_parser("resonance", help="germ at 0 of the depth-one resonance variety")
    common(sp)
    sp.add_argument("--rep", help="sl2 representation as irreducible dimensions, e.g. 2 or 2,2")
    sp.add_argument("--degree", type=int)
    sp.set_defaults(fn=cmd_resonance)

    sp = sub.add_parser("mc-check", help="flatness of an sl2-valued 1-form")
    common(sp)
    sp.add_argument("--omega", help="JSON matrix (rows = basis 1-forms, columns = H, X+, X-) or file")
    sp.add_argument("--rep", help="also report twisted cohomology for this representation")
    sp.set_defaults(fn=cmd_mc_check)

    sp = sub.add_parser("rep-scan", help="homomorphisms into sl2 on affine sections")
    common(sp, algebra=False)
    sp.add_argument("--lie", help="Lie algebra JSON file or catalog name")
    sp.add_argument("--jordan", help="metabelian algebra from Jordan data, e.g. 2:2,0:1")
    sp.add_argument("--section", help="JSON file with {base, dirs} (or a list of them)")
    sp.set_defaults(fn=cmd_rep_scan)

    sp = sub.add_parser("pi-locus", help="describe Pi(A, theta) or test membership")
    common(sp)
    sp.add_argument("--rep")
    sp.add_argument("--omega")
    sp.set_defaults(fn=cmd_pi_locus)

    sp = sub.add_parser("charvar", help="rank-one characteristic varieties of Z^n x|_A Z")
    common(sp, algebra=False)
    sp.add_argument("--bundle", required=True, help='JSON file {"n": 2, "matrix": [[2,1],[1,1]]}')
    sp.add_argument("--degree", type=int)
    sp.set_defaults(fn=cmd_charvar)

    sp = sub.add_parser("certify", help="is 0 isolated in the rank-one resonance variety?")
    common(sp)
    sp.add_argument("--degree", type=int)
    sp.set_defaults(fn=cmd_certify)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp, algebra=False)
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    sp.set_defaults(fn=cmd_verify, seed=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
