"""Command-line front end.

Output is one fact per line as ``key=value`` with rationals printed as
``p/q``; errors go to stderr as a single ``error=CODE message=...`` line
and a nonzero exit status.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

import yaml

from . import freepwl, hull, mvcore
from .errors import DomainError, HullError, InvariantError, ParseError
from .exactla import fmt_rat, fmt_vec, parse_rat, parse_vec, rank
from .mvcore import GridAlgebra, PointMapHom, PointSet
from .terms import parse_term

EXIT_CODES = {"PARSE": 2, "DOMAIN": 3, "NOT_IN_HULL": 4, "NOT_HOM": 5, "INVARIANT": 6}


# ---------------------------------------------------------------------------
# input files
# ---------------------------------------------------------------------------

def load_spec(path: str) -> GridAlgebra:
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read spec {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed spec {path}: {exc}") from None
    return spec_from_dict(doc)


def spec_from_dict(doc) -> GridAlgebra:
    if not isinstance(doc, dict) or not {"points", "den"} <= set(doc):
        raise ParseError("spec needs fields points, den, generators")
    den = doc["den"]
    if not isinstance(den, int) or den < 1:
        raise DomainError("den must be a positive integer")
    gens = [tuple(parse_rat(x) for x in g) for g in doc.get("generators") or []]
    return mvcore.generate_grid(PointSet(tuple(doc["points"])), den, gens)


def spec_to_dict(A: GridAlgebra) -> dict:
    return {
        "points": list(A.points.labels),
        "den": A.den,
        "generators": [[fmt_rat(x) for x in g] for g in A.generators],
    }


def load_map(path: str) -> dict:
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DomainError(f"cannot read map {path}: {exc.strerror}") from None
    pairs = {}
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"map line {n}: expected target_point=source_class")
        y, x = (s.strip() for s in line.split("=", 1))
        pairs[y] = x
    return pairs


def _vector(text: str, m: int):
    v = parse_vec(text)
    if len(v) != m:
        raise DomainError(f"vector has {len(v)} entries, algebra has {m} points")
    return v


def _term_or_pwl(arg: str) -> freepwl.PWL:
    if os.path.isfile(arg):
        with open(arg) as fh:
            return freepwl.PWL.parse(fh.read())
    return freepwl.term_to_pwl(parse_term(arg))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _classes_text(A: GridAlgebra, classes) -> str:
    return ";".join("{" + ",".join(A.points.labels[i] for i in c) + "}" for c in classes)


def cmd_generate(args, out):
    A = _one_spec(args)
    out(f"points={','.join(A.points.labels)}")
    out(f"den={A.den}")
    out(f"size={len(A)}")
    for e in A.elements:
        out(f"element={fmt_vec(e)}")
    out(f"chains={','.join(str(n) for n in mvcore.chain_decomposition(A))}")


def cmd_spectrum(args, out):
    A = _one_spec(args)
    classes, ideals = mvcore.max_spectrum(A)
    out(f"classes={len(classes)}")
    for k, c in enumerate(classes):
        out(f"class[{k}]={{{','.join(A.points.labels[i] for i in c)}}}")
    for k, I in enumerate(ideals):
        zc = ",".join(str(j) for j in sorted(I.zero_classes))
        members = ",".join(fmt_vec(a) for a in I.members(A))
        out(f"max_ideal[{k}]=zero_classes:{{{zc}}} members:{members}")
    out(f"radical={','.join(fmt_vec(a) for a in mvcore.radical(A))}")


def _skeleton_classes(R: hull.RieszHull) -> list:
    cols = {}
    for i in range(R.m):
        cols.setdefault(tuple(b[i] for b in R.span_basis), []).append(i)
    return list(cols.values())


def cmd_hull(args, out):
    A = _one_spec(args)
    R = hull.riesz_hull(A)
    L = R.lgroup.lattice
    out(f"points={','.join(A.points.labels)}")
    out(f"lattice_den={L.den}")
    out(f"lattice_rank={L.rank}")
    for row in L.basis:
        out(f"lattice_row={','.join(str(x) for x in row)}")
    out(f"span_dim={R.dim}")
    for b in R.span_basis:
        out(f"span_basis={fmt_vec(b)}")
    out("skeleton=span_basis_rational_span_cap_unit_cube")
    out(f"skeleton_classes={_classes_text(A, _skeleton_classes(R))}")
    out(f"gamma_roundtrip={'true' if hull.gamma_unit(R.lgroup) == A else 'false'}")


def cmd_member(args, out):
    A = _one_spec(args)
    R = hull.riesz_hull(A)
    v = _vector(_one_vector(args), A.m)
    if R.member(v):
        out("result=member")
        out(f"coords={fmt_vec(R.coordinates(v))}")
    else:
        out("result=not-in-hull")


def cmd_divhull(args, out):
    A = _one_spec(args)
    D = hull.divisible_hull(hull.lgroup_generate(A))
    v = _vector(_one_vector(args), A.m)
    cert = D.decompose_average(v)
    out(f"n={cert.n}")
    for p in cert.parts:
        out(f"part={fmt_vec(p)}")
    out(f"average={fmt_vec(cert.value())}")


def cmd_essential(args, out):
    A = _one_spec(args)
    R = hull.riesz_hull(A)
    a, n = hull.essential_witness(R, _vector(_one_vector(args), A.m))
    out(f"a={fmt_vec(a)} n={n}")


def _map_desc(h: PointMapHom) -> str:
    return ",".join(f"{y}<-{x}" for y, x in h.labels().items())


def cmd_extend(args, out):
    A, VA = _two_specs(args)
    V = hull.riesz_hull(VA)
    f = mvcore.hom_check(PointMapHom.from_labels(A, V, load_map(_map_path(args))))
    RA = hull.riesz_hull(A)
    fR = hull.extend_hom(f, RA)
    out(f"map={_map_desc(f)}")
    out(f"embedding={str(f.is_embedding).lower()}")
    for g in A.generators:
        out(f"generator={fmt_vec(g)} image={fmt_vec(f(g))}")
    for b, img in zip(RA.span_basis, fR.on_basis()):
        out(f"extension={fmt_vec(b)} -> {fmt_vec(img)}")
    restricts = all(fR(a) == f(a) for a in A.elements)
    out(f"restricts_to_f={str(restricts).lower()}")
    out(f"unique={str(hull.extension_is_unique(fR, f)).lower()}")


def cmd_functor(args, out):
    A, B = _two_specs(args)
    h = mvcore.hom_check(PointMapHom.from_labels(A, B, load_map(_map_path(args))))
    RA, RB = hull.riesz_hull(A), hull.riesz_hull(B)
    Rh = hull.hull_functor(h, RA, RB)
    out(f"map={_map_desc(h)}")
    out(f"source_dim={RA.dim}")
    out(f"target_dim={RB.dim}")
    out(f"rank={rank(Rh.on_basis())}")
    for b, img in zip(RA.span_basis, Rh.on_basis()):
        out(f"R(h)={fmt_vec(b)} -> {fmt_vec(img)}")
    square = all(Rh(a) == h(a) for a in A.elements)
    out(f"square_commutes={str(square).lower()}")
    out(f"embedding={str(h.is_embedding).lower()}")
    out(f"injective={str(Rh.is_injective()).lower()}")


def cmd_adjoint(args, out):
    A = _one_spec(args)
    V = hull.riesz_hull(A)
    rep = hull.adjunction_check(A, V, random.Random(args.seed))
    for line in rep.lines():
        out(line)
    out(f"all={'pass' if rep.passed else 'FAIL'}")
    if not rep.passed:
        raise InvariantError("adjunction identities failed")


def cmd_pwl(args, out):
    f = _term_or_pwl(args.target)
    if args.action == "eval":
        out(f"pwl={f.serialize()}")
        out(f"mcnaughton={str(freepwl.is_mcnaughton(f)).lower()}")
    elif args.action == "mcnaughton":
        out(str(freepwl.is_mcnaughton(f)).lower())
    else:
        dec = freepwl.schauder_decompose(f)
        out(f"subdivision={','.join(fmt_rat(x) for x in dec.subdivision.nodes)}")
        out(f"coefficients={','.join(fmt_rat(c) for c in dec.coefficients)}")
        out(f"hats_mcnaughton={str(all(freepwl.is_mcnaughton(h) for h in dec.hats())).lower()}")
        out(f"reconstructs={str(dec.reconstruct() == f).lower()}")


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _specs(args) -> list:
    pos = [p for p in getattr(args, "spec_pos", []) if p]
    return pos + (args.spec or [])


def _one_spec(args) -> GridAlgebra:
    specs = _specs(args)
    if len(specs) != 1:
        raise DomainError("expected exactly one algebra spec")
    return load_spec(specs[0])


def _two_specs(args):
    specs = _specs(args)
    if len(specs) != 2:
        raise DomainError("expected two algebra specs")
    return load_spec(specs[0]), load_spec(specs[1])


def _one_vector(args) -> str:
    v = args.vector or args.vector_pos
    if not v:
        raise DomainError("missing --vector")
    return v


def _map_path(args) -> str:
    p = args.map or args.map_pos
    if not p:
        raise DomainError("missing --map")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rieszhull", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, nspecs=1, vector=False, mapping=False):
        p.add_argument("spec_pos", nargs="?" if nspecs == 1 else "*", metavar="spec",
                       default=[] if nspecs > 1 else None)
        p.add_argument("--spec", action="append", help="algebra spec file")
        if vector:
            p.add_argument("vector_pos", nargs="?", metavar="vector")
            p.add_argument("--vector", help='rational vector, e.g. "1/3,0"')
        if mapping:
            p.add_argument("--map", help="point map file (target_point=source_class)")
        p.add_argument("--seed", type=int, default=0)

    for name, fn, kw in [
        ("generate", cmd_generate, {}),
        ("spectrum", cmd_spectrum, {}),
        ("hull", cmd_hull, {}),
        ("member", cmd_member, {"vector": True}),
        ("divhull", cmd_divhull, {"vector": True}),
        ("essential", cmd_essential, {"vector": True}),
        ("adjoint", cmd_adjoint, {}),
    ]:
        p = sub.add_parser(name)
        common(p, **kw)
        p.set_defaults(func=fn)

    for name, fn in [("extend", cmd_extend), ("functor", cmd_functor)]:
        p = sub.add_parser(name)
        common(p, nspecs=2, mapping=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("pwl")
    p.add_argument("action", choices=["eval", "decompose", "mcnaughton"])
    p.add_argument("target", help="term, or a file of node:value pairs")
    p.set_defaults(func=cmd_pwl)
    return parser


def _normalize(args):
    # single-spec commands keep a scalar positional; make it a list
    if not isinstance(getattr(args, "spec_pos", []), list):
        args.spec_pos = [args.spec_pos]
    if hasattr(args, "map") and not hasattr(args, "map_pos"):
        pos = args.spec_pos
        args.map_pos = pos.pop() if len(pos) == 3 else None
    if not hasattr(args, "vector_pos"):
        args.vector_pos = None
        args.vector = None
    if not hasattr(args, "spec"):
        args.spec = None
    return args


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "pwl":
        args = _normalize(args)
    lines = []
    try:
        args.func(args, lines.append)
    except HullError as exc:
        sys.stdout.write("".join(line + "\n" for line in lines))
        msg = str(exc).replace("\n", " ")
        sys.stderr.write(f"error={exc.code} message={msg}\n")
        return EXIT_CODES.get(exc.code, 1)
    sys.stdout.write("".join(line + "\n" for line in lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
