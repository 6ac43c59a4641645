"""Command line front end.

Subcommands: axioms, homology, invariant, verify, export-prism.
Exit codes: 0 success, 1 mathematical failure (axioms, verification),
2 input or format error.  Output is deterministic for fixed inputs and
flags; JSON is emitted with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import product

from . import prisms
from .algebra import (AXIOM_EQUATIONS, AXIOM_NAMES, Shalgebra, check_axioms, classify,
                      load_structure_tables)
from .chains import export_boundary_triplets
from .errors import AxiomError, NotACycleError, StructureError, VerificationError
from .knots import invariant, load_diagram
from .prismatic import (BracketedTuple, boundary_generator, build_bar_complex,
                        build_complex, build_rack_complex, compositions)

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2

THEORIES = ("prismatic", "qualgebra", "normalized", "rack", "group")

REQUIREMENT_AXIOMS = {
    "shelf": ("III",),
    "spindle": ("III", "I"),
    "rack": ("III", "II"),
    "quandle": ("III", "II", "I"),
    "shalgebra": ("H", "YI", "IY", "III"),
    "qualgebra": AXIOM_NAMES,
}


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _load_structure(path):
    dot, tri, names = load_structure_tables(path)
    return dot, tri, names


def cmd_axioms(args):
    dot, tri, names = _load_structure(args.structure)
    report = check_axioms(dot, tri)
    cls = classify(dot, tri)
    lines = []
    for name in AXIOM_NAMES:
        status = report.statuses[name]
        state = "pass" if status.ok else f"FAIL witness={status.witness}"
        lines.append(f"{name:<4} {state:<24} {AXIOM_EQUATIONS[name]}")
    lines.append(f"action class: {cls.shelf}; pair class: {cls.pair}; "
                 f"group multiplication: {'yes' if cls.group else 'no'}")
    satisfied = report.all_ok(REQUIREMENT_AXIOMS[args.require])
    lines.append(f"required class {args.require!r}: {'satisfied' if satisfied else 'NOT satisfied'}")
    payload = {
        "axioms": {n: {"ok": report.statuses[n].ok,
                       "witness": list(report.statuses[n].witness or ())}
                   for n in AXIOM_NAMES},
        "classification": {"action": cls.shelf, "pair": cls.pair, "group": cls.group},
        "require": args.require,
        "satisfied": satisfied,
    }
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if satisfied else EXIT_MATH


def _build_theory(S, theory, N, include_d3):
    if theory == "rack":
        return build_rack_complex(S, N)
    if theory == "group":
        return build_bar_complex(S, N)
    mode = {"prismatic": "plain", "qualgebra": "qualgebra",
            "normalized": "normalized"}[theory]
    return build_complex(S, N, mode=mode, include_d3=include_d3)


def cmd_homology(args):
    dot, tri, names = _load_structure(args.structure)
    S = Shalgebra(dot, tri, names=names)
    K = _build_theory(S, args.theory, args.max_degree, args.include_d3)
    degrees = range(1, args.max_degree + (1 if args.allow_truncation else 0))
    groups = []
    for n in degrees:
        g = K.homology(n, allow_truncation=args.allow_truncation)
        groups.append({"degree": n, "free_rank": g.free_rank, "torsion": list(g.torsion)})
    payload = {"theory": args.theory, "max_degree": args.max_degree, "groups": groups}
    text = "\n".join(
        f"H_{g['degree']} = " + _group_text(g["free_rank"], g["torsion"]) for g in groups)
    _emit(args, payload, text)
    return EXIT_OK


def _group_text(free_rank, torsion):
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " + ".join(parts) if parts else "0"


def cmd_invariant(args):
    dot, tri, names = _load_structure(args.structure)
    S = Shalgebra(dot, tri, names=names)
    if not S.is_qualgebra:
        name, witness = S.report.first_failure()
        raise AxiomError(f"invariants need a qualgebra; axiom {name} fails at {witness}",
                         witness=witness)
    D = load_diagram(args.diagram)
    result = invariant(D, S, include_d3=args.include_d3)
    payload = result.to_dict()
    text_lines = [f"colorings: {result.coloring_count}",
                  f"degree-2 homology: {result.group}",
                  "class multiset: " + " ".join(str(list(c)) for c in result.classes)]
    _emit(args, payload, "\n".join(text_lines))
    return EXIT_OK


def verify_structure(S: Shalgebra, N, _corrupt=None):
    """The verification battery behind `verify`; returns (ok, line list).

    _corrupt is a test hook: (degree, generator index, target index, delta)
    is added to one stored boundary entry after the build, so the failure
    path of the boundary-squared check can be exercised.
    """
    lines = []
    ok = True

    K = build_complex(S, N, mode="qualgebra" if S.is_qualgebra else "plain")
    if _corrupt is not None:
        degree, gidx, tidx, delta = _corrupt
        ch = K.cc.boundaries[degree][gidx]
        ch.terms[tidx] = ch.terms.get(tidx, 0) + delta
        K.cc._hdata.clear()
    bad = K.cc.d_squared_violations()
    if bad:
        ok = False
        n, idx = bad[0]
        lines.append(f"boundary-squared: FAIL at degree {n} generator "
                     f"{K.generators(n)[idx]!r} (+{len(bad) - 1} more)")
    else:
        lines.append(f"boundary-squared: ok through degree {N} ({K.mode} mode)")

    sym_bad = 0
    for n in range(2, min(N, 4) + 1):
        for partition in compositions(n):
            for elements in product(range(S.size), repeat=n):
                g = BracketedTuple(partition, elements)
                if boundary_generator(g, S) != _expansion_terms(g, S):
                    sym_bad += 1
    lines.append("symbolic expansions: "
                 + ("ok (degrees 2..%d)" % min(N, 4) if not sym_bad
                    else f"FAIL on {sym_bad} generators"))
    ok = ok and not sym_bad

    face_bad = 0
    for n in range(1, min(N, 4) + 1):
        for partition in compositions(n):
            for elements in product(range(S.size), repeat=n):
                g = BracketedTuple(partition, elements)
                try:
                    if not prisms.faces_match_algebra(g, S):
                        face_bad += 1
                except VerificationError:
                    face_bad += 1
    lines.append("geometric faces: "
                 + (f"ok (degrees 1..{min(N, 4)})" if not face_bad
                    else f"FAIL on {face_bad} generators"))
    ok = ok and not face_bad
    return ok, lines


def cmd_verify(args):
    dot, tri, names = _load_structure(args.structure)
    S = Shalgebra(dot, tri, names=names)
    ok, lines = verify_structure(S, args.max_degree)
    payload = {"ok": ok, "checks": lines}
    _emit(args, payload, "\n".join(lines + ["all checks passed" if ok else "FAILURES found"]))
    return EXIT_OK if ok else EXIT_MATH


def cmd_export_prism(args):
    dot, tri, names = _load_structure(args.structure)
    S = Shalgebra(dot, tri, names=names)
    partition = tuple(int(v) for v in args.partition.split(","))
    elements = tuple(int(v) for v in args.elements.split(","))
    if sum(partition) != len(elements):
        raise StructureError(
            f"partition {partition} does not fit {len(elements)} elements")
    g = BracketedTuple(partition, elements)
    prism = prisms.good_labeling(g, S)
    data = prisms.prism_to_dict(prism, S)
    text = json.dumps(data, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return EXIT_OK


def cmd_export_matrices(args):
    dot, tri, names = _load_structure(args.structure)
    S = Shalgebra(dot, tri, names=names)
    K = _build_theory(S, args.theory, args.max_degree, args.include_d3)
    cc = K.cc if hasattr(K, "cc") else K
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            export_boundary_triplets(cc, fh)
        print(f"wrote {args.out}")
    else:
        export_boundary_triplets(cc, sys.stdout)
    return EXIT_OK


# The expansion table mirrors the explicit low-degree boundary formulas and
# backs the symbolic check of `verify`.  Each entry lists (sign, partition,
# element expression) with expressions over the tuple entries; cancelling
# pairs are kept and collapse when the terms are combined.
def _expansion_terms(g: BracketedTuple, S: Shalgebra):
    key = g.partition
    e = g.elements
    mul, act = S.mul, S.act
    if key == (2,):
        a, b = e
        rows = [(1, (1,), (b,)), (-1, (1,), (mul(a, b),)), (1, (1,), (a,))]
    elif key == (1, 1):
        a, b = e
        rows = [(1, (1,), (b,)), (-1, (1,), (b,)),
                (-1, (1,), (act(a, b),)), (1, (1,), (a,))]
    elif key == (3,):
        a, b, c = e
        rows = [(1, (2,), (b, c)), (-1, (2,), (mul(a, b), c)),
                (1, (2,), (a, mul(b, c))), (-1, (2,), (a, b))]
    elif key == (2, 1):
        a, b, c = e
        rows = [(1, (1, 1), (b, c)), (-1, (1, 1), (mul(a, b), c)),
                (1, (1, 1), (a, c)),
                (1, (2,), (act(a, c), act(b, c))), (-1, (2,), (a, b))]
    elif key == (1, 2):
        a, b, c = e
        rows = [(1, (2,), (b, c)), (-1, (2,), (b, c)),
                (-1, (1, 1), (act(a, b), c)),
                (1, (1, 1), (a, mul(b, c))), (-1, (1, 1), (a, b))]
    elif key == (1, 1, 1):
        a, b, c = e
        rows = [(1, (1, 1), (b, c)), (-1, (1, 1), (b, c)),
                (-1, (1, 1), (act(a, b), c)), (1, (1, 1), (a, c)),
                (1, (1, 1), (act(a, c), act(b, c))), (-1, (1, 1), (a, b))]
    elif key == (4,):
        a, b, c, d = e
        rows = [(1, (3,), (b, c, d)), (-1, (3,), (mul(a, b), c, d)),
                (1, (3,), (a, mul(b, c), d)), (-1, (3,), (a, b, mul(c, d))),
                (1, (3,), (a, b, c))]
    elif key == (3, 1):
        a, b, c, d = e
        rows = [(1, (2, 1), (b, c, d)), (-1, (2, 1), (mul(a, b), c, d)),
                (1, (2, 1), (a, mul(b, c), d)), (-1, (2, 1), (a, b, d)),
                (-1, (3,), (act(a, d), act(b, d), act(c, d))),
                (1, (3,), (a, b, c))]
    elif key == (2, 2):
        a, b, c, d = e
        rows = [(1, (1, 2), (b, c, d)), (-1, (1, 2), (mul(a, b), c, d)),
                (1, (1, 2), (a, c, d)),
                (1, (2, 1), (act(a, c), act(b, c), d)),
                (-1, (2, 1), (a, b, mul(c, d))), (1, (2, 1), (a, b, c))]
    elif key == (2, 1, 1):
        a, b, c, d = e
        rows = [(1, (1, 1, 1), (b, c, d)), (-1, (1, 1, 1), (mul(a, b), c, d)),
                (1, (1, 1, 1), (a, c, d)),
                (1, (2, 1), (act(a, c), act(b, c), d)), (-1, (2, 1), (a, b, d)),
                (-1, (2, 1), (act(a, d), act(b, d), act(c, d))),
                (1, (2, 1), (a, b, c))]
    elif key == (1, 3):
        a, b, c, d = e
        rows = [(1, (3,), (b, c, d)), (-1, (3,), (b, c, d)),
                (-1, (1, 2), (act(a, b), c, d)),
                (1, (1, 2), (a, mul(b, c), d)), (-1, (1, 2), (a, b, mul(c, d))),
                (1, (1, 2), (a, b, c))]
    elif key == (1, 2, 1):
        a, b, c, d = e
        rows = [(1, (2, 1), (b, c, d)), (-1, (2, 1), (b, c, d)),
                (-1, (1, 1, 1), (act(a, b), c, d)),
                (1, (1, 1, 1), (a, mul(b, c), d)), (-1, (1, 1, 1), (a, b, d)),
                (-1, (1, 2), (act(a, d), act(b, d), act(c, d))),
                (1, (1, 2), (a, b, c))]
    elif key == (1, 1, 2):
        a, b, c, d = e
        rows = [(1, (1, 2), (b, c, d)), (-1, (1, 2), (b, c, d)),
                (-1, (1, 2), (act(a, b), c, d)), (1, (1, 2), (a, c, d)),
                (1, (1, 1, 1), (act(a, c), act(b, c), d)),
                (-1, (1, 1, 1), (a, b, mul(c, d))),
                (1, (1, 1, 1), (a, b, c))]
    elif key == (1, 1, 1, 1):
        a, b, c, d = e
        rows = [(1, (1, 1, 1), (b, c, d)), (-1, (1, 1, 1), (b, c, d)),
                (-1, (1, 1, 1), (act(a, b), c, d)), (1, (1, 1, 1), (a, c, d)),
                (1, (1, 1, 1), (act(a, c), act(b, c), d)), (-1, (1, 1, 1), (a, b, d)),
                (-1, (1, 1, 1), (act(a, d), act(b, d), act(c, d))),
                (1, (1, 1, 1), (a, b, c))]
    else:
        return boundary_generator(g, S)
    terms = {}
    for sign, partition, elements in rows:
        t = BracketedTuple(partition, elements)
        c = terms.get(t, 0) + sign
        if c:
            terms[t] = c
        else:
            del terms[t]
    return terms


def build_parser():
    parser = argparse.ArgumentParser(
        prog="prismhom",
        description="Exact homology of shalgebras/qualgebras and KTG invariants")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("axioms", help="check the seven axioms of a structure file")
    p.add_argument("structure")
    p.add_argument("--require", choices=sorted(REQUIREMENT_AXIOMS), default="shalgebra",
                   help="class that decides the exit code")
    common(p)

    p = sub.add_parser("homology", help="homology groups of a structure")
    p.add_argument("structure")
    p.add_argument("--theory", choices=THEORIES, default="prismatic")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--allow-truncation", action="store_true",
                   help="also report the top degree, treating higher boundaries as zero")
    p.add_argument("--include-d3", action=argparse.BooleanOptionalAction, default=True,
                   help="include the idempotence-square cells in qualgebra mode")
    p.add_argument("--jobs", type=int, default=None,
                   help="parallelism bound (currently evaluated serially)")
    common(p)

    p = sub.add_parser("invariant", help="coloring classes of a diagram over a qualgebra")
    p.add_argument("structure")
    p.add_argument("diagram")
    p.add_argument("--include-d3", action=argparse.BooleanOptionalAction, default=True)
    common(p)

    p = sub.add_parser("verify", help="internal consistency battery for a structure")
    p.add_argument("structure")
    p.add_argument("--max-degree", type=int, default=3)
    common(p)

    p = sub.add_parser("export-prism", help="JSON dump of one labeled prism")
    p.add_argument("structure")
    p.add_argument("--partition", required=True, help="comma separated, e.g. 2,1")
    p.add_argument("--elements", required=True, help="comma separated carrier indices")
    p.add_argument("--out", default=None)
    common(p)

    p = sub.add_parser("export-matrices", help="boundary matrices as sparse triplets")
    p.add_argument("structure")
    p.add_argument("--theory", choices=THEORIES, default="prismatic")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--include-d3", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out", default=None)
    common(p)

    return parser


_COMMANDS = {
    "axioms": cmd_axioms,
    "homology": cmd_homology,
    "invariant": cmd_invariant,
    "verify": cmd_verify,
    "export-prism": cmd_export_prism,
    "export-matrices": cmd_export_matrices,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", None) is None and "PRISMHOM_JOBS" in os.environ:
        try:
            args.jobs = int(os.environ["PRISMHOM_JOBS"])
        except ValueError:
            print("PRISMHOM_JOBS must be an integer", file=sys.stderr)
            return EXIT_INPUT
    try:
        return _COMMANDS[args.command](args)
    except (AxiomError, VerificationError, NotACycleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except StructureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
