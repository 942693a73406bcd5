"""Command-line interface: ``nearvec <command> SPACE [options]``.

SPACE is a JSON descriptor
``{"field": {"p": 5, "n": 1}, "twists": [1, 3], "block_card": "infinite"}``.
Block and coordinate indices are 1-based on the command line.  Reports are
text by default; ``--json`` prints them with sorted keys and no timing so
repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Callable

import jsonschema

from . import charmix, fbar, gf, logic
from .errors import DescriptorError, NearVecError
from .space import (
    TwistedSpace, decompose_blocks, in_quasi_kernel, induced_addition, is_regular,
    is_vector_space, morley_report, quasi_kernel, validate_fgroup,
)

SCHEMA = {
    "type": "object",
    "required": ["field", "twists"],
    "properties": {
        "field": {
            "type": "object",
            "required": ["p"],
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "n": {"type": "integer", "minimum": 1},
                "modulus": {"type": "array", "items": {"type": "integer"}},
            },
            "additionalProperties": False,
        },
        "twists": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        "block_card": {
            "oneOf": [
                {"enum": ["finite", "infinite"]},
                {"type": "array", "items": {"enum": ["finite", "infinite"]}},
            ]
        },
        "labels": {"type": "object"},
    },
    "additionalProperties": False,
}


def load_space(path: str) -> TwistedSpace:
    with open(path) as fh:
        try:
            desc = json.load(fh)
        except json.JSONDecodeError as e:
            raise DescriptorError(f"{path}: not JSON ({e})") from None
    return space_from_descriptor(desc)


def space_from_descriptor(desc: dict) -> TwistedSpace:
    try:
        jsonschema.validate(desc, SCHEMA)
    except jsonschema.ValidationError as e:
        raise DescriptorError(f"invalid descriptor: {e.message}") from None
    fd = desc["field"]
    field = gf.field_make(fd["p"], fd.get("n", 1), fd.get("modulus"))
    try:
        return TwistedSpace(field, tuple(desc["twists"]), desc.get("block_card", "finite"))
    except ValueError as e:
        raise DescriptorError(str(e)) from None


# -- argument parsing helpers ----------------------------------------------------------

_COMPONENT = re.compile(r"\s*(\[[^\]]*\]|-?\d+)\s*(?:,|$)")


def parse_elements(text: str, field) -> tuple:
    """``2,2`` / ``(2,2)`` / ``[1,1],0`` -> field elements."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    out, pos = [], 0
    while pos < len(text):
        m = _COMPONENT.match(text, pos)
        if not m:
            raise ValueError(f"cannot read a vector from {text!r}")
        tok = m.group(1)
        lit = [int(x) for x in tok[1:-1].split(",")] if tok.startswith("[") else int(tok)
        out.append(field.element(lit))
        pos = m.end()
    if not out:
        raise ValueError("empty vector")
    return tuple(out)


def parse_assignments(items, space: TwistedSpace) -> dict:
    val = {}
    for item in items or []:
        name, sep, vec = item.partition("=")
        if not sep:
            raise ValueError(f"--assign expects name=vector, got {item!r}")
        val[name.strip()] = parse_elements(vec, space.field)
    return val


def fmt_vec(space_or_field, v) -> str:
    field = getattr(space_or_field, "field", space_or_field)
    return "(" + ",".join(field.format(x) for x in v) + ")"


def _block_arg(args, space) -> int:
    n = decompose_blocks(space).count
    j = args.block - 1
    if not 0 <= j < n:
        from .errors import BlockIndexOutOfRange
        raise BlockIndexOutOfRange(f"block {args.block} out of range 1..{n}")
    return j


# -- commands: each returns (results, text lines) ---------------------------------------------

def cmd_validate(args, space):
    rep = validate_fgroup(space)
    res = {
        "ok": rep.ok,
        "violations": [
            {"axiom": v.axiom, "detail": v.detail,
             "witness": [fmt_vec(space, w) if isinstance(w, tuple) else str(w) for w in v.witness]}
            for v in rep.violations
        ],
    }
    lines = [f"{space}: " + ("F-group axioms F1-F4 hold" if rep.ok else "violations")]
    lines += [f"  {v['axiom']}: {v['detail']}" for v in res["violations"]]
    return res, lines


def cmd_qkernel(args, space):
    qk = sorted(quasi_kernel(space), key=space.index)
    res = {"size": len(qk), "elements": [fmt_vec(space, u) for u in qk]}
    return res, [f"|Q(V)| = {len(qk)}", "  " + " ".join(res["elements"])]


def cmd_addtable(args, space):
    u = parse_elements(args.u, space.field)
    add = induced_addition(space, u)
    F = space.field
    rows = [[F.format(int(x)) for x in row] for row in add.table]
    res = {"u": fmt_vec(space, u), "table": rows}
    width = max(len(s) for r in rows for s in r)
    head = " " * (width + 3) + " ".join(F.format(b).rjust(width) for b in range(F.q))
    lines = [f"a +_u b for u = {res['u']}", head]
    lines += [F.format(a).rjust(width) + " | " + " ".join(s.rjust(width) for s in r)
              for a, r in enumerate(rows)]
    return res, lines


def _blocks_result(space):
    dec = decompose_blocks(space)
    n, deg = morley_report(space)
    return {
        "count": dec.count,
        "blocks": [[i + 1 for i in b] for b in dec.blocks],
        "dims": list(dec.block_dims),
        "regular": is_regular(space),
        "vector_space": is_vector_space(space),
        "morley": [n, deg],
    }


def cmd_blocks(args, space):
    res = _blocks_result(space)
    lines = [f"{res['count']} block(s)"]
    lines += [f"  block {j + 1}: coordinates {b}" for j, b in enumerate(res["blocks"])]
    lines.append(f"regular: {res['regular']}, vector space: {res['vector_space']}")
    lines.append(f"Morley rank {res['morley'][0]}, degree {res['morley'][1]}")
    return res, lines


def cmd_morley(args, space):
    n, d = morley_report(space)
    return {"rank": n, "degree": d}, [f"Morley rank {n}, degree {d}"]


def cmd_ring(args, space):
    ring = fbar.image_ring(space)
    F = space.field
    elems = [{"tuple": fbar.BlockTuple(t).format(F), "witness": ring.witnesses[t].format(F),
              "unit": all(t)} for t in ring]
    res = {"size": len(ring), "units": len(ring.units()), "elements": elems}
    lines = [f"image ring: {len(ring)} elements, {res['units']} units"]
    lines += [f"  {e['tuple']} <- {e['witness']}" for e in elems]
    return res, lines


def cmd_idem(args, space):
    j = _block_arg(args, space)
    s = fbar.separating_idempotent(space, j)
    phi = fbar.phi_eval(space, s)
    F = space.field
    res = {"block": args.block, "witness": s.format(F), "phi": phi.format(F)}
    return res, [f"e_{args.block} = {res['witness']}  (Phi = {res['phi']})"]


def cmd_aut(args, space):
    F = space.field
    s = fbar.parse_formal_sum(args.sum, F)
    phi = fbar.phi_eval(space, s)
    aut = fbar.is_automorphism(space, s)
    res = {"sum": s.format(F), "phi": phi.format(F), "automorphism": aut}
    return res, [f"Phi({res['sum']}) = {res['phi']}: " + ("automorphism" if aut else "not an automorphism")]


def cmd_preimage(args, space):
    F = space.field
    target = parse_elements(args.target, F)
    s = fbar.crt_preimage(space, target)
    res = {"target": fmt_vec(F, target), "witness": s.format(F)}
    return res, [f"{res['target']} <- {res['witness']}"]


def cmd_qe(args, space):
    f = logic.parse_formula(args.formula)
    elim = logic.QuantifierEliminator(space)
    g = elim(f)
    res = {"input": logic.format_formula(f), "output": logic.format_formula(g),
           "max_exclusions": elim.max_exclusions}
    return res, [res["output"]]


def cmd_eval(args, space):
    f = logic.parse_formula(args.formula)
    val = parse_assignments(args.assign, space)
    dims = [int(d) for d in args.dims.split(",")] if args.dims else None
    truth = logic.evaluate(space, f, val, dims)
    res = {"formula": logic.format_formula(f), "value": truth,
           "assignment": {x: fmt_vec(space, v) for x, v in sorted(val.items())}}
    return res, [str(truth).lower()]


def cmd_equiv(args, space):
    f = logic.parse_formula(args.f)
    g = logic.parse_formula(args.g)
    rep = logic.equivalent(space, f, g, on_space=args.on_space)
    res = rep.as_dict()
    if rep.counterexample:
        res["counterexample"] = {x: fmt_vec(space, v) for x, v in rep.counterexample.items()}
    how = "exhaustive" if rep.exhaustive else f"{rep.samples} samples"
    line = "equivalent" if rep.ok else f"counterexample {res['counterexample']}"
    return res, [f"{line}  (block dimensions {res['dims']}, {how})"]


def cmd_charmix(args, _space):
    mode = args.mode
    if mode == "demo":
        v = charmix.mixed_vector(args.v1 or "1", args.v2 or "t")
        r = charmix.fbar_demo(args.sum or "1+.1+.1", v)
        res = {"sum": args.sum or "1+.1+.1", "vector": str(v), **r.as_dict()}
        flag = "automorphism" if r.automorphism else "not an automorphism"
        return res, [f"({res['sum']}){v} = {r.image}  multipliers {res['multipliers']}: {flag}"]
    if mode == "sigma":
        q = charmix.parse_rational(args.value)
        img = charmix.sigma_map(q)
        return {"q": str(q), "sigma": str(img)}, [f"sigma({q}) = {img}"]
    if mode == "act":
        lam = charmix.parse_rational(args.value)
        v = charmix.mixed_vector(args.v1, args.v2)
        out = charmix.mixed_act(lam, v)
        return {"lambda": str(lam), "vector": str(v), "image": str(out)}, [f"{lam}{v} = {out}"]
    # refute
    v = charmix.mixed_vector(args.v1, args.v2)
    r = charmix.qk_refute(v, args.bound)
    res = {"vector": str(v), "bound": args.bound,
           "refutation": None if r is None else [str(r[0]), str(r[1])]}
    text = "no refutation" if r is None else f"refuted by alpha={r[0]}, beta={r[1]}"
    return res, [f"{v}: {text}"]


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate, "qkernel": cmd_qkernel, "addtable": cmd_addtable,
    "blocks": cmd_blocks, "morley": cmd_morley, "ring": cmd_ring, "idem": cmd_idem,
    "aut": cmd_aut, "preimage": cmd_preimage, "qe": cmd_qe, "eval": cmd_eval,
    "equiv": cmd_equiv, "charmix": cmd_charmix,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nearvec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def space_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("space_file", nargs="?", metavar="SPACE", help="space descriptor (JSON)")
        p.add_argument("--space", dest="space_opt", metavar="SPACE", help="same as the positional")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        return p

    space_cmd("validate", "check the F-group axioms F1-F4")
    space_cmd("qkernel", "list the quasi-kernel")
    space_cmd("addtable", "induced addition +_u").add_argument("--u", required=True)
    space_cmd("blocks", "block decomposition and Morley rank")
    space_cmd("morley", "Morley rank and degree")
    space_cmd("ring", "image of the pointwise-sum ring with witnesses")
    space_cmd("idem", "separating idempotent of a block").add_argument("--block", type=int, required=True)
    space_cmd("aut", "does a formal sum act as an automorphism").add_argument("--sum", required=True)
    space_cmd("preimage", "formal sum with a given block tuple").add_argument("--target", required=True)
    space_cmd("qe", "eliminate quantifiers").add_argument("--formula", required=True)
    p = space_cmd("eval", "evaluate a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--assign", action="append", metavar="NAME=VECTOR")
    p.add_argument("--dims", help="per-block dimensions of the model, e.g. 2,2")
    p = space_cmd("equiv", "compare two formulas on an adequate finite model")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--on-space", action="store_true", help="compare on the space itself")

    p = sub.add_parser("charmix", help="the mixed example Q (+) F_3(t)")
    p.add_argument("mode", choices=["demo", "sigma", "act", "refute"])
    p.add_argument("--value", help="rational argument for sigma/act")
    p.add_argument("--v1", help="first coordinate (rational)")
    p.add_argument("--v2", help="second coordinate (element of F_3(t))")
    p.add_argument("--sum", help="formal sum of rationals for demo, e.g. 1+.1+.1")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--json", action="store_true")
    return parser


def run_command(argv) -> tuple[int, dict]:
    parser = build_parser()
    args = parser.parse_args(argv)
    space = None
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "command") and v is not None}
    try:
        if args.command != "charmix":
            if args.space_file and args.space_opt:
                parser.error("give the space once (positional or --space)")
            path = args.space_file or args.space_opt
            if not path:
                parser.error(f"{args.command}: a space descriptor is required")
            space = load_space(path)
        elif args.mode in ("sigma", "act") and args.value is None:
            parser.error(f"charmix {args.mode}: --value is required")
        elif args.mode in ("act", "refute") and (args.v1 is None or args.v2 is None):
            parser.error(f"charmix {args.mode}: --v1 and --v2 are required")
        start = time.perf_counter()
        results, lines = COMMANDS[args.command](args, space)
        elapsed = time.perf_counter() - start
    except (NearVecError, OSError, ValueError) as e:
        failure = {"command": args.command, "error": f"{type(e).__name__}: {e}"}
        if args.json:
            print(json.dumps(failure, sort_keys=True))
        else:
            print(f"error: {failure['error']}", file=sys.stderr)
        return 1, failure
    report = {"command": args.command, "inputs": inputs, "results": results}
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
        print(f"({elapsed:.3f}s)", file=sys.stderr)
    return 0, report


def main(argv=None) -> int:
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
