"""Command-line front end.

Subcommands: basis, phi, relations, harmonic, eval, decompose, verify.
Outputs are deterministic (sorted term order, stable JSON key order)
regardless of the worker-pool size; data goes to stdout (or --out),
diagnostics to stderr.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import BarlogError
from .formspace import bar0_basis, bar_basis
from .harmonic import (eval_sum, eval_tagged, mpl_harmonic_expand,
                       recursion_expand)
from .hyperlog import ONE, PARAM, HyperlogTerm, eval_series
from .ipbenv import omega_decomposition, w0_pairs
from .duality import phi
from .relgen import (decompose_check, generate_all, relation_to_dict,
                     verify_relation)
from .words import poly_to_dict


@dataclass(frozen=True)
class Config:
    degree_cap: int = 5
    series_terms: int = 100000
    tolerance: float = 1e-8
    radius: float = 0.7
    format: str = "json"

    def validate(self):
        if self.degree_cap <= 0 or self.series_terms <= 0 \
                or self.tolerance <= 0:
            raise ValueError("caps and tolerance must be positive")
        if not 0 < self.radius < 1:
            raise ValueError("radius must lie in (0, 1)")
        if self.format not in ("json", "text"):
            raise ValueError("format must be json or text")


_CONFIG_FIELDS = {
    "degree_cap": int,
    "series_terms": int,
    "tolerance": float,
    "radius": float,
    "format": str,
}


def load_config(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, raw = line.partition("=")
            key, raw = key.strip(), raw.strip()
            if key not in _CONFIG_FIELDS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _CONFIG_FIELDS[key](raw)
    return values


def parse_z_word(text):
    """Comma-separated upper-case letters; empty string is the unit."""
    text = text.strip()
    if not text:
        return ()
    return tuple(x.strip() for x in text.split(","))


_TERM_RE = re.compile(
    r"^L\[(?P<index>[0-9,]*)\|(?P<letters>[a-z,]*)\]@z(?P<main>[12])$")


def parse_term(text):
    """Parse the rendered term syntax L[k1,...|letters]@zN."""
    m = _TERM_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed term {text!r}; "
                         "expected L[2,1|one,param]@z1")
    index = tuple(int(k) for k in m.group("index").split(",") if k)
    letters = tuple(a for a in m.group("letters").split(",") if a)
    if any(a not in (ONE, PARAM) for a in letters):
        raise ValueError(f"term letters must be one/param: {text!r}")
    return HyperlogTerm(int(m.group("main")), index, letters)


def _emit(payload, cfg, out, renderer):
    if cfg.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = renderer(payload)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommand handlers -----------------------------------------------------

def _cmd_basis(args, cfg):
    basis = (bar0_basis if args.b0 else bar_basis)(
        args.degree, cap=cfg.degree_cap)
    payload = {
        "degree": args.degree,
        "reduced": bool(args.b0),
        "dimension": len(basis),
        "elements": [poly_to_dict(b) for b in basis],
    }

    def render(p):
        lines = [f"degree: {p['degree']}", f"dimension: {p['dimension']}"]
        lines += [repr(b) for b in basis]
        return "\n".join(lines) + "\n"

    _emit(payload, cfg, args.out, render)
    return 0


def _cmd_phi(args, cfg):
    w1 = parse_z_word(args.w1)
    w2 = parse_z_word(args.w2)
    p = phi(w1, w2, direction=args.direction, cap=cfg.degree_cap)
    payload = {"w1": list(w1), "w2": list(w2), "direction": args.direction,
               "phi": poly_to_dict(p)}
    _emit(payload, cfg, args.out, lambda d: repr(p) + "\n")
    return 0


def _verify_many(relations, points, max_n, tol, jobs):
    if jobs > 1:
        import multiprocessing
        with multiprocessing.Pool(jobs) as pool:
            reports = pool.starmap(
                verify_relation,
                [(r, points, max_n, tol) for r in relations])
    else:
        reports = [verify_relation(r, points, max_n, tol)
                   for r in relations]
    return reports


def _cmd_relations(args, cfg):
    if args.degree > cfg.degree_cap:
        raise ValueError(f"degree {args.degree} exceeds cap")
    relations = generate_all(args.degree)
    failed = False
    records = []
    if args.verify:
        points = [(args.z1, args.z2)]
        reports = _verify_many(relations, points, cfg.series_terms,
                               cfg.tolerance, args.jobs)
        for r, rep in zip(relations, reports):
            ok = all(entry["passed"] for entry in rep)
            failed = failed or not ok
            records.append(relation_to_dict(
                r, verified=ok,
                residual=max(entry["residual"] for entry in rep)))
    else:
        records = [relation_to_dict(r) for r in relations]
    payload = {"degree": args.degree, "count": len(records),
               "relations": records}

    def render(p):
        lines = [f"degree: {p['degree']}", f"count: {p['count']}"]
        for r, rec in zip(relations, records):
            mark = ""
            if "verified" in rec:
                mark = " [ok]" if rec["verified"] else " [FAILED]"
            flag = " (trivial)" if r.trivial else ""
            lines.append(r.render() + flag + mark)
        return "\n".join(lines) + "\n"

    _emit(payload, cfg, args.out, render)
    return 1 if failed else 0


def _sum_payload(s):
    return [{"index": list(index), "numbering": list(numbering),
             "orientation": orientation, "coeff": str(c)}
            for (index, numbering, orientation), c in s.sorted_terms()]


def _cmd_harmonic(args, cfg):
    left = tuple(int(k) for k in args.left.split(","))
    right = tuple(int(k) for k in args.right.split(","))
    expansion = mpl_harmonic_expand(left, right)
    matches = expansion == recursion_expand(left, right)
    payload = {"left": list(left), "right": list(right),
               "terms": _sum_payload(expansion),
               "recursion_matches": matches}
    failed = not matches
    if args.numeric:
        z1, z2 = (float(v) for v in args.numeric.split(","))
        lhs = (eval_tagged((left, (len(left), 0), "12"),
                           z1, z2, cfg.series_terms).value
               * eval_tagged((right, (len(right), 0), "12"),
                             z2, z1, cfg.series_terms).value)
        rhs, bound = eval_sum(expansion, z1, z2, cfg.series_terms)
        residual = abs(lhs - rhs)
        payload["residual"] = residual
        payload["bound"] = bound
        if residual > cfg.tolerance + bound:
            failed = True

    def render(p):
        lines = [f"Li{tuple(left)}(z1) * Li{tuple(right)}(z2) ="]
        for t in p["terms"]:
            lines.append(f"  {t['coeff']} * Li_{t['index']}"
                         f"{tuple(t['numbering'])} [{t['orientation']}]")
        if "residual" in p:
            lines.append(f"residual: {p['residual']:.3e}")
        return "\n".join(lines) + "\n"

    _emit(payload, cfg, args.out, render)
    return 1 if failed else 0


def _cmd_eval(args, cfg):
    term = parse_term(args.term)
    r = eval_series(term, args.z1, args.z2,
                    args.terms or cfg.series_terms)
    payload = {"term": term.render(),
               "value": [r.value.real, r.value.imag],
               "bound": r.truncation_bound,
               "terms_used": r.terms_used}
    _emit(payload, cfg, args.out,
          lambda p: f"{term.render()} = {r.value!r} "
                    f"(bound {r.truncation_bound:.3e})\n")
    return 0


def _cmd_decompose(args, cfg):
    if args.degree > cfg.degree_cap:
        raise ValueError(f"degree {args.degree} exceeds cap")
    decomposition = omega_decomposition(args.degree, args.direction,
                                        cap=cfg.degree_cap)
    pairs = []
    for pair in w0_pairs(args.degree, args.direction):
        pairs.append({"w1": list(pair[0]), "w2": list(pair[1]),
                      "coefficient": poly_to_dict(decomposition[pair])})
    payload = {"degree": args.degree, "direction": args.direction,
               "pairs": pairs}

    def render(p):
        lines = [f"degree: {p['degree']}  direction: {p['direction']}"]
        for rec in p["pairs"]:
            lines.append(f"({','.join(rec['w1']) or '1'}) x "
                         f"({','.join(rec['w2']) or '1'}): "
                         + " + ".join(f"{t['coeff']}*({','.join(t['word'])})"
                                      for t in rec["coefficient"]["terms"]))
        return "\n".join(lines) + "\n"

    _emit(payload, cfg, args.out, render)
    return 0


def _cmd_verify(args, cfg):
    point = (args.z1, args.z2)
    check = decompose_check(args.degree, point,
                            max_n=cfg.series_terms, tol=cfg.tolerance)
    relations = generate_all(args.degree)
    reports = _verify_many(relations, [point], cfg.series_terms,
                           cfg.tolerance, args.jobs)
    rel_ok = all(entry["passed"] for rep in reports for entry in rep)
    payload = {
        "degree": args.degree,
        "point": list(point),
        "decomposition": {k: (list(v) if isinstance(v, tuple) else v)
                          for k, v in check.items()},
        "relations_checked": len(relations),
        "relations_ok": rel_ok,
        "passed": bool(check["passed"] and rel_ok),
    }

    def render(p):
        return (f"decomposition degree {p['degree']}: "
                f"{'pass' if check['passed'] else 'FAIL'} "
                f"(residual {check['residual']:.3e})\n"
                f"relations: {p['relations_checked']} checked, "
                f"{'all pass' if rel_ok else 'FAILURES'}\n")

    _emit(payload, cfg, args.out, render)
    return 0 if payload["passed"] else 1


# -- argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="key=value config file")
    common.add_argument("--format", choices=("json", "text"),
                        default=argparse.SUPPRESS)
    common.add_argument("--degree-cap", type=int, dest="degree_cap",
                        default=argparse.SUPPRESS)
    common.add_argument("--radius", type=float, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)

    parser = _Parser(prog="barlog", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add("basis", help="bar-algebra basis at one degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--b0", action="store_true",
                   help="restrict to words not ending in z1/z2")
    p.add_argument("--out")

    p = add("phi", help="integrable representative of a pair")
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.add_argument("--direction", choices=("1x2", "2x1"), default="1x2")
    p.add_argument("--out")

    p = add("relations", help="generalized harmonic relations")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--z1", type=float, default=0.3)
    p.add_argument("--z2", type=float, default=0.4)
    p.add_argument("--terms", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--out")

    p = add("harmonic", help="two-variable harmonic expansion")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--numeric", help="z1,z2 evaluation point")
    p.add_argument("--out")

    p = add("eval", help="evaluate one term by series")
    p.add_argument("--term", required=True)
    p.add_argument("--z1", type=float, required=True)
    p.add_argument("--z2", type=float, required=True)
    p.add_argument("--terms", type=int)
    p.add_argument("--out")

    p = add("decompose", help="solution-kernel decomposition")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--direction", choices=("1x2", "2x1"), default="1x2")
    p.add_argument("--out")

    p = add("verify", help="decomposition + relation check")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--z1", type=float, default=0.3)
    p.add_argument("--z2", type=float, default=0.4)
    p.add_argument("--terms", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--out")

    return parser


_HANDLERS = {
    "basis": _cmd_basis,
    "phi": _cmd_phi,
    "relations": _cmd_relations,
    "harmonic": _cmd_harmonic,
    "eval": _cmd_eval,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
}


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "jobs"):
            args.jobs = 1
        cfg = Config()
        if getattr(args, "config", None):
            cfg = replace(cfg, **load_config(args.config))
        overrides = {}
        if getattr(args, "format", None):
            overrides["format"] = args.format
        if getattr(args, "degree_cap", None) is not None:
            overrides["degree_cap"] = args.degree_cap
        if getattr(args, "radius", None) is not None:
            overrides["radius"] = args.radius
        if getattr(args, "terms", None):
            overrides["series_terms"] = args.terms
        if getattr(args, "tol", None):
            overrides["tolerance"] = args.tol
        cfg = replace(cfg, **overrides)
        cfg.validate()
        return _HANDLERS[args.command](args, cfg)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, BarlogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
