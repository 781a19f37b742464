"""Command-line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 invalid input,
3 a size bound was exceeded.
"""
import argparse
import json
import os
import sys
from collections import deque

from . import diagrams as D
from . import fixtures as F
from . import gsets as GS
from . import inner as I
from . import polycyclic as PC
from . import transformations as T
from .conjugacy import ALL_RELS, Chain, PairGH, Rel, SinglePower, UnitG, classes, compare, decide, verify_witness
from .errors import BoundExceeded, ConjlabError, InvalidWitness, ParseError
from .semigroup import cyclic_group, format_table, parse_table
from .verify import SUITES

MAX_CLASSES = 5000
DEFAULT_COMPARE = ("G", "N", "P", "PSTAR", "TR", "W", "C", "O")


def threads():
    """Worker cap from CONJLAB_THREADS; every command here runs in one thread."""
    raw = os.environ.get("CONJLAB_THREADS")
    if raw is None:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise ParseError(f"CONJLAB_THREADS must be a positive integer, got {raw!r}") from None
    if k < 1:
        raise ParseError("CONJLAB_THREADS must be a positive integer")
    return k


# ----------------------------------------------------------------- inputs

def _closure(gens, mul, bound=MAX_CLASSES):
    seen = list(dict.fromkeys(gens))
    known = set(seen)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for y in list(seen):
            for z in (mul(x, y), mul(y, x)):
                if z not in known:
                    known.add(z)
                    seen.append(z)
                    queue.append(z)
                    if len(seen) > bound:
                        raise BoundExceeded(f"generated semigroup exceeds {bound} elements")
    return seen


def _content_lines(text):
    return [l.split("#", 1)[0].strip() for l in text.splitlines()]


def load_semigroup(text):
    """Cayley table, list of maps, list of diagrams, or a G-set (for End_G(X))."""
    lines = [l for l in _content_lines(text) if l]
    if not lines:
        raise ParseError("empty input")
    first = lines[0]
    if first.startswith("G="):
        X = GS.parse_gset(text)
        return GS.cayley_end(GS.enumerate_end(X))
    if first.startswith("["):
        maps = [T.parse_map(l) for l in lines]
        if len({m.n for m in maps}) != 1:
            raise ParseError("maps act on different sets")
        return T.cayley(_closure(maps, lambda a, b: a * b))
    if ";" in first:
        ds = [D.parse_diagram(l) for l in lines]
        if len({d.n for d in ds}) != 1:
            raise ParseError("diagrams of different size")
        return D.cayley(_closure(ds, lambda a, b: a * b))
    return parse_table(text)


def read_input(path):
    if path is None:
        raise ParseError("--input is required")
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def element(S, token):
    return S.index_of(token.strip())


# ----------------------------------------------------------------- output

class Out:
    def __init__(self, args):
        self.fmt = args.format
        self.path = args.output
        self.rows = []
        self.data = {}

    def row(self, *fields):
        self.rows.append("\t".join(str(f) for f in fields))

    def flush(self):
        text = json.dumps(self.data, indent=2, ensure_ascii=False) + "\n" if self.fmt == "json" else (
            "\n".join(self.rows) + "\n" if self.rows else "")
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def witness_text(S, w):
    lab = S.label
    if isinstance(w, PairGH):
        return f"g={lab(w.g)} h={lab(w.h)}"
    if isinstance(w, UnitG):
        return f"g={lab(w.g)}"
    if isinstance(w, SinglePower):
        return f"g={lab(w.g)} h={lab(w.h)} m={w.m}"
    if isinstance(w, Chain):
        steps = " ; ".join(f"({lab(u)},{lab(v)})" for u, v in w.steps)
        return f"path={' -> '.join(lab(x) for x in w.path)} steps={steps}"
    return ""


# ---------------------------------------------------------------- commands

def cmd_classes(args, out):
    S = load_semigroup(read_input(args.input))
    if S.order > MAX_CLASSES and not args.force:
        raise BoundExceeded(f"{S.order} elements is above {MAX_CLASSES}; pass --force to continue")
    part = classes(args.relation, S)
    out.data = {"relation": part.relation.value, "order": S.order, "classes": []}
    for i, c in enumerate(part.classes):
        members = [S.label(x) for x in c]
        out.row(i, len(c), S.label(part.representatives[i]), " | ".join(members))
        out.data["classes"].append({"id": i, "size": len(c), "representative": members[0], "members": members})


def cmd_decide(args, out):
    S = load_semigroup(read_input(args.input))
    rel = Rel.parse(args.relation)
    a, b = element(S, args.a), element(S, args.b)
    if not (0 <= a < S.order and 0 <= b < S.order):
        raise ParseError("conjugacy is decided for elements of S, not the adjoined identity")
    w = decide(rel, S, a, b)
    if w is not None and not verify_witness(rel, S, a, b, w):
        raise InvalidWitness(f"decider returned a witness that fails re-verification: {w}")
    ok = w is not None
    out.row(rel.value, S.label(a), S.label(b), str(ok).lower(), witness_text(S, w) if ok else "")
    out.data = {"relation": rel.value, "a": S.label(a), "b": S.label(b), "result": ok,
                "witness": witness_text(S, w) if ok else None}


def cmd_compare(args, out):
    S = load_semigroup(read_input(args.input))
    rels = [Rel.parse(r) for r in (args.relations.split(",") if args.relations else DEFAULT_COMPARE)]
    res = compare(S, rels)
    out.data = {"relations": [r.value for r in rels], "inclusions": []}
    for (r1, r2), inc in res.items():
        if r1 == r2:
            continue
        out.row(r1.value, inc, r2.value)
        out.data["inclusions"].append({"left": r1.value, "relation": inc, "right": r2.value})


def cmd_inn(args, out):
    S = load_semigroup(read_input(args.input))
    inn = I.generate_inn(S)
    s = inn.summary()
    out.data = {k: v for k, v in s.items() if k != "pairs"}
    out.data["d_classes"] = [list(x) for x in s["d_classes"]]
    for k in ("order", "generators", "idempotents"):
        out.row(k, s[k])
    for r, l, h in s["d_classes"]:
        out.row("d_class", f"{r}x{l}x{h}")
    if args.maps:
        out.data["maps"] = []
        for f in inn.elements:
            m = ",".join("-" if y < 0 else S.label(y) for y in f.img)
            out.row("map", m)
            out.data["maps"].append(m)


BUILD_KINDS = {
    "full": "T", "partial": "P", "injective": "I", "symmetric": "S", "order": "O", "oi": "OI", "txy": "TXY",
    "partition": "DP", "partial-brauer": "DPB", "brauer": "DB", "cyclic": "Z",
}


def build(kind, n, Y=None, fixture=None):
    if fixture:
        fx = F.named_fixtures()
        if fixture not in fx:
            raise ParseError(f"unknown fixture {fixture!r}; choose from {', '.join(sorted(fx))}")
        return fx[fixture]
    k = BUILD_KINDS.get(kind.lower(), kind.upper())
    if n is None or n < 1:
        raise ParseError("--n must be a positive integer")
    if k.startswith("D"):
        return D.monoid(k[1:], n)[1]
    if k == "Z":
        return cyclic_group(n)
    if k in ("T", "P", "I", "S", "O", "OI", "TXY"):
        size = {"T": n ** n, "P": (n + 1) ** n}.get(k, 0)
        if size > MAX_CLASSES:
            raise BoundExceeded(f"{kind} on {n} points has {size} elements, above {MAX_CLASSES}")
        Yset = None
        if k == "TXY":
            if Y is None:
                raise ParseError("--Y is required for txy, e.g. --Y 1,2")
            Yset = T.parse_subset("{" + Y + "}")
            if not Yset or max(Yset) >= n:
                raise ParseError(f"Y must be a nonempty subset of 1..{n}")
        return T.cayley(T.enumerate_maps(k, n, Yset))
    raise ParseError(f"unknown kind {kind!r}")


def cmd_build(args, out):
    S = build(args.kind or "", args.n, args.Y, args.fixture)
    text = format_table(S)
    if out.fmt == "json":
        out.data = {"order": S.order, "identity": S.identity, "zero": S.zero,
                    "table": S.table.tolist(), "labels": list(S.labels)}
    else:
        out.rows = text.rstrip("\n").split("\n")


def cmd_diagram(args, out):
    kind = BUILD_KINDS.get(args.kind.lower(), args.kind.upper()).lstrip("D") or "P"
    if kind not in ("P", "PB", "B"):
        raise ParseError("diagram kind must be P, PB or B")
    ds = [D.parse_diagram(s) for s in args.diagrams]
    for d in ds:
        if kind == "B" and not d.is_brauer or kind == "PB" and not d.is_partial_brauer:
            raise ParseError(f"{d} is not in {kind}_{d.n}")
    rel = (args.relation or "n").lower()
    if len(ds) == 1:
        a = ds[0]
        nf = D.normalize_n(a, kind)
        for before, after, g, h in nf.steps:
            if not D.check_n_step(before, after, g, h):
                raise InvalidWitness("rewriting step fails re-verification")
        ct = D.cycle_type_omega_plus_one(a)
        out.row("diagram", a)
        out.row("rank", a.rank)
        out.row("normal_form", nf.diagram)
        out.row("steps", len(nf.steps))
        out.row("cycle_type", ct)
        out.data = {"diagram": str(a), "rank": a.rank, "normal_form": str(nf.diagram),
                    "steps": [{"from": str(b), "to": str(c), "g": str(g), "h": str(h)} for b, c, g, h in nf.steps],
                    "cycle_type": list(ct) if isinstance(ct, tuple) else ct}
        return
    if len(ds) != 2:
        raise ParseError("give one diagram (normal form) or two (decide)")
    a, b = ds
    fn = {"n": lambda: D.conj_n_diagram(a, b, kind), "tr": lambda: D.conj_tr_diagram(a, b),
          "pstar": lambda: D.conj_tr_diagram(a, b), "o": lambda: D.conj_o_diagram(a, b, kind),
          "c": lambda: D.conj_c_diagram(a, b, kind)}
    if rel not in fn:
        raise ParseError(f"diagram relations are n, tr, pstar, o and c, not {rel!r}")
    ok = fn[rel]()
    out.row(rel, a, b, str(ok).lower())
    out.data = {"relation": rel, "a": str(a), "b": str(b), "result": ok}


def cmd_gset(args, out):
    X = GS.parse_gset(read_input(args.input))
    fs = [GS.parse_endomorphism(X, s) for s in args.maps]
    if not fs:
        out.row("points", X.size)
        out.row("endomorphisms", len(GS.enumerate_end(X)))
        out.data = {"points": X.size, "endomorphisms": len(GS.enumerate_end(X))}
        return
    if len(fs) == 1:
        f = fs[0]
        labels = {str(k): ",".join(map(str, v)) for k, v in GS.cycle_labels(f).items()}
        t = GS.g_trim(f)
        out.row("map", f)
        out.row("trim_orbits", " ".join(str(v) for v in sorted(t.graph.vertices)))
        for k, v in labels.items():
            out.row("cycle_label", k, v)
        out.data = {"map": str(f), "trim_orbits": sorted(t.graph.vertices), "cycle_labels": labels}
        return
    if len(fs) != 2:
        raise ParseError("give one endomorphism (describe) or two (decide)")
    ok = GS.conj_n_gset(*fs)
    out.row("n", fs[0], fs[1], str(ok).lower())
    out.data = {"relation": "n", "a": str(fs[0]), "b": str(fs[1]), "result": ok}


def cmd_polygrowth(args, out):
    rel = args.relation.lower().replace("*", "star")
    if rel not in ("sigma", "n", "c", "pstar"):
        raise ParseError(f"growth relation must be one of sigma, n, c, pstar, not {rel!r}")
    if args.n < 2:
        raise ParseError("the polycyclic monoid needs n >= 2")
    if args.max < 0:
        raise ParseError("--max must be nonnegative")
    form = [PC.cgf(rel, args.n, m) for m in range(args.max + 1)]
    oracle = PC.ball_oracle(args.n, args.max, rel) if args.verify else None
    out.data = {"n": args.n, "relation": rel, "closed_form": form}
    if oracle is not None:
        out.data["oracle"] = oracle
    for m in range(args.max + 1):
        out.row(m, form[m], *([oracle[m]] if oracle is not None else []))
    if oracle is not None and oracle != form:
        return 1


def cmd_verify(args, out):
    fn = SUITES[args.suite]
    kw = {}
    if args.suite in ("transformations", "diagrams", "inn") and args.n is not None:
        kw["n"] = args.n
    if args.suite in ("inclusions", "idempotents") and args.n is not None:
        kw["max_order"] = args.n
    if args.suite == "polycyclic":
        if args.n is not None:
            kw["n"] = args.n
        if args.max is not None:
            if args.max > PC.MAX_BALL:
                raise BoundExceeded(f"--max {args.max} is above the oracle bound {PC.MAX_BALL}")
            kw["max_m"] = args.max
    checks = fn(**kw)
    out.data = {"suite": args.suite, "checks": []}
    for c in checks:
        status = "PASS" if c.ok else "FAIL"
        out.row(status, c.name, f"{c.seconds:.3f}s", c.detail)
        out.data["checks"].append({"name": c.name, "ok": c.ok, "seconds": round(c.seconds, 3), "detail": c.detail})
    return 0 if all(c.ok for c in checks) else 1


# ------------------------------------------------------------------ parser

def parser():
    p = argparse.ArgumentParser(prog="conjlab", description="Conjugacy relations on finite semigroups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input file ('-' for stdin)")
    common.add_argument("--relation", help="relation tag: " + ", ".join(r.value for r in ALL_RELS))
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classes", parents=[common], help="class partition under a relation")
    s.add_argument("--force", action="store_true", help=f"allow inputs above {MAX_CLASSES} elements")
    s.set_defaults(func=cmd_classes, relation_required=True)

    s = sub.add_parser("decide", parents=[common], help="decide a ~ b and print a verified witness")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_decide, relation_required=True)

    s = sub.add_parser("compare", parents=[common], help="pairwise inclusions among relations")
    s.add_argument("--relations", help="comma-separated tags (default: the main chain)")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("inn", parents=[common], help="generate Inn(S)")
    s.add_argument("--maps", action="store_true", help="also list every partial automorphism")
    s.set_defaults(func=cmd_inn)

    s = sub.add_parser("build", parents=[common], help="write the Cayley table of a named monoid")
    s.add_argument("--kind", help="full, partial, injective, symmetric, order, oi, txy, partition, "
                                  "partial-brauer, brauer, cyclic")
    s.add_argument("--n", type=int)
    s.add_argument("--Y", help="image set for txy, e.g. 1,2")
    s.add_argument("--fixture", help="a bundled example: " + ", ".join(sorted(F.named_fixtures())))
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("diagram", parents=[common], help="normal form of a diagram, or decide two")
    s.add_argument("--kind", default="P", help="P, PB or B")
    s.add_argument("diagrams", nargs="+", help="literals such as \"3; {1,2'}{2,3}{1'}{3'}\"")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("gset", parents=[common], help="describe or compare G-set endomorphisms")
    s.add_argument("maps", nargs="*", help="orbit images such as \"(0,1) (0,0)\"")
    s.set_defaults(func=cmd_gset)

    s = sub.add_parser("polygrowth", parents=[common], help="conjugacy growth of the polycyclic monoid")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--max", type=int, default=6)
    s.add_argument("--verify", action="store_true", help="add the ball-oracle count column")
    s.set_defaults(func=cmd_polygrowth)

    s = sub.add_parser("verify", parents=[common], help="run an oracle-equivalence suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--n", type=int)
    s.add_argument("--max", type=int)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = parser().parse_args(argv)
    out = Out(args)
    try:
        threads()
        if getattr(args, "relation_required", False) and not args.relation:
            raise ParseError("--relation is required")
        if args.command == "polygrowth" and not args.relation:
            args.relation = "n"
        code = args.func(args, out) or 0
    except BoundExceeded as e:
        print(f"bound exceeded: {e}", file=sys.stderr)
        return 3
    except ConjlabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
