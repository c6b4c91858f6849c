"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 a
verification reported a failure.  Output is text by default and JSON with
``--output json``; both are deterministic for identical arguments.
"""

import argparse
import json
import re
import sys

from . import bubbles, current, grassmann, nilhecke, symfunc
from .bubbles import CartanData, CenterElement
from .current import CenterVector, CurrentGen, GateError
from .symfunc import BASES, ParseError

BASIS_NAMES = BASES + ("s",)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3

# options whose values may start with "-" (weights, ranges)
_SIGNED_OPTIONS = ("--weight", "--weights")


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- argument helpers ----------------------------------------------------------


def _weight(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}; use e.g. 2,-1") from None


def _weight_range(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use e.g. -3..3")
    return int(m.group(1)), int(m.group(2))


def _partition(text):
    text = text.strip()
    if text in ("", "0", "[]", "empty"):
        return ()
    try:
        return tuple(int(x) for x in text.strip("[]").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}; use e.g. 2,1") from None


def _scalar(text):
    m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*=\s*(-?\d+(?:/\d+)?)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad scalar {text!r}; use e.g. 1,2=-1")
    return (int(m.group(1)), int(m.group(2))), m.group(3)


def _cartan(args):
    return CartanData(args.n, dict(args.t or []))


def _add_input(p, what):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr", help=f"{what} as text")
    src.add_argument("--file", help=f"path to {what} as JSON (or text)")


def _read_input(args, from_json, from_text):
    """Exactly one of --expr / --file; a file holds JSON or expression text."""
    if args.expr is not None:
        return from_text(args.expr)
    try:
        with open(args.file, encoding="utf-8") as fh:
            content = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        obj = json.loads(content)
    except json.JSONDecodeError:
        return from_text(content)
    return from_json(obj)


def _add_output(p):
    p.add_argument("--output", choices=("text", "json"), default="text")


# -- sym ---------------------------------------------------------------------------


def _sym_input(args, text):
    if args.basis_from is not None:
        allowed = {symfunc.check_basis(args.basis_from)}
        for letter in re.findall(r"([a-z]+)\s*\[", text):
            if symfunc.check_basis(letter) not in allowed:
                raise ParseError(f"factor {letter}[...] is not in the {args.basis_from} basis")
    return symfunc.parse_sym(text)


def cmd_sym_convert(args):
    f = _read_input(args, symfunc.sym_from_json, lambda t: _sym_input(args, t))
    if args.output == "json":
        return symfunc.sym_to_json(f, args.basis_to)
    return symfunc.format_sym(f, args.basis_to)


def cmd_sym_mul(args):
    factors = [symfunc.parse_sym(t) for t in args.expr or []]
    for path in args.file or []:
        with open(path, encoding="utf-8") as fh:
            factors.append(symfunc.sym_from_json(json.load(fh)))
    if len(factors) < 2:
        raise UsageError("sym mul needs at least two factors (--expr / --file)")
    out = factors[0]
    for f in factors[1:]:
        out = symfunc.mul(out, f)
    if args.vars is not None:
        out = symfunc.project_to_n(out, args.vars)
    if args.output == "json":
        return symfunc.sym_to_json(out, args.basis_to)
    return symfunc.format_sym(out, args.basis_to)


def cmd_sym_grass_check(args):
    ok = symfunc.grassmannian_convolution_check(args.max)
    payload = {"N": args.max, "holds": ok}
    return _verdict(args, payload, ok, "true" if ok else "false")


# -- nh ------------------------------------------------------------------------------


def _nh_input(args):
    return _read_input(
        args, nilhecke.NHElement.from_json, lambda t: nilhecke.NHElement.parse(args.n, t)
    )


def cmd_nh_trace(args):
    value = nilhecke.trace_class(_nh_input(args)).value
    if args.output == "json":
        return symfunc.sym_to_json(value, args.basis)
    return symfunc.format_sym(value, args.basis)


def cmd_nh_matrix(args):
    m = nilhecke.to_matrix(_nh_input(args))
    return m.to_json(args.basis) if args.output == "json" else m.to_text(args.basis)


def cmd_nh_verify(args):
    return _report(args, nilhecke.verify_relations(args.n))


def cmd_nh_idempotent(args):
    e = nilhecke.idempotent_e(args.n)
    ok = nilhecke.equals(e * e, e)
    payload = {"n": args.n, "element": e.to_json(), "idempotent": ok}
    return _verdict(args, payload, ok, f"{e}\nidempotent: {'true' if ok else 'false'}")


def cmd_nh_basis_class(args):
    value = nilhecke.standard_basis_class(args.n, args.partition).value
    if args.output == "json":
        return symfunc.sym_to_json(value, args.basis)
    return symfunc.format_sym(value, args.basis)


# -- bubble --------------------------------------------------------------------------


def _center(args):
    return str if args.output == "text" else (lambda e: e.to_json())


def cmd_bubble_cc(args):
    cd = _cartan(args)
    return _center(args)(bubbles.cc_bubble(cd, args.node, args.alpha, cd.check_weight(args.weight)))


def cmd_bubble_absolute(args):
    cd = _cartan(args)
    e = bubbles.from_absolute(cd, args.node, args.orientation, args.dots, cd.check_weight(args.weight))
    return _center(args)(e)


def cmd_bubble_power_sum(args):
    cd = _cartan(args)
    e = bubbles.power_sum(cd, args.node, args.degree, cd.check_weight(args.weight), formula=args.formula)
    return _center(args)(e)


def cmd_bubble_slide(args):
    cd = _cartan(args)
    weight = cd.check_weight(args.weight) if args.weight is not None else None

    def from_text(text):
        if weight is None:
            raise UsageError("--weight is required with --expr")
        return CenterElement.parse(weight, text)

    e = _read_input(args, CenterElement.from_json, from_text)
    terms = bubbles.slide_center_past_strand(e, cd, (args.strand, args.orientation), args.side)
    if args.output == "json":
        return {"terms": [t.to_json() for t in terms]}
    lines = [f"dots={t.dots} at {list(t.coefficient.weight)}: {t.coefficient}" for t in terms]
    return "\n".join(lines) or "0"


def cmd_bubble_power_slide_check(args):
    cd = _cartan(args)
    ok = bubbles.power_slide_check(cd, args.node, args.strand, args.degree, cd.check_weight(args.weight))
    payload = {"i": args.node, "j": args.strand, "r": args.degree, "weight": list(args.weight), "holds": ok}
    return _verdict(args, payload, ok, "true" if ok else "false")


# -- current -------------------------------------------------------------------------

_GEN = re.compile(r"(x\+|x-|xi)\[\s*(\d+)\s*,\s*(\d+)\s*\]|1\[([-\d,\s]*)\]")


def parse_word(text):
    """``"x+[1,2] xi[1,0] 1[0,1]"``: generators separated by spaces, last acts first."""
    gens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _GEN.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse generator at {text[pos:]!r}")
        pos = m.end()
        kind, i, r, weight = m.groups()
        if kind is None:
            gens.append(CurrentGen("idem", weight=_weight(weight)))
        else:
            name = {"x+": "xplus", "x-": "xminus", "xi": "xi"}[kind]
            gens.append(CurrentGen(name, int(i), int(r)))
    if not gens:
        raise ParseError("empty word")
    return gens


def cmd_current_act(args):
    cd = _cartan(args)
    word = parse_word(args.word)

    def from_text(text):
        if args.weight is None:
            raise UsageError("--weight is required with --expr")
        return CenterVector.of(CenterElement.parse(cd.check_weight(args.weight), text))

    v = _read_input(args, CenterVector.from_json, from_text)
    out = current.act_word(cd, word, v)
    if args.output == "json":
        return out.to_json()
    lines = [f"{list(w)}: {e}" for w, e in out.components().items()]
    return "\n".join(lines) or "0"


def cmd_current_verify(args):
    cd = _cartan(args)
    rep = current.verify_current_relations(
        cd, weight_range=args.weights, max_degree=args.max_degree, trials=args.trials, seed=args.seed
    )
    return _report(args, rep)


def cmd_current_sl2_check(args):
    ok = current.sl2_commutator_check(args.r, args.s, weight_range=args.weights, trials=args.trials, seed=args.seed)
    low, high = args.weights
    payload = {"r": args.r, "s": args.s, "weights": f"{low}..{high}", "trials": args.trials, "seed": args.seed, "holds": ok}
    return _verdict(args, payload, ok, "true" if ok else "false")


# -- grass ---------------------------------------------------------------------------


def cmd_grass_dim(args):
    dim = grassmann.graded_dimension(args.k, args.n)
    matches = dim == symfunc.gaussian_binomial(args.n, args.k)
    if args.output == "json":
        return {"k": args.k, "n": args.n, "dimension": dim.to_json(), "matches_gaussian_binomial": matches}
    return str(dim)


def cmd_grass_relations(args):
    ok = grassmann.ideal_relation_check(args.k, args.n, args.alpha_max)
    payload = {"k": args.k, "n": args.n, "alpha_max": args.alpha_max, "holds": ok}
    return _verdict(args, payload, ok, "true" if ok else "false")


def cmd_grass_chern(args):
    rep = grassmann.chern_character_report(args.k, args.n)
    if args.output == "json":
        return rep
    return "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in rep.items())


# -- shared result handling --------------------------------------------------------


def _verdict(args, payload, ok, text):
    out = payload if args.output == "json" else text
    if not ok:
        raise VerificationFailed(out)
    return out


def _report(args, rep):
    out = rep.to_json() if args.output == "json" else rep.to_text()
    if not rep.passed:
        raise VerificationFailed(out)
    return out


# -- parser --------------------------------------------------------------------------


def build_parser():
    parser = _Parser(prog="tracedecat", description="Exact computations for trace decategorification.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def command(sub, name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        _add_output(p)
        return p

    # sym
    sym = groups.add_parser("sym", help="symmetric functions").add_subparsers(dest="cmd", required=True)
    p = command(sym, "convert", cmd_sym_convert, "change basis")
    p.add_argument("--from", dest="basis_from", choices=BASIS_NAMES, default=None, help="basis of the input expression")
    p.add_argument("--to", dest="basis_to", choices=BASIS_NAMES, default="h")
    _add_input(p, "a symmetric function")
    p = command(sym, "mul", cmd_sym_mul, "multiply two or more symmetric functions")
    p.add_argument("--expr", action="append", help="a factor as text (repeatable)")
    p.add_argument("--file", action="append", help="a factor as JSON (repeatable)")
    p.add_argument("--to", dest="basis_to", choices=BASIS_NAMES, default="h")
    p.add_argument("--vars", type=int, default=None, help="project the product to Sym_n")
    p = command(sym, "grass-check", cmd_sym_grass_check, "the e/h convolution identity up to degree N")
    p.add_argument("--max", type=int, required=True)

    # nh
    nh = groups.add_parser("nh", help="nilHecke algebra").add_subparsers(dest="cmd", required=True)
    for name, fn, help_text in (
        ("trace", cmd_nh_trace, "trace class in Sym_n"),
        ("matrix", cmd_nh_matrix, "matrix over Sym_n in the staircase basis"),
    ):
        p = command(nh, name, fn, help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--basis", choices=BASIS_NAMES, default="e", help="basis for Sym_n values")
        _add_input(p, "a nilHecke element")
    p = command(nh, "verify", cmd_nh_verify, "check the defining relations")
    p.add_argument("--n", type=int, required=True)
    p = command(nh, "idempotent", cmd_nh_idempotent, "the idempotent e_n and its check")
    p.add_argument("--n", type=int, required=True)
    p = command(nh, "basis-class", cmd_nh_basis_class, "trace class of x^lambda e_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--partition", type=_partition, required=True)
    p.add_argument("--basis", choices=BASIS_NAMES, default="e")

    # bubble
    bub = groups.add_parser("bubble", help="bubble calculus").add_subparsers(dest="cmd", required=True)

    def cartan_args(p):
        p.add_argument("--n", type=int, required=True, help="sl_n")
        p.add_argument("--t", type=_scalar, action="append", help="scalar t_ij as i,j=value (repeatable)")

    p = command(bub, "cc", cmd_bubble_cc, "counterclockwise bubble in clockwise generators")
    cartan_args(p)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--weight", type=_weight, required=True)
    p = command(bub, "absolute", cmd_bubble_absolute, "bubble with an absolute dot count")
    cartan_args(p)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--orientation", choices=bubbles.ORIENTATIONS, required=True)
    p.add_argument("--dots", type=int, required=True)
    p.add_argument("--weight", type=_weight, required=True)
    p = command(bub, "power-sum", cmd_bubble_power_sum, "power sum p_{i,r}(lambda)")
    cartan_args(p)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("--formula", type=int, choices=(1, 2, 3), default=1)
    p = command(bub, "slide", cmd_bubble_slide, "slide a center element across a strand")
    cartan_args(p)
    p.add_argument("--strand", type=int, required=True, help="strand color j")
    p.add_argument("--orientation", choices=(bubbles.UP, bubbles.DOWN), required=True)
    p.add_argument("--side", choices=("left", "right"), required=True, help="side the element starts on")
    p.add_argument("--weight", type=_weight, default=None, help="weight of the starting region")
    _add_input(p, "a center element")
    p = command(bub, "power-slide-check", cmd_bubble_power_slide_check, "power-sum slide rules")
    cartan_args(p)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--strand", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--weight", type=_weight, required=True)

    # current
    cur = groups.add_parser("current", help="current-algebra action").add_subparsers(dest="cmd", required=True)
    p = command(cur, "act", cmd_current_act, "apply a word in the generators")
    cartan_args(p)
    p.add_argument("--word", required=True, help='e.g. "x+[1,2] xi[1,0]"; the last generator acts first')
    p.add_argument("--weight", type=_weight, default=None, help="weight of an --expr input")
    _add_input(p, "a center vector")
    p = command(cur, "verify", cmd_current_verify, "check relations C1-C6")
    cartan_args(p)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--weights", type=_weight_range, default=(-3, 3))
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)
    p = command(cur, "sl2-check", cmd_current_sl2_check, "[x+_r, x-_s] = xi_{r+s} for sl_2")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--weights", type=_weight_range, default=(-3, 3))
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)

    # grass
    gr = groups.add_parser("grass", help="Grassmannian cohomology").add_subparsers(dest="cmd", required=True)
    for name, fn, help_text in (
        ("dim", cmd_grass_dim, "graded dimension"),
        ("chern", cmd_grass_chern, "Chern character K_0 -> cohomology"),
    ):
        p = command(gr, name, fn, help_text)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
    p = command(gr, "relations", cmd_grass_relations, "the presenting ideal vanishes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-max", type=int, required=True)

    return parser


def _join_signed(argv):
    """Rewrite ``--weights -3..3`` as ``--weights=-3..3`` so argparse keeps it a value."""
    out = []
    it = iter(argv)
    for arg in it:
        if arg in _SIGNED_OPTIONS:
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def _emit(result, stream):
    if isinstance(result, str):
        stream.write(result + "\n")
    else:
        stream.write(json.dumps(result, indent=2, ensure_ascii=False) + "\n")


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _join_signed(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except VerificationFailed as exc:
        _emit(exc.payload, stdout)
        return EXIT_VERIFY
    except (GateError, ValueError) as exc:
        stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    _emit(result, stdout)
    return EXIT_OK


def main():
    try:
        code = run()
    except SystemExit as exc:  # --help
        code = exc.code or 0
    sys.exit(code)
