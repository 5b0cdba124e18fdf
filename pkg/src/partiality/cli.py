"""Command-line interface.

Exit status: 0 on success (or a true order query), 1 when an order query is
false or a property fails, 2 on input errors.  Input errors are written to
stderr as a single JSON object with ``error``, ``location`` and ``message``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Callable, Sequence

from . import kernel, logics, simplex, spectra, suites
from .documents import StateDocument, document_to_obj, parse_state_document
from .errors import ParseError, PartialityError, SchemaViolation
from .svg import MAX_GRID, emit_updown_svg

NAMED_FUNCTIONS: dict[str, tuple[Callable[[float], float], Callable[[float], float]]] = {
    "square": (lambda x: x * x, lambda x: 2 * x),
    "sin": (math.sin, math.cos),
    "cos": (math.cos, lambda x: -math.sin(x)),
    "exp": (math.exp, math.exp),
    "affine": (lambda x: 3 * x + 1, lambda x: 3.0),
}

FIXPOINT_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "half-plus-one": lambda x: x / 2 + 1,
    "cos": math.cos,
    "sqrt-plus-two": lambda x: math.sqrt(x + 2),
}


class InputError(Exception):
    def __init__(self, code: str, message: str, location: str = ""):
        super().__init__(message)
        self.code, self.location = code, location


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise InputError("io-error", f"{path}: {e.strerror}") from None


def _load(path: str, kinds: Sequence[str]) -> StateDocument:
    try:
        doc = parse_state_document(_read(path))
    except ParseError as e:
        raise InputError(e.code, f"{path}: {e.detail}", e.location) from None
    if doc.kind not in kinds:
        raise InputError(SchemaViolation.code, f"{path}: expected kind {' or '.join(kinds)}, got {doc.kind}",
                         "/kind")
    return doc


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


# -- subcommands --------------------------------------------------------------


def cmd_order(args, out) -> int:
    a = _load(args.a, ("classical", "density"))
    b = _load(args.b, ("classical", "density"))
    if a.kind != b.kind:
        raise InputError("kind-mismatch", f"cannot compare {a.kind} with {b.kind}")
    if a.kind == "classical":
        if a.value.n != b.value.n:
            raise InputError("dimension-mismatch", f"dimensions differ: {a.value.n} vs {b.value.n}")
        ex = simplex.bayesian_explain(a.value, b.value)
        result = ex.leq
    else:
        if a.value.dim != b.value.dim:
            raise InputError("dimension-mismatch", f"dimensions differ: {a.value.dim} vs {b.value.dim}")
        result = spectra.spectral_leq(a.value, b.value)
        ex = None
        if args.explain and spectra.commute(a.value, b.value):
            x, y = spectra.aligned_spectra(a.value, b.value)
            ex = simplex.bayesian_explain(x, y)
    _emit(out, "true" if result else "false")
    if args.explain:
        if ex is None:
            _emit(out, "reason: the operators do not commute")
        elif ex.leq:
            _emit(out, "permutation: " + " ".join(str(i) for i in ex.permutation))
        else:
            _emit(out, f"failing index: {ex.failing_index} ({ex.reason})")
    return 0 if result else 1


def cmd_entropy(args, out) -> int:
    doc = _load(args.input, ("classical", "density"))
    if doc.kind == "classical":
        h = simplex.shannon_entropy(doc.value, base=args.base)
    else:
        h = spectra.von_neumann_entropy(doc.value, base=args.base)
    _emit(out, repr(float(h)))
    return 0


def cmd_irreducibles(args, out) -> int:
    states = logics.irreducibles_classical(args.n)
    if args.format == "json":
        body = {"n": args.n, "count": len(states),
                "states": [{"support": sorted(s.support), "p": logics.state_to_json(s)} for s in states]}
        _emit(out, _dumps(body))
    else:
        for s in states:
            _emit(out, f"{logics.support_label(s):<{2 * args.n + 1}}  ({', '.join(str(v) for v in s.p)})")
    return 0


def cmd_hasse(args, out) -> int:
    h = logics.hasse_classical(args.n)
    _emit(out, h.to_dot(f"irreducibles_{args.n}") if args.format == "dot" else h.to_json())
    return 0


def cmd_embed(args, out) -> int:
    x = _load(args.input, ("classical",)).value
    rho = spectra.diag_embedding(x)
    h_x = simplex.shannon_entropy(x)
    h_rho = spectra.von_neumann_entropy(rho)
    q = spectra.spectrum_descending(rho)
    body = {
        "density": document_to_obj(rho),
        "shannon": h_x,
        "von_neumann": h_rho,
        "spectrum": [float(v) for v in q.p],
        "entropy_agrees": abs(h_x - h_rho) <= 1e-9,
        "spectrum_agrees": q.close_to(simplex.sort_retraction(x), 1e-12),
    }
    ok = body["entropy_agrees"] and body["spectrum_agrees"]
    if args.b is not None:
        y = _load(args.b, ("classical",)).value
        if y.n != x.n:
            raise InputError("dimension-mismatch", f"dimensions differ: {x.n} vs {y.n}")
        classical = simplex.bayesian_leq(x, y)
        quantum = spectra.spectral_leq(rho, spectra.diag_embedding(y))
        body["order"] = {"classical": classical, "spectral": quantum, "agrees": classical == quantum}
        ok = ok and classical == quantum
    _emit(out, _dumps(body))
    return 0 if ok else 1


def cmd_derivative(args, out) -> int:
    f, df = NAMED_FUNCTIONS[args.f]
    d = kernel.informatic_derivative(f, args.p)
    expected = abs(df(args.p))
    _emit(out, _dumps({"f": args.f, "p": args.p, "estimate": d, "expected": expected,
                       "error": abs(d - expected)}))
    return 0


def cmd_fixpoint(args, out) -> int:
    f = FIXPOINT_FUNCTIONS[args.f]
    try:
        seed = kernel.Interval(args.lo, args.hi)
    except PartialityError as e:
        raise InputError("invariant-violation", str(e), "--lo/--hi") from None
    chain = list(kernel.fixpoint_chain(f, seed, args.steps))
    body = {"f": args.f, "steps": args.steps, "lo": chain[-1].lo, "hi": chain[-1].hi,
            "width": chain[-1].width}
    if args.trace:
        body["trace"] = [[c.lo, c.hi] for c in chain]
    _emit(out, _dumps(body))
    return 0


def cmd_plot_updown(args, out) -> int:
    x = _load(args.input, ("classical",)).value
    if x.n != 3:
        raise InputError("dimension-mismatch", f"plot-updown needs a state with n=3, got n={x.n}", "/p")
    data = emit_updown_svg(x, args.grid)
    if args.out in (None, "-"):
        out.write(data.decode("utf-8"))
    else:
        try:
            with open(args.out, "wb") as fh:
                fh.write(data)
        except OSError as e:
            raise InputError("io-error", f"{args.out}: {e.strerror}") from None
    return 0


def cmd_check(args, out) -> int:
    names = [n for n in suites.PROPERTIES if args.only is None or n.startswith(args.only)]
    if not names:
        raise InputError("bad-flags", f"no property matches {args.only!r}")
    results = [suites.run_property(n, args.seed, args.samples) for n in names]
    body = {"seed": args.seed, "samples": args.samples, "passed": all(r.passed for r in results),
            "properties": [r.to_json() for r in results]}
    _emit(out, _dumps(body))
    return 0 if body["passed"] else 1


# -- parser -------------------------------------------------------------------


def _int_auto(text: str) -> int:
    return int(text, 0)


def _grid(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("grid must be positive")
    return v


def _dim(text: str) -> int:
    v = int(text)
    if not 2 <= v <= logics.MAX_LOGIC_DIM:
        raise argparse.ArgumentTypeError(f"n must be in 2..{logics.MAX_LOGIC_DIM}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partiality", description="Orders on classical and quantum states.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("order", help="decide a ⊑ b for two classical or two density documents")
    s.add_argument("--a", required=True, help="state document file ('-' for stdin)")
    s.add_argument("--b", required=True)
    s.add_argument("--explain", action="store_true", help="print the witnessing permutation or failing index")
    s.set_defaults(run=cmd_order)

    s = sub.add_parser("entropy", help="Shannon or von Neumann entropy")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--base", type=float, default=None, help="logarithm base (default e)")
    s.set_defaults(run=cmd_entropy)

    s = sub.add_parser("irreducibles", help="list the classical irreducibles of Δⁿ")
    s.add_argument("--n", type=_dim, required=True)
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.set_defaults(run=cmd_irreducibles)

    s = sub.add_parser("hasse", help="Hasse diagram of the classical irreducibles")
    s.add_argument("--n", type=_dim, required=True)
    s.add_argument("--format", choices=("dot", "json"), default="dot")
    s.set_defaults(run=cmd_hasse)

    s = sub.add_parser("embed", help="diagonal embedding of a classical state, with consistency checks")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--b", default=None, help="second classical state; compares both orders")
    s.set_defaults(run=cmd_embed)

    s = sub.add_parser("derivative", help="informatic derivative of a named map at a point")
    s.add_argument("--f", choices=sorted(NAMED_FUNCTIONS), required=True)
    s.add_argument("--p", type=float, required=True)
    s.set_defaults(run=cmd_derivative)

    s = sub.add_parser("fixpoint", help="iterate the interval extension of a named map")
    s.add_argument("--f", choices=sorted(FIXPOINT_FUNCTIONS), required=True)
    s.add_argument("--lo", type=float, required=True)
    s.add_argument("--hi", type=float, required=True)
    s.add_argument("--steps", type=int, default=60)
    s.add_argument("--trace", action="store_true", help="include every iterate")
    s.set_defaults(run=cmd_fixpoint)

    s = sub.add_parser("plot-updown", help="SVG of ↑x and ↓x for x in Δ³")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--grid", type=_grid, default=60, help=f"lattice resolution, at most {MAX_GRID}")
    s.add_argument("--out", default=None, help="output file (default stdout)")
    s.set_defaults(run=cmd_plot_updown)

    s = sub.add_parser("check", help="run the seeded property suites, JSON report")
    s.add_argument("--seed", type=_int_auto, default=suites.DEFAULT_SEED)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--only", default=None, help="run properties whose name starts with this prefix")
    s.set_defaults(run=cmd_check)
    return p


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse reports bad flags with status 2
        return int(e.code or 0)
    try:
        return args.run(args, out)
    except InputError as e:
        _emit(err, json.dumps({"error": e.code, "location": e.location, "message": str(e)}))
        return 2
    except PartialityError as e:
        _emit(err, json.dumps({"error": e.code, "location": "", "message": str(e)}))
        return 2


def main() -> None:
    sys.exit(run_command())
