"""Command line front end.

Every subcommand writes a UTF-8 JSON report that echoes the request.
Exit status: 0 on success (a "not h-Sidon" verdict is a success), 1 on
domain errors, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from itertools import count, islice
from typing import Any, List, Optional

from . import __version__
from .errors import InputError, SidonError
from .experiments import SamplerSpec, exact_grid_density, sidon_density
from .field_abs import PADIC, AbsoluteValue, format_rational, parse_rational
from .perturb import PerturbationPlan, perturb_sequence, perturb_stream
from .setops import dilate, h_fold_sumset, r_s_sum_difference, shifted_sumset, translate
from .sidon_core import validate_configuration, verify_bruteforce, verify_hyperplane
from .weights import enumerate_weight_vectors


def _dump(doc: Any) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sidonset-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json_input(source: Optional[str]) -> Any:
    """Inline JSON, ``-`` for stdin, or a path to a JSON file."""
    if source is None:
        return None
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("[", "{")):
        text = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except FileNotFoundError:
            raise InputError(f"no such file: {source}") from None
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source if len(source) < 60 else 'input'}: {exc.msg}") from None


def _rationals(values: Any, what: str) -> List[Fraction]:
    if not isinstance(values, list):
        raise InputError(f"{what} must be a JSON array of rational strings")
    return [parse_rational(v) for v in values]


def _abs_from_args(args) -> AbsoluteValue:
    if args.abs == PADIC:
        if args.p is None:
            raise InputError("--abs p-adic needs --p <prime>")
        return AbsoluteValue.padic(args.p)
    if args.p is not None:
        raise InputError("--p only applies with --abs p-adic")
    return AbsoluteValue.archimedean()


def cmd_verify(args) -> int:
    raw = load_json_input(args.input)
    config = validate_configuration(_rationals(raw, "input"))
    av = _abs_from_args(args)
    request = {
        "command": "verify",
        "input": config.to_json(),
        "h": args.h,
        "abs": av.to_json(),
        "method": args.method,
    }
    if args.method == "hyperplane":
        verdict = verify_hyperplane(config, args.h)
    else:
        verdict = verify_bruteforce(config, args.h)
    report = {"request": request, **verdict.to_json()}
    if args.method == "both":
        other = verify_hyperplane(config, args.h)
        report["methods_agree"] = other.is_sidon == verdict.is_sidon
    _write(_dump(report), args.output)
    return 0


def _eps_plan(args, file_obj: dict, h: int, av: AbsoluteValue, n: Optional[int]) -> tuple:
    """Resolve the epsilon schedule; returns (plan, echo)."""
    if args.eps is not None and args.eps_file is not None:
        raise InputError("give at most one of --eps and --eps-file")
    if args.eps_file is not None:
        eps = _rationals(load_json_input(args.eps_file), "--eps-file")
        return PerturbationPlan(eps, h, av), [format_rational(e) for e in eps]
    if args.eps is not None:
        if args.eps.strip() == "harmonic":
            return PerturbationPlan.harmonic(h, av), "harmonic"
        e = parse_rational(args.eps)
        if n is None:
            return PerturbationPlan.constant(e, h, av), format_rational(e)
        return PerturbationPlan([e] * n, h, av), format_rational(e)
    if "epsilons" in file_obj:
        eps = _rationals(file_obj["epsilons"], "epsilons")
        return PerturbationPlan(eps, h, av), [format_rational(e) for e in eps]
    raise InputError("no epsilons: pass --eps, --eps-file, or an 'epsilons' field")


def cmd_perturb(args) -> int:
    raw = load_json_input(args.input)
    file_obj: dict = {}
    if isinstance(raw, dict):
        file_obj = raw
        raw = raw.get("alpha")
    alpha = None if raw is None else _rationals(raw, "alpha")
    if alpha is None and not args.stream:
        raise InputError("perturb needs an input sequence (or --stream)")

    h = args.h if args.h is not None else file_obj.get("h")
    if not isinstance(h, int) or isinstance(h, bool) or h < 1:
        raise InputError(f"h must be a positive integer, got {h!r}")
    if args.abs is None and "abs" in file_obj:
        av = AbsoluteValue.from_json(file_obj["abs"])
    else:
        args.abs = args.abs or "archimedean"
        av = _abs_from_args(args)

    if args.stream:
        if args.count is None:
            if alpha is None:
                raise InputError("--stream without input needs --count")
            args.count = len(alpha)
        source = iter(alpha) if alpha is not None else count(0)
        plan, eps_echo = _eps_plan(args, file_obj, h, av, None)
        request = {
            "command": "perturb",
            "input": None if alpha is None else [format_rational(a) for a in alpha],
            "epsilons": eps_echo,
            "h": h,
            "abs": av.to_json(),
            "stream": True,
            "count": args.count,
            "allow_duplicates": args.allow_duplicates,
        }
        lines = [json.dumps({"request": request}, ensure_ascii=False)]
        for step in islice(perturb_stream(source, plan, args.allow_duplicates), args.count):
            lines.append(json.dumps(step.to_json(), ensure_ascii=False))
        _write("\n".join(lines) + "\n", args.output)
        return 0

    plan, eps_echo = _eps_plan(args, file_obj, h, av, len(alpha))
    beta, trace = perturb_sequence(alpha, plan, args.allow_duplicates)
    request = {
        "command": "perturb",
        "input": [format_rational(a) for a in alpha],
        "epsilons": eps_echo,
        "h": h,
        "abs": av.to_json(),
        "allow_duplicates": args.allow_duplicates,
    }
    report = {
        "request": request,
        "beta": [format_rational(b) for b in beta],
        "trace": [t.to_json() for t in trace],
    }
    _write(_dump(report), args.output)
    return 0


def cmd_weights(args) -> int:
    ws = enumerate_weight_vectors(args.k, args.h, args.canonical)
    report = {
        "request": {"command": "weights", "k": args.k, "h": args.h, "canonical": args.canonical},
        "count": len(ws),
        "weights": [w.to_json() for w in ws],
    }
    _write(_dump(report), args.output)
    return 0


def _need(value, flag: str, op: str):
    if value is None:
        raise InputError(f"--op {op} needs {flag}")
    return value


def cmd_sumset(args) -> int:
    A = _rationals(load_json_input(args.input), "input")
    op = args.op
    request: dict = {"command": "sumset", "op": op, "input": [format_rational(a) for a in sorted(set(A))]}
    if op == "translate":
        c = parse_rational(_need(args.c, "--c", op))
        request["c"] = format_rational(c)
        result = translate(A, c)
    elif op == "dilate":
        c = parse_rational(_need(args.c, "--c", op))
        request["c"] = format_rational(c)
        result = dilate(c, A)
    elif op == "hsum":
        h = _need(args.h, "--h", op)
        request["h"] = h
        result = h_fold_sumset(A, h)
    elif op == "rs-diff":
        r, s = _need(args.r, "--r", op), _need(args.s, "--s", op)
        request.update(r=r, s=s)
        result = r_s_sum_difference(A, r, s)
    else:
        b = parse_rational(_need(args.b, "--b", op))
        r, h = _need(args.r, "--r", op), _need(args.h, "--h", op)
        request.update(b=format_rational(b), r=r, h=h)
        result = shifted_sumset(A, b, r, h)
    report = {"request": request, "size": len(result), "result": [format_rational(x) for x in result]}
    _write(_dump(report), args.output)
    return 0


def cmd_density(args) -> int:
    spec = SamplerSpec.parse(args.sampler, args.seed)
    if args.exhaustive:
        if spec.kind != "grid":
            raise InputError("--exhaustive needs a grid sampler")
        rep = exact_grid_density(spec.bound, args.k, args.h)
    else:
        rep = sidon_density(args.k, args.h, args.trials, spec)
    if args.format == "csv":
        _write(rep.CSV_HEADER + "\n" + rep.to_csv_row() + "\n", args.output)
        return 0
    request = {
        "command": "density",
        "k": args.k,
        "h": args.h,
        "trials": args.trials,
        "sampler": str(spec),
        "seed": args.seed,
        "exhaustive": args.exhaustive,
    }
    _write(_dump({"request": request, **rep.to_json()}), args.output)
    return 0


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return n


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return n


def _seed(text: str) -> int:
    n = _nonneg(text)
    if n >= 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits: {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sidonset", description="Exact h-Sidon set toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True, input_required=True):
        if with_input:
            p.add_argument(
                "input",
                nargs=None if input_required else "?",
                help="JSON array of rational strings: a file path, inline JSON, or - for stdin",
            )
        p.add_argument("-o", "--output", help="write the report here instead of stdout")

    def abs_flags(p, default="archimedean"):
        p.add_argument("--abs", choices=["archimedean", PADIC], default=default)
        p.add_argument("--p", type=int, help="prime for --abs p-adic")

    p = sub.add_parser("verify", help="decide whether a set is h-Sidon")
    common(p)
    p.add_argument("--h", type=_positive, required=True)
    p.add_argument("--method", choices=["bruteforce", "hyperplane", "both"], default="bruteforce")
    abs_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("perturb", help="perturb a sequence into an h-Sidon set")
    common(p, input_required=False)
    p.add_argument("--h", type=_positive)
    p.add_argument("--eps", help="constant bound (rational) or 'harmonic' for eps_i = 1/i")
    p.add_argument("--eps-file", help="JSON array of per-index bounds")
    p.add_argument("--stream", action="store_true", help="emit JSON lines one element at a time")
    p.add_argument("--count", type=_positive, help="number of elements to emit with --stream")
    p.add_argument("--allow-duplicates", action="store_true")
    abs_flags(p, default=None)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("weights", help="enumerate weight vectors")
    common(p, with_input=False)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--h", type=_positive, required=True)
    p.add_argument("--canonical", action="store_true")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("sumset", help="set operations")
    common(p)
    p.add_argument("--op", choices=["translate", "dilate", "hsum", "rs-diff", "shifted"], required=True)
    p.add_argument("--c")
    p.add_argument("--b")
    p.add_argument("--h", type=_nonneg)
    p.add_argument("--r", type=_nonneg)
    p.add_argument("--s", type=_nonneg)
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("density", help="fraction of random k-sets that are h-Sidon")
    common(p, with_input=False)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--h", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--sampler", default="rational:2^32", help="grid:<N> or rational:<M>")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--exhaustive", action="store_true", help="visit every k-subset of the grid")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_density)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"sidonset {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except SidonError as exc:
        print(f"sidonset {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
