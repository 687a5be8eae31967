"""Command-line entry point.

Subcommands: `gen` writes a complex in the JSON interchange format,
`homology` prints exact homology of a model's nerve, `verify` runs the
proposition suite, `export` renders models as JSON or DOT.  Exit codes:
0 pass, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .categories import build_break_category, symmetric_order_quotient
from .chains import chain_poset
from .complexes import build_final_complex, build_final_covering, build_ordered_cover, default_labels
from .errors import ContractError, ResourceCapError, StructuralError, UsageError
from .homology import homology, homology_to_json
from .posets import Poset
from .categories import nerve_complex, regular_orders_poset, semi_regular_orders_poset
from .suite import REGISTRY, exit_code, run_suite

COMPLEX_MODELS = ("z", "z-tilde", "yA")
POSET_MODELS = ("chain-poset", "r-poset", "rplus-poset")
CATEGORY_MODELS = ("en", "quotient")


def _build_complex(model: str, n: int):
    if model == "z":
        return build_final_complex(n)
    if model == "z-tilde":
        return build_final_covering(n)[0]
    if model == "yA":
        return build_ordered_cover(n).complex
    raise UsageError(f"model {model!r} is not a complex model")


def _build_poset(model: str, n: int) -> Poset:
    if model == "chain-poset":
        return chain_poset(build_ordered_cover(n).complex)[0]
    if model == "r-poset":
        return regular_orders_poset(default_labels(n), "sqsubseteq")[0]
    if model == "rplus-poset":
        return semi_regular_orders_poset(default_labels(n))[0]
    raise UsageError(f"model {model!r} is not a poset model")


def _build_category(model: str, n: int):
    if model == "en":
        return build_break_category(n)
    if model == "quotient":
        return symmetric_order_quotient(default_labels(n), "regular").quotient
    raise UsageError(f"model {model!r} is not a category model")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _cmd_gen(args) -> int:
    K = _build_complex(args.model, args.n)
    _emit(K.to_json(), args.out)
    return 0


def _cmd_homology(args) -> int:
    model = args.model
    if model in CATEGORY_MODELS:
        complex_ = nerve_complex(_build_category(model, args.n))
    elif model in POSET_MODELS:
        complex_ = _build_poset(model, args.n).order_complex()
    else:
        raise UsageError(f"homology supports {POSET_MODELS + CATEGORY_MODELS}, not {model!r}")
    _emit(json.dumps(homology_to_json(homology(complex_)), separators=(",", ":")), args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.suite == "all":
        selection = None
    else:
        selection = [s.strip() for s in args.suite.split(",") if s.strip()]
    params = {}
    if args.target:
        params["target"] = args.target
    reports = run_suite(selection, n_max=args.n_max, jobs=args.jobs, params=params)
    payload = json.dumps([r.to_json_dict() for r in reports], indent=2)
    _emit(payload, args.out)
    return exit_code(reports)


def _cmd_export(args) -> int:
    model, n, fmt = args.model, args.n, args.format
    if model in COMPLEX_MODELS:
        K = _build_complex(model, n)
        text = K.to_json() if fmt == "json" else K.to_dot(name=model.replace("-", "_"))
    elif model in POSET_MODELS:
        P = _build_poset(model, n)
        text = (
            json.dumps(P.to_json_dict(), separators=(",", ":"))
            if fmt == "json"
            else P.to_dot(name=model.replace("-", "_"))
        )
    elif model in CATEGORY_MODELS:
        C = _build_category(model, n)
        text = (
            json.dumps(C.to_json_dict(), separators=(",", ":"))
            if fmt == "json"
            else C.to_dot(name=model.replace("-", "_"))
        )
    else:
        raise UsageError(f"unknown model {model!r}")
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dicube", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a complex in the JSON interchange format")
    gen.add_argument("model", choices=COMPLEX_MODELS)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--out")
    gen.set_defaults(fn=_cmd_gen)

    hom = sub.add_parser("homology", help="exact homology of a model's nerve")
    hom.add_argument("--model", required=True, choices=POSET_MODELS + CATEGORY_MODELS)
    hom.add_argument("--n", type=int, required=True)
    hom.add_argument("--out")
    hom.set_defaults(fn=_cmd_homology)

    ver = sub.add_parser("verify", help="run the proposition suite")
    ver.add_argument("--suite", default="all", help="'all' or comma-separated ids: " + ", ".join(REGISTRY))
    ver.add_argument("--n-max", type=int, default=None, dest="n_max")
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--target", default=None, help="override for the non-self-linked check")
    ver.add_argument("--out")
    ver.set_defaults(fn=_cmd_verify)

    exp = sub.add_parser("export", help="render a model as JSON or DOT")
    exp.add_argument("--model", required=True, choices=COMPLEX_MODELS + POSET_MODELS + CATEGORY_MODELS)
    exp.add_argument("--n", type=int, required=True)
    exp.add_argument("--format", required=True, choices=("json", "dot"))
    exp.add_argument("--out")
    exp.set_defaults(fn=_cmd_export)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ContractError, StructuralError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
