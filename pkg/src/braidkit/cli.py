"""
Command-line surface. Every command prints one JSON report (or a plain-text
rendering with --text) of the shape

    {"command": ..., "inputs": ..., "outputs": ..., "checks": [...],
     "wall_time_s": ..., "version": ..., "choices": {...}}

Exit codes: 0 success, 1 a check or verification failed, 2 usage error.
The coset cap can be set with the BRAIDKIT_COSET_CAP environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, acceptance, braids, kernels, rp2, stallings
from .catalog import UnknownPresentation, builtin, catalog_keys
from .presentations import CosetTable, DidNotClose, abelianization, todd_coxeter
from .words import (Alphabet, WordSyntaxError, cyclic_kernel_basis, format_word,
                    parse_word)


class UsageError(Exception):
    pass


def _coset_cap(args) -> int:
    if getattr(args, "cap", None):
        return args.cap
    return int(os.environ.get("BRAIDKIT_COSET_CAP", 10**6))


def _load_presentation(args):
    name = args.presentation
    if os.path.exists(name):
        from .presentations import parse_presentation

        with open(name) as fh:
            return parse_presentation(fh.read()), name
    try:
        return builtin(name, args.n), name if args.n is None else f"{name} {args.n}"
    except UnknownPresentation:
        raise UsageError(
            f"unknown presentation {name!r}; known keys: {', '.join(catalog_keys())}"
        ) from None


def _report(command: str, inputs: dict, outputs: dict, checks: list[dict], t0: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "checks": checks,
        "wall_time_s": round(time.perf_counter() - t0, 3),
        "version": __version__,
        "choices": {"hopf_factor_order": braids.HOPF_FACTOR_ORDER},
    }


def _emit(report: dict, text: bool) -> None:
    if text:
        print(f"# {report['command']}  ({report['wall_time_s']}s)")
        for key, value in report["outputs"].items():
            print(f"{key}: {value}")
        for check in report["checks"]:
            mark = "PASS" if check["passed"] else "FAIL"
            print(f"[{mark}] {check['id']}")
    else:
        print(json.dumps(report, indent=2, default=str))


def _exit_code(report: dict) -> int:
    return 0 if all(c["passed"] for c in report["checks"]) else 1


# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    results = acceptance.run(only=args.only, seed=args.seed)
    if args.only and not results:
        raise UsageError(
            f"no checks match {args.only!r}; ids: {', '.join(acceptance.check_ids())}"
        )
    checks = [
        {"id": r["id"], "passed": r["passed"], "seconds": r["seconds"]} for r in results
    ]
    outputs = {r["id"]: {k: v for k, v in r.items() if k not in ("id",)} for r in results}
    report = _report("verify", {"only": args.only, "seed": args.seed}, outputs, checks, t0)
    _emit(report, args.text)
    return _exit_code(report)


def cmd_order(args) -> int:
    t0 = time.perf_counter()
    pres, shown = _load_presentation(args)
    cap = _coset_cap(args)
    table = todd_coxeter(pres, limit=cap)
    if isinstance(table, DidNotClose):
        outputs = {"name": shown, "order": None, "closed": False, "cap": cap}
    else:
        outputs = {"name": shown, "order": table.count, "closed": True}
        if args.command == "profile" or table.count <= 4096:
            outputs["profile"] = table.order_profile()
        outputs["abelianization"] = list(abelianization(pres))
    report = _report(args.command, {"presentation": shown, "cap": cap}, outputs, [], t0)
    _emit(report, args.text)
    return 0


def cmd_closure(args) -> int:
    t0 = time.perf_counter()
    pres, shown = _load_presentation(args)
    cap = _coset_cap(args)
    table = todd_coxeter(pres, limit=cap)
    if isinstance(table, DidNotClose):
        raise UsageError(f"{shown} did not close within {cap} cosets; closure needs a finite table")
    words = [parse_word(w, pres.generators) for w in args.words]
    closure = table.normal_closure(words)
    quotient = todd_coxeter(pres.with_relators(words), limit=cap)
    outputs = {
        "name": shown,
        "order": table.count,
        "closure_size": len(closure),
        "closure_elements": sorted(str(table.reps[e]) for e in closure),
        "quotient_order": quotient.count if isinstance(quotient, CosetTable) else None,
    }
    report = _report("closure", {"presentation": shown, "words": args.words}, outputs, [], t0)
    _emit(report, args.text)
    return 0


def _parse_group_spec(spec: str) -> tuple[str, int]:
    kind, _, num = spec.partition(":")
    if kind not in ("disk", "rp2") or not num.isdigit():
        raise UsageError(f"bad group spec {spec!r}; use disk:<n>, rp2:2 or rp2:3")
    n = int(num)
    if kind == "rp2" and n not in (2, 3):
        raise UsageError("only rp2:2 and rp2:3 are supported")
    if kind == "disk" and n < 2:
        raise UsageError("disk braids need n >= 2")
    return kind, n


def cmd_brunnian(args) -> int:
    t0 = time.perf_counter()
    kind, n = _parse_group_spec(args.group)
    if kind == "disk":
        braid = braids.parse_braid(args.word, n)
        images = [
            {"word": str(braids.remove_strand(braid, i)),
             "trivial": braids.is_trivial(braids.remove_strand(braid, i))}
            for i in range(1, n + 1)
        ]
        verdict = braids.is_brunnian(braid)
        outputs = {"word": args.word, "brunnian": verdict, "d": images}
    elif n == 3:
        verdict = rp2.is_brunnian3(args.word)
        nf = rp2.normal_form(args.word)
        outputs = {
            "word": args.word,
            "normal_form": {"upart": str(nf.upart), "qpart": str(nf.qpart)},
            "brunnian": verdict,
            "d": [
                {"canonical": str(q), "rho_u": q.p2_representative()}
                for q in rp2.d_images(args.word)
            ],
        }
    else:
        t = rp2.b2_table()
        w = parse_word(args.word, t.generators)
        d1, d2 = rp2.b2_removal_images(w)
        verdict = (d1, d2) == (0, 0)
        outputs = {"word": args.word, "brunnian": verdict, "d": [d1, d2]}
    checks = [{"id": "brunnian", "passed": True}]
    report = _report("brunnian", {"group": args.group, "word": args.word}, outputs, checks, t0)
    _emit(report, args.text)
    return 0


def cmd_basis(args) -> int:
    t0 = time.perf_counter()
    if args.kind == "rp2-brun3":
        basis = rp2.brun3_basis()
        graph = stallings.fold(basis)
        checks = [
            {"id": "all-brunnian", "passed": all(rp2.is_brunnian3(b) for b in basis)},
            {"id": "free-independence", "passed": stallings.rank(graph) == len(basis)},
        ]
        outputs = {"words": [format_word(b) for b in basis], "rank": stallings.rank(graph)}
        inputs: dict = {"kind": args.kind}
    elif args.kind == "kernel":
        if not args.alphabet:
            raise UsageError("kernel basis needs --alphabet")
        alphabet = Alphabet(tuple(args.alphabet.split(",")))
        k = args.k or len(alphabet)
        if not 1 <= k <= len(alphabet):
            raise UsageError(f"--k must be between 1 and {len(alphabet)}")
        kept = tuple(tuple(s for s in alphabet if s != x) for x in alphabet.symbols[:k])
        family = kernels.ProjectionFamily(alphabet, kept)
        basis_elems = kernels.intersection_basis(alphabet, kept, args.ybound)
        sound = all(kernels.in_projection_kernels(e.word, family) for e in basis_elems)
        graph = stallings.fold([e.word for e in basis_elems], alphabet)
        checks = [
            {"id": "soundness", "passed": sound},
            {"id": "free-independence", "passed": stallings.rank(graph) == len(basis_elems)},
        ]
        outputs = {
            "count": len(basis_elems),
            "words": [format_word(e.word) for e in basis_elems],
            "derivations": [e.derivation_json() for e in basis_elems],
        }
        inputs = {"kind": args.kind, "alphabet": args.alphabet, "k": k, "ybound": args.ybound}
    elif args.kind == "cyclic-kernel":
        if not (args.alphabet and args.x and args.q):
            raise UsageError("cyclic-kernel needs --alphabet, --x and --q")
        alphabet = Alphabet(tuple(args.alphabet.split(",")))
        basis = cyclic_kernel_basis(alphabet, args.x, args.q)
        graph = stallings.fold(basis, alphabet)
        checks = [{"id": "free-independence", "passed": stallings.rank(graph) == len(basis)}]
        outputs = {"words": [format_word(b) for b in basis]}
        inputs = {"kind": args.kind, "alphabet": args.alphabet, "x": args.x, "q": args.q}
    else:
        raise UsageError(f"unknown basis kind {args.kind!r}")
    report = _report("basis", inputs, outputs, checks, t0)
    _emit(report, args.text)
    return _exit_code(report)


def cmd_enumerate(args) -> int:
    t0 = time.perf_counter()
    if args.kind != "brunnian-disk":
        raise UsageError("only 'brunnian-disk' enumeration is available")
    gens = braids.brunnian_generators(args.n, args.conj)
    checks = [{"id": "all-brunnian", "passed": all(braids.is_brunnian(b) for b in gens)}]
    outputs = {
        "count": len(gens),
        "words": [str(b) for b in gens],
        "nontrivial": [not braids.is_trivial(b) for b in gens],
    }
    report = _report(
        "enumerate", {"kind": args.kind, "n": args.n, "conj": args.conj}, outputs, checks, t0
    )
    _emit(report, args.text)
    return _exit_code(report)


def cmd_hopf(args) -> int:
    t0 = time.perf_counter()
    braid = braids.parse_braid(args.word, args.strands)
    if not braids.is_brunnian(braid):
        raise UsageError(f"{args.word!r} is not Brunnian on {args.strands} strands")
    result = braids.james_hopf(braid, args.n)
    checks = []
    if args.n > args.strands:
        lower = braids.james_hopf(braid, args.n - 1)
        ok = all(
            braids.equal(braids.band_face(result, i).expand(), lower.expand())
            for i in range(1, args.n + 1)
        )
        checks.append({"id": "face-identity", "passed": ok})
    outputs = {"band_word": str(result), "strands": result.n}
    report = _report(
        "hopf", {"word": args.word, "strands": args.strands, "n": args.n}, outputs, checks, t0
    )
    _emit(report, args.text)
    return _exit_code(report)


def cmd_normal_form(args) -> int:
    t0 = time.perf_counter()
    kind, n = _parse_group_spec(args.group)
    if kind == "disk":
        braid = braids.parse_braid(args.word, n)
        power, factors = braids.normal_form(braid)
        outputs = {
            "infimum": power,
            "canonical_length": len(factors),
            "factors": [list(f) for f in factors],
            "trivial": braids.is_trivial(braid),
        }
    elif n == 3:
        nf = rp2.normal_form(args.word)
        outputs = {"upart": str(nf.upart), "qpart": str(nf.qpart)}
    else:
        t = rp2.b2_table()
        w = parse_word(args.word, t.generators)
        e = t.evaluate(w)
        outputs = {"element": e, "representative": str(t.reps[e])}
    report = _report("normal-form", {"group": args.group, "word": args.word}, outputs, [], t0)
    _emit(report, args.text)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidkit", description="surface braid groups and Brunnian braids"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="plain text instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    def add_parser(name: str, help_text: str):
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add_parser("verify", "run the acceptance suite")
    p.add_argument("--only", help="run only checks whose id contains this string")
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    p.set_defaults(fn=cmd_verify)

    for name, help_text in (("order", "group order"), ("profile", "element order profile")):
        p = add_parser(name, help_text)
        p.add_argument("presentation", help="catalog key or presentation file")
        p.add_argument("n", nargs="?", type=int, default=None)
        p.add_argument("--cap", type=int, default=None)
        p.set_defaults(fn=cmd_order)

    p = add_parser("closure", "normal closure inside a finite group")
    p.add_argument("presentation")
    p.add_argument("words", nargs="+")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=cmd_closure)

    p = add_parser("brunnian", "Brunnian verdict with removal evidence")
    p.add_argument("group", help="disk:<n>, rp2:2 or rp2:3")
    p.add_argument("word")
    p.set_defaults(fn=cmd_brunnian)

    p = add_parser("basis", "free bases: rp2-brun3, kernel, cyclic-kernel")
    p.add_argument("kind")
    p.add_argument("--alphabet", help="comma-separated generators")
    p.add_argument("--k", type=int, default=None, help="number of projections")
    p.add_argument("--ybound", type=int, default=3)
    p.add_argument("--x", help="cyclic generator")
    p.add_argument("--q", type=int, default=None, help="cyclic order")
    p.set_defaults(fn=cmd_basis)

    p = add_parser("enumerate", "bounded Brunnian generating sets")
    p.add_argument("kind")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--conj", type=int, default=0, help="conjugator length bound")
    p.set_defaults(fn=cmd_enumerate)

    p = add_parser("hopf", "James-Hopf coface product of a Brunnian braid")
    p.add_argument("word")
    p.add_argument("--strands", type=int, required=True, help="strand count of the input")
    p.add_argument("--n", type=int, required=True, help="target strand count")
    p.set_defaults(fn=cmd_hopf)

    p = add_parser("normal-form", "canonical forms")
    p.add_argument("group", help="disk:<n>, rp2:2 or rp2:3")
    p.add_argument("word")
    p.set_defaults(fn=cmd_normal_form)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WordSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
