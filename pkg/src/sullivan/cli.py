"""Command-line front end: ``sullivan <command> FILE [options]``.

Exit codes: 0 success, 2 parse or validation failure, 3 iteration limit,
4 internal consistency failure (a reproduction dump goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .algebra import Element
from .dga import DGA, InvalidDGA, NotACoboundary
from .formality import cohomology_algebra, is_formal
from .groebner import DegreeBoundError
from .model import (
    ConsistencyError,
    InvariantTable,
    IterationLimitExceeded,
    minimal_model,
    verify_minimality,
    verify_quasi_isomorphism,
)
from .presentation import InputDocument, ParseError, parse

COMMANDS = ("validate", "cohomology", "basis", "minimal-model", "cohomology-algebra", "formality")

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def _invariants_json(t: InvariantTable) -> dict:
    return {"v": t.rows()}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _list(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def _need_degree(args) -> int:
    if args.degree is None:
        raise UsageError("%s needs --degree" % args.command)
    if args.degree < 0:
        raise UsageError("--degree must be non-negative")
    return args.degree


def _load(doc: InputDocument, bound: Optional[int]) -> DGA:
    return doc.to_dga(bound).checked()


def cmd_validate(doc: InputDocument, args) -> str:
    a = doc.to_dga()
    report = a.validate()
    if not report.ok:
        raise InvalidDGA(report)
    if args.format == "json":
        return _dump({"valid": True, "generators": [[n, d] for n, d in doc.generators]})
    return "valid\n"


def cmd_basis(doc: InputDocument, args) -> str:
    k = _need_degree(args)
    a = _load(doc, k)
    basis = [str(Element.monomial(a.table, m)) for m in a.basis(k)]
    if args.format == "json":
        return _dump({"degree": k, "dimension": len(basis), "basis": basis})
    return "dimension %d\n%s\n" % (len(basis), _list(basis))


def cmd_cohomology(doc: InputDocument, args) -> str:
    k = _need_degree(args)
    a = _load(doc, k + 1)
    h = a.cohomology(k)
    reps = [str(r) for r in h.representatives]
    if args.format == "json":
        return _dump({"degree": k, "dimension": h.dimension, "representatives": reps})
    return "dimension %d\n%s\n" % (h.dimension, _list(reps))


def _verify(m) -> dict:
    q = verify_quasi_isomorphism(m)
    mn = verify_minimality(m)
    failures = q.failures + mn.failures
    if failures:
        raise ConsistencyError("verification failed:\n  " + "\n  ".join(failures))
    return {"quasi_isomorphism": "ok", "minimality": "ok"}


def cmd_minimal_model(doc: InputDocument, args) -> str:
    i = _need_degree(args)
    a = _load(doc, i + 2)
    m = minimal_model(a, i, args.max_iterations)
    checks = _verify(m) if args.verify else None
    if args.format == "json":
        out = {
            "generators": [{"name": g.name, "degree": g.degree, "kind": g.kind} for g in m.generators],
            "differential": {g.name: str(d) for g, d in zip(m.generators, m.model.generator_differentials)},
            "phi": {g.name: str(p) for g, p in zip(m.generators, m.phi)},
            "invariants": _invariants_json(m.invariants),
        }
        if checks:
            out["verify"] = checks
        return _dump(out)
    lines = [m.render(), "", "invariants: %s" % m.invariants]
    if checks:
        lines += ["quasi-isomorphism: ok", "minimality: ok"]
    return "\n".join(lines) + "\n"


def cmd_cohomology_algebra(doc: InputDocument, args) -> str:
    n = _need_degree(args)
    a = _load(doc, n + 1)
    p = cohomology_algebra(a, n)
    if args.format == "json":
        return _dump({
            "generators": [{"name": nm, "degree": d} for nm, d in zip(p.table.names, p.table.degrees)],
            "relations": [str(r) for r in p.relations],
            "witnesses": {nm: str(w) for nm, w in zip(p.table.names, p.witnesses)},
        })
    lines = ["# cohomology presentation up to degree %d" % n]
    lines += ["# %s <- %s" % (nm, w) for nm, w in zip(p.table.names, p.witnesses)]
    if len(p.table):
        lines.append(p.render())
    return "\n".join(lines) + "\n"


def cmd_formality(doc: InputDocument, args) -> str:
    i = _need_degree(args)
    a = _load(doc, i + 2)
    v = is_formal(a, i, args.max_iterations)
    if args.format == "json":
        mismatch = None
        if v.mismatch:
            mi, mj, va, vh = v.mismatch
            mismatch = {"i": mi, "j": mj, "model": va, "cohomology_model": vh}
        return _dump({
            "verdict": v.outcome.value,
            "formal": {"formal": True, "not-formal": False}.get(v.outcome.value),
            "invariants": _invariants_json(v.model_invariants),
            "cohomology_invariants": _invariants_json(v.cohomology_invariants),
            "mismatch": mismatch,
            "psi_failures": list(v.psi_failures),
            "cohomology_iteration_limit": v.cohomology_limit,
        })
    return v.render() + "\n"


_DISPATCH = {
    "validate": cmd_validate,
    "basis": cmd_basis,
    "cohomology": cmd_cohomology,
    "minimal-model": cmd_minimal_model,
    "cohomology-algebra": cmd_cohomology_algebra,
    "formality": cmd_formality,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sullivan", description="Minimal models and formality of CDGAs over Q.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="presentation file, or - for stdin")
    p.add_argument("--degree", type=int)
    p.add_argument("--max-iterations", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--verify", action="store_true")
    return p


def run(command: str, document: InputDocument, degree: Optional[int] = None, max_iterations: int = 3,
        format: str = "text", verify: bool = False) -> tuple:
    """Run one command on a parsed document; returns ``(exit_code, stdout, stderr)``."""
    args = argparse.Namespace(command=command, degree=degree, max_iterations=max_iterations,
                              format=format, verify=verify)
    try:
        return EXIT_OK, _DISPATCH[command](document, args), ""
    except (UsageError, InvalidDGA) as exc:
        return EXIT_INPUT, "", "error: %s\n" % exc
    except IterationLimitExceeded as exc:
        return EXIT_LIMIT, "", "error: %s\n" % exc
    except (ConsistencyError, NotACoboundary, DegreeBoundError) as exc:
        dump = ["internal consistency failure: %s" % exc,
                "reproduce with: sullivan %s FILE%s --max-iterations %d%s" % (
                    command, "" if degree is None else " --degree %d" % degree, max_iterations,
                    " --verify" if verify else ""),
                "where FILE contains:", document.render()]
        return EXIT_INTERNAL, "", "\n".join(dump)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        doc = parse(text)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except ParseError as exc:
        print("error: %s: %s" % (args.file, exc), file=sys.stderr)
        return EXIT_INPUT
    code, out, err = run(args.command, doc, args.degree, args.max_iterations, args.format, args.verify)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
