"""Input files, commands, and serialized reports.

The line-oriented input format (extension ``.qa``)::

    field Q            # or: field 7 (prime field)
    [vertices] f x y e
    [arrows] b2: f -> x ; b3: x -> y ; b4: y -> e
    [relations] 1 b4.b3 ; 1 b3.b2
    [bound] 3
    [new_arrows] a: e -> f

'#' starts a comment.  All five bracketed sections must appear; any may be
empty, and content may continue on the lines after a header.  Entries
within a section are separated by ';'.  A relation is '+'-separated terms
"coeff path" where the path is arrow ids joined by '.' written
target-to-source and the coefficient is an integer or a rational p/q.
An empty [bound] asks for the smallest workable nilpotency bound.

Commands: ``qhh analyze`` reports the dimension bookkeeping and the jump
formula for one instance; ``qhh verify`` recomputes every identity on one
instance or on a seeded random batch.  Exit codes: 0 all checks pass,
1 an identity failed, 2 bad input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Relation, BoundQuiverPresentation, build_algebra
from .extension import (build_extended_algebra, enumerate_extended,
                        enumerate_relative_paths, expected_dimension)
from .formula import SamplerExhaustedError, delta_formula, random_instance
from .formula import verify as verify_instance
from .hochschild import h1_cohomology, h1_homology
from .linalg import QQ, PrimeField
from .quiver import Arrow, BudgetExceededError, Quiver

_SECTIONS = ("vertices", "arrows", "relations", "bound", "new_arrows")
_DEFAULT_MAX_DIM = 64
# path enumeration cap for bound search and the rebuild cross-check
_PATH_BUDGET = 100_000


class ParseError(ValueError):
    """Input diagnostic carrying a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class CapExceededError(RuntimeError):
    """An instance outgrew the configured dimension cap."""


@dataclass(frozen=True, eq=False)
class InstanceFile:
    """Parsed input: field name, bound quiver data, and the new arrows.

    ``relations`` holds raw term lists (coefficient, arrow-name tuple)
    so the same file can be interpreted over any field.
    """

    field_name: str
    quiver: Quiver
    relations: tuple
    bound: int | None
    new_arrows: tuple

    def key(self):
        return (self.field_name, self.quiver.vertices, self.quiver.arrows,
                self.relations, self.bound, self.new_arrows)

    def __eq__(self, other):
        return isinstance(other, InstanceFile) and self.key() == other.key()

    def resolved_field(self):
        if self.field_name == "Q":
            return QQ
        return PrimeField(int(self.field_name))

    def presentation(self, field=QQ) -> BoundQuiverPresentation:
        rels = tuple(
            Relation([(coeff, self.quiver.path_from_names(names))
                      for coeff, names in spec], field)
            for spec in self.relations)
        return BoundQuiverPresentation(self.quiver, rels, self.bound)


def _is_ident(token: str) -> bool:
    return token.isidentifier()


def _collect_sections(text: str):
    """Split into the field line and per-section content fragments, each
    tagged with its line and starting column."""
    field_spec = None
    chunks: dict[str, list] = {name: [] for name in _SECTIONS}
    seen: set[str] = set()
    current = None
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("["):
            end = stripped.find("]")
            if end < 0:
                raise ParseError("unterminated section header", lineno, indent + 1)
            name = stripped[1:end].strip()
            if name not in _SECTIONS:
                raise ParseError(f"unknown section [{name}]", lineno, indent + 1)
            if name in seen:
                raise ParseError(f"duplicate section [{name}]", lineno, indent + 1)
            seen.add(name)
            current = name
            rest = stripped[end + 1:]
            body = rest.strip()
            if body:
                col = indent + end + 2 + (len(rest) - len(rest.lstrip()))
                chunks[name].append((lineno, col, body))
            continue
        if stripped.split(None, 1)[0] == "field":
            if field_spec is not None:
                raise ParseError("duplicate field line", lineno, indent + 1)
            value = stripped[len("field"):].strip()
            if not value:
                raise ParseError("field needs a value: Q or a prime",
                                 lineno, indent + 1)
            field_spec = (lineno, indent + 1, value)
            current = None
            continue
        if current is None:
            raise ParseError("content before any section header",
                             lineno, indent + 1)
        chunks[current].append((lineno, indent + 1, stripped))
    if field_spec is None:
        raise ParseError("missing field line", last_line + 1, 1)
    missing = [name for name in _SECTIONS if name not in seen]
    if missing:
        raise ParseError(f"missing section [{missing[0]}]", last_line + 1, 1)
    return field_spec, chunks


def _split_entries(chunks):
    """';'-separated entries of one section, with positions."""
    out = []
    for lineno, col, text in chunks:
        offset = 0
        for piece in text.split(";"):
            body = piece.strip()
            if body:
                lead = len(piece) - len(piece.lstrip())
                out.append((lineno, col + offset + lead, body))
            offset += len(piece) + 1
    return out


def _parse_field_spec(field_spec) -> str:
    lineno, col, value = field_spec
    if value == "Q":
        return value
    if value.isdigit():
        try:
            PrimeField(int(value))
            return value
        except ValueError:
            pass
    raise ParseError(f"field must be Q or a prime, got {value!r}", lineno, col)


def _parse_vertices(chunks) -> tuple:
    order = []
    for lineno, col, body in _split_entries(chunks):
        pos = 0
        for token in body.split():
            at = body.index(token, pos)
            pos = at + len(token)
            if not _is_ident(token):
                raise ParseError(f"bad vertex id {token!r}", lineno, col + at)
            if token in order:
                raise ParseError(f"duplicate vertex {token!r}", lineno, col + at)
            order.append(token)
    return tuple(order)


def _parse_arrow(lineno, col, body, vertices, taken, section) -> Arrow:
    head, sep, tail = body.partition(":")
    if not sep:
        raise ParseError(f"expected 'name: source -> target' in [{section}]",
                         lineno, col)
    name = head.strip()
    if not _is_ident(name):
        raise ParseError(f"bad arrow id {name!r}", lineno, col)
    if name in vertices:
        raise ParseError(f"id {name!r} already names a vertex", lineno, col)
    if name in taken:
        raise ParseError(f"duplicate arrow {name!r}", lineno, col)
    ends = tail.split("->")
    if len(ends) != 2:
        raise ParseError(f"expected 'source -> target' after {name!r}",
                         lineno, col)
    source, target = ends[0].strip(), ends[1].strip()
    for v in (source, target):
        if not _is_ident(v):
            raise ParseError(f"bad vertex id {v!r} in arrow {name!r}",
                             lineno, col)
        if v not in vertices:
            raise ParseError(f"unknown vertex {v!r} in arrow {name!r}",
                             lineno, col)
    return Arrow(name, source, target)


def _parse_relations(chunks, arrows_by_name) -> tuple:
    specs = []
    for lineno, col, body in _split_entries(chunks):
        terms = []
        offset = 0
        for piece in body.split("+"):
            term = piece.strip()
            term_col = col + offset + (len(piece) - len(piece.lstrip()))
            offset += len(piece) + 1
            if not term:
                raise ParseError("empty term in relation", lineno, term_col)
            parts = term.split(None, 1)
            if len(parts) != 2:
                raise ParseError(f"relation term {term!r} needs 'coeff path'",
                                 lineno, term_col)
            coeff_text, path_text = parts[0], parts[1].strip()
            try:
                coeff = Fraction(coeff_text)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad coefficient {coeff_text!r}",
                                 lineno, term_col) from None
            names = tuple(n.strip() for n in path_text.split("."))
            for n in names:
                if not n:
                    raise ParseError(f"empty arrow id in path {path_text!r}",
                                     lineno, term_col)
                if n not in arrows_by_name:
                    raise ParseError(f"unknown arrow {n!r} in relation",
                                     lineno, term_col)
            for left, right in zip(names, names[1:]):
                if arrows_by_name[left].source != arrows_by_name[right].target:
                    raise ParseError(
                        f"arrows {right!r} and {left!r} do not compose "
                        f"in path {path_text!r}", lineno, term_col)
            terms.append((coeff, names))
        specs.append(tuple(terms))
    return tuple(specs)


def _parse_bound(chunks) -> int | None:
    entries = _split_entries(chunks)
    if not entries:
        return None
    if len(entries) > 1:
        lineno, col, _ = entries[1]
        raise ParseError("more than one value in [bound]", lineno, col)
    lineno, col, body = entries[0]
    if not body.isdigit():
        raise ParseError(f"bound must be an integer, got {body!r}", lineno, col)
    value = int(body)
    if value < 2:
        raise ParseError(f"bound must be at least 2, got {value}", lineno, col)
    return value


def parse(text: str) -> InstanceFile:
    """Parse the ``.qa`` format; diagnostics carry line and column."""
    field_spec, chunks = _collect_sections(text)
    field_name = _parse_field_spec(field_spec)
    vertices = _parse_vertices(chunks["vertices"])
    arrows = []
    by_name: dict[str, Arrow] = {}
    for lineno, col, body in _split_entries(chunks["arrows"]):
        a = _parse_arrow(lineno, col, body, vertices, by_name, "arrows")
        arrows.append(a)
        by_name[a.name] = a
    relations = _parse_relations(chunks["relations"], by_name)
    bound = _parse_bound(chunks["bound"])
    new_arrows = []
    for lineno, col, body in _split_entries(chunks["new_arrows"]):
        a = _parse_arrow(lineno, col, body, vertices, by_name, "new_arrows")
        new_arrows.append(a)
        by_name[a.name] = a
    return InstanceFile(field_name, Quiver(vertices, arrows),
                        relations, bound, tuple(new_arrows))


def _arrow_text(a: Arrow) -> str:
    return f"{a.name}: {a.source} -> {a.target}"


def serialize(instance: InstanceFile) -> str:
    """Canonical text for an instance; parse(serialize(x)) == x."""
    def section(name, content):
        return f"[{name}] {content}".rstrip()

    def relation_text(spec):
        return " + ".join(f"{coeff} {'.'.join(names)}" for coeff, names in spec)

    lines = [
        f"field {instance.field_name}",
        section("vertices", " ".join(instance.quiver.vertices)),
        section("arrows", " ; ".join(_arrow_text(a)
                                     for a in instance.quiver.arrows)),
        section("relations", " ; ".join(relation_text(s)
                                        for s in instance.relations)),
        section("bound", "" if instance.bound is None else str(instance.bound)),
        section("new_arrows", " ; ".join(_arrow_text(a)
                                         for a in instance.new_arrows)),
    ]
    return "\n".join(lines) + "\n"


def _check_cap(dim: int, cap: int, what: str):
    if dim > cap:
        raise CapExceededError(
            f"{what} has dimension {dim}, above the cap {cap}; "
            f"raise --max-dim to proceed")


def _build_instance(instance: InstanceFile, field, max_dim: int):
    """Base algebra, relative paths, and the extension, cap-checked."""
    algebra = build_algebra(instance.presentation(field), field=field,
                            path_budget=_PATH_BUDGET)
    _check_cap(algebra.dim, max_dim, "the base algebra")
    rels = enumerate_relative_paths(algebra, instance.new_arrows)
    _check_cap(expected_dimension(algebra, rels), max_dim,
               "the extended algebra")
    return algebra, rels


def _analyze_document(path: str, instance: InstanceFile, field,
                      max_dim: int, with_oracle: bool) -> dict:
    algebra, rels = _build_instance(instance, field, max_dim)
    extended, _, _ = build_extended_algebra(algebra, instance.new_arrows)
    omegas, pairs = enumerate_extended(algebra, instance.new_arrows)
    breakdown = delta_formula(algebra, instance.new_arrows)
    doc = {
        "instance": path,
        "field": field.name,
        "vertices": len(instance.quiver.vertices),
        "arrows": len(instance.quiver.arrows),
        "relations": len(instance.relations),
        "bound": algebra.bound,
        "dim_base": algebra.dim,
        "center_base": algebra.center_dim(),
        "new_arrows": [_arrow_text(a) for a in instance.new_arrows],
        "relative_paths": [
            {"label": r.label, "source": r.source, "target": r.target,
             "dim": r.dim} for r in rels],
        "extended_paths": [
            {"label": o.label, "dim": o.dim} for o in omegas],
        "pairs": [
            {"arrow": a.name, "path": o.label, "dim": o.dim}
            for a, o in pairs],
        "dim_extended": extended.dim,
        "center_extended": extended.center_dim(),
        "delta": {
            "center_term": breakdown.center_term,
            "extended_sum": breakdown.extended_sum,
            "ext_hom_sum": breakdown.ext_hom_sum,
            "delta": breakdown.delta,
        },
    }
    if with_oracle:
        base_h1 = h1_cohomology(algebra).dim
        ext_h1 = (h1_cohomology(extended).dim
                  if extended is not algebra else base_h1)
        base_hom = h1_homology(algebra)
        ext_hom = (h1_homology(extended)
                   if extended is not algebra else base_hom)
        doc["oracle"] = {
            "hh1_base": base_h1,
            "hh1_extended": ext_h1,
            "hh1_homology_base": base_hom,
            "hh1_homology_extended": ext_hom,
        }
    return doc


def _analyze_text(doc: dict) -> str:
    lines = [
        f"instance: {doc['instance']}",
        f"field: {doc['field']}",
        f"vertices: {doc['vertices']}  arrows: {doc['arrows']}  "
        f"relations: {doc['relations']}  bound: {doc['bound']}",
        f"dim(base): {doc['dim_base']}",
        f"center dim(base): {doc['center_base']}",
    ]
    news = doc["new_arrows"]
    lines.append(f"new arrows ({len(news)}): " + " ; ".join(news)
                 if news else "new arrows (0):")
    lines.append(f"relative paths ({len(doc['relative_paths'])}):")
    for r in doc["relative_paths"]:
        lines.append(f"  {r['label']}: {r['source']} -> {r['target']}"
                     f"  [dim {r['dim']}]")
    lines.append(f"extended relative paths ({len(doc['extended_paths'])}):")
    for o in doc["extended_paths"]:
        lines.append(f"  {o['label']}  [dim {o['dim']}]")
    lines.append(f"arrow/path pairs ({len(doc['pairs'])}):")
    for p in doc["pairs"]:
        lines.append(f"  {p['arrow']} ~ {p['path']}  [dim {p['dim']}]")
    lines.append(f"dim(extended): {doc['dim_extended']}")
    lines.append(f"center dim(extended): {doc['center_extended']}")
    d = doc["delta"]
    lines.append(f"delta: {d['delta']} (center {d['center_term']} + extended "
                 f"{d['extended_sum']} + ext/hom {d['ext_hom_sum']})")
    for key in sorted(doc.get("oracle", ())):
        lines.append(f"{key}: {doc['oracle'][key]}")
    return "\n".join(lines)


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _print_json(doc):
    print(json.dumps(doc, indent=2, sort_keys=True))


def _run_analyze(args) -> int:
    instance = parse(_read_text(args.file))
    if args.field is not None:
        field = PrimeField(args.field)
    else:
        field = instance.resolved_field()
    doc = _analyze_document(args.file, instance, field,
                            args.max_dim, args.oracle)
    if args.json:
        _print_json(doc)
    else:
        print(_analyze_text(doc))
    return 0


def _run_verify(args) -> int:
    if (args.file is None) == (args.random is None):
        print("error: verify needs an input file or --random SEED COUNT",
              file=sys.stderr)
        return 2

    if args.random is not None:
        seed, count = args.random
        if count < 1:
            print(f"error: instance count must be positive, got {count}",
                  file=sys.stderr)
            return 2
        rng = random.Random(seed)
        reports = []
        for _ in range(count):
            algebra, new_arrows = random_instance(rng)
            reports.append(verify_instance(algebra, new_arrows))
        ok = all(r.ok for r in reports)
        if args.json:
            _print_json({"seed": seed, "count": count, "ok": ok,
                         "reports": [r.to_json_dict() for r in reports]})
        else:
            for i, report in enumerate(reports):
                if i:
                    print()
                print(report.to_text())
            passed = sum(1 for r in reports if r.ok)
            print()
            print(f"verified {count} instances: {passed} passed, "
                  f"{count - passed} failed")
        return 0 if ok else 1

    instance = parse(_read_text(args.file))
    field = instance.resolved_field()
    algebra, _ = _build_instance(instance, field, args.max_dim)
    report = verify_instance(algebra, instance.new_arrows,
                             rebuild_budget=_PATH_BUDGET)
    if args.json:
        _print_json(report.to_json_dict())
    else:
        print(report.to_text())
    return 0 if report.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhh",
        description="First Hochschild (co)homology of bound quiver algebras "
                    "and the jump from adding new arrows.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", help="report dimensions, paths, and the jump formula")
    analyze.add_argument("file", help="instance in the .qa format")
    analyze.add_argument("--json", action="store_true",
                         help="emit a machine-readable report")
    analyze.add_argument("--oracle", action="store_true",
                         help="also run the derivation and bar-complex solvers")
    analyze.add_argument("--max-dim", type=int, default=_DEFAULT_MAX_DIM,
                         metavar="N",
                         help="dimension cap for the extended algebra "
                              f"(default {_DEFAULT_MAX_DIM})")
    analyze.add_argument("--field", type=int, default=None, metavar="P",
                         help="override the file's field with GF(P)")

    verify = sub.add_parser(
        "verify", help="recompute every identity and report pass/fail")
    verify.add_argument("file", nargs="?",
                        help="instance in the .qa format")
    verify.add_argument("--random", nargs=2, type=int,
                        metavar=("SEED", "COUNT"),
                        help="verify COUNT random instances from SEED")
    verify.add_argument("--json", action="store_true",
                        help="emit a machine-readable report")
    verify.add_argument("--max-dim", type=int, default=_DEFAULT_MAX_DIM,
                        metavar="N",
                        help="dimension cap for the extended algebra "
                             f"(default {_DEFAULT_MAX_DIM})")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "analyze":
            return _run_analyze(args)
        return _run_verify(args)
    except (CapExceededError, BudgetExceededError,
            SamplerExhaustedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
