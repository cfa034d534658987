"""Operator command line: store lifecycle, entry work, lookups, interchange, bench, serve.

Exit codes: 0 success, 1 usage, 2 validation/lookup failure, 3 I/O or corruption.
Every subcommand is a thin wrapper over the core modules; there is no
CLI-only behavior.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from . import lookup
from .features import FeatureError, parse_bundle
from .interchange import InterchangeError
from .merge import MERGE_MODES, MergePolicy, merge_stores
from .model import DIRECTIONS, LexicalEntry
from .morphology import GenerationError, SpecFormatError, UnknownClassError, generate_paradigm
from .store import (
    BadVersionError,
    CorruptStoreError,
    DirectionError,
    DuplicateDomainError,
    DuplicateLinkError,
    IntegrityError,
    LanguageMismatchError,
    LexiconStore,
    LinksExistError,
    NotFoundError,
    PermutationError,
    StoreError,
    StoreNotEmptyError,
    ValidationFailedError,
    import_store,
    open_store,
)

USAGE_EXIT = 1
VALIDATION_EXIT = 2
IO_EXIT = 3

_VALIDATION_ERRORS = (
    ValidationFailedError, NotFoundError, DuplicateLinkError, DuplicateDomainError,
    LinksExistError, PermutationError, DirectionError, LanguageMismatchError,
    UnknownClassError, GenerationError, FeatureError, InterchangeError,
    IntegrityError, StoreNotEmptyError, SpecFormatError, ValueError,
)
_IO_ERRORS = (CorruptStoreError, BadVersionError, StoreError, OSError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; usage errors are 1 here
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _build_parser() -> _Parser:
    parser = _Parser(prog="lexibase", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="create an empty store file")
    p.add_argument("store", help="path of the new store file")

    p = sub.add_parser("add", help="add a lexical entry (and index its paradigm)")
    p.add_argument("--store", required=True)
    p.add_argument("--lang", required=True, choices=["EN", "LT"])
    p.add_argument("--pos", required=True)
    p.add_argument("--lemma", required=True)
    p.add_argument("--stems", help="comma-separated principal-part stems (default: the lemma)")
    p.add_argument("--class", dest="inflection_class", help="inflection class id")
    p.add_argument("--gender", choices=["M", "F", "N"])
    p.add_argument("--regular", choices=["yes", "no"], help="verb regularity flag")
    p.add_argument("--defective", choices=["none", "singular-only", "plural-only"],
                   default="none")
    p.add_argument("--domains", help="comma-separated domain names (created if missing)")
    p.add_argument("--override", action="append", default=[], metavar="BUNDLE=SURFACE",
                   help="irregular form, e.g. 'tense=PAST=went' (repeatable)")
    p.add_argument("--required-cases", help="comma-separated cases (prepositions)")

    p = sub.add_parser("gen", help="print the generated paradigm of an entry")
    p.add_argument("--store", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--id")
    g.add_argument("--lemma")
    p.add_argument("--lang", choices=["EN", "LT"], help="narrow --lemma matches")

    p = sub.add_parser("translate", help="ranked translation candidates for a word")
    p.add_argument("--store", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--dir", required=True, choices=list(DIRECTIONS))
    p.add_argument("--domain", help="domain name to prioritize")
    p.add_argument("--limit", type=int, default=20)

    p = sub.add_parser("analyze", help="morphological readings of a surface form")
    p.add_argument("--store", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--lang", required=True, choices=["EN", "LT"])

    p = sub.add_parser("search", help="prefix search over lemmas")
    p.add_argument("--store", required=True)
    p.add_argument("--prefix", default="")
    p.add_argument("--lang", required=True, choices=["EN", "LT"])
    p.add_argument("--limit", type=int, default=50)

    p = sub.add_parser("export", help="write the interchange file")
    p.add_argument("--store", required=True)
    p.add_argument("--out", required=True, help="output path, or - for stdout")

    p = sub.add_parser("import", help="build a fresh store from an interchange file")
    p.add_argument("--store", required=True, help="path of the store to create")
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("merge", help="merge two stores into a new one")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--policy", choices=list(MERGE_MODES), default="union")
    p.add_argument("--out", required=True, help="path of the merged store to create")
    p.add_argument("--report", help="write the conflict report JSON here (default stdout)")

    p = sub.add_parser("bench", help="latency benchmark (synthesizes a store if needed)")
    p.add_argument("--store", help="existing store to benchmark")
    p.add_argument("--forms", type=int, help="indexed-form count to synthesize")
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--seed", type=int, default=bench_mod.DEFAULT_SEED)
    p.add_argument("--work-dir", help="directory for the synthesized store")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--store", required=True)
    p.add_argument("--bind", default="127.0.0.1:8000")
    p.add_argument("--workbench", help="directory of built workbench assets to mount at /app")

    p = sub.add_parser("stats", help="entry/link/domain/form counts")
    p.add_argument("--store", required=True)
    return parser


def _parse_override(raw: str):
    # BUNDLE=SURFACE where BUNDLE itself contains '='; split at the last '='
    bundle_text, sep, surface = raw.rpartition("=")
    if not sep or not bundle_text:
        raise ValueError(f"--override needs 'key=value,...=SURFACE', got {raw!r}")
    return parse_bundle(bundle_text), surface


def _cmd_init(args) -> int:
    if Path(args.store).exists():
        print(f"error: {args.store} already exists", file=sys.stderr)
        return VALIDATION_EXIT
    store = open_store(args.store, create_if_missing=True)
    store.close()
    print(f"created empty store at {args.store}")
    return 0


def _cmd_add(args) -> int:
    store = open_store(args.store)
    domain_ids = []
    if args.domains:
        state = store.snapshot()
        for name in [d.strip() for d in args.domains.split(",") if d.strip()]:
            existing = state.domain_by_name(name)
            if existing is None:
                existing = store.add_domain(name)
                state = store.snapshot()
            domain_ids.append(existing.id)
    overrides = dict(_parse_override(raw) for raw in args.override)
    stems = tuple(
        s.strip() for s in (args.stems or args.lemma).split(",") if s.strip()
    )
    entry = LexicalEntry(
        id="",
        language=args.lang,
        pos=args.pos,
        lemma=args.lemma,
        stems=stems,
        inflection_class=args.inflection_class,
        gender=args.gender,
        regular=None if args.regular is None else args.regular == "yes",
        defectiveness=args.defective,
        domain_tags=frozenset(domain_ids),
        overrides=overrides,
        required_cases=tuple(
            c.strip() for c in (args.required_cases or "").split(",") if c.strip()
        ),
    )
    entry_id = store.upsert_entry(entry)
    forms = generate_paradigm(store.get_entry(entry_id), store.registry)
    print(f"added {entry_id}: {args.lemma} ({args.lang} {args.pos}), "
          f"{len(forms)} forms indexed")
    return 0


def _print_paradigm(entry: LexicalEntry, store: LexiconStore) -> None:
    print(f"# {entry.id}  {entry.lemma}  ({entry.language} {entry.pos}"
          f"{' ' + entry.inflection_class if entry.inflection_class else ''})")
    for form in generate_paradigm(entry, store.registry):
        marker = "*" if form.origin == "OVERRIDE" else " "
        print(f"{form.features.canonical() or '(base)'}\t{form.surface}\t{marker}")


def _cmd_gen(args) -> int:
    store = open_store(args.store)
    if args.id:
        entry = store.get_entry(args.id)
        if entry is None:
            print(f"error: no entry {args.id!r}", file=sys.stderr)
            return VALIDATION_EXIT
        _print_paradigm(entry, store)
        return 0
    state = store.snapshot()
    matches = [
        e for e in state.entries.values()
        if e.lemma == args.lemma and (args.lang is None or e.language == args.lang)
    ]
    if not matches:
        print(f"error: no entry with lemma {args.lemma!r}", file=sys.stderr)
        return VALIDATION_EXIT
    for entry in matches:
        _print_paradigm(entry, store)
    return 0


def _cmd_translate(args) -> int:
    store = open_store(args.store)
    state = store.snapshot()
    domain_id = None
    if args.domain:
        domain = state.domain_by_name(args.domain) or state.domain(args.domain)
        if domain is None:
            print(f"error: no domain {args.domain!r}", file=sys.stderr)
            return VALIDATION_EXIT
        domain_id = domain.id
    candidates = lookup.translate(state, args.q, args.dir, domain=domain_id,
                                  limit=args.limit)
    if not candidates:
        print("(no translations)")
        return 0
    for c in candidates:
        domain_note = ""
        if c.domain:
            tag = state.domain(c.domain)
            domain_note = f"  [{tag.name if tag else c.domain}]"
        matched = "" if c.matched_as == "lemma" else (
            f"  (matched {c.matched_features.canonical()})" if c.matched_features else ""
        )
        print(f"{c.rank}. {c.target_lemma}{domain_note}{matched}")
    return 0


def _cmd_analyze(args) -> int:
    store = open_store(args.store)
    state = store.snapshot()
    hits = lookup.analyze(state, args.q, args.lang)
    if not hits:
        print("(no readings)")
        return 0
    for entry_id, bundle in hits:
        print(f"{state.entries[entry_id].lemma}\t{bundle.canonical() or '(base)'}\t{entry_id}")
    return 0


def _cmd_search(args) -> int:
    store = open_store(args.store)
    for lemma in lookup.prefix_search(store.snapshot(), args.prefix, args.lang, args.limit):
        print(lemma)
    return 0


def _cmd_export(args) -> int:
    store = open_store(args.store)
    if args.out == "-":
        count = store.export(sys.stdout)
    else:
        count = store.export(args.out)
        print(f"wrote {count} records to {args.out}")
    return 0


def _cmd_import(args) -> int:
    store = import_store(args.infile, args.store)
    stats = store.snapshot().stats()
    print(f"imported {stats['entries']} entries, {stats['links']} links, "
          f"{stats['domains']} domains into {args.store}")
    return 0


def _cmd_merge(args) -> int:
    left = open_store(args.left)
    right = open_store(args.right)
    merged, report = merge_stores(left, right, MergePolicy(args.policy), args.out)
    stats = merged.snapshot().stats()
    report_json = json.dumps(report.to_payload(), ensure_ascii=False, indent=2)
    if args.report:
        Path(args.report).write_text(report_json + "\n", encoding="utf-8")
    else:
        print(report_json)
    print(f"merged into {args.out}: {stats['entries']} entries, "
          f"{stats['links']} links, {len(report.conflicts)} conflicts", file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    if args.store is None and args.forms is None:
        print("error: pass --store or --forms", file=sys.stderr)
        return USAGE_EXIT
    report = bench_mod.run_bench(
        store_path=args.store, form_count=args.forms, query_count=args.queries,
        seed=args.seed, work_dir=args.work_dir,
    )
    print(json.dumps(report.to_payload(), ensure_ascii=False, indent=2))
    print(
        f"open {report.open_ms:.1f} ms; cold lookup {report.cold_ms:.3f} ms; "
        f"warm median {report.warm_median_ms:.3f} ms over {report.queries} queries",
        file=sys.stderr,
    )
    return 0


def _cmd_serve(args) -> int:
    from .api import serve

    serve(args.store, bind=args.bind, workbench_dir=args.workbench)
    return 0


def _cmd_stats(args) -> int:
    store = open_store(args.store)
    print(json.dumps(store.snapshot().stats(), ensure_ascii=False, indent=2))
    return 0


_COMMANDS = {
    "init": _cmd_init,
    "add": _cmd_add,
    "gen": _cmd_gen,
    "translate": _cmd_translate,
    "analyze": _cmd_analyze,
    "search": _cmd_search,
    "export": _cmd_export,
    "import": _cmd_import,
    "merge": _cmd_merge,
    "bench": _cmd_bench,
    "serve": _cmd_serve,
    "stats": _cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_EXIT
    try:
        return _COMMANDS[args.command](args)
    except _VALIDATION_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return VALIDATION_EXIT
    except _IO_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return IO_EXIT


if __name__ == "__main__":
    sys.exit(main())
