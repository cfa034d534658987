import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lexibase import LexicalEntry, shipped_registry
from lexibase.store import LexiconStore


@pytest.fixture(scope="session")
def registry():
    return shipped_registry()


@pytest.fixture
def store(tmp_path, registry):
    s = LexiconStore(tmp_path / "test.lexibase", registry=registry,
                     create_if_missing=True)
    yield s
    s.close()


def make_entry(lang, pos, lemma, stems=None, cls=None, **kw) -> LexicalEntry:
    return LexicalEntry(
        id=kw.pop("id", ""),
        language=lang,
        pos=pos,
        lemma=lemma,
        stems=tuple(stems) if stems else (lemma,),
        inflection_class=cls,
        **kw,
    )


@pytest.fixture
def spring_fixture(store):
    """The polysemy showcase: spring -> pavasaris / šaltinis / spyruoklė."""
    mech = store.add_domain("mechanics")
    ids = {
        "spring": store.upsert_entry(make_entry("EN", "noun", "spring", cls="regular")),
        "pavasaris": store.upsert_entry(
            make_entry("LT", "noun", "pavasaris", ["pavasar"], "d1-is", gender="M")),
        "šaltinis": store.upsert_entry(
            make_entry("LT", "noun", "šaltinis", ["šaltin"], "d1-is", gender="M")),
        "spyruoklė": store.upsert_entry(
            make_entry("LT", "noun", "spyruoklė", ["spyruokl"], "d2-e", gender="F")),
    }
    links = {
        "pavasaris": store.add_link(ids["spring"], ids["pavasaris"]),
        "šaltinis": store.add_link(ids["spring"], ids["šaltinis"]),
        "spyruoklė": store.add_link(ids["spring"], ids["spyruoklė"], domain=mech.id),
    }
    return {"store": store, "ids": ids, "links": links, "domain": mech}


def store_query_surface(store):
    """Id-free canonical view of a store's observable content.

    Two stores are query-equivalent iff these views are equal: same domains
    by name, same entries by identity key and payload, same links by lemma
    pair with ranks and domain name.
    """
    state = store.snapshot()
    domains = {d.id: d.name for d in state.domains.values()}
    entries = {}
    for e in state.entries.values():
        key = (e.language, e.pos, e.lemma, e.inflection_class)
        entries.setdefault(key, []).append((
            e.stems, e.gender, e.regular, e.defectiveness,
            tuple(sorted(domains[t] for t in e.domain_tags)),
            tuple(sorted((b.canonical(), s) for b, s in e.overrides.items())),
            e.required_cases,
        ))
    for group in entries.values():
        group.sort(key=repr)
    links = set()
    for l in state.links.values():
        en, lt = state.entries[l.en_entry], state.entries[l.lt_entry]
        links.add((en.lemma, lt.lemma, l.rank_en_lt, l.rank_lt_en,
                   domains[l.domain] if l.domain else None))
    return {"domains": set(domains.values()),
            "entries": {k: tuple(v) for k, v in entries.items()},
            "links": links}


# ---------------------------------------------------------- acceptance log

_acceptance_reports = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1]
        _acceptance_reports.append((name, report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_reports:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _acceptance_reports:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {name}: {status}")
