import os

import pytest

from lexibase.model import EN_TO_LT
from lexibase.morphology import generate_paradigm
from lexibase.store import (
    CorruptStoreError,
    BadVersionError,
    DuplicateDomainError,
    DuplicateLinkError,
    LanguageMismatchError,
    LexiconStore,
    LinksExistError,
    NotFoundError,
    PermutationError,
    StoreError,
    StoreNotEmptyError,
    ValidationFailedError,
    open_store,
)
from lexibase.textnorm import match_key

from conftest import make_entry


def test_open_fresh_with_create(tmp_path, registry):
    s = LexiconStore(tmp_path / "new.lexibase", registry=registry, create_if_missing=True)
    assert s.snapshot().stats()["entries"] == 0
    assert (tmp_path / "new.lexibase").exists()


def test_open_missing_without_create_fails(tmp_path, registry):
    with pytest.raises(StoreError):
        LexiconStore(tmp_path / "absent.lexibase", registry=registry)


def test_reopen_shows_committed_entries(tmp_path, registry):
    path = tmp_path / "s.lexibase"
    s = LexiconStore(path, registry=registry, create_if_missing=True)
    for lemma, stem in (("vyras", "vyr"), ("vynas", "vyn"), ("miestas", "miest")):
        s.upsert_entry(make_entry("LT", "noun", lemma, (stem,), "d1-as"))
    s.close()
    again = LexiconStore(path, registry=registry)
    assert again.snapshot().stats()["entries"] == 3
    assert {e.lemma for e in again.snapshot().entries.values()} == \
        {"vyras", "vynas", "miestas"}


def test_truncated_file_is_corruption(tmp_path, registry):
    path = tmp_path / "s.lexibase"
    s = LexiconStore(path, registry=registry, create_if_missing=True)
    s.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    s.close()
    raw = path.read_bytes()
    path.write_bytes(raw[: len(raw) - 7])
    with pytest.raises(CorruptStoreError):
        LexiconStore(path, registry=registry)


def test_flipped_byte_is_corruption(tmp_path, registry):
    path = tmp_path / "s.lexibase"
    s = LexiconStore(path, registry=registry, create_if_missing=True)
    s.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    s.close()
    raw = bytearray(path.read_bytes())
    raw[-10] ^= 0xFF
    path.write_bytes(bytes(raw))
    with pytest.raises(CorruptStoreError):
        LexiconStore(path, registry=registry)


def test_newer_version_rejected(tmp_path, registry):
    path = tmp_path / "s.lexibase"
    LexiconStore(path, registry=registry, create_if_missing=True).close()
    text = path.read_text(encoding="utf-8")
    path.write_text(text.replace("lexibase-store v1", "lexibase-store v99", 1),
                    encoding="utf-8")
    with pytest.raises(BadVersionError):
        LexiconStore(path, registry=registry)


def test_upsert_indexes_whole_paradigm(store):
    entry_id = store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    state = store.snapshot()
    postings = [
        (key, posting)
        for key, postings_ in state.form_index["LT"].items()
        for posting in postings_ if posting[0] == entry_id
    ]
    assert len(postings) == 14
    assert state.form_hits("LT", "vyruose")[0][0] == entry_id


def test_update_removes_stale_forms(store):
    entry_id = store.upsert_entry(make_entry("LT", "noun", "laimė", ("laim",), "d2-e"))
    assert store.snapshot().form_hits("LT", match_key("laimių"))
    updated = make_entry("LT", "noun", "laimė", ("laim",), "d2-e",
                         defectiveness="singular-only", id=entry_id)
    store.upsert_entry(updated)
    state = store.snapshot()
    assert not state.form_hits("LT", match_key("laimių"))
    remaining = [
        posting
        for postings in state.form_index["LT"].values()
        for posting in postings if posting[0] == entry_id
    ]
    expected = generate_paradigm(updated, store.registry)
    assert len(remaining) == len(expected) == 7


def test_upsert_invalid_entry_leaves_store_unchanged(store):
    before = store.path.read_bytes()
    with pytest.raises(ValidationFailedError):
        store.upsert_entry(make_entry("LT", "noun", "vyras", ("",), "d1-as"))
    assert store.path.read_bytes() == before


def test_upsert_unknown_id_fails(store):
    with pytest.raises(NotFoundError):
        store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as", id="e99"))


def test_get_entry_absent(store):
    assert store.get_entry("e1") is None
    entry_id = store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    assert store.get_entry(entry_id).lemma == "vyras"
    store.delete_entry(entry_id)
    assert store.get_entry(entry_id) is None


def test_delete_unlinked_entry_clears_index(store):
    entry_id = store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    store.delete_entry(entry_id)
    state = store.snapshot()
    assert state.form_index["LT"] == {}
    assert state.lemma_index["LT"] == {}


def test_delete_linked_entry_requires_cascade(spring_fixture):
    store = spring_fixture["store"]
    ids = spring_fixture["ids"]
    with pytest.raises(LinksExistError) as err:
        store.delete_entry(ids["spring"])
    assert set(err.value.link_ids) == {l.id for l in spring_fixture["links"].values()}
    # nothing changed
    assert store.get_entry(ids["spring"]) is not None


def test_cascade_delete_recompacts_ranks(spring_fixture):
    store = spring_fixture["store"]
    ids = spring_fixture["ids"]
    # deleting the rank-1 target (pavasaris) leaves survivors ranked 1,2
    store.delete_entry(ids["pavasaris"], cascade=True)
    state = store.snapshot()
    ranks = sorted(l.rank_en_lt for l in state.links_of(ids["spring"]))
    assert ranks == [1, 2]
    assert len(state.links) == 2


def test_add_link_ranks_append(spring_fixture):
    store = spring_fixture["store"]
    links = spring_fixture["links"]
    assert links["pavasaris"].rank_en_lt == 1
    assert links["šaltinis"].rank_en_lt == 2
    assert links["spyruoklė"].rank_en_lt == 3
    # each LT entry had no prior links
    assert {l.rank_lt_en for l in links.values()} == {1}


def test_duplicate_link_rejected(spring_fixture):
    store = spring_fixture["store"]
    ids = spring_fixture["ids"]
    with pytest.raises(DuplicateLinkError):
        store.add_link(ids["spring"], ids["pavasaris"])
    # same pair under a different domain is a distinct lexicographic fact
    other = store.add_domain("seasons")
    link = store.add_link(ids["spring"], ids["pavasaris"], domain=other.id)
    assert link.rank_en_lt == 4


def test_add_link_language_checks(store):
    en = store.upsert_entry(make_entry("EN", "noun", "man", ("man",), "regular"))
    lt = store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    with pytest.raises(LanguageMismatchError):
        store.add_link(lt, en)
    with pytest.raises(NotFoundError):
        store.add_link(en, "e404")


def test_reorder_respects_direction_ownership(spring_fixture):
    store = spring_fixture["store"]
    ids = spring_fixture["ids"]
    links = spring_fixture["links"]
    order = [links["spyruoklė"].id, links["pavasaris"].id, links["šaltinis"].id]
    updated = store.reorder_links(ids["spring"], EN_TO_LT, order)
    assert [l.id for l in updated] == order
    assert [l.rank_en_lt for l in updated] == [1, 2, 3]
    assert all(l.rank_lt_en == 1 for l in updated)  # other direction untouched

    with pytest.raises(PermutationError):
        store.reorder_links(ids["spring"], EN_TO_LT, order[:2])
    from lexibase.store import DirectionError
    with pytest.raises(DirectionError):
        store.reorder_links(ids["pavasaris"], EN_TO_LT, [links["pavasaris"].id])


def test_delete_link_recompacts_both_sides(spring_fixture):
    store = spring_fixture["store"]
    links = spring_fixture["links"]
    store.delete_link(links["pavasaris"].id)
    state = store.snapshot()
    remaining = state.links_for_direction(spring_fixture["ids"]["spring"], EN_TO_LT)
    assert [l.rank_en_lt for l in remaining] == [1, 2]
    with pytest.raises(NotFoundError):
        store.delete_link(links["pavasaris"].id)


def test_domain_names_unique(store):
    store.add_domain("mechanics")
    with pytest.raises(DuplicateDomainError):
        store.add_domain("mechanics")


def test_entry_with_unknown_domain_tag_rejected(store):
    with pytest.raises(NotFoundError):
        store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as",
                                      domain_tags=frozenset({"d404"})))


def test_language_change_with_links_rejected(spring_fixture):
    store = spring_fixture["store"]
    entry = store.get_entry(spring_fixture["ids"]["spring"])
    flipped = make_entry("LT", "noun", "spring", ("spring",), "d1-as", id=entry.id)
    with pytest.raises(LanguageMismatchError):
        store.upsert_entry(flipped)


def test_crash_before_replace_keeps_old_state(tmp_path, registry, monkeypatch):
    path = tmp_path / "s.lexibase"
    s = LexiconStore(path, registry=registry, create_if_missing=True)
    first = s.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    committed = path.read_bytes()

    def boom(*args, **kwargs):
        raise OSError("simulated crash during rename")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        s.upsert_entry(make_entry("LT", "noun", "vynas", ("vyn",), "d1-as"))
    monkeypatch.undo()

    assert path.read_bytes() == committed
    reopened = LexiconStore(path, registry=registry)
    assert [e.lemma for e in reopened.snapshot().entries.values()] == ["vyras"]
    assert reopened.get_entry(first) is not None
    # no stray temp files (the .lock sibling is expected)
    assert not [p.name for p in tmp_path.iterdir() if ".tmp." in p.name]


def test_failed_write_rolls_back_memory_state(tmp_path, registry, monkeypatch):
    path = tmp_path / "s.lexibase"
    s = LexiconStore(path, registry=registry, create_if_missing=True)

    calls = {"n": 0}
    real_open = open

    def flaky_open(file, *args, **kwargs):
        if str(file).endswith(f".tmp.{os.getpid()}"):
            calls["n"] += 1
            raise OSError("disk full")
        return real_open(file, *args, **kwargs)

    monkeypatch.setattr("builtins.open", flaky_open)
    with pytest.raises(OSError):
        s.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    monkeypatch.undo()
    assert calls["n"] == 1
    assert s.snapshot().stats()["entries"] == 0
    assert s.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))


def test_snapshot_isolation_across_commits(store):
    first = store.snapshot()
    store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    assert first.stats()["entries"] == 0
    assert store.snapshot().stats()["entries"] == 1


def test_counters_survive_reopen(tmp_path, registry):
    path = tmp_path / "s.lexibase"
    s = LexiconStore(path, registry=registry, create_if_missing=True)
    e1 = s.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    s.delete_entry(e1)
    s.close()
    again = LexiconStore(path, registry=registry)
    e2 = again.upsert_entry(make_entry("LT", "noun", "vynas", ("vyn",), "d1-as"))
    assert e2 != e1  # deleted ids are never reissued


def test_populate_requires_empty(store):
    store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    with pytest.raises(StoreNotEmptyError):
        store.populate((), (), ())


def test_stats_counts(spring_fixture):
    stats = spring_fixture["store"].snapshot().stats()
    assert stats["entries"] == 4
    assert stats["links"] == 3
    assert stats["domains"] == 1
    assert stats["forms"]["EN"] == 4  # spring: SG, GEN SG, PL, GEN PL
    assert stats["forms"]["LT"] == 42  # three 14-form nouns
