from lexibase.features import FeatureBundle
from lexibase.lookup import analyze, prefix_search, translate
from lexibase.model import EN_TO_LT, LT_TO_EN

from conftest import make_entry


def test_translate_orders_by_rank(spring_fixture):
    state = spring_fixture["store"].snapshot()
    lemmas = [c.target_lemma for c in translate(state, "spring", EN_TO_LT)]
    assert lemmas == ["pavasaris", "šaltinis", "spyruoklė"]
    ranks = [c.rank for c in translate(state, "spring", EN_TO_LT)]
    assert ranks == [1, 2, 3]


def test_domain_reorders_without_excluding(spring_fixture):
    state = spring_fixture["store"].snapshot()
    domain = spring_fixture["domain"]
    lemmas = [c.target_lemma for c in translate(state, "spring", EN_TO_LT,
                                                domain=domain.id)]
    assert lemmas == ["spyruoklė", "pavasaris", "šaltinis"]


def test_translate_limit_and_unknown(spring_fixture):
    state = spring_fixture["store"].snapshot()
    assert len(translate(state, "spring", EN_TO_LT, limit=2)) == 2
    assert translate(state, "xyzzy", EN_TO_LT) == []


def test_translate_resolves_inflected_form(spring_fixture):
    store = spring_fixture["store"]
    vyras = store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    man = store.upsert_entry(make_entry("EN", "noun", "man", ("man",), "regular"))
    store.add_link(man, vyras)
    state = store.snapshot()
    candidates = translate(state, "vyro", LT_TO_EN)
    assert [c.target_lemma for c in candidates] == ["man"]
    assert candidates[0].matched_as == "form"
    assert candidates[0].matched_features == FeatureBundle(case="GEN", number="SG")
    # lemma match takes precedence over form match and reports matched_as=lemma
    direct = translate(state, "vyras", LT_TO_EN)
    assert direct[0].matched_as == "lemma"


def test_translate_is_case_insensitive(spring_fixture):
    state = spring_fixture["store"].snapshot()
    assert [c.target_lemma for c in translate(state, "Spring", EN_TO_LT)] == \
        ["pavasaris", "šaltinis", "spyruoklė"]


def test_analyze_citation_and_shared_surfaces(store):
    store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    state = store.snapshot()
    assert [(state.entries[e].lemma, b.canonical()) for e, b in
            analyze(state, "vyras", "LT")] == [("vyras", "case=NOM,number=SG")]
    # locative and vocative singular share the surface "vyre"
    readings = analyze(state, "vyre", "LT")
    assert [b.canonical() for _, b in readings] == \
        ["case=LOC,number=SG", "case=VOC,number=SG"]
    assert analyze(state, "xyzzy", "LT") == []


def test_analyze_covers_homographs_across_entries(store):
    store.upsert_entry(make_entry("LT", "noun", "vyras", ("vyr",), "d1-as"))
    store.upsert_entry(make_entry("LT", "noun", "vyrai", ("vyr",), "d1-as"))
    state = store.snapshot()
    hits = analyze(state, "vyrai", "LT")
    assert len(hits) >= 2  # NOM PL and VOC PL of vyras + forms of the homograph
    lemmas = {state.entries[e].lemma for e, _ in hits}
    assert lemmas == {"vyras", "vyrai"}


def test_prefix_search_sorted_and_casefolded(store):
    for lemma, stem, cls in (("vyras", "vyr", "d1-as"), ("vynas", "vyn", "d1-as"),
                             ("laimė", "laim", "d2-e")):
        store.upsert_entry(make_entry("LT", "noun", lemma, (stem,), cls))
    state = store.snapshot()
    assert prefix_search(state, "vy", "LT", 10) == ["vynas", "vyras"]
    assert prefix_search(state, "Vy", "LT", 10) == ["vynas", "vyras"]
    assert prefix_search(state, "", "LT", 2) == ["laimė", "vynas"]
    assert prefix_search(state, "zz", "LT", 10) == []


def test_lookup_ignores_other_language(store):
    store.upsert_entry(make_entry("EN", "noun", "vyras", ("vyras",), "regular"))
    state = store.snapshot()
    assert prefix_search(state, "vy", "LT", 10) == []
    assert analyze(state, "vyras", "LT") == []
