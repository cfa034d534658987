"""Hand-transcribed gold paradigms used as the generation oracle.

Every surface below was written out by hand from the standard reference
grammar (Lithuanian) and standard school tables (English) BEFORE being run
through the generator; tests compare generator output against these literals
character-exactly. Do not regenerate this file from code.

"žirklės" (scissors) is sometimes misprinted as "žirklys" in word lists;
the grammatical citation form is "žirklės", which is what the gold data
uses.
"""

CASES = ["NOM", "GEN", "DAT", "ACC", "INS", "LOC", "VOC"]

# ------------------------------------------------------------ LT nouns
# one per declension, as full 14-form tables: [SG x 7 cases, PL x 7 cases]
LT_NOUNS = {
    # decl. 1, -as masculine
    "vyras": {
        "class": "d1-as", "stems": ("vyr",), "gender": "M",
        "sg": ["vyras", "vyro", "vyrui", "vyrą", "vyru", "vyre", "vyre"],
        "pl": ["vyrai", "vyrų", "vyrams", "vyrus", "vyrais", "vyruose", "vyrai"],
    },
    # decl. 1, -is masculine with d -> dž palatalization
    "medis": {
        "class": "d1-is", "stems": ("med",), "gender": "M",
        "sg": ["medis", "medžio", "medžiui", "medį", "medžiu", "medyje", "medi"],
        "pl": ["medžiai", "medžių", "medžiams", "medžius", "medžiais",
               "medžiuose", "medžiai"],
    },
    # decl. 2, -a feminine
    "ranka": {
        "class": "d2-a", "stems": ("rank",), "gender": "F",
        "sg": ["ranka", "rankos", "rankai", "ranką", "ranka", "rankoje", "ranka"],
        "pl": ["rankos", "rankų", "rankoms", "rankas", "rankomis", "rankose",
               "rankos"],
    },
    # decl. 3, -is feminine
    "akis": {
        "class": "d3", "stems": ("ak",), "gender": "F",
        "sg": ["akis", "akies", "akiai", "akį", "akimi", "akyje", "akie"],
        "pl": ["akys", "akių", "akims", "akis", "akimis", "akyse", "akys"],
    },
    # decl. 4, -us masculine
    "sūnus": {
        "class": "d4", "stems": ("sūn",), "gender": "M",
        "sg": ["sūnus", "sūnaus", "sūnui", "sūnų", "sūnumi", "sūnuje", "sūnau"],
        "pl": ["sūnūs", "sūnų", "sūnums", "sūnus", "sūnumis", "sūnuose", "sūnūs"],
    },
    # decl. 5, -uo masculine (consonant stem)
    "akmuo": {
        "class": "d5", "stems": ("akmen",), "gender": "M",
        "sg": ["akmuo", "akmens", "akmeniui", "akmenį", "akmeniu", "akmenyje",
               "akmenie"],
        "pl": ["akmenys", "akmenų", "akmenims", "akmenis", "akmenimis",
               "akmenyse", "akmenys"],
    },
}

# singulare/plurale tantum fixtures: milk/scissors plus the Lithuanian
# laimė / akiniai / žirklės (spelling note in the module docstring)
LT_SINGULAR_ONLY = {
    "laimė": {
        "class": "d2-e", "stems": ("laim",), "gender": "F",
        "sg": ["laimė", "laimės", "laimei", "laimę", "laime", "laimėje", "laime"],
    },
}
LT_PLURAL_ONLY = {
    "žirklės": {
        "class": "d2-e", "stems": ("žirkl",), "gender": "F",
        "pl": ["žirklės", "žirklių", "žirklėms", "žirkles", "žirklėmis",
               "žirklėse", "žirklės"],
    },
    "akiniai": {
        "class": "d1-is", "stems": ("akin",), "gender": "M",
        "pl": ["akiniai", "akinių", "akiniams", "akinius", "akiniais",
               "akiniuose", "akiniai"],
    },
}

# ------------------------------------------------------------ EN nouns
# [base, genitive sg, plural, genitive pl]
EN_NOUNS = {
    "boy": {"stems": ("boy",), "forms": ["boy", "boy's", "boys", "boys'"]},
    "baby": {"stems": ("baby",), "forms": ["baby", "baby's", "babies", "babies'"]},
    "box": {"stems": ("box",), "forms": ["box", "box's", "boxes", "boxes'"]},
    # irregular plural via overrides
    "man": {
        "stems": ("man",),
        "overrides": {"number=PL": "men", "case=GEN,number=PL": "men's"},
        "forms": ["man", "man's", "men", "men's"],
    },
}
EN_SINGULAR_ONLY = {
    "milk": {"stems": ("milk",), "forms": ["milk", "milk's"]},
}
EN_PLURAL_ONLY = {
    "scissors": {"stems": ("scissor",), "forms": ["scissors", "scissors'"]},
}

# ------------------------------------------------------------ LT adjective
# positive-degree simple sub-paradigm, 28 forms:
# M SG, M PL, F SG, F PL, each over the 7 cases
LT_ADJECTIVE_POSITIVE = {
    "geras": {
        "class": "d1", "stems": ("ger",),
        ("M", "SG"): ["geras", "gero", "geram", "gerą", "geru", "gerame", "geras"],
        ("M", "PL"): ["geri", "gerų", "geriems", "gerus", "gerais", "geruose",
                      "geri"],
        ("F", "SG"): ["gera", "geros", "gerai", "gerą", "gera", "geroje", "gera"],
        ("F", "PL"): ["geros", "gerų", "geroms", "geras", "geromis", "gerose",
                      "geros"],
    },
}
# spot checks beyond the positive degree
LT_ADJECTIVE_SPOT = {
    "geras": {
        "degree=CMP,gender=N": "geriau",
        "degree=SUP,gender=N": "geriausia",
        "case=NOM,number=SG,gender=M,degree=CMP": "geresnis",
        "case=NOM,number=SG,gender=F,degree=CMP": "geresnė",
        "case=NOM,number=SG,gender=M,degree=SUP": "geriausias",
        "case=NOM,number=SG,gender=M,degree=POS,definiteness=PRONOMINAL": "gerasis",
        "case=GEN,number=SG,gender=M,degree=POS,definiteness=PRONOMINAL": "gerojo",
        "case=NOM,number=SG,gender=F,degree=POS,definiteness=PRONOMINAL": "geroji",
        "case=NOM,number=PL,gender=M,degree=POS,definiteness=PRONOMINAL": "gerieji",
    },
}

# ------------------------------------------------------------ LT verbs
# one per shipped conjugation class; finite indicative rows
# (1SG, 2SG, 3, 1PL, 2PL) for present, past, future
LT_VERBS = {
    "dirbti": {
        "class": "c1", "stems": ("dirb", "dirb", "dirb"),
        "PRES": ["dirbu", "dirbi", "dirba", "dirbame", "dirbate"],
        "PAST": ["dirbau", "dirbai", "dirbo", "dirbome", "dirbote"],
        "FUT": ["dirbsiu", "dirbsi", "dirbs", "dirbsime", "dirbsite"],
    },
    "mylėti": {
        "class": "c2", "stems": ("mylė", "myl", "mylėj"),
        "PRES": ["myliu", "myli", "myli", "mylime", "mylite"],
        "PAST": ["mylėjau", "mylėjai", "mylėjo", "mylėjome", "mylėjote"],
        "FUT": ["mylėsiu", "mylėsi", "mylės", "mylėsime", "mylėsite"],
    },
    "skaityti": {
        "class": "c3", "stems": ("skaity", "skait", "skait"),
        "PRES": ["skaitau", "skaitai", "skaito", "skaitome", "skaitote"],
        "PAST": ["skaičiau", "skaitei", "skaitė", "skaitėme", "skaitėte"],
        "FUT": ["skaitysiu", "skaitysi", "skaitys", "skaitysime", "skaitysite"],
    },
}
# non-finite spot checks
LT_VERB_SPOT = {
    "dirbti": {
        "vform=INF": "dirbti",
        "number=SG,mood=SBJV,person=1": "dirbčiau",
        "number=SG,mood=IMP,person=2": "dirbk",
        "number=PL,mood=IMP,person=2": "dirbkite",
        "case=NOM,number=SG,gender=M,tense=PRES,vform=PARTICIPLE,voice=ACT": "dirbantis",
        "case=GEN,number=SG,gender=M,tense=PRES,vform=PARTICIPLE,voice=ACT": "dirbančio",
        "case=NOM,number=SG,gender=M,tense=PAST,vform=PARTICIPLE,voice=ACT": "dirbęs",
        "case=GEN,number=SG,gender=M,tense=PAST,vform=PARTICIPLE,voice=ACT": "dirbusio",
        "case=NOM,number=SG,gender=M,tense=PRES,vform=PARTICIPLE,voice=PASS": "dirbamas",
        "case=NOM,number=SG,gender=M,tense=PAST,vform=PARTICIPLE,voice=PASS": "dirbtas",
        "number=SG,gender=M,vform=PARTICIPLE,voice=ACT": "dirbdamas",
        "tense=PRES,vform=PARTICIPLE,voice=ACT": "dirbant",
    },
    "skaityti": {
        # palatalized past-participle oblique stem
        "case=GEN,number=SG,gender=M,tense=PAST,vform=PARTICIPLE,voice=ACT": "skaičiusio",
        "case=NOM,number=SG,gender=M,tense=PAST,vform=PARTICIPLE,voice=ACT": "skaitęs",
        "tense=PAST,vform=PARTICIPLE,voice=ACT": "skaičius",
        "case=NOM,number=SG,gender=M,tense=PRES,vform=PARTICIPLE,voice=PASS": "skaitomas",
    },
    "mylėti": {
        "case=NOM,number=SG,gender=M,tense=PRES,vform=PARTICIPLE,voice=ACT": "mylintis",
        "case=NOM,number=SG,gender=M,tense=PRES,vform=PARTICIPLE,voice=PASS": "mylimas",
    },
}

# ------------------------------------------------------------ EN verbs
# slot order: INF, PRES base, PRES 3SG, PAST, PRES participle, PAST participle
EN_VERBS_REGULAR = {
    "walk": ["walk", "walk", "walks", "walked", "walking", "walked"],
    "try": ["try", "try", "tries", "tried", "trying", "tried"],
    "love": ["love", "love", "loves", "loved", "loving", "loved"],
    "stop": ["stop", "stop", "stops", "stopped", "stopping", "stopped"],
    "watch": ["watch", "watch", "watches", "watched", "watching", "watched"],
    "die": ["die", "die", "dies", "died", "dying", "died"],
    "agree": ["agree", "agree", "agrees", "agreed", "agreeing", "agreed"],
}
EN_VERBS_IRREGULAR = {
    "go": {
        "overrides": {"tense=PAST": "went",
                      "tense=PAST,vform=PARTICIPLE": "gone"},
        "forms": ["go", "go", "goes", "went", "going", "gone"],
    },
    "take": {
        "overrides": {"tense=PAST": "took",
                      "tense=PAST,vform=PARTICIPLE": "taken"},
        "forms": ["take", "take", "takes", "took", "taking", "taken"],
    },
}

# ------------------------------------------------------- stem-rule oracle
# (rule id, input stem) -> rewritten stem, from a hand-written list
STEM_RULE_GOLD = {
    ("en-verb-past", "stop"): "stopp",
    ("en-verb-past", "try"): "tri",
    ("en-verb-past", "love"): "lov",
    ("en-verb-past", "walk"): "walk",
    ("en-verb-past", "free"): "fre",
    ("en-verb-ing", "die"): "dy",
    ("en-verb-ing", "see"): "see",
    ("en-verb-s", "kiss"): "kisse",
    ("en-verb-s", "go"): "goe",
    ("en-noun-plural", "baby"): "babie",
    ("en-noun-plural", "boy"): "boy",
    ("en-adj-cmp", "big"): "bigg",
    ("en-adj-cmp", "happy"): "happi",
    ("en-adj-cmp", "nice"): "nic",
    ("lt-palatal", "med"): "medž",
    ("lt-palatal", "skait"): "skaič",
    ("lt-palatal", "vyr"): "vyr",
    ("lt-palatal", "greit"): "greič",
    ("lt-uo-nom", "akmen"): "akmuo",
    ("lt-uo-nom", "vanden"): "vanduo",
}
