"""Regenerate the bundled fixture corpora.

Run from the repository root:

    python3 tests/fixtures/build_corpora.py

The output is canonical CoNLL-U (LF endings, blank line after every
sentence).  Goldens are produced separately by ``make_goldens.sh``, which
scans the text files without importing the package.
"""

import itertools
from pathlib import Path

HERE = Path(__file__).parent


class SentenceBuilder:
    def __init__(self, sent_id):
        self.sent_id = sent_id
        self.words = []      # (name, cols)
        self.ranges = {}     # first word name -> (form, n_words, misc)
        self.empties = []    # (after_name, cols)

    def word(self, name, form, lemma, upos, head, deprel, feats="_",
             misc=(), extra_deps=(), deps=None):
        if deps is None:
            deps = [(head, deprel)] + list(extra_deps)
        self.words.append((name, dict(form=form, lemma=lemma, upos=upos,
                                      feats=feats, head=head, deprel=deprel,
                                      deps=deps, misc=list(misc))))

    def contraction(self, form, first, n_words=2, misc=()):
        self.ranges[first] = (form, n_words, list(misc))

    def empty(self, name, after, form, lemma, upos, deps, misc=()):
        self.empties.append((after, dict(name=name, form=form, lemma=lemma,
                                         upos=upos, deps=deps,
                                         misc=list(misc))))

    def render(self):
        ids = {"ROOT": "0"}
        for i, (name, _) in enumerate(self.words, 1):
            ids[name] = str(i)
        minors = {}
        for after, cols in self.empties:
            major = ids[after]
            minors[major] = minors.get(major, 0) + 1
            ids[cols["name"]] = f"{major}.{minors[major]}"

        def deps_str(deps):
            def key(item):
                major, _, minor = ids[item[0]].partition(".")
                return (int(major), int(minor or 0), item[1])
            return "|".join(f"{ids[h]}:{r}" for h, r in sorted(deps, key=key))

        def misc_str(misc):
            return "|".join(f"{k}={v}" for k, v in misc) or "_"

        lines = []
        text = []
        skip_until = 0
        for i, (name, cols) in enumerate(self.words, 1):
            if name in self.ranges:
                form, n, misc = self.ranges[name]
                lines.append("\t".join([f"{i}-{i + n - 1}", form] + ["_"] * 7
                                       + [misc_str(misc)]))
                text.append(form + ("" if ("SpaceAfter", "No") in misc else " "))
                skip_until = i + n - 1
            lines.append("\t".join([
                ids[name], cols["form"], cols["lemma"], cols["upos"], "_",
                cols["feats"], ids[cols["head"]], cols["deprel"],
                deps_str(cols["deps"]), misc_str(cols["misc"])]))
            if i > skip_until:
                space = "" if ("SpaceAfter", "No") in cols["misc"] else " "
                text.append(cols["form"] + space)
            for after, ecols in self.empties:
                if after == name:
                    lines.append("\t".join([
                        ids[ecols["name"]], ecols["form"], ecols["lemma"],
                        ecols["upos"], "_", "_", "_", "_",
                        deps_str(ecols["deps"]), misc_str(ecols["misc"])]))
        header = [f"# sent_id = {self.sent_id}",
                  f"# text = {''.join(text).rstrip()}"]
        return "\n".join(header + lines) + "\n\n"


# ---------------------------------------------------------------- FGD corpus

NOUN = "Number=Sing"
PLUR = "Number=Plur"
VFIN = "Mood=Ind|Tense=Past|VerbForm=Fin"

# functor -> (form, upos, deprel, case word, attach, feats)
FGD_PHRASES = {
    "ADDR": ("members", "NOUN", "iobj", None, "verb", PLUR),
    "EFF": ("chairman", "NOUN", "xcomp", "as", "verb", NOUN),
    "ORIG": ("wood", "NOUN", "obl", "from", "verb", NOUN),
    "PAR": ("claims", "VERB", "parataxis", None, "verb", VFIN),
    "PARTL": ("oh", "INTJ", "discourse", None, "verb", "_"),
    "VOCAT": ("John", "PROPN", "vocative", None, "verb", NOUN),
    "TWHEN": ("yesterday", "ADV", "advmod", None, "verb", "_"),
    "TFHL": ("hours", "NOUN", "obl", "for", "verb", PLUR),
    "TFRWH": ("Monday", "PROPN", "obl", "from", "verb", NOUN),
    "THL": ("minutes", "NOUN", "obl", "within", "verb", PLUR),
    "THO": ("often", "ADV", "advmod", None, "verb", "_"),
    "TOWH": ("Friday", "PROPN", "obl", "to", "verb", NOUN),
    "TPAR": ("meeting", "NOUN", "obl", "during", "verb", NOUN),
    "TSIN": ("1956", "NUM", "obl", "since", "verb", "_"),
    "TTILL": ("noon", "NOUN", "obl", "until", "verb", NOUN),
    "DIR1": ("Prague", "PROPN", "obl", "from", "verb", NOUN),
    "DIR2": ("park", "NOUN", "obl", "through", "verb", NOUN),
    "DIR3": ("Brno", "PROPN", "obl", "to", "verb", NOUN),
    "LOC": ("office", "NOUN", "obl", "in", "verb", NOUN),
    "AIM": ("profit", "NOUN", "obl", "for", "verb", NOUN),
    "CAUS": ("storm", "NOUN", "obl", "because", "verb", NOUN),
    "CNCS": ("rain", "NOUN", "obl", "despite", "verb", NOUN),
    "COND": ("approval", "NOUN", "obl", "upon", "verb", NOUN),
    "INTT": ("hunting", "VERB", "xcomp", None, "verb", "VerbForm=Ger"),
    "ACMP": ("friends", "NOUN", "obl", "with", "verb", PLUR),
    "CPR": ("brother", "NOUN", "obl", "than", "verb", NOUN),
    "CRIT": ("law", "NOUN", "obl", "under", "verb", NOUN),
    "DIFF": ("percent", "NOUN", "obl", "by", "verb", NOUN),
    "EXT": ("very", "ADV", "advmod", None, "verb", "_"),
    "MANN": ("quickly", "ADV", "advmod", None, "verb", "_"),
    "MEANS": ("train", "NOUN", "obl", "by", "verb", NOUN),
    "REG": ("prices", "NOUN", "obl", "regarding", "verb", PLUR),
    "RESL": ("surprise", "NOUN", "obl", "to", "verb", NOUN),
    "RESTR": ("Tuesday", "PROPN", "obl", "except", "verb", NOUN),
    "COMPL": ("tired", "ADJ", "xcomp", None, "verb", "Degree=Pos"),
    "CM": ("also", "ADV", "advmod", None, "verb", "_"),
    "BEN": ("children", "NOUN", "obl", "for", "verb", PLUR),
    "CONTRD": ("Peter", "PROPN", "obl", "unlike", "verb", NOUN),
    "HER": ("father", "NOUN", "obl", "after", "verb", NOUN),
    "SUBS": ("colleague", "NOUN", "obl", "instead", "verb", NOUN),
    "APP": ("company", "NOUN", "nmod", "of", "obj", NOUN),
    "AUTH": ("Smith", "PROPN", "nmod", "by", "obj", NOUN),
    "ID": ("Vltava", "PROPN", "appos", None, "obj", NOUN),
    "MAT": ("water", "NOUN", "nmod", "of", "obj", NOUN),
    "RSTR": ("new", "ADJ", "amod", None, "obj", "Degree=Pos"),
    "ATT": ("fortunately", "ADV", "advmod", None, "verb", "_"),
    "INTF": ("it", "PRON", "expl", None, "verb", "PronType=Prs"),
    "MOD": ("probably", "ADV", "advmod", None, "verb", "_"),
    "PREC": ("however", "ADV", "advmod", None, "verb", "_"),
    "RHEM": ("only", "ADV", "advmod", None, "verb", "_"),
    "CPHR": ("decision", "NOUN", "obj", None, "verb", NOUN),
    "DPHR": ("bucket", "NOUN", "obj", None, "verb", NOUN),
    "FPHR": ("ad-hoc", "X", "advmod", None, "verb", "Foreign=Yes"),
    "ADVS": ("but", "CCONJ", "cc", None, "verb", "_"),
    "APPS": ("namely", "ADV", "cc", None, "verb", "_"),
    "CONFR": ("versus", "ADP", "cc", None, "verb", "_"),
    "CONJ": ("and", "CCONJ", "cc", None, "verb", "_"),
    "CONTRA": ("yet", "CCONJ", "cc", None, "verb", "_"),
    "CSQ": ("so", "CCONJ", "cc", None, "verb", "_"),
    "DISJ": ("or", "CCONJ", "cc", None, "verb", "_"),
    "GRAD": ("even", "ADV", "cc", None, "verb", "_"),
    "OPER": ("plus", "CCONJ", "cc", None, "verb", "_"),
    "REAS": ("for", "CCONJ", "cc", None, "verb", "_"),
}

SUBJECTS = ["committee", "minister", "board", "company", "court", "council",
            "director", "union", "bank", "ministry", "agency", "mayor", "team"]
VERBS = [("approved", "approve"), ("rejected", "reject"), ("signed", "sign"),
         ("discussed", "discuss"), ("revised", "revise"), ("announced", "announce"),
         ("published", "publish"), ("presented", "present"), ("accepted", "accept")]
OBJECTS = ["plan", "budget", "contract", "proposal", "report", "law",
           "treaty", "offer", "agreement", "statement", "draft"]


def fgd_generic(n, extras):
    sb = SentenceBuilder(f"fgd-{n:02d}")
    subj = SUBJECTS[n % len(SUBJECTS)]
    form, lemma = VERBS[n % len(VERBS)]
    obj = OBJECTS[n % len(OBJECTS)]
    sb.word("d1", "The", "the", "DET", "s", "det", "Definite=Def|PronType=Art")
    sb.word("s", subj, subj, "NOUN", "v", "nsubj", NOUN, misc=[("Functor", "ACT")])
    sb.word("v", form, lemma, "VERB", "ROOT", "root", VFIN, misc=[("Functor", "PRED")])
    sb.word("d2", "the", "the", "DET", "o", "det", "Definite=Def|PronType=Art")
    sb.word("o", obj, obj, "NOUN", "v", "obj", NOUN, misc=[("Functor", "PAT")])
    for k, functor in enumerate(extras):
        form, upos, deprel, case, attach, feats = FGD_PHRASES[functor]
        head = "v" if attach == "verb" else "o"
        if case:
            sb.word(f"c{k}", case, case, "ADP", f"x{k}", "case")
        misc = [("Functor", functor)]
        if k % 2:
            misc = [("Gloss", form)] + misc
        sb.word(f"x{k}", form, form.lower(), upos, head, deprel, feats, misc=misc)
    # last word before the full stop gets SpaceAfter=No, placed before Functor
    name, cols = sb.words[-1]
    cols["misc"].insert(0, ("SpaceAfter", "No"))
    sb.word("p", ".", ".", "PUNCT", "v", "punct")
    return sb


def fgd_special():
    out = []

    sb = SentenceBuilder("fgd-denom")
    sb.word("a", "Chapter", "chapter", "NOUN", "ROOT", "root", NOUN, misc=[("Functor", "DENOM")])
    sb.word("b", "One", "one", "NUM", "a", "nummod", "NumType=Card",
            misc=[("Functor", "RSTR"), ("SpaceAfter", "No")])
    sb.word("p", ".", ".", "PUNCT", "a", "punct")
    out.append(sb)

    # Shared argument of coordinated verbs; enhanced edges propagate.
    sb = SentenceBuilder("fgd-shared")
    sb.word("1", "The", "the", "DET", "2", "det")
    sb.word("2", "spokeswoman", "spokeswoman", "NOUN", "3", "nsubj", NOUN, misc=[("Functor", "ACT")])
    sb.word("3", "said", "say", "VERB", "ROOT", "root", VFIN, misc=[("Functor", "PRED")])
    sb.word("4", "asbestos", "asbestos", "NOUN", "6", "nsubj:pass", NOUN,
            misc=[("Functor", "PAT")], extra_deps=[("11", "nsubj:pass")])
    sb.word("5", "was", "be", "AUX", "6", "aux:pass", VFIN, extra_deps=[("11", "aux:pass")])
    sb.word("6", "used", "use", "VERB", "3", "ccomp", "Tense=Past|VerbForm=Part|Voice=Pass",
            misc=[("Functor", "EFF")])
    sb.word("7", "in", "in", "ADP", "9", "case")
    sb.word("8", "the", "the", "DET", "9", "det")
    sb.word("9", "1950s", "1950", "NOUN", "6", "obl", PLUR, misc=[("Functor", "TWHEN")],
            deps=[("6", "obl:in")])
    sb.word("10", "and", "and", "CCONJ", "11", "cc", misc=[("Functor", "CONJ")])
    sb.word("11", "replaced", "replace", "VERB", "6", "conj", "Tense=Past|VerbForm=Part|Voice=Pass",
            misc=[("Functor", "EFF")], deps=[("3", "ccomp"), ("6", "conj:and")])
    sb.word("12", "in", "in", "ADP", "13", "case")
    sb.word("13", "1956", "1956", "NUM", "11", "obl", "NumType=Card",
            misc=[("SpaceAfter", "No"), ("Functor", "TWHEN")], deps=[("11", "obl:in")])
    sb.word("14", ".", ".", "PUNCT", "3", "punct")
    out.append(sb)

    # Gapping with an empty node for the elided predicate.
    sb = SentenceBuilder("fgd-gapping")
    sb.word("1", "Mary", "Mary", "PROPN", "2", "nsubj", NOUN, misc=[("Functor", "ACT")])
    sb.word("2", "ate", "eat", "VERB", "ROOT", "root", VFIN, misc=[("Functor", "PRED")])
    sb.word("3", "rice", "rice", "NOUN", "2", "obj", NOUN, misc=[("Functor", "PAT")])
    sb.word("4", "and", "and", "CCONJ", "5", "cc", misc=[("Functor", "CONJ")],
            deps=[("E", "cc")])
    sb.word("5", "John", "John", "PROPN", "2", "conj", NOUN, misc=[("Functor", "ACT")],
            deps=[("E", "nsubj")])
    sb.empty("E", "5", "ate", "eat", "VERB", deps=[("2", "conj:and")],
             misc=[("Functor", "PRED")])
    sb.word("6", "beans", "bean", "NOUN", "5", "orphan", PLUR,
            misc=[("Functor", "PAT"), ("SpaceAfter", "No")], deps=[("E", "obj")])
    sb.word("7", ".", ".", "PUNCT", "2", "punct")
    out.append(sb)

    # Relative clause: the referential edge closes a cycle.
    sb = SentenceBuilder("fgd-relcl")
    sb.word("1", "The", "the", "DET", "2", "det")
    sb.word("2", "man", "man", "NOUN", "5", "nsubj", NOUN, misc=[("Functor", "ACT")],
            extra_deps=[("4", "nsubj")])
    sb.word("3", "who", "who", "PRON", "4", "nsubj", "PronType=Rel",
            misc=[("Functor", "ACT")], deps=[("2", "ref")])
    sb.word("4", "left", "leave", "VERB", "2", "acl:relcl", VFIN, misc=[("Functor", "RSTR")])
    sb.word("5", "arrived", "arrive", "VERB", "ROOT", "root", VFIN,
            misc=[("Functor", "PRED"), ("SpaceAfter", "No")])
    sb.word("6", ".", ".", "PUNCT", "5", "punct")
    out.append(sb)

    # Multiword token.
    sb = SentenceBuilder("fgd-contraction")
    sb.word("1", "The", "the", "DET", "2", "det")
    sb.word("2", "board", "board", "NOUN", "5", "nsubj", NOUN, misc=[("Functor", "ACT")])
    sb.contraction("doesn't", "3")
    sb.word("3", "does", "do", "AUX", "5", "aux", "Mood=Ind|Tense=Pres|VerbForm=Fin")
    sb.word("4", "n't", "not", "PART", "5", "advmod", "Polarity=Neg", misc=[("Functor", "RHEM")])
    sb.word("5", "approve", "approve", "VERB", "ROOT", "root", "VerbForm=Inf",
            misc=[("Functor", "PRED")])
    sb.word("6", "the", "the", "DET", "7", "det")
    sb.word("7", "plan", "plan", "NOUN", "5", "obj", NOUN,
            misc=[("SpaceAfter", "No"), ("Functor", "PAT")])
    sb.word("8", ".", ".", "PUNCT", "5", "punct")
    out.append(sb)
    return out


def build_fgd():
    functors = list(FGD_PHRASES)
    cycle = itertools.cycle(functors)
    sentences = []
    for n in range(1, 27):
        sentences.append(fgd_generic(n, [next(cycle) for _ in range(3)]))
    sentences[3:3] = fgd_special()
    return "".join(s.render() for s in sentences)


# ------------------------------------------------------------- AnCora corpus

# role -> (form, lemma, upos, case word, feats)
ANCORA_WORDS = {
    "agt": ("Gobierno", "gobierno", "PROPN", None, "Gender=Masc|Number=Sing"),
    "pat": ("acuerdo", "acuerdo", "NOUN", None, "Gender=Masc|Number=Sing"),
    "tem": ("reforma", "reforma", "NOUN", None, "Gender=Fem|Number=Sing"),
    "atr": ("presidente", "presidente", "NOUN", None, "Gender=Masc|Number=Sing"),
    "tmp": ("ayer", "ayer", "ADV", None, "_"),
    "loc": ("Madrid", "Madrid", "PROPN", "en", "_"),
    "adv": ("además", "además", "ADV", None, "_"),
    "cau": ("crisis", "crisis", "NOUN", "por", "Gender=Fem|Number=Sing"),
    "ben": ("ciudadanos", "ciudadano", "NOUN", "a", "Gender=Masc|Number=Plur"),
    "fin": ("empleo", "empleo", "NOUN", "para", "Gender=Masc|Number=Sing"),
    "mnr": ("rápidamente", "rápidamente", "ADV", None, "_"),
    "efi": ("ministro", "ministro", "NOUN", "como", "Gender=Masc|Number=Sing"),
    "des": ("Barcelona", "Barcelona", "PROPN", "hasta", "_"),
    "": ("cuenta", "cuenta", "NOUN", None, "Gender=Fem|Number=Sing"),
    "ext": ("mucho", "mucho", "ADV", None, "_"),
    "cot": ("sindicatos", "sindicato", "NOUN", "con", "Gender=Masc|Number=Plur"),
    "ori": ("Valencia", "Valencia", "PROPN", "desde", "_"),
    "exp": ("público", "público", "NOUN", "a", "Gender=Masc|Number=Sing"),
    "ein": ("socio", "socio", "NOUN", "de", "Gender=Masc|Number=Sing"),
    "ins": ("decreto", "decreto", "NOUN", "mediante", "Gender=Masc|Number=Sing"),
    "src": ("informe", "informe", "NOUN", None, "Gender=Masc|Number=Sing"),
}

# Every (role, position) pair of the AnCora thematic-role inventory.
ANCORA_PAIRS = [
    ("pat", "arg1"), ("agt", "arg0"),
    ("tem", "arg1"), ("tem", "arg2"), ("tem", "arg3"),
    ("atr", "arg2"), ("atr", "argM"), ("atr", "arg3"),
    ("tmp", "argM"),
    ("loc", "argM"), ("loc", "arg2"), ("loc", "arg1"), ("loc", "arg3"),
    ("adv", "argM"),
    ("cau", "argM"), ("cau", "arg0"),
    ("ben", "arg2"), ("ben", "arg3"),
    ("fin", "argM"), ("fin", "arg2"),
    ("mnr", "argM"),
    ("efi", "arg2"), ("efi", "arg4"),
    ("des", "arg4"),
    ("", "argL"),
    ("ext", "arg2"), ("ext", "argM"), ("ext", "arg1"),
    ("cot", "arg2"), ("cot", "arg1"),
    ("ori", "arg3"),
    ("exp", "arg2"), ("exp", "arg3"), ("exp", "arg0"),
    ("ein", "arg3"), ("ein", "arg2"),
    ("ins", "arg2"),
    ("src", "arg0"),
]

ES_VERBS = [("aprobó", "aprobar"), ("presentó", "presentar"), ("firmó", "firmar"),
            ("anunció", "anunciar"), ("defendió", "defender"), ("recibió", "recibir"),
            ("criticó", "criticar"), ("propuso", "proponer")]
ES_VFIN = "Mood=Ind|Number=Sing|Person=3|Tense=Past|VerbForm=Fin"


def deprel_for(role, pos, upos):
    if pos == "arg0":
        return "nsubj"
    if pos in ("arg1", "argL"):
        return "obj"
    if role in ("ben", "exp") and pos in ("arg2", "arg3"):
        return "iobj"
    if upos == "ADV":
        return "advmod"
    return "obl"


def ancora_generic(n, pairs):
    sb = SentenceBuilder(f"ancora-{n:02d}")
    form, lemma = ES_VERBS[n % len(ES_VERBS)]
    deps = []
    if not any(pos == "arg0" for _, pos in pairs):
        deps.append(("agt", "arg0"))
    deps.extend(pairs)
    if not any(pos in ("arg1", "argL") for _, pos in pairs):
        deps.append(("pat", "arg1"))
    order = sorted(deps, key=lambda p: 0 if p[1] == "arg0" else 1)
    verb_placed = False
    for k, (role, pos) in enumerate(order):
        if pos != "arg0" and not verb_placed:
            sb.word("v", form, lemma, "VERB", "ROOT", "root", ES_VFIN)
            verb_placed = True
        wform, wlemma, upos, case, feats = ANCORA_WORDS[role]
        deprel = deprel_for(role, pos, upos)
        if role in ("des",) and k % 2 == 0:
            # "al" = a + el
            sb.contraction("al", f"c{k}")
            sb.word(f"c{k}", "a", "a", "ADP", f"x{k}", "case")
            sb.word(f"e{k}", "el", "el", "DET", f"x{k}", "det", "Definite=Def|Gender=Masc")
            wform, wlemma, upos = "mercado", "mercado", "NOUN"
        elif role == "ori" and n % 2 == 0:
            # "del" = de + el
            sb.contraction("del", f"c{k}")
            sb.word(f"c{k}", "de", "de", "ADP", f"x{k}", "case")
            sb.word(f"e{k}", "el", "el", "DET", f"x{k}", "det", "Definite=Def|Gender=Masc")
            wform, wlemma, upos = "puerto", "puerto", "NOUN"
        elif case:
            sb.word(f"c{k}", case, case, "ADP", f"x{k}", "case")
        elif upos == "NOUN":
            fem = "Gender=Fem" in feats
            art = ("la", "Definite=Def|Gender=Fem") if fem else ("el", "Definite=Def|Gender=Masc")
            sb.word(f"d{k}", art[0], "el", "DET", f"x{k}", "det", art[1])
        misc = [("ArgTem", f"{pos}:{role}")]
        if k == 1:
            misc.append(("Entity", f"e{n}"))
        sb.word(f"x{k}", wform, wlemma, upos, "v", deprel, feats, misc=misc)
    name, cols = sb.words[-1]
    cols["misc"].append(("SpaceAfter", "No"))
    sb.word("p", ".", ".", "PUNCT", "v", "punct", "PunctType=Peri")
    return sb


def build_ancora():
    rest = [p for p in ANCORA_PAIRS if p not in (("agt", "arg0"), ("pat", "arg1"))]
    sentences = []
    n = 0
    # two marked dependents per sentence, avoiding two subjects or objects
    queue = list(rest)
    while queue or n < 26:
        n += 1
        if not queue:
            queue = list(rest)
        first = queue.pop(0)
        picked = [first]
        for i, cand in enumerate(queue):
            clash = {cand[1], first[1]} <= {"arg0"} or {cand[1], first[1]} <= {"arg1", "argL"}
            if not clash:
                picked.append(queue.pop(i))
                break
        sentences.append(ancora_generic(n, picked))
    return "".join(s.render() for s in sentences)


if __name__ == "__main__":
    (HERE / "fgd_sample.conllu").write_text(build_fgd(), encoding="utf-8")
    (HERE / "ancora_sample.conllu").write_text(build_ancora(), encoding="utf-8")
