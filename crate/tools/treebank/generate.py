#!/usr/bin/env python3
"""Generate a gold-annotated headline treebank in CoNLL-U.

Sentences are built as dependency trees directly, so every emitted tree is
projective, single-rooted and carries Penn Treebank tags in the XPOS column.
Forms are written in normalized case: proper nouns and acronyms keep their
capitals, everything else is lowercase. Training code derives title-case and
sentence-case variants from these forms.

Usage: generate.py --sentences 5000 --seed 17 > headlines.conllu
"""
import argparse
import random

import lexicon as L

UPOS = {
    "CC": "CCONJ", "CD": "NUM", "DT": "DET", "EX": "PRON", "FW": "X", "IN": "ADP", "JJ": "ADJ",
    "JJR": "ADJ", "JJS": "ADJ", "LS": "X", "MD": "AUX", "NN": "NOUN", "NNS": "NOUN", "NNP": "PROPN",
    "NNPS": "PROPN", "PDT": "DET", "POS": "PART", "PRP": "PRON", "PRP$": "PRON", "RB": "ADV",
    "RBR": "ADV", "RBS": "ADV", "RP": "ADP", "SYM": "SYM", "TO": "PART", "UH": "INTJ", "VB": "VERB",
    "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB", "WDT": "DET",
    "WP": "PRON", "WP$": "PRON", "WRB": "ADV", "$": "SYM", "#": "SYM", "``": "PUNCT", "''": "PUNCT",
    "-LRB-": "PUNCT", "-RRB-": "PUNCT", ",": "PUNCT", ".": "PUNCT", ":": "PUNCT",
}


class Tok:
    __slots__ = ("form", "tag", "left", "right", "rel")

    def __init__(self, form, tag):
        self.form = form
        self.tag = tag
        self.left = []
        self.right = []
        self.rel = None

    def l(self, child, rel):
        """Attach `child` as the next left dependent (surface order, outermost first)."""
        if child is not None:
            child.rel = rel
            self.left.append(child)
        return self

    def r(self, child, rel):
        if child is not None:
            child.rel = rel
            self.right.append(child)
        return self

    def lfront(self, child, rel):
        """Attach `child` as the new outermost left dependent."""
        if child is not None:
            child.rel = rel
            self.left.insert(0, child)
        return self


def linearize(node, out):
    for c in node.left:
        linearize(c, out)
    out.append(node)
    for c in node.right:
        linearize(c, out)
    return out


def heads(root):
    toks = linearize(root, [])
    index = {id(t): i + 1 for i, t in enumerate(toks)}
    rows = []

    def walk(node, head):
        rows.append((index[id(node)], node, head))
        for c in node.left + node.right:
            walk(c, index[id(node)])

    walk(root, 0)
    rows.sort(key=lambda r: r[0])
    return rows


class Lex:
    def __init__(self):
        self.verbs = L.verb_table()
        self.nouns = L.nouns()
        self.count_nouns = [(s, p) for s, p in self.nouns if p]
        self.mass = [s for s, p in self.nouns if not p]
        self.adj = sorted(set(L.ADJECTIVES.split()))
        self.nat = L.NATIONALITIES.split()
        self.proper = L.PROPER
        self.names = L.PROPER_NAMES
        self.adv = L.ADVERBS.split()
        self.grad = L.GRADABLE


LEX = Lex()

# Semantic-ish verb groups so generated clauses stay plausible enough for the
# attachment statistics to look like headlines.
TRANS_NEWS = ("approve announce arrest acquire adopt ban block cancel capture charge close confirm convict "
              "destroy detain dismiss elect execute impose investigate kill launch reject release rescue "
              "seize sentence sign suspend threaten unveil uphold visit warn win attack order postpone "
              "recall reopen retake veto appoint fine grant impeach jail legalize meet hit strike").split()
INTRANS_NEWS = "resign die collapse erupt arrive flee sink crash fall rise strike vote agree default " \
               "disappear escape derail recede".split()
TRANS_CB = ("love hate try eat make watch see know guess find need remember make want tell take "
            "build draw wear ruin bake cook name spot solve share buy save surprise text prank "
            "describe explain recreate transform").split()
INTRANS_CB = "happen cry smile laugh dance wait sleep travel relate work live".split()
SAY_VERBS = ["say", "warn", "announce", "claim", "admit", "reveal", "report"]
EXTRA_VERBS = ("fly sing sleep swim run win lose fall rise smile laugh dance work wait arrive die cry grow "
               "understand relate appreciate recognize get identify pass finish survive answer remember "
               "blow surprise amaze melt grin feel think read travel cook post share write give send "
               "injure limit end form resolve clash resume seek begin rank test taste ask").split()
LEX.verbs.setdefault("fly", ("fly", "flies", "flew", "flown", "flying"))
LEX.verbs.setdefault("understand", ("understand", "understands", "understood", "understood", "understanding"))
for _b in TRANS_NEWS + INTRANS_NEWS + TRANS_CB + INTRANS_CB + SAY_VERBS + EXTRA_VERBS:
    if _b not in LEX.verbs:
        LEX.verbs[_b] = L._regular_forms(_b)


def pick(rng, seq):
    return seq[rng.randrange(len(seq))]


def chance(rng, p):
    return rng.random() < p


# ---------------------------------------------------------------- words

def noun(rng, plural=False, mass_ok=True):
    if plural:
        s, p = pick(rng, LEX.count_nouns)
        return Tok(p, "NNS")
    if mass_ok and chance(rng, 0.12):
        return Tok(pick(rng, LEX.mass), "NN")
    s, _ = pick(rng, LEX.count_nouns)
    return Tok(s, "NN")


def proper_np(rng):
    if chance(rng, 0.35):
        parts = pick(rng, LEX.names).split()
        head = Tok(parts[-1], "NNP")
        mods = parts[:-1]
        # "Grey 's Anatomy" and "Gulf of Mexico" style names
        if "'s" in mods:
            i = mods.index("'s")
            owner = Tok(mods[i - 1], "NNP")
            owner.r(Tok("'s", "POS"), "case")
            for m in mods[:i - 1]:
                owner.l(Tok(m, "NNP"), "compound")
            head.l(owner, "nmod:poss")
            for m in mods[i + 1:]:
                head.l(Tok(m, "NNP"), "compound")
            return head
        if "of" in mods or "de" in mods:
            return Tok(parts[0], "NNP").r(Tok(parts[-1], "NNP").l(Tok(mods[1], "IN"), "case"), "nmod") \
                if len(parts) == 3 else Tok(parts[0], "NNP")
        for m in mods:
            head.l(Tok(m, "NNP"), "compound")
        return head
    return Tok(pick(rng, LEX.proper), "NNP")


def number(rng, small=False):
    r = rng.random()
    if small or r < 0.6:
        return Tok(str(rng.randint(2, 40)), "CD")
    if r < 0.75:
        return Tok(pick(rng, ["12", "20", "24", "27", "35", "47", "69", "100", "200", "400", "500"]), "CD")
    if r < 0.85:
        return Tok(pick(rng, ["1,000", "8,000", "50,000", "2,500", "10,000"]), "CD")
    if r < 0.92:
        return Tok(pick(rng, ["6.4", "7.1", "7.8", "5.5", "2.3"]), "CD")
    return Tok(pick(rng, L.NUMBER_WORDS[:10]), "CD")


def adjective(rng):
    r = rng.random()
    if r < 0.12:
        g = pick(rng, LEX.grad)
        return Tok(g[2], "JJS")
    if r < 0.18:
        g = pick(rng, LEX.grad)
        return Tok(g[1], "JJR")
    return Tok(pick(rng, LEX.adj), "JJ")


def verb_form(rng, base, form):
    if base not in LEX.verbs:
        LEX.verbs[base] = L._regular_forms(base)
    forms = LEX.verbs[base]
    return {"VB": forms[0], "VBP": forms[0], "VBZ": forms[1], "VBD": forms[2], "VBN": forms[3],
            "VBG": forms[4]}[form]


def verb(base, form):
    return Tok(verb_form(None, base, form), form)


# ---------------------------------------------------------------- noun phrases

DETS_SG = [("the", "DT"), ("a", "DT"), ("this", "DT"), ("that", "DT"), ("every", "DT"), ("which", "WDT"),
           ("what", "WDT"), ("your", "PRP$"), ("my", "PRP$"), ("his", "PRP$"), ("her", "PRP$"),
           ("their", "PRP$"), ("our", "PRP$"), ("its", "PRP$"), ("another", "DT"), ("no", "DT")]
DETS_PL = [("the", "DT"), ("these", "DT"), ("those", "DT"), ("all", "DT"), ("some", "DT"), ("your", "PRP$"),
           ("their", "PRP$"), ("my", "PRP$"), ("our", "PRP$"), ("which", "WDT"), ("what", "WDT")]


def det_for(rng, head, news=False):
    plural = head.tag == "NNS"
    if news and chance(rng, 0.7):
        return None
    form, tag = pick(rng, DETS_PL if plural else DETS_SG)
    if form == "a" and head_starts_vowel(head):
        form = "an"
    rel = "nmod:poss" if tag == "PRP$" else "det"
    return Tok(form, tag), rel


def head_starts_vowel(tok):
    return tok.form[:1].lower() in "aeiou"


def common_np(rng, plural=None, news=False, depth=0, det=True, allow_rel=True, allow_pp=True):
    if plural is None:
        plural = chance(rng, 0.4)
    head = noun(rng, plural=plural)
    mods = []  # (tok, rel) from outermost to innermost
    if det:
        if plural and chance(rng, 0.25):
            mods.append((number(rng), "nummod"))
        elif chance(rng, 0.12) and depth == 0:
            owner = proper_np(rng) if chance(rng, 0.6) else noun(rng, plural=False, mass_ok=False)
            if owner.tag == "NN" and chance(rng, 0.7):
                d = det_for(rng, owner, news)
                if d:
                    owner.l(*d)
            owner.r(Tok("'s", "POS"), "case")
            mods.append((owner, "nmod:poss"))
        else:
            d = det_for(rng, head, news)
            if d:
                mods.append(d)
    n_adj = 0 if chance(rng, 0.45) else (1 if chance(rng, 0.8) else 2)
    for _ in range(n_adj):
        a = adjective(rng) if chance(rng, 0.85) else Tok(pick(rng, LEX.nat), "JJ")
        if a.tag == "JJ" and chance(rng, 0.08):
            a.l(Tok(pick(rng, ["very", "so", "really", "totally", "incredibly"]), "RB"), "advmod")
        mods.append((a, "amod"))
    if chance(rng, 0.25):
        c = proper_np(rng) if chance(rng, 0.4) else noun(rng, plural=False, mass_ok=True)
        mods.append((c, "compound"))
    for tok, rel in mods:
        head.l(tok, rel)
    if allow_pp and depth < 1 and chance(rng, 0.15):
        head.r(pp(rng, news, depth + 1), "nmod")
    if allow_rel and depth < 1 and chance(rng, 0.1):
        head.r(relative_clause(rng, head, news, depth + 1), "acl:relcl")
    return head


def np(rng, news=False, depth=0, plural=None, allow_rel=True, allow_pp=True, pron=True):
    r = rng.random()
    if pron and r < (0.05 if news else 0.22):
        return pronoun(rng)
    if r < (0.45 if news else 0.32):
        head = proper_np(rng)
        if news and chance(rng, 0.25):
            title = Tok(pick(rng, ["president", "minister", "leader", "chief", "governor", "general",
                                   "actor", "activist", "dictator", "politician", "premier"]), "NN")
            head.lfront(title, "compound")
            if chance(rng, 0.5):
                head.lfront(Tok(pick(rng, LEX.nat), "JJ"), "amod")
            if chance(rng, 0.3):
                head.lfront(Tok("former", "JJ"), "amod")
        elif chance(rng, 0.15):
            head.lfront(Tok(pick(rng, LEX.nat), "JJ"), "amod")
        return head
    return common_np(rng, plural=plural, news=news, depth=depth, allow_rel=allow_rel, allow_pp=allow_pp)


PRONOUNS = [("you", "PRP", "2"), ("we", "PRP", "p"), ("they", "PRP", "p"), ("i", "PRP", "1"),
            ("she", "PRP", "3"), ("he", "PRP", "3"), ("it", "PRP", "3"), ("everyone", "NN", "3"),
            ("people", "NNS", "p"), ("nobody", "NN", "3"), ("someone", "NN", "3")]


def pronoun(rng, kinds=None):
    form, tag, _ = pick(rng, kinds or PRONOUNS)
    t = Tok(form, tag)
    return t


def is_third_singular(subj):
    if subj.tag in ("NNS", "NNPS"):
        return False
    if subj.tag == "PRP":
        return subj.form in ("she", "he", "it")
    if subj.tag == "CD":
        return False
    # coordinated subjects are plural
    return not any(c.rel == "conj" for c in subj.right)


PREPS = ["in", "on", "at", "for", "with", "from", "after", "over", "near", "about", "during", "without",
         "into", "against", "amid", "before", "under", "of", "like", "across"]
NEWS_PREPS = ["in", "in", "in", "after", "over", "amid", "near", "at", "for", "on", "against", "from"]


ACC = {"i": "me", "we": "us", "they": "them", "she": "her", "he": "him"}


def obj_np(rng, news=False, depth=1, allow_rel=False):
    o = np(rng, news=news, depth=depth, allow_rel=allow_rel)
    if o.tag == "PRP":
        o.form = ACC.get(o.form, o.form)
    return o


def pp(rng, news=False, depth=1, prep=None):
    obj = np(rng, news=news, depth=depth, allow_rel=False, allow_pp=depth < 2, pron=not news)
    if obj.tag == "PRP":
        obj.form = {"i": "me", "we": "us", "they": "them", "she": "her", "he": "him"}.get(obj.form, obj.form)
    p = prep or pick(rng, NEWS_PREPS if news else PREPS)
    obj.lfront(Tok(p, "IN"), "case")
    return obj


# ---------------------------------------------------------------- clauses

def finite(rng, base, subj, tense):
    """Finite verb for `subj` in `tense` in {'pres','past'}; returns (verb tok, aux toks)."""
    if tense == "past":
        return Tok(verb_form(rng, base, "VBD"), "VBD")
    if is_third_singular(subj):
        return Tok(verb_form(rng, base, "VBZ"), "VBZ")
    return Tok(verb_form(rng, base, "VBP"), "VBP")


CONTRACT = random.Random(5)


def be_form(subj, tense):
    if tense == "pres" and subj.tag == "PRP" and CONTRACT.random() < 0.4:
        if subj.form == "i":
            return ("'m", "VBP")
        return ("'s", "VBZ") if is_third_singular(subj) else ("'re", "VBP")
    if tense == "past":
        return ("was", "VBD") if is_third_singular(subj) or subj.form == "i" else ("were", "VBD")
    if subj.form == "i":
        return ("am", "VBP")
    return ("is", "VBZ") if is_third_singular(subj) else ("are", "VBP")


def have_form(subj):
    if subj.tag == "PRP" and CONTRACT.random() < 0.35:
        return ("'s", "VBZ") if is_third_singular(subj) else ("'ve", "VBP")
    return ("has", "VBZ") if is_third_singular(subj) else ("have", "VBP")


def add_adjuncts(rng, v, news, p_pp=0.35, p_adv=0.12):
    if chance(rng, p_adv):
        v.r(Tok(pick(rng, ["again", "today", "forever", "together", "now", "tonight", "online", "here"]), "RB"),
            "advmod")
    if chance(rng, p_pp):
        v.r(pp(rng, news), "nmod")


def clause(rng, subj=None, news=False, tense=None, depth=0, kind=None, verbs=None):
    """A declarative clause; returns its head token (subject attached)."""
    if subj is None:
        subj = np(rng, news=news, depth=depth, allow_rel=depth == 0)
    if tense is None:
        tense = "pres" if (news or chance(rng, 0.6)) else "past"
    if kind is None:
        kind = rng.choices(["trans", "intrans", "passive", "cop", "modal", "perfect", "prog"],
                           weights=[40, 14, 10, 10, 10, 8, 8] if not news else [50, 18, 14, 4, 4, 6, 4])[0]
    tv = verbs or (TRANS_NEWS if news else TRANS_CB)
    iv = INTRANS_NEWS if news else INTRANS_CB
    if kind == "trans":
        v = finite(rng, pick(rng, tv), subj, tense)
        v.l(subj, "nsubj")
        if chance(rng, 0.07):
            v.l(Tok(pick(rng, ["finally", "secretly", "actually", "just", "officially"]), "RB"), "advmod")
        v.r(obj_np(rng, news=news, depth=depth + 1, allow_rel=depth == 0), "dobj")
        add_adjuncts(rng, v, news)
        return v
    if kind == "intrans":
        v = finite(rng, pick(rng, iv), subj, tense)
        v.l(subj, "nsubj")
        if not news and chance(rng, 0.15):
            # do-support negation: "doesn't work", "didn't cry"
            aux = "did" if tense == "past" else ("does" if is_third_singular(subj) else "do")
            v.form = verb_form(rng, v.form if v.tag == "VBP" else pick(rng, iv), "VB")
            v.tag = "VB"
            v.l(Tok(aux, "VBD" if aux == "did" else ("VBZ" if aux == "does" else "VBP")), "aux")
            v.l(Tok("n't", "RB"), "neg")
        add_adjuncts(rng, v, news, p_pp=0.6)
        return v
    if kind == "passive":
        v = Tok(verb_form(rng, pick(rng, tv), "VBN"), "VBN")
        v.l(subj, "nsubjpass")
        if not news or chance(rng, 0.3):
            form, tag = be_form(subj, tense)
            v.l(Tok(form, tag), "auxpass")
        if chance(rng, 0.35):
            agent = np(rng, news=news, depth=depth + 1, allow_rel=False)
            if agent.tag == "PRP":
                agent.form = {"i": "me", "we": "us", "they": "them", "she": "her", "he": "him"}.get(agent.form,
                                                                                                 agent.form)
            agent.lfront(Tok("by", "IN"), "case")
            v.r(agent, "nmod:agent")
        add_adjuncts(rng, v, news, p_pp=0.4)
        return v
    if kind == "cop":
        form, tag = be_form(subj, tense)
        if chance(rng, 0.55):
            head = adjective(rng) if chance(rng, 0.8) else Tok(pick(rng, ["adorable", "hilarious", "perfect",
                                                                          "heartbreaking", "everything"]),
                                                               "JJ")
            if head.form == "everything":
                head.tag = "NN"
            if chance(rng, 0.2):
                head.l(Tok(pick(rng, ["so", "too", "actually", "really", "totally"]), "RB"), "advmod")
        else:
            head = np(rng, news=news, depth=depth + 1, allow_rel=False, pron=False)
        head.lfront(Tok(form, tag), "cop")
        head.lfront(subj, "nsubj")
        if chance(rng, 0.15):
            head.r(pp(rng, news), "nmod")
        return head
    if kind == "modal":
        v = Tok(pick(rng, tv + iv), "VB")
        v.form = verb_form(rng, v.form, "VB")
        v.l(subj, "nsubj")
        md = pick(rng, ["will", "can", "could", "should", "would", "might", "must"])
        if chance(rng, 0.2):
            md = {"will": "wo", "can": "ca"}.get(md, md)
            v.l(Tok(md, "MD"), "aux")
            v.l(Tok("n't", "RB"), "neg")
        else:
            if subj.tag == "PRP" and md in ("will", "would") and chance(rng, 0.4):
                md = "'ll" if md == "will" else "'d"
            v.l(Tok(md, "MD"), "aux")
            if chance(rng, 0.12):
                v.l(Tok("never", "RB"), "neg")
        if v.form in [verb_form(rng, b, "VB") for b in tv]:
            v.r(obj_np(rng, news=news, depth=depth + 1), "dobj")
        add_adjuncts(rng, v, news)
        return v
    if kind == "perfect":
        base = pick(rng, tv)
        v = Tok(verb_form(rng, base, "VBN"), "VBN")
        v.l(subj, "nsubj")
        form, tag = have_form(subj)
        v.l(Tok(form, tag), "aux")
        v.r(obj_np(rng, news=news, depth=depth + 1), "dobj")
        add_adjuncts(rng, v, news)
        return v
    # progressive
    base = pick(rng, tv)
    v = Tok(verb_form(rng, base, "VBG"), "VBG")
    v.l(subj, "nsubj")
    form, tag = be_form(subj, tense)
    v.l(Tok(form, tag), "aux")
    v.r(obj_np(rng, news=news, depth=depth + 1), "dobj")
    add_adjuncts(rng, v, news)
    return v


def relative_clause(rng, antecedent, news, depth):
    animate = antecedent.tag in ("NNS", "NNP") or antecedent.form in ("man", "woman", "girl", "boy", "dad",
                                                                     "mom", "teacher", "kid", "guy")
    r = rng.random()
    if r < 0.2:
        # whose N (and N) were VBN by NP
        poss_head = noun(rng, plural=False, mass_ok=False)
        poss_head.l(Tok("whose", "WP$"), "nmod:poss")
        if chance(rng, 0.4):
            poss_head.r(Tok("and", "CC"), "cc")
            poss_head.r(noun(rng, plural=False, mass_ok=False), "conj")
        v = Tok(verb_form(rng, pick(rng, TRANS_NEWS), "VBN"), "VBN")
        v.l(poss_head, "nsubjpass")
        plural_subj = any(c.rel == "conj" for c in poss_head.right)
        v.l(Tok("were" if plural_subj else "was", "VBD"), "auxpass")
        agent = common_np(rng, plural=False, news=False, depth=2, allow_rel=False, allow_pp=False)
        agent.lfront(Tok("by", "IN"), "case")
        v.r(agent, "nmod:agent")
        return v
    rel_pron = Tok("who", "WP") if animate and chance(rng, 0.6) else Tok(pick(rng, ["that", "which"]), "WDT")
    subj_proxy = Tok(antecedent.form, antecedent.tag)
    tense = "pres" if chance(rng, 0.6) else "past"
    if r < 0.75:
        if chance(rng, 0.35):
            v = Tok(pick(rng, TRANS_CB + TRANS_NEWS), "VB")
            v.form = verb_form(rng, v.form, "VB")
            v.l(Tok(pick(rng, ["will", "can", "could", "would"]), "MD"), "aux")
        else:
            v = finite(rng, pick(rng, TRANS_CB + TRANS_NEWS + INTRANS_CB), subj_proxy, tense)
        v.lfront(rel_pron, "nsubj")
        if v.form in {f for b in TRANS_CB + TRANS_NEWS for f in LEX.verbs[b]}:
            v.r(obj_np(rng, news=news, depth=depth + 1), "dobj")
        if chance(rng, 0.3):
            v.r(pp(rng, news, depth + 1), "nmod")
        return v
    # object relative: (that) you V
    subj = pronoun(rng, [("you", "PRP", "2"), ("we", "PRP", "p"), ("people", "NNS", "p"), ("she", "PRP", "3")])
    base = pick(rng, TRANS_CB)
    if chance(rng, 0.4):
        v = Tok(verb_form(rng, base, "VB"), "VB")
        v.l(subj, "nsubj")
        v.lfront(Tok("will", "MD"), "aux") if False else v.l(Tok(pick(rng, ["will", "can", "should"]), "MD"),
                                                             "aux")
    else:
        v = finite(rng, base, subj, tense)
        v.l(subj, "nsubj")
    if chance(rng, 0.5):
        rel_pron = Tok("that", "WDT")
        v.lfront(rel_pron, "dobj")
    return v


# ---------------------------------------------------------------- headline templates

def with_punct(root, rng, mark):
    if mark:
        tag = "." if mark in ("?", "!", ".") else ":"
        root.r(Tok(mark, tag), "punct")
    return root


def t_listicle(rng):
    head = Tok(L.plural(pick(rng, LEX.count_nouns)[0]), "NNS") if chance(rng, 0.5) else \
        Tok(pick(rng, ["things", "reasons", "photos", "pictures", "times", "signs", "tweets", "struggles",
                       "moments", "facts", "ways", "thoughts", "jokes", "dogs", "cats", "people", "hacks",
                       "faces", "celebrities", "texts"]), "NNS")
    head.l(number(rng, small=True), "nummod")
    if chance(rng, 0.3):
        head.l(adjective(rng), "amod")
    r = rng.random()
    if r < 0.35:
        v = relative_clause(rng, head, False, 1)
        head.r(v, "acl:relcl")
    elif r < 0.55:
        # only people who V will understand
        ppl = Tok(pick(rng, ["people", "girls", "guys", "kids", "parents", "teachers", "nurses", "introverts"]),
                  "NNS")
        ppl.l(Tok("only", "RB"), "advmod")
        if chance(rng, 0.5):
            ppl.r(relative_clause(rng, ppl, False, 1), "acl:relcl")
        v = Tok(pick(rng, ["understand", "know", "relate", "appreciate", "recognize", "get"]), "VB")
        v.l(ppl, "nsubj")
        v.l(Tok("will", "MD"), "aux")
        head.r(v, "acl:relcl")
    elif r < 0.75:
        # things every X knows / you didn't know about Y
        subj = pronoun(rng, [("you", "PRP", "2"), ("everyone", "NN", "3"), ("we", "PRP", "p")])
        if chance(rng, 0.4):
            v = Tok("know", "VB")
            v.l(subj, "nsubj")
            v.l(Tok("did" if chance(rng, 0.5) else "do", "VBD"), "aux")
            v.l(Tok("n't", "RB"), "neg")
        else:
            v = finite(rng, pick(rng, ["need", "want", "love", "hate", "know", "remember", "see"]), subj, "pres")
            v.l(subj, "nsubj")
        if chance(rng, 0.6):
            v.r(pp(rng, False, 1, prep=pick(rng, ["about", "from", "in", "at"])), "nmod")
        head.r(v, "acl:relcl")
    else:
        head.r(pp(rng, False, 1, prep=pick(rng, ["of", "about", "from", "for", "with"])), "nmod")
    return with_punct(head, rng, None)


def t_which_are_you(rng):
    head = noun(rng, plural=False, mass_ok=False) if chance(rng, 0.5) else Tok(
        pick(rng, ["character", "song", "princess", "villain", "superhero", "witch", "housewife", "city",
                   "celebrity", "dog", "food", "pizza", "flavor", "country", "movie", "book"]), "NN")
    head.l(Tok(pick(rng, ["which", "what"]), "WDT"), "det")
    if chance(rng, 0.3):
        head.l(adjective(rng), "amod")
    if chance(rng, 0.25):
        # quoted show title
        title = proper_np(rng)
        title.lfront(Tok("'", "``"), "punct")
        title.r(Tok("'", "''"), "punct")
        head.l(title, "compound")
    elif chance(rng, 0.45):
        head.l(proper_np(rng), "compound")
    are = Tok("are", "VBP")
    you = Tok("you", "PRP")
    if chance(rng, 0.45):
        v = Tok("based", "VBN")
        v.l(head, "dobj")
        v.l(are, "aux")
        v.l(you, "nsubj")
        obj = Tok(pick(rng, ["month", "sign", "habits", "taste", "choices", "order", "answers", "routine",
                             "personality", "preferences"]), "NN")
        if obj.form.endswith("s"):
            obj.tag = "NNS"
        if chance(rng, 0.6):
            obj.l(Tok(pick(rng, ["birth", "zodiac", "food", "music", "fashion", "coffee", "emoji", "pizza"]),
                      "NN"), "compound")
        obj.lfront(Tok("your", "PRP$"), "nmod:poss")
        obj.lfront(Tok("on", "IN"), "case")
        v.r(obj, "nmod")
        return with_punct(v, rng, "?" if chance(rng, 0.4) else None)
    head.r(are, "cop")
    head.r(you, "nsubj")
    if chance(rng, 0.3):
        head.r(Tok(pick(rng, ["really", "actually", "secretly"]), "RB"), "advmod")
    return with_punct(head, rng, "?" if chance(rng, 0.4) else None)


def t_can_you(rng):
    base = pick(rng, ["guess", "name", "spot", "identify", "remember", "pass", "finish", "solve", "survive",
                      "get", "answer"])
    v = Tok(base, "VB")
    v.l(Tok(pick(rng, ["can", "could"]), "MD"), "aux")
    v.l(Tok(pick(rng, ["you", "we"]), "PRP"), "nsubj")
    obj = np(rng, depth=1, allow_rel=False, pron=False)
    v.r(obj, "dobj")
    if chance(rng, 0.35):
        based = Tok("based", "VBN")
        o = common_np(rng, plural=False, depth=2, det=False, allow_rel=False, allow_pp=False)
        o.lfront(Tok("your", "PRP$"), "nmod:poss")
        o.lfront(Tok("on", "IN"), "case")
        based.r(o, "nmod")
        v.r(based, "advcl")
    elif chance(rng, 0.3):
        v.r(pp(rng, False, 1), "nmod")
    return with_punct(v, rng, "?")


def t_how_well(rng):
    v = Tok(pick(rng, ["know", "remember", "understand"]), "VB")
    well = Tok(pick(rng, ["well", "much"]), "RB")
    well.l(Tok("how", "WRB"), "advmod")
    v.l(well, "advmod")
    v.l(Tok("do", "VBP"), "aux")
    v.l(Tok("you", "PRP"), "nsubj")
    if chance(rng, 0.3):
        v.l(Tok("actually", "RB"), "advmod")
    v.r(np(rng, depth=1, allow_rel=False, pron=False), "dobj")
    return with_punct(v, rng, "?" if chance(rng, 0.6) else None)


def t_how_many(rng):
    obj = Tok(L.plural(pick(rng, LEX.count_nouns)[0]), "NNS")
    many = Tok("many", "JJ")
    many.l(Tok("how", "WRB"), "advmod")
    obj.l(many, "amod")
    if chance(rng, 0.5):
        inner = obj
        obj = Tok("many", "JJ")
        obj.l(Tok("how", "WRB"), "advmod")
        inner.left = [c for c in inner.left if c.rel != "amod"]
        inner.l(Tok("these", "DT"), "det")
        inner.lfront(Tok("of", "IN"), "case")
        obj.r(inner, "nmod")
    v = Tok(pick(rng, ["seen", "tried", "eaten", "read", "visited"]), "VBN")
    v.l(obj, "dobj")
    v.l(Tok("have", "VBP"), "aux")
    v.l(Tok("you", "PRP"), "nsubj")
    if chance(rng, 0.4):
        v.l(Tok("actually", "RB"), "advmod")
    return with_punct(v, rng, "?")


def t_this_is_what(rng):
    is_ = Tok("is", "VBZ")
    is_.l(Tok("this", "DT"), "nsubj")
    happens = Tok(pick(rng, ["happens", "happened"]), "VBZ")
    if happens.form == "happened":
        happens.tag = "VBD"
    happens.l(Tok("what", "WP"), "nsubj")
    when = clause(rng, subj=np(rng, depth=1, allow_rel=False), tense="pres")
    when.lfront(Tok("when", "WRB"), "mark")
    happens.r(when, "advcl")
    is_.r(happens, "ccomp")
    return with_punct(is_, rng, None)


def t_heres(rng):
    s = Tok("'s", "VBZ")
    s.l(Tok("here", "RB"), "advmod")
    wh = pick(rng, [("why", "WRB"), ("what", "WP"), ("how", "WRB")])
    if wh[0] == "what" and chance(rng, 0.5):
        v = Tok(pick(rng, ["happened", "happens"]), "VBD")
        if v.form == "happens":
            v.tag = "VBZ"
        v.l(Tok("what", "WP"), "nsubj")
        if chance(rng, 0.6):
            when = clause(rng, subj=np(rng, depth=1, allow_rel=False), tense="pres")
            when.lfront(Tok("when", "WRB"), "mark")
            v.r(when, "advcl")
    else:
        v = clause(rng, depth=1)
        v.lfront(Tok(wh[0], wh[1]), "advmod")
    s.r(v, "ccomp")
    return with_punct(s, rng, None)


def t_you_wont_believe(rng):
    v = Tok("believe", "VB")
    v.l(Tok("you", "PRP"), "nsubj")
    if chance(rng, 0.5):
        v.l(Tok("wo", "MD"), "aux")
        v.l(Tok("n't", "RB"), "neg")
    else:
        v.l(Tok("will", "MD"), "aux")
        v.l(Tok("never", "RB"), "neg")
    if chance(rng, 0.5):
        inner = clause(rng, tense="past", kind="trans")
        # turn the object into "what"
        inner.right = [c for c in inner.right if c.rel != "dobj"]
        inner.lfront(Tok("what", "WP"), "dobj")
    else:
        inner = clause(rng, tense="pres", kind=pick(rng, ["cop", "trans", "intrans"]))
        inner.lfront(Tok(pick(rng, ["how", "why"]), "WRB"), "advmod")
    v.r(inner, "ccomp")
    return with_punct(v, rng, None)


def t_what_happens_next(rng):
    v = Tok(pick(rng, ["blow", "make", "surprise", "shock", "amaze", "melt"]), "VB")
    if v.form in ("shock",):
        v.form = "surprise"
    happens = Tok(pick(rng, ["happens", "happened"]), "VBZ")
    if happens.form == "happened":
        happens.tag = "VBD"
    happens.l(Tok("what", "WP"), "nsubj")
    happens.r(Tok("next", "RB"), "advmod")
    v.l(happens, "csubj")
    v.l(Tok("will", "MD"), "aux")
    obj = Tok(pick(rng, ["mind", "heart", "day"]), "NN")
    obj.l(Tok("your", "PRP$"), "nmod:poss")
    v.r(obj, "dobj")
    first = None
    if chance(rng, 0.5):
        first = clause(rng, kind="trans", tense="past", subj=pronoun(rng, [("they", "PRP", "p"),
                                                                        ("she", "PRP", "3")]))
        with_punct(first, rng, ".")
        first.r(v, "parataxis")
        return first
    return v


def t_will_make_you(rng):
    subj = np(rng, depth=1, allow_rel=False, pron=False)
    v = Tok("make", "VB")
    v.l(subj, "nsubj")
    v.l(Tok("will", "MD"), "aux")
    v.r(Tok("you", "PRP"), "dobj")
    comp = Tok(pick(rng, ["smile", "cry", "laugh", "believe", "grin", "want", "feel", "think"]), "VB")
    if comp.form in ("feel",):
        comp.r(adjective(rng), "xcomp")
    elif comp.form == "want":
        inner = Tok(pick(rng, ["read", "travel", "cook", "dance"]), "VB")
        inner.l(Tok("to", "TO"), "mark")
        comp.r(inner, "xcomp")
    elif chance(rng, 0.3):
        comp.r(Tok(pick(rng, ["again", "today", "instantly"]), "RB"), "advmod")
    v.r(comp, "ccomp")
    return with_punct(v, rng, None)


def t_and_its(rng):
    first = clause(rng, tense="past", kind=pick(rng, ["trans", "trans", "intrans"]),
                   subj=np(rng, depth=1, allow_rel=False))
    first.r(Tok("and", "CC"), "cc")
    if chance(rng, 0.5):
        s = Tok("'s", "VBZ")
        adj = Tok(pick(rng, ["hilarious", "perfect", "adorable", "gorgeous", "heartbreaking", "amazing",
                             "beautiful", "everything", "weird", "priceless"]), "JJ")
        if adj.form == "everything":
            adj.tag = "NN"
        adj.l(Tok("it", "PRP"), "nsubj")
        adj.l(s, "cop")
        if chance(rng, 0.3):
            adj.l(Tok(pick(rng, ["actually", "so", "totally"]), "RB"), "advmod")
        first.r(adj, "conj")
    else:
        s = Tok("'s", "VBZ")
        s.l(Tok("here", "RB"), "advmod")
        v = Tok("happened", "VBD")
        v.l(Tok("what", "WP"), "nsubj")
        s.r(v, "ccomp")
        first.r(s, "conj")
    return first


def t_subject_is_going_viral(rng):
    subj = np(rng, depth=1, allow_rel=False, pron=False)
    r = rng.random()
    if r < 0.4:
        v = Tok(pick(rng, ["losing", "freaking", "obsessing", "talking", "going", "breaking"]), "VBG")
        form, tag = be_form(subj, "pres")
        v.l(subj, "nsubj")
        v.l(Tok(form, tag), "aux")
        if v.form == "going":
            v.r(Tok("viral", "JJ"), "xcomp")
        elif v.form == "breaking":
            o = Tok(pick(rng, ["hearts", "internet", "records"]), "NNS")
            if o.form == "internet":
                o.tag = "NN"
                o.l(Tok("the", "DT"), "det")
            v.r(o, "dobj")
        else:
            o = np(rng, depth=1, allow_rel=False, pron=False)
            o.lfront(Tok("over", "IN"), "case")
            v.r(o, "nmod")
        return v
    if r < 0.7:
        adj = Tok("obsessed", "JJ")
        form, tag = be_form(subj, "pres")
        adj.l(subj, "nsubj")
        adj.l(Tok(form, tag), "cop")
        o = np(rng, depth=1, allow_rel=False, pron=False)
        o.lfront(Tok("with", "IN"), "case")
        adj.r(o, "nmod")
        return adj
    v = Tok(pick(rng, ["need", "have"]), "VBP" if not is_third_singular(subj) else "VBZ")
    if is_third_singular(subj):
        v.form = v.form + "s" if v.form == "need" else "has"
    v.l(subj, "nsubj")
    inner = Tok(pick(rng, ["see", "watch", "try", "meet"]), "VB")
    inner.l(Tok("to", "TO"), "mark")
    inner.r(np(rng, depth=1, allow_rel=False, pron=False), "dobj")
    v.r(inner, "xcomp")
    return v


def t_what_your_x_says(rng):
    v = Tok(pick(rng, ["says", "reveals"]), "VBZ")
    subj = common_np(rng, plural=False, det=False, depth=1, allow_rel=False, allow_pp=False)
    subj.lfront(Tok("your", "PRP$"), "nmod:poss")
    v.l(Tok("what", "WP"), "dobj")
    v.l(subj, "nsubj")
    o = Tok("you", "PRP")
    o.lfront(Tok("about", "IN"), "case")
    v.r(o, "nmod")
    return v


def t_we_tried(rng):
    v = Tok(pick(rng, ["tried", "tested", "ranked", "tasted", "asked"]), "VBD")
    v.l(Tok(pick(rng, ["we", "i"]), "PRP"), "nsubj")
    if v.form == "asked":
        v.r(Tok(pick(rng, ["strangers", "teens", "kids", "people", "parents"]), "NNS"), "dobj")
        inner = Tok(pick(rng, ["describe", "explain", "draw", "name", "try"]), "VB")
        inner.l(Tok("to", "TO"), "mark")
        inner.r(np(rng, depth=1, allow_rel=False, pron=False), "dobj")
        v.r(inner, "xcomp")
    else:
        v.r(np(rng, depth=1, allow_rel=False, pron=False), "dobj")
        if chance(rng, 0.4):
            o = Tok("week", "NN")
            o.l(Tok("a", "DT"), "det")
            o.lfront(Tok("for", "IN"), "case")
            v.r(o, "nmod")
    if chance(rng, 0.6):
        v.r(Tok("and", "CC"), "cc")
        s = Tok("'s", "VBZ")
        s.l(Tok("here", "RB"), "advmod")
        if chance(rng, 0.5):
            h = Tok("happened", "VBD")
            h.l(Tok("what", "WP"), "nsubj")
        else:
            h = Tok("went", "VBD")
            h.l(Tok("how", "WRB"), "advmod")
            h.l(Tok("it", "PRP"), "nsubj")
        s.r(h, "ccomp")
        v.r(s, "conj")
    return v


def t_these_are(rng):
    subj = common_np(rng, plural=True, det=False, depth=1, allow_rel=False)
    subj.lfront(Tok(pick(rng, ["these", "those", "the"]), "DT"), "det")
    head = clause(rng, subj=subj, tense="pres", kind=pick(rng, ["cop", "prog", "trans"]))
    return with_punct(head, rng, None)


def t_only(rng):
    subj = Tok(pick(rng, ["geniuses", "people", "kids", "fans", "nerds", "parents"]), "NNS")
    subj.l(Tok("only", "RB"), "advmod")
    if chance(rng, 0.3):
        subj.l(Tok("true", "JJ"), "amod")
    v = Tok(pick(rng, ["solve", "pass", "get", "understand", "finish", "answer"]), "VB")
    v.l(subj, "nsubj")
    v.l(Tok(pick(rng, ["can", "will"]), "MD"), "aux")
    v.r(np(rng, depth=1, allow_rel=False, pron=False), "dobj")
    return with_punct(v, rng, None)


def t_is_this(rng):
    head = Tok(pick(rng, ["proposal", "video", "dog", "cake", "dress", "photo", "song", "thing"]), "NN")
    head.l(Tok("is", "VBZ"), "cop")
    head.l(Tok("this", "DT"), "nsubj")
    head.l(Tok("the", "DT"), "det")
    head.l(Tok(pick(rng, [g[2] for g in LEX.grad]), "JJS"), "amod")
    head.r(Tok("ever", "RB"), "advmod")
    return with_punct(head, rng, "?")


def t_do_you(rng):
    v = Tok(pick(rng, ["remember", "know", "have", "love", "want"]), "VB")
    v.l(Tok("do", "VBP"), "aux")
    v.l(Tok("you", "PRP"), "nsubj")
    v.r(np(rng, depth=1, allow_rel=False, pron=False), "dobj")
    return with_punct(v, rng, "?")


def t_cb_clause(rng):
    head = clause(rng, news=False)
    if chance(rng, 0.15):
        head.r(Tok(pick(rng, ["!", "!!!", "...", "?!"]), "."), "punct")
    return head


def t_whose_posted(rng):
    subj = Tok(f"{rng.randint(18, 90)}-year-old", "NN") if chance(rng, 0.5) else noun(rng, False, False)
    subj.l(Tok("a", "DT"), "det")
    subj.r(relative_clause(rng, subj, False, 1) if chance(rng, 0.3) else whose_clause(rng), "acl:relcl")
    v = Tok(verb_form(rng, pick(rng, ["post", "share", "write", "reveal", "make", "give", "send"]), "VBN"),
            "VBN")
    v.l(subj, "nsubj")
    v.l(Tok("has", "VBZ"), "aux")
    obj = common_np(rng, plural=False, det=False, depth=1, allow_rel=False, allow_pp=False)
    obj.lfront(Tok("a", "DT"), "det")
    v.r(obj, "dobj")
    return v


def whose_clause(rng):
    poss_head = noun(rng, plural=False, mass_ok=False)
    poss_head.l(Tok("whose", "WP$"), "nmod:poss")
    conj = chance(rng, 0.5)
    if conj:
        poss_head.r(Tok("and", "CC"), "cc")
        poss_head.r(noun(rng, plural=False, mass_ok=False), "conj")
    v = Tok(verb_form(rng, pick(rng, ["kill", "injure", "attack", "rescue", "arrest", "hit"]), "VBN"), "VBN")
    v.l(poss_head, "nsubjpass")
    v.l(Tok("were" if conj else "was", "VBD"), "auxpass")
    agent = common_np(rng, plural=False, news=False, depth=2, det=False, allow_rel=False, allow_pp=False)
    agent.lfront(Tok("a", "DT"), "det")
    agent.lfront(Tok("by", "IN"), "case")
    v.r(agent, "nmod:agent")
    return v


def t_simple(rng):
    """Bare subject-verb sentences such as "birds fly"."""
    subj = Tok(L.plural(pick(rng, LEX.count_nouns)[0]), "NNS") if chance(rng, 0.6) else proper_np(rng)
    base = pick(rng, ["fly", "sing", "sleep", "swim", "run", "win", "lose", "fall", "rise", "smile",
                      "laugh", "dance", "work", "wait", "arrive", "die", "cry", "grow"])
    if base not in LEX.verbs:
        LEX.verbs[base] = L._regular_forms(base)
    v = finite(rng, base, subj, "pres" if chance(rng, 0.7) else "past")
    v.l(subj, "nsubj")
    if chance(rng, 0.3):
        v.r(Tok(pick(rng, ["again", "away", "together", "today", "home"]), "RB"), "advmod")
    return v


# News templates

def t_news_svo(rng):
    head = clause(rng, news=True, kind=pick(rng, ["trans", "trans", "trans", "intrans", "passive"]))
    return head


def t_news_kills(rng):
    subj = common_np(rng, plural=False, news=True, det=False, depth=1, allow_rel=False, allow_pp=False)
    v = Tok(pick(rng, ["kills", "injures", "leaves"]), "VBZ")
    v.l(subj, "nsubj")
    n = number(rng)
    if chance(rng, 0.4):
        at = Tok("at", "IN")
        at.r(Tok("least", "JJS"), "fixed")
        n.l(at, "advmod")
    if v.form == "leaves":
        o = Tok(pick(rng, ["dead", "injured", "homeless"]), "JJ")
        v.r(n, "dobj")
        v.r(o, "xcomp")
    else:
        v.r(n, "dobj")
    v.r(pp(rng, True, 1, prep="in"), "nmod")
    return v


def t_news_passive_headline(rng):
    subj = np(rng, news=True, depth=1, allow_rel=False, pron=False)
    r = rng.random()
    if r < 0.35:
        v = Tok("found", "VBN")
        v.l(subj, "nsubjpass")
        g = Tok(pick(rng, ["guilty", "dead", "innocent"]), "JJ")
        if g.form == "guilty":
            c = common_np(rng, plural=True, news=True, det=False, depth=2, allow_rel=False, allow_pp=False)
            c.lfront(Tok("of", "IN"), "case")
            g.r(c, "nmod")
        v.r(g, "xcomp")
        return v
    if r < 0.65:
        v = Tok("sentenced", "VBN")
        v.l(subj, "nsubjpass")
        yrs = Tok("years", "NNS")
        yrs.l(number(rng, small=True), "nummod")
        yrs.lfront(Tok("to", "TO"), "case")
        if chance(rng, 0.2):
            yrs = Tok("life", "NN")
            yrs.l(Tok("to", "TO"), "case")
        v.r(yrs, "nmod")
        return v
    v = Tok(verb_form(rng, pick(rng, ["kill", "arrest", "injure", "elect", "detain", "jail", "rescue",
                                      "convict", "charge", "release"]), "VBN"), "VBN")
    if subj.tag == "NNP" and chance(rng, 0.4):
        subj = number(rng)
    v.l(subj, "nsubjpass")
    v.r(pp(rng, True, 1), "nmod")
    return v


def t_news_to(rng):
    subj = np(rng, news=True, depth=1, allow_rel=False, pron=False)
    v = Tok(pick(rng, TRANS_NEWS), "VB")
    v.form = verb_form(rng, v.form, "VB")
    v.l(subj, "nsubj")
    v.l(Tok("to", "TO"), "mark")
    v.r(np(rng, news=True, depth=1, allow_rel=False, pron=False), "dobj")
    return v


def t_news_ing(rng):
    head = clause(rng, news=True, kind="intrans")
    head.r(Tok(",", ","), "punct")
    ing = Tok(pick(rng, ["killing", "injuring", "leaving"]), "VBG")
    ing.r(number(rng), "dobj")
    head.r(ing, "advcl")
    return head


def t_news_colon(rng):
    topic = proper_np(rng) if chance(rng, 0.6) else common_np(rng, news=True, depth=1, allow_rel=False)
    head = clause(rng, news=True, kind="trans")
    topic.r(Tok(":", ":"), "punct")
    topic.r(head, "parataxis")
    return topic


def t_news_says(rng):
    subj = np(rng, news=True, depth=1, allow_rel=False, pron=False)
    v = finite(rng, pick(rng, SAY_VERBS), subj, "pres")
    v.l(subj, "nsubj")
    comp = clause(rng, news=True, depth=1, kind=pick(rng, ["trans", "intrans", "modal"]))
    if chance(rng, 0.5):
        # fronted quote: "X, Turkey warns EU"
        front = comp
        v.r(np(rng, news=True, depth=1, allow_rel=False, pron=False), "dobj")
        v.lfront(Tok(",", ","), "punct")
        v.lfront(front, "ccomp")
        return v
    v.r(comp, "ccomp")
    return v


def t_news_toll(rng):
    head = Tok("toll", "NN")
    head.l(Tok("death", "NN"), "compound")
    head.l(common_np(rng, plural=False, news=True, det=False, depth=1, allow_rel=False, allow_pp=False),
           "compound")
    v = Tok(pick(rng, ["rises", "passes", "reaches", "climbs"]), "VBZ")
    v.l(head, "nsubj")
    n = number(rng)
    if v.form == "rises" or v.form == "climbs":
        n.l(Tok("to", "TO"), "case")
        v.r(n, "nmod")
    else:
        v.r(n, "dobj")
    return v


def t_news_agree(rng):
    a = proper_np(rng)
    a.r(Tok("and", "CC"), "cc")
    a.r(proper_np(rng), "conj")
    v = Tok(pick(rng, ["agree", "sign", "meet", "clash", "resume"]), "VBP")
    v.l(a, "nsubj")
    if v.form == "agree":
        inner = Tok(pick(rng, ["limit", "sign", "end", "form", "resolve"]), "VB")
        inner.l(Tok("to", "TO"), "mark")
        inner.r(common_np(rng, news=True, depth=1, allow_rel=False), "dobj")
        v.r(inner, "xcomp")
    elif v.form == "sign":
        v.r(common_np(rng, news=True, depth=1, allow_rel=False), "dobj")
    else:
        v.r(pp(rng, True, 1), "nmod")
    return v


def t_news_wins(rng):
    subj = np(rng, news=True, depth=1, allow_rel=False, pron=False)
    v = Tok(pick(rng, ["wins", "loses", "seeks", "begins"]), "VBZ")
    v.l(subj, "nsubj")
    o = Tok(pick(rng, ["term", "election", "title", "vote", "majority", "race"]), "NN")
    o.l(Tok(pick(rng, ["first", "second", "third", "fourth", "fifth", "presidential", "general"]), "JJ"), "amod")
    v.r(o, "dobj")
    return v


def t_conj_clause(rng):
    first = clause(rng, news=chance(rng, 0.5))
    first.r(Tok("and", "CC"), "cc")
    first.r(clause(rng, news=False, depth=1), "conj")
    return first


CLICKBAIT_TEMPLATES = [
    (t_listicle, 14), (t_which_are_you, 8), (t_can_you, 6), (t_how_well, 3), (t_how_many, 3),
    (t_this_is_what, 4), (t_heres, 5), (t_you_wont_believe, 4), (t_what_happens_next, 3),
    (t_will_make_you, 4), (t_and_its, 5), (t_subject_is_going_viral, 5), (t_what_your_x_says, 2),
    (t_we_tried, 4), (t_these_are, 5), (t_only, 2), (t_is_this, 2), (t_do_you, 3), (t_cb_clause, 14),
    (t_whose_posted, 3),
]
NEWS_TEMPLATES = [
    (t_news_svo, 40), (t_news_kills, 6), (t_news_passive_headline, 10), (t_news_to, 5), (t_news_ing, 4),
    (t_news_colon, 3), (t_news_says, 6), (t_news_toll, 3), (t_news_agree, 4), (t_news_wins, 4),
]
GENERAL_TEMPLATES = [(t_simple, 6), (t_conj_clause, 4)]


def choose_template(rng):
    group = rng.choices([CLICKBAIT_TEMPLATES, NEWS_TEMPLATES, GENERAL_TEMPLATES], weights=[46, 44, 10])[0]
    fns, weights = zip(*group)
    return rng.choices(fns, weights=weights)[0]


def validate(rows):
    roots = [r for r in rows if r[2] == 0]
    assert len(roots) == 1
    for idx, tok, head in rows:
        assert tok.form and " " not in tok.form, tok.form
        assert tok.tag in UPOS, tok.tag
        assert tok.rel is not None or head == 0


def emit(rows, sent_id, out):
    text = " ".join(t.form for _, t, _ in rows)
    out.append(f"# sent_id = {sent_id}")
    out.append(f"# text = {text}")
    for idx, tok, head in rows:
        rel = "root" if head == 0 else tok.rel
        out.append("\t".join([str(idx), tok.form, "_", UPOS[tok.tag], tok.tag, "_", str(head), rel, "_", "_"]))
    out.append("")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sentences", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=17)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = []
    seen = set()
    n = 0
    while n < args.sentences:
        fn = choose_template(rng)
        root = fn(rng)
        root.rel = "root"
        rows = heads(root)
        if len(rows) > 24:
            continue
        validate(rows)
        key = " ".join(t.form for _, t, _ in rows)
        if key in seen:
            continue
        seen.add(key)
        n += 1
        emit(rows, f"gen-{n:05d}", out)
    print("\n".join(out))


if __name__ == "__main__":
    main()
