#!/usr/bin/env python3
"""Regenerate the synthetic fixtures under fixtures/.

The corpora and lexicons are synthetic stand-ins shaped like the real inputs
(NRC-style lexicon files, a small "notes" reference corpus and four larger
forum boards).  Output is deterministic for a fixed RNG seed.

    python3 scripts/make_fixtures.py
"""

import csv
import json
import os
import random

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")
EMOTIONS = ["anger", "anticipation", "disgust", "fear", "joy", "negative",
            "positive", "sadness", "surprise", "trust"]

# word -> emotions (NRC-like hand assignment)
EMO = {
    "happy": "joy trust anticipation", "happiness": "joy anticipation",
    "joy": "joy trust", "love": "joy", "loved": "joy trust", "hope": "anticipation joy trust",
    "peace": "joy trust anticipation", "smile": "joy surprise trust", "laugh": "joy surprise",
    "fun": "joy anticipation", "beautiful": "joy", "wonderful": "joy surprise trust",
    "good": "joy trust anticipation surprise", "proud": "joy anticipation trust",
    "friend": "joy trust", "enjoy": "joy anticipation", "excited": "joy anticipation surprise",
    "glad": "joy", "grateful": "joy trust", "heal": "joy trust", "success": "joy anticipation trust",
    "gift": "joy surprise anticipation trust", "music": "joy sadness surprise trust",
    "sun": "joy anticipation surprise trust", "kiss": "joy anticipation surprise",
    "sad": "sadness", "sadness": "sadness", "cry": "sadness", "tears": "sadness",
    "lonely": "sadness anger", "alone": "sadness", "lost": "sadness", "pain": "sadness fear",
    "hurt": "sadness anger fear", "grief": "sadness", "sorry": "sadness", "regret": "sadness",
    "die": "sadness fear", "death": "sadness fear anger disgust surprise anticipation",
    "dark": "sadness", "empty": "sadness", "tired": "sadness", "broken": "sadness anger fear",
    "miss": "sadness", "fail": "sadness fear disgust", "hopeless": "sadness fear",
    "depressed": "sadness", "misery": "sadness anger disgust fear", "sick": "sadness disgust fear",
    "suffer": "sadness fear anger disgust", "burden": "sadness anger fear",
    "fear": "fear", "afraid": "fear", "scared": "fear", "panic": "fear", "anxiety": "fear anticipation",
    "worry": "fear anticipation", "nervous": "fear anticipation", "terror": "fear", "danger": "fear",
    "attack": "anger fear", "hospital": "fear sadness trust", "paranoid": "fear",
    "threat": "fear anger", "voices": "fear", "shaking": "fear",
    "angry": "anger disgust", "hate": "anger disgust fear sadness", "rage": "anger",
    "mad": "anger disgust fear sadness", "fight": "anger fear", "yell": "anger fear surprise",
    "blame": "anger disgust", "annoyed": "anger disgust", "kill": "anger fear sadness",
    "violence": "anger fear sadness",
    "trust": "trust", "family": "trust", "mom": "joy trust", "doctor": "trust",
    "help": "trust", "honest": "trust anger disgust", "believe": "trust", "true": "joy trust",
    "faith": "anticipation joy trust", "therapy": "anticipation trust", "support": "trust joy",
    "safe": "joy trust", "teacher": "trust", "team": "trust",
    "plan": "anticipation", "future": "anticipation", "wait": "anticipation", "tomorrow": "anticipation",
    "start": "anticipation", "begin": "anticipation", "build": "anticipation trust",
    "project": "anticipation", "expect": "anticipation", "ready": "anticipation",
    "goal": "anticipation joy trust", "finish": "anticipation", "finally": "anticipation surprise",
    "surprise": "surprise", "sudden": "surprise fear", "shock": "surprise anger fear",
    "weird": "disgust", "disgust": "disgust anger", "gross": "disgust", "dirty": "disgust",
    "ugly": "disgust", "shame": "sadness fear disgust", "awful": "anger disgust fear sadness",
    "terrible": "anger disgust fear sadness", "mess": "disgust", "worse": "fear sadness",
    "medication": "trust", "pill": "trust", "sleep": "", "better": "joy trust",
}
POSITIVE_SIDE = {"joy", "trust", "anticipation"}
NEUTRAL = ("time day work house wood paint tool wall table go get know think want need use try "
           "look find say tell really like would make thing people year week life way room door "
           "job school car night morning water food sleep bed phone kitchen floor board nail screw "
           "drill saw cut glue shelf cabinet light brain mind body heart head chest breath feel "
           "feeling feelings felt talk walk please everyone everything sometimes always never "
           "still keep anymore much little today last first new old put take give come see "
           "dog cat window garden pipe sand oak pine stain varnish hammer bench frame").split()


def vad_value(rng, word):
    emos = set(EMO.get(word, "").split())
    if not emos:
        return round(min(max(rng.gauss(0.5, 0.1), 0.05), 0.95), 3)
    pos = len(emos & POSITIVE_SIDE)
    neg = len(emos - POSITIVE_SIDE)
    centre = 0.5 + 0.35 * (pos - neg) / max(pos + neg, 1)
    return round(min(max(rng.gauss(centre, 0.06), 0.0), 1.0), 3)


def write_lexicons(rng):
    os.makedirs(os.path.join(ROOT, "lexicon"), exist_ok=True)
    words = sorted(set(EMO) | set(NEUTRAL))
    with open(os.path.join(ROOT, "lexicon", "vad.tsv"), "w") as f:
        f.write("Word\tValence\tArousal\tDominance\n")
        for w in words:
            f.write("%s\t%.3f\t%.3f\t%.3f\n" % (w, vad_value(rng, w), rng.random(), rng.random()))
    with open(os.path.join(ROOT, "lexicon", "emolex.tsv"), "w") as f:
        for w in sorted(EMO):
            emos = set(EMO[w].split())
            pos = len(emos & POSITIVE_SIDE)
            neg = len(emos - POSITIVE_SIDE)
            for e in EMOTIONS:
                if e == "positive":
                    v = int(pos > neg)
                elif e == "negative":
                    v = int(neg > pos)
                else:
                    v = int(e in emos)
                f.write("%s\t%s\t%d\n" % (w, e, v))
    with open(os.path.join(ROOT, "lexicon", "antonyms.tsv"), "w") as f:
        f.write("# word\tantonym\n")
        for a, b in [("happy", "sad"), ("good", "awful"), ("safe", "danger"), ("love", "hate"),
                     ("hope", "hopeless"), ("better", "worse")]:
            f.write("%s\t%s\n" % (a, b))


# Sentence templates per corpus; slots in braces draw from SLOTS.
SLOTS = {
    "neg_emo": "sad lonely empty tired broken hopeless depressed lost hurt sick scared afraid".split(),
    "pos_emo": "happy good better safe proud glad calm grateful ready".split(),
    "person": "you mom family friend everyone dad brother sister".split(),
    "verb": "know think want need try look find say tell keep".split(),
    "time": "today tomorrow tonight sometimes always anymore every day".split(),
    "anx": "anxiety panic worry fear attack nervous shaking breath chest heart".split(),
    "dep": "sadness misery grief burden pain tears regret shame sleep bed".split(),
    "scz": "voices paranoid medication doctor hospital therapy mind brain pill threat".split(),
    "diy": "wood paint tool wall table shelf cabinet drill saw glue oak pine stain hammer bench".split(),
    "diy_verb": "build use cut sand paint finish start plan glue fix".split(),
}

TEMPLATES = {
    "notes": [
        "I love you {person}.", "I am so sorry for everything.", "I love you so much.",
        "I know you will be {pos_emo} without me.", "I feel so {neg_emo} and I can not go on.",
        "Please tell {person} I love them.", "I hope you find peace.", "I do not feel {pos_emo} anymore.",
        "I want you to know I tried.", "I feel like a burden to {person}.", "Forgive me {person}.",
        "I regret the pain I caused.", "You were always good to me.", "I can not feel anything {time}.",
        "I think it is better this way.", "Goodbye {person}, I love you.",
    ],
    "anxiety": [
        "I feel {anx} all the time.", "I know my {anx} is getting worse.", "I think I have {anx} again.",
        "I get {anx} when I go outside.", "I feel like I can not breathe.", "My {anx} is not {pos_emo}.",
        "I want to feel {pos_emo} {time}.", "I feel {neg_emo} and {neg_emo}.", "Does anyone else get {anx}?",
        "I go to therapy and it helps.", "I {verb} my {anx} will pass.", "I feel better after I talk to {person}.",
        "Visit https://example.org/help for support 24/7.",
    ],
    "depression": [
        "I feel {neg_emo} {time}.", "I want to sleep all day.", "I think nobody would miss me.",
        "I feel like a {dep} to {person}.", "I know I should get help.", "I do not feel {pos_emo} anymore.",
        "I get out of bed and feel {neg_emo}.", "I {verb} the {dep} never ends.", "I really want to feel {pos_emo}.",
        "I go to work and feel empty.", "My {dep} is not going away.", "I feel {neg_emo} but I keep trying.",
        "Day 30 without hope, see www.example.com.",
    ],
    "schizophrenia": [
        "I hear {scz} {time}.", "I know the {scz} are not real.", "I think my {scz} is working.",
        "I feel {neg_emo} when the {scz} start.", "I feel like someone is watching me.", "I want to stop the {scz}.",
        "I get scared of the {scz}.", "I go to the {scz} every week.", "I say nothing to {person} about it.",
        "I feel {pos_emo} with my new {scz}.", "I {verb} my {scz} helps.", "I do not trust my {scz}.",
    ],
    "diy": [
        "I need a new {diy} for the {diy}.", "I want to {diy_verb} a {diy}.", "I use {diy} on {diy}.",
        "I try to {diy_verb} the {diy} {time}.", "I look for a good {diy}.", "I go to the store for {diy}.",
        "I find the {diy} works well.", "I would {diy_verb} it again.", "I get a {pos_emo} finish with {diy}.",
        "I feel {pos_emo} about this {diy}.", "I know the {diy} is not level.", "I feel like the {diy} is too dark.",
    ],
}

SIZES = {"notes": 40, "anxiety": 120, "depression": 120, "schizophrenia": 120, "diy": 120}


def fill(rng, template):
    out = template
    while "{" in out:
        start = out.index("{")
        end = out.index("}", start)
        slot = out[start + 1:end]
        out = out[:start] + rng.choice(SLOTS[slot]) + out[end + 1:]
    return out


def make_docs(rng, label):
    docs = []
    for i in range(SIZES[label]):
        n = rng.randint(2, 6)
        sentences = [fill(rng, rng.choice(TEMPLATES[label])) for _ in range(n)]
        sep = "\n" if rng.random() < 0.3 else " "
        docs.append(("%s-%03d" % (label, i), sep.join(sentences)))
    return docs


def main():
    rng = random.Random(20211028)
    write_lexicons(rng)
    corpora = os.path.join(ROOT, "corpora")
    os.makedirs(corpora, exist_ok=True)

    notes_dir = os.path.join(corpora, "notes")
    os.makedirs(notes_dir, exist_ok=True)
    for name in os.listdir(notes_dir):
        os.remove(os.path.join(notes_dir, name))
    for doc_id, text in make_docs(rng, "notes"):
        with open(os.path.join(notes_dir, doc_id + ".txt"), "w") as f:
            f.write(text + "\n")

    for label in ("anxiety", "depression"):
        with open(os.path.join(corpora, label + ".jsonl"), "w") as f:
            for doc_id, text in make_docs(rng, label):
                f.write(json.dumps({"id": doc_id, "text": text}) + "\n")

    for label in ("schizophrenia", "diy"):
        with open(os.path.join(corpora, label + ".csv"), "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["id", "text"])
            for doc_id, text in make_docs(rng, label):
                w.writerow([doc_id, text])

    config = {
        "corpora": [
            {"label": "notes", "path": "corpora/notes", "format": "txt-dir"},
            {"label": "anxiety", "path": "corpora/anxiety.jsonl", "format": "jsonl"},
            {"label": "depression", "path": "corpora/depression.jsonl", "format": "jsonl"},
            {"label": "schizophrenia", "path": "corpora/schizophrenia.csv", "format": "csv"},
            {"label": "diy", "path": "corpora/diy.csv", "format": "csv"},
        ],
        "reference_label": "notes",
        "target_word": "feel",
        "vad_path": "lexicon/vad.tsv",
        "emolex_path": "lexicon/emolex.tsv",
        "antonyms_path": "lexicon/antonyms.tsv",
        "seed": 42,
        "trials": 1000,
    }
    with open(os.path.join(ROOT, "run.json"), "w") as f:
        json.dump(config, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
