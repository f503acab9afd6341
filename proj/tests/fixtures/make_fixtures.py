"""Regenerates the miniature datasets under tests/fixtures.

The files are committed; rerun only when changing the fixtures. Output is
deterministic.
"""
import json
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent

CLAIM_TEMPLATES = [
    "Officials confirm {n} new cases of #COVID19 in {place} today",
    "{place} reports {n}% rise in ICU admissions, hospitals overwhelmed",
    "Study says ~{n}% of #coronavirus patients need intensive care",
    "BREAKING: {n} deaths recorded in {place} as outbreak spreads https://t.co/{code}",
    "Government to spend ${n} million on ventilators for {place}",
    "{place} closes schools for {n} days after {n2} infections @WHO",
]
CHATTER_TEMPLATES = [
    "Stay safe everyone and wash your hands #StayHome",
    "Thinking of all the nurses in {place} tonight",
    "Working from home again, my cat is the new manager",
    "Cannot wait for this to be over @friend",
    "Sending love to {place} during these hard times https://t.co/{code}",
    "Anyone else baking bread during lockdown? #quarantinelife",
]
PLACES = ["Italy", "Spain", "France", "Germany", "London", "New York", "Wuhan"]


def tweet(rng, templates):
    t = rng.choice(templates)
    return t.format(n=rng.randint(2, 900), n2=rng.randint(2, 90),
                    place=rng.choice(PLACES),
                    code="".join(rng.choice("abcdefXYZ123") for _ in range(8)))


def write_clef(path, rng, n_pos, n_neg, start_id):
    rows = [(1, tweet(rng, CLAIM_TEMPLATES)) for _ in range(n_pos)]
    rows += [(0, tweet(rng, CHATTER_TEMPLATES)) for _ in range(n_neg)]
    rng.shuffle(rows)
    with open(path, "w", encoding="utf-8") as f:
        f.write("topic_id\ttweet_id\ttweet_url\ttweet_text\tclaim\tcheck_worthiness\n")
        for i, (label, text) in enumerate(rows):
            tid = str(start_id + i)
            f.write(f"covid-19\t{tid}\thttps://twitter.com/i/web/status/{tid}\t"
                    f"{text}\t{label}\t{label}\n")


def write_pheme(root, rng):
    events = {
        "charliehebdo-all-rnr-threads": (3, 4),
        "germanwings-crash-all-rnr-threads": (2, 3),
    }
    next_id = 500000
    for event, (n_rumour, n_non) in events.items():
        for sub, count in (("rumours", n_rumour), ("non-rumours", n_non)):
            for _ in range(count):
                tid = str(next_id)
                next_id += 1
                thread = root / "all-rnr-annotated-threads" / event / sub / tid
                (thread / "source-tweets").mkdir(parents=True, exist_ok=True)
                (thread / "reactions").mkdir(exist_ok=True)
                text = tweet(rng, CLAIM_TEMPLATES if sub == "rumours"
                             else CHATTER_TEMPLATES)
                (thread / "source-tweets" / f"{tid}.json").write_text(
                    json.dumps({"id": int(tid), "id_str": tid, "text": text}))
                (thread / "reactions" / f"{next_id + 1000}.json").write_text(
                    json.dumps({"id_str": str(next_id + 1000),
                                "text": "is this really true?"}))
    # A conversation whose source tweet is missing (replies only).
    orphan = (root / "all-rnr-annotated-threads" /
              "germanwings-crash-all-rnr-threads" / "rumours" / "599999")
    (orphan / "reactions").mkdir(parents=True, exist_ok=True)
    (orphan / "reactions" / "600000.json").write_text(
        json.dumps({"id_str": "600000", "text": "source?"}))


def write_twitter(root, rng, labels, start_id):
    root.mkdir(parents=True, exist_ok=True)
    with open(root / "label.txt", "w") as lf, \
         open(root / "source_tweets.txt", "w", encoding="utf-8") as sf:
        for i, label in enumerate(labels):
            tid = str(start_id + i)
            lf.write(f"{label}:{tid}\n")
            templates = CHATTER_TEMPLATES if label == "non-rumor" else CLAIM_TEMPLATES
            sf.write(f"{tid}\t{tweet(rng, templates)}\n")
        # Labelled id without a source text.
        lf.write(f"false:{start_id + len(labels)}\n")


def main():
    rng = random.Random(2020)
    clef = ROOT / "clef"
    clef.mkdir(exist_ok=True)
    write_clef(clef / "train.tsv", rng, 24, 36, 1000)
    write_clef(clef / "dev.tsv", rng, 10, 14, 2000)
    write_clef(clef / "test.tsv", rng, 8, 6, 3000)
    write_pheme(ROOT / "pheme", rng)
    write_twitter(ROOT / "twitter15", rng,
                  ["true", "false", "unverified", "non-rumor", "true",
                   "non-rumor", "false"], 700000)
    write_twitter(ROOT / "twitter16", rng,
                  ["unverified", "non-rumor", "true", "false", "non-rumor"],
                  800000)


if __name__ == "__main__":
    main()
