#!/usr/bin/env python3
# Copyright 2026 The Vizref Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes data/embeddings.txt and data/crimes.csv.

Ontology words are a mix of a shared domain direction, a direction per slot
kind, a direction per slot and noise. Every other word is random but kept
away from the slot prototypes. Output is a pure function of the seed, the
ontology and data/vocabulary.txt (regenerate that with `vizref vocab`).
"""

import argparse
import csv
import json
import pathlib

import numpy as np

DIM = 100
MIX = {"domain": 0.12, "kind": 0.25, "slot": 0.38, "noise": 0.25}
MAX_FOREIGN_COSINE = 0.25
EXTRA_WORDS = ["hello", "please", "thanks", "okay", "yes", "no", "chart", "plot",
               "graph", "line", "bar", "table", "number", "numbers", "total"]
SEASON_OF_MONTH = {
    "december": "winter", "january": "winter", "february": "winter",
    "march": "spring", "april": "spring", "may": "spring",
    "june": "summer", "july": "summer", "august": "summer",
    "september": "fall", "october": "fall", "november": "fall",
}
DAYS = ["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"]
TIMES = ["morning", "afternoon", "evening", "night"]


def unit(v):
    return v / np.linalg.norm(v)


def singular(word):
    if word.endswith("ies"):
        return word[:-3] + "y"
    if word.endswith("ves"):
        return word[:-3] + "fe"
    if word.endswith("s"):
        return word[:-1]
    return word


def canonical_values(slot):
    generic = set(slot["generic"])
    terms = [t for t in slot["terms"] if t not in generic]
    return [t for t in terms if singular(t) == t or singular(t) not in terms]


def build_embeddings(ontology, vocabulary, rng):
    slots = ontology["slots"]
    domain = unit(rng.standard_normal(DIM))
    kinds = {k: unit(rng.standard_normal(DIM)) for k in sorted({s["kind"] for s in slots})}
    slot_dirs = [unit(rng.standard_normal(DIM)) for _ in slots]

    vectors = {}
    for index, slot in enumerate(slots):
        for term in slot["terms"]:
            for word in term.split():
                if word in vectors:
                    continue
                v = (np.sqrt(MIX["domain"]) * domain + np.sqrt(MIX["kind"]) * kinds[slot["kind"]]
                     + np.sqrt(MIX["slot"]) * slot_dirs[index]
                     + np.sqrt(MIX["noise"]) * unit(rng.standard_normal(DIM)))
                vectors[word] = unit(v)

    prototypes = []
    for slot in slots:
        words = [w for t in slot["terms"] for w in t.split()]
        prototypes.append(unit(np.mean([vectors[w] for w in dict.fromkeys(words)], axis=0)))
    proto = np.array(prototypes)
    basis, _ = np.linalg.qr(proto.T)

    for word in sorted(set(vocabulary) | set(EXTRA_WORDS)):
        if word in vectors:
            continue
        while True:
            r = rng.standard_normal(DIM)
            r = r - 0.8 * basis @ (basis.T @ r)
            r = unit(r)
            if np.max(np.abs(proto @ r)) < MAX_FOREIGN_COSINE:
                break
        vectors[word] = r
    return vectors, proto


def check_geometry(ontology, vectors, proto):
    slots = ontology["slots"]
    owner = {}
    for index, slot in enumerate(slots):
        for term in slot["terms"]:
            for word in term.split():
                owner.setdefault(word, index)
    own, foreign = [], []
    for word, v in vectors.items():
        sims = proto @ v
        if word in owner:
            own.append(sims[owner[word]])
            assert int(np.argmax(sims)) == owner[word], word
        else:
            foreign.append(np.max(sims))
    assert min(own) > 0.6, min(own)
    assert max(foreign) < MAX_FOREIGN_COSINE, max(foreign)
    return min(own), float(np.mean(own)), max(foreign)


def build_table(ontology, rng, rows):
    slots = ontology["slots"]
    values = {s["name"]: canonical_values(s) for s in slots}
    months = values["MONTH"]
    header = [s["name"].lower() for s in slots]
    table = []
    for _ in range(rows):
        row = {}
        for slot in slots:
            name = slot["name"]
            pool = values[name]
            if name == "DAY":
                pool = DAYS
            elif name == "TIME_OF_DAY":
                pool = TIMES
            elif name == "SEASON":
                continue
            # Skewed draws give distinct counts per group.
            weights = np.linspace(2.0, 1.0, len(pool))
            row[name] = pool[rng.choice(len(pool), p=weights / weights.sum())]
        row["SEASON"] = SEASON_OF_MONTH[row["MONTH"]] if row["MONTH"] in months else "winter"
        table.append([row[s["name"]] for s in slots])
    return header, table


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    parser = argparse.ArgumentParser()
    parser.add_argument("--data-dir", type=pathlib.Path, default=root / "data")
    parser.add_argument("--seed", type=int, default=20260101)
    parser.add_argument("--rows", type=int, default=4000)
    args = parser.parse_args()

    ontology = json.loads((args.data_dir / "ontology.json").read_text())
    vocabulary = (args.data_dir / "vocabulary.txt").read_text().split()
    rng = np.random.default_rng(args.seed)

    vectors, proto = build_embeddings(ontology, vocabulary, rng)
    lo, mean, hi = check_geometry(ontology, vectors, proto)
    with open(args.data_dir / "embeddings.txt", "w") as out:
        for word in sorted(vectors):
            out.write(word + " " + " ".join(f"{x:.6f}" for x in vectors[word]) + "\n")

    header, table = build_table(ontology, rng, args.rows)
    with open(args.data_dir / "crimes.csv", "w", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(table)
    print(f"{len(vectors)} words; own-slot cosine min {lo:.3f} mean {mean:.3f}; "
          f"foreign max {hi:.3f}; {len(table)} table rows")


if __name__ == "__main__":
    main()
