#!/usr/bin/env python3
"""Extract a miniature hypernym graph from WordNet 3.0 noun data files.

Seeds are every alphabetic word (and adjacent word pair) in the given text
files that names a WordNet noun; each seed contributes its first few senses,
and the hypernym closure of those senses is added so every path to a root
is present.

Output format:
    conceptgraph v1
    N <id> <lemma>[,lemma...]
    H <child> <parent>

Usage: build_graph.py --wordnet DIR --senses 2 seed1.txt seed2.txt > concept_graph.txt
"""
import argparse
import json
import re
import sys


def read_index(path):
    index = {}
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith(" "):
                continue
            parts = line.split()
            lemma = parts[0]
            p_cnt = int(parts[3])
            synset_cnt = int(parts[2])
            offsets = parts[6 + p_cnt:6 + p_cnt + synset_cnt]
            index[lemma] = offsets
    return index


def read_data(path):
    data = {}
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith(" "):
                continue
            body = line.split("|")[0].split()
            offset = body[0]
            w_cnt = int(body[3], 16)
            words = []
            for i in range(w_cnt):
                w = body[4 + 2 * i]
                w = re.sub(r"\(.*\)$", "", w).replace("_", " ").lower()
                if w not in words:
                    words.append(w)
            p_at = 4 + 2 * w_cnt
            p_cnt = int(body[p_at])
            parents = []
            for i in range(p_cnt):
                sym, target, pos = body[p_at + 1 + 4 * i:p_at + 4 + 4 * i]
                if sym in ("@", "@i") and pos == "n":
                    parents.append(target)
            data[offset] = (words, parents)
    return data


def seed_terms(paths):
    terms = set()
    for p in paths:
        with open(p, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if p.endswith(".jsonl") and line:
                    line = json.loads(line)["headline"]
                if p.endswith(".conllu"):
                    cols = line.split("\t")
                    if len(cols) == 10 and cols[4].startswith("NN"):
                        terms.add(cols[1].lower())
                    continue
                words = re.findall(r"[a-z]+(?:-[a-z]+)*", line.lower())
                terms.update(words)
                terms.update(a + "_" + b for a, b in zip(words, words[1:]))
    return terms


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--wordnet", required=True)
    ap.add_argument("--senses", type=int, default=2)
    ap.add_argument("seeds", nargs="+")
    args = ap.parse_args()
    index = read_index(args.wordnet + "/index.noun")
    data = read_data(args.wordnet + "/data.noun")

    keep = set()
    for term in sorted(seed_terms(args.seeds)):
        key = term.replace("-", "_")
        candidates = [key]
        # crude singularization so plurals find their noun
        if key.endswith("ies"):
            candidates.append(key[:-3] + "y")
        if key.endswith("es"):
            candidates.append(key[:-2])
        if key.endswith("s"):
            candidates.append(key[:-1])
        for c in candidates:
            if c in index:
                keep.update(index[c][:args.senses])
                break

    frontier = list(keep)
    while frontier:
        off = frontier.pop()
        for parent in data[off][1]:
            if parent not in keep:
                keep.add(parent)
                frontier.append(parent)

    out = ["conceptgraph v1"]
    for off in sorted(keep):
        out.append(f"N {off} {','.join(data[off][0])}")
    for off in sorted(keep):
        for parent in data[off][1]:
            out.append(f"H {off} {parent}")
    sys.stdout.write("\n".join(out) + "\n")
    print(f"{len(keep)} nodes", file=sys.stderr)


if __name__ == "__main__":
    main()
