#!/usr/bin/env python3
"""Assemble the bundled sample corpus from the two hand-collected headline lists.

Usage: build_sample_corpus.py CLICKBAIT.txt NEWS.txt OUT.jsonl

Records alternate by class so the file reads as a balanced mix; sources are
assigned round-robin from the domains each list was collected from.
"""
import json
import sys

CLICKBAIT_SOURCES = ["buzzfeed.com", "upworthy.com", "viralnova.com", "scoopwhoop.com", "viralstories.in"]
NEWS_SOURCES = ["wikinews.org"]


def read(path):
    with open(path, encoding="utf-8") as f:
        return [line.strip() for line in f if line.strip()]


def main():
    cb, news, out = sys.argv[1:4]
    cb, news = read(cb), read(news)
    rows = []
    for i in range(max(len(cb), len(news))):
        if i < len(cb):
            rows.append({"headline": cb[i], "label": "clickbait", "source": CLICKBAIT_SOURCES[i % len(CLICKBAIT_SOURCES)]})
        if i < len(news):
            rows.append({"headline": news[i], "label": "news", "source": NEWS_SOURCES[i % len(NEWS_SOURCES)]})
    with open(out, "w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
