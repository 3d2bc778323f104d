#!/usr/bin/env python3
"""Download random Turkish Wikipedia articles as plain text, one paragraph per line.

Usage: fetch_trwiki_sample.py OUTPUT.txt [--bytes 2000000]

Uses the public MediaWiki API. The output is suitable for
HECE_WIKI_CORPUS (cmake -DHECE_WIKI_CORPUS=OUTPUT.txt).
"""
import argparse
import json
import time
import urllib.parse
import urllib.request

API = "https://tr.wikipedia.org/w/api.php"


def fetch_batch():
    params = {
        "action": "query", "format": "json", "generator": "random", "grnnamespace": 0, "grnlimit": 20,
        "prop": "extracts", "explaintext": 1, "exlimit": 20,
    }
    req = urllib.request.Request(API + "?" + urllib.parse.urlencode(params), headers={"User-Agent": "hece-sample/0.1"})
    with urllib.request.urlopen(req, timeout=30) as r:
        pages = json.load(r).get("query", {}).get("pages", {})
    for page in pages.values():
        for para in page.get("extract", "").split("\n"):
            para = para.strip()
            if len(para) > 40 and not para.startswith("=="):
                yield para


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("output")
    ap.add_argument("--bytes", type=int, default=2_000_000)
    args = ap.parse_args()
    written, seen = 0, set()
    with open(args.output, "w", encoding="utf-8") as out:
        while written < args.bytes:
            for para in fetch_batch():
                if para in seen:
                    continue
                seen.add(para)
                out.write(para + "\n")
                written += len(para.encode("utf-8")) + 1
            time.sleep(0.5)
    print(f"wrote {written} bytes to {args.output}")


if __name__ == "__main__":
    main()
