#!/usr/bin/env python3
"""Convert a SQuAD-format file (such as TQuAD) into the dataset JSON read by `hece eval`.

Usage: tquad_to_dataset.py INPUT.json OUTPUT.json

Each distinct context becomes a passage; each question refers to the
passage its context came from.
"""
import argparse
import json


def convert(squad):
    passages, questions, index = [], [], {}
    for article in squad["data"]:
        for para in article["paragraphs"]:
            context = para["context"]
            if context not in index:
                index[context] = f"p{len(passages)}"
                passages.append({"id": index[context], "text": context})
            for qa in para["qas"]:
                questions.append({"id": str(qa["id"]), "text": qa["question"], "passage_id": index[context]})
    return {"passages": passages, "questions": questions}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("input")
    ap.add_argument("output")
    args = ap.parse_args()
    with open(args.input, encoding="utf-8") as f:
        ds = convert(json.load(f))
    with open(args.output, "w", encoding="utf-8") as f:
        json.dump(ds, f, ensure_ascii=False)
    print(f"{len(ds['passages'])} passages, {len(ds['questions'])} questions")


if __name__ == "__main__":
    main()
