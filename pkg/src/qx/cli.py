"""Command-line front end: extract, augment, eval, convert, tokenize.

Exit codes are a stable contract for pipeline integration: 0 success,
1 runtime error, 2 usage error. Output files are written atomically, so a
failing run never leaves partial output behind. Diagnostics go to stderr,
reports to stdout.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import tempfile
from pathlib import Path

from .augment import AugmentConfig, NoisePool, augment
from .core import AnnotatedExample, Source
from .evaluation import MatchCriterion, evaluate, render_table
from .io import (DatasetError, FORMATS, ocr_to_text, read_dataset,
                 read_ocr_json, write_dataset)
from .labels import RepairPolicy
from .protocol import RemoteTagError
from .rules import RulesetError, default_ruleset, load_ruleset
from .tagger import (OracleTagger, RemoteTagger, RuleTagger, TaggerError,
                     extract_batch)
from .tokenize import Vocabulary, VocabularyError, tokenize_full


@contextlib.contextmanager
def _atomic_output(path: Path):
    """Yield a temp file handle; rename over the target only on success."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".",
                                    suffix=".tmp")
    tmp = Path(tmp_name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            yield fh
        tmp.replace(path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def _write_atomically(path: str, writer) -> None:
    with _atomic_output(Path(path)) as fh:
        writer(fh)


def _load_vocab(args) -> Vocabulary:
    if not args.vocab:
        raise VocabularyError(
            "no vocabulary: pass --vocab or set QX_VOCAB")
    return Vocabulary.from_file(args.vocab)


def _make_tagger(spec: str, args):
    kind, _, arg = spec.partition(":")
    if kind == "rule":
        ruleset = default_ruleset() if arg in ("", "default") \
            else load_ruleset(arg)
        return RuleTagger(ruleset), None
    if kind == "remote":
        if not arg:
            raise TaggerError("remote tagger needs a URL: remote:<url>")
        return (RemoteTagger(arg, parallel=args.parallel),
                _load_vocab(args))
    if kind == "oracle":
        if not arg:
            raise TaggerError("oracle tagger needs a file: oracle:<file>")
        return OracleTagger.from_file(arg), None
    raise TaggerError(f"unknown tagger kind {kind!r} "
                      f"(expected rule:, remote:, or oracle:)")


def _read_docs(args) -> list[tuple[str, str, Source]]:
    """Documents as (id, text, source) from --input or --ocr."""
    if args.ocr:
        words = read_ocr_json(args.ocr)
        text, _ = ocr_to_text(words)
        return [(Path(args.ocr).stem, text, Source.OCR)] if text else []
    path = Path(args.input)
    if path.suffix == ".jsonl":
        docs = []
        with path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    doc_id = record.get("id", f"doc-{lineno}")
                    text = record["text"]
                except (ValueError, KeyError) as exc:
                    raise DatasetError(
                        f"{path}:{lineno}: bad input record: {exc}") from None
                source = Source(record.get("source", "manual"))
                docs.append((doc_id, text, source))
        return docs
    text = path.read_text(encoding="utf-8")
    return [(path.stem, text, Source.MANUAL)] if text.strip() else []


def _cmd_extract(args) -> int:
    tagger, vocab = _make_tagger(args.tagger, args)
    policy = RepairPolicy.parse(args.policy)
    docs = _read_docs(args)
    results = extract_batch(tagger, [(d, t) for d, t, _ in docs], vocab,
                            policy, parallel=args.parallel)
    examples = [AnnotatedExample(doc_id, text, tuple(spans), source)
                for (doc_id, text, source), (_, spans) in zip(docs, results)]
    _write_dataset_atomically(examples, args.out, "jsonl")
    return 0


def _cmd_augment(args) -> int:
    base = read_dataset(args.base, "jsonl")
    noise = NoisePool.from_file(args.noise)
    cfg = AugmentConfig(target_count=args.count,
                        p_prepend_noise=args.p_prepend,
                        p_append_noise=args.p_append,
                        p_insert_question=args.p_insert,
                        max_inserted_questions=args.max_inserted,
                        seed=args.seed)
    examples = augment(base, noise, cfg)
    _write_dataset_atomically(examples, args.out, "jsonl")
    return 0


def _cmd_eval(args) -> int:
    gold = read_dataset(args.gold, "jsonl")
    pred = read_dataset(args.pred, "jsonl")
    criterion = MatchCriterion.parse(args.match)
    report = evaluate({e.id: e.spans for e in pred},
                      {e.id: e.spans for e in gold}, criterion)
    print(render_table([(args.model, report)]))
    if args.out:
        _write_atomically(args.out,
                          lambda fh: fh.write(json.dumps(report.to_dict(),
                                                         indent=2) + "\n"))
    return 0


def _cmd_convert(args) -> int:
    examples = read_dataset(args.input, getattr(args, "from"))
    _write_dataset_atomically(examples, args.out, args.to)
    return 0


def _cmd_tokenize(args) -> int:
    vocab = _load_vocab(args)
    if args.text is not None:
        docs = [("text", args.text, Source.MANUAL)]
    else:
        docs = _read_docs(args)
    records = []
    for doc_id, text, _ in docs:
        words, subtokens, alignment = tokenize_full(text, vocab)
        records.append({"id": doc_id,
                        "words": [w.text for w in words],
                        "pieces": [s.text for s in subtokens],
                        "alignment": [list(r) for r in alignment.ranges]})
    payload = "".join(json.dumps(r, ensure_ascii=False) + "\n"
                      for r in records)
    if args.out:
        _write_atomically(args.out, lambda fh: fh.write(payload))
    else:
        sys.stdout.write(payload)
    return 0


def _write_dataset_atomically(examples, out_path: str, fmt: str) -> None:
    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".",
                                    suffix=".tmp")
    os.close(fd)
    tmp = Path(tmp_name)
    try:
        write_dataset(examples, tmp, fmt)
        tmp.replace(path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qx",
        description="Question extraction toolkit: tag, decode, augment, "
                    "evaluate.")
    sub = parser.add_subparsers(dest="command", required=True)
    vocab_default = os.environ.get("QX_VOCAB")

    p = sub.add_parser("extract", help="extract question spans from text or "
                                       "OCR JSON")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help="text file (.txt: one document) or "
                                       ".jsonl with id/text records")
    group.add_argument("--ocr", help="OCR JSON file "
                                     "({pages:[{words:[{text,bbox}]}]})")
    p.add_argument("--tagger", required=True,
                   help="rule:<ruleset|default>, remote:<url>, or "
                        "oracle:<file>")
    p.add_argument("--policy", default="repair", choices=("strict", "repair"))
    p.add_argument("--vocab", default=vocab_default,
                   help="subword vocabulary file (default: $QX_VOCAB)")
    p.add_argument("--parallel", type=int, default=4,
                   help="concurrent in-flight tag requests")
    p.add_argument("--out", required=True, help="output JSONL path")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("augment", help="expand an annotated dataset with "
                                       "noise and borrowed questions")
    p.add_argument("--base", required=True, help="base dataset (JSONL)")
    p.add_argument("--noise", required=True,
                   help="noise pool file, one snippet per line")
    p.add_argument("--count", required=True, type=int,
                   help="number of examples to generate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-prepend", dest="p_prepend", type=float, default=0.5)
    p.add_argument("--p-append", dest="p_append", type=float, default=0.5)
    p.add_argument("--p-insert", dest="p_insert", type=float, default=0.3)
    p.add_argument("--max-inserted", dest="max_inserted", type=int, default=2)
    p.add_argument("--out", required=True, help="output JSONL path")
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("eval", help="score predicted spans against gold")
    p.add_argument("--gold", required=True, help="gold dataset (JSONL)")
    p.add_argument("--pred", required=True, help="predictions (JSONL)")
    p.add_argument("--match", default="text",
                   help="exact, text, or iou:<threshold> (default text)")
    p.add_argument("--model", default="Model", help="row label for the report")
    p.add_argument("--out", help="also write the report as JSON")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("convert", help="convert between dataset formats")
    p.add_argument("input", help="input dataset path")
    p.add_argument("--from", required=True, choices=FORMATS)
    p.add_argument("--to", required=True, choices=FORMATS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("tokenize", help="word/subword tokenize with alignment")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="tokenize this literal text")
    group.add_argument("--input", help="text file or .jsonl documents")
    p.add_argument("--vocab", default=vocab_default,
                   help="subword vocabulary file (default: $QX_VOCAB)")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_tokenize)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "ocr"):
        args.ocr = None
    try:
        return args.func(args)
    except (ValueError, OSError, DatasetError, RulesetError, TaggerError,
            RemoteTagError, VocabularyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
