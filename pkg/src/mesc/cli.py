"""Command-line entry point: ``mesc index|translate|retrieve|evaluate|stats``.

Every flag can also be given as an environment variable ``MESC_<NAME>``
(e.g. ``MESC_WINDOW=4``) or as a ``name = value`` line in the file passed
with ``--config``. Precedence: flag, then environment, then config file,
then the built-in default.
"""

import argparse
import json
import logging
import os
import sys
from collections import Counter

from . import __version__
from .baselines import flatten, format_structured, pirkola_structured, top_n_translate, StructuredQuery
from .corpus_index import DEFAULT_WINDOW, build_index, ingest_corpus, load_index, save_index
from .evaluation import evaluate, read_qrels, read_run, write_run
from .exceptions import FormatError, MescError
from .lexicon import dictionary_stats, load_dictionary
from .model import DEFAULT_MIN_SUPPORT_STEM_LEN, MESCConfig, prepare_query, translate_query
from .retrieval import BM25Params, PRFParams, retrieve, retrieve_with_feedback
from .text import TokenizerConfig, parse_bool, read_config
from .translit import DEFAULT_CAP, load_translit_rules
from .validation import check_non_negative_float, check_non_negative_int, check_positive_int, check_range

logger = logging.getLogger("mesc")

ENV_PREFIX = "MESC_"
METHODS = ("mesc", "top-n", "pirkola")

# dest -> (type, default); flags are declared per subcommand below
OPTIONS = {
    "corpus": (str, None),
    "out": (str, None),
    "window": (int, DEFAULT_WINDOW),
    "case_fold": (parse_bool, True),
    "strip_punct": (parse_bool, True),
    "index": (str, None),
    "dictionary": (str, None),
    "topics": (str, None),
    "method": (str, "mesc"),
    "n": (int, 1),
    "translit_rules": (str, None),
    "cap": (int, DEFAULT_CAP),
    "min_support_stem_len": (int, DEFAULT_MIN_SUPPORT_STEM_LEN),
    "neighbor_strategy": (str, "length"),
    "stopwords": (str, None),
    "diagnostics": (str, None),
    "queries": (str, None),
    "depth": (int, 1000),
    "k1": (float, 1.2),
    "b": (float, 0.75),
    "prf": (parse_bool, False),
    "fb_docs": (int, 10),
    "fb_terms": (int, 20),
    "fb_alpha": (float, 0.5),
    "run_tag": (str, None),
    "run": (str, None),
    "qrels": (str, None),
}

COMMANDS = {
    "index": (["corpus", "out"], ["window", "case_fold", "strip_punct"]),
    "translate": (["index", "dictionary", "topics", "out"],
                  ["method", "n", "translit_rules", "cap", "min_support_stem_len",
                   "neighbor_strategy", "stopwords", "diagnostics"]),
    "retrieve": (["index", "queries", "out"],
                 ["depth", "k1", "b", "prf", "fb_docs", "fb_terms", "fb_alpha", "run_tag"]),
    "evaluate": (["run", "qrels"], ["out"]),
    "stats": (["dictionary"], ["case_fold", "strip_punct"]),
}

HELP = {
    "corpus": "corpus file, one 'doc_id<TAB>text' per line",
    "out": "output file",
    "window": "co-occurrence window in tokens",
    "index": "index file written by 'index'",
    "dictionary": "dictionary file, 'source<TAB>cand1|cand2|...'",
    "topics": "topics file, 'query_id<TAB>query text'",
    "method": "translation method: " + ", ".join(METHODS),
    "n": "candidates per term for top-n",
    "translit_rules": "transliteration rule file for dictionary misses",
    "cap": "maximum transliteration variants per term",
    "min_support_stem_len": "shortest dictionary token used as an edit-neighbor anchor",
    "neighbor_strategy": "edit-neighbor search: length or deletion",
    "stopwords": "file with one stopword per line, removed from queries",
    "diagnostics": "write per-candidate probabilities (JSON lines) here",
    "queries": "translated queries ('query_id<TAB>terms' or structured '{a|b} {c}')",
    "depth": "documents retrieved per query",
    "prf": "apply pseudo-relevance feedback",
    "run_tag": "run tag column of the TREC run",
    "run": "TREC run file",
    "qrels": "TREC qrels file",
}


def build_parser():
    parser = argparse.ArgumentParser(prog="mesc", description="Dictionary-based cross-lingual query translation and retrieval.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    parser.add_argument("--config", help="key = value config file")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (required, optional) in COMMANDS.items():
        p = sub.add_parser(name, help=f"{name} command")
        p.add_argument("--config", dest="sub_config", help="key = value config file")
        for dest in required + optional:
            type_, default = OPTIONS[dest]
            flag = "--" + dest.replace("_", "-")
            extra = {}
            if type_ is parse_bool:
                extra = {"nargs": "?", "const": True}
            help_text = HELP.get(dest, "")
            if default is not None:
                help_text = f"{help_text} (default: {default})".strip()
            p.add_argument(flag, dest=dest, type=type_, default=None, help=help_text, **extra)
    return parser


def resolve(args, parser, environ=None):
    """Fill unset options from the environment, the config file, then defaults."""
    environ = os.environ if environ is None else environ
    config_path = getattr(args, "sub_config", None) or args.config or environ.get(ENV_PREFIX + "CONFIG")
    config = read_config(config_path) if config_path else {}
    required, optional = COMMANDS[args.command]
    for dest in required + optional:
        if getattr(args, dest) is not None:
            continue
        type_, default = OPTIONS[dest]
        raw = environ.get(ENV_PREFIX + dest.upper(), config.get(dest))
        if raw is not None:
            try:
                value = type_(raw)
            except ValueError:
                parser.error(f"invalid value for {dest}: {raw!r}")
        else:
            value = default
        setattr(args, dest, value)
    missing = [d for d in required if getattr(args, d) is None]
    if missing:
        parser.error("the following arguments are required: " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return args


def _read_tsv_queries(path):
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            qid, sep, text = line.partition("\t")
            if not sep or not qid.strip():
                raise FormatError("expected 'query_id<TAB>text'", path, lineno)
            out.append((qid.strip(), text))
    return out


def _read_stopwords(path, tokenizer):
    if not path:
        return frozenset()
    with open(path, encoding="utf-8") as fh:
        return frozenset(t for line in fh for t in prepare_query(line, tokenizer))


def cmd_index(args):
    check_positive_int(args.window, "window")
    tokenizer = TokenizerConfig(args.case_fold, args.strip_punct)
    collection = ingest_corpus(args.corpus, tokenizer)
    index = build_index(collection, args.window)
    save_index(index, args.out)
    print(f"vocabulary\t{index.vocabulary_size}")
    print(f"documents\t{index.doc_count}")
    print(f"pairs\t{index.pair_total}")
    print(f"pair_mass\t{index.total_pair_mass}")
    return 0


def cmd_translate(args):
    if args.method not in METHODS:
        raise ValueError(f"--method must be one of {', '.join(METHODS)}")
    check_positive_int(args.n, "n")
    check_positive_int(args.cap, "cap")
    check_non_negative_int(args.min_support_stem_len, "min_support_stem_len")
    if args.neighbor_strategy not in ("length", "deletion"):
        raise ValueError("--neighbor-strategy must be 'length' or 'deletion'")
    index = load_index(args.index)
    tokenizer = index.tokenizer
    dictionary = load_dictionary(args.dictionary, tokenizer)
    table = load_translit_rules(args.translit_rules) if args.translit_rules else None
    stopwords = _read_stopwords(args.stopwords, tokenizer)
    config = MESCConfig(args.min_support_stem_len, args.cap, stopwords, args.neighbor_strategy)
    topics = _read_tsv_queries(args.topics)

    lines, diagnostics = [], []
    for qid, text in topics:
        terms = prepare_query(text, tokenizer, stopwords)
        if args.method == "mesc":
            result = translate_query(terms, dictionary, index, table, config)
            lines.append(f"{qid}\t{result.text}")
            for tt in result.terms:
                diagnostics.append({
                    "query_id": qid,
                    "term": tt.source_term,
                    "chosen": " ".join(tt.chosen),
                    "source": tt.source_list,
                    "score": tt.score,
                    "fallback": tt.fallback,
                    "candidates": tt.diagnostics,
                })
        elif args.method == "top-n":
            translation = top_n_translate(terms, dictionary, args.n, table, index.term_ids, args.cap)
            lines.append(f"{qid}\t{' '.join(flatten(translation))}")
            for term, cands in zip(terms, translation):
                diagnostics.append({"query_id": qid, "term": term, "chosen": [" ".join(c) for c in cands]})
        else:
            sq = pirkola_structured(terms, dictionary, table, index.term_ids, args.cap)
            lines.append(format_structured(qid, sq))
            for term, group in zip(terms, sq.groups):
                diagnostics.append({"query_id": qid, "term": term, "group": [" ".join(c) for c in group]})

    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(line + "\n" for line in lines)
    if args.diagnostics:
        with open(args.diagnostics, "w", encoding="utf-8", newline="\n") as fh:
            for row in diagnostics:
                fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
    logger.info("translated %d queries with %s", len(lines), args.method)
    return 0


def _parse_query(text):
    if "{" in text:
        return StructuredQuery.from_line(text)
    return Counter(text.split())


def cmd_retrieve(args):
    check_positive_int(args.depth, "depth")
    check_non_negative_float(args.k1, "k1")
    check_range(args.b, "b", 0.0, 1.0)
    check_non_negative_int(args.fb_docs, "fb_docs")
    check_non_negative_int(args.fb_terms, "fb_terms")
    check_non_negative_float(args.fb_alpha, "fb_alpha")
    index = load_index(args.index)
    params = BM25Params(args.k1, args.b)
    prf = PRFParams(args.fb_docs, args.fb_terms, args.fb_alpha)
    run = {}
    for qid, text in _read_tsv_queries(args.queries):
        try:
            query = _parse_query(text)
        except ValueError as exc:
            raise FormatError(str(exc), args.queries) from exc
        if args.prf:
            run[qid] = retrieve_with_feedback(index, query, args.depth, params, prf, qid)
        else:
            run[qid] = retrieve(index, query, args.depth, params, qid)
    write_run(run, args.out, args.run_tag or "mesc")
    return 0


def cmd_evaluate(args):
    report = evaluate(read_run(args.run), read_qrels(args.qrels))
    sys.stdout.write(report.to_text())
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_tsv())
    return 0


def cmd_stats(args):
    dictionary = load_dictionary(args.dictionary, TokenizerConfig(args.case_fold, args.strip_punct))
    stats = dictionary_stats(dictionary)
    print(f"entries\t{stats.entries}")
    print(f"scale\t{stats.scale:.4f}")
    print(f"variance\t{stats.variance:.4f}")
    return 0


HANDLERS = {
    "index": cmd_index,
    "translate": cmd_translate,
    "retrieve": cmd_retrieve,
    "evaluate": cmd_evaluate,
    "stats": cmd_stats,
}


def main(argv=None, environ=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        resolve(args, parser, environ)
        return HANDLERS[args.command](args)
    except (MescError, OSError, ValueError, KeyError) as exc:
        print(f"mesc {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
