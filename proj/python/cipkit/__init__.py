"""Chinese idiom paraphrasing toolkit."""

from cipkit._core import (
    DecodeError,
    Error,
    IoError,
    Lexicon,
    RemoteError,
    ValidationError,
    apply_infill,
    bleu,
    build_dictionary,
    build_infill_input,
    build_knowledge_input,
    compute_stats,
    contains_idiom,
    detect_idioms,
    diff,
    edit_distance,
    extract_interpretations,
    format_diff,
    paraphrase,
    paraphrase_proportion,
    recursive_simplify,
    rouge_n,
    split_corpus,
    tokenize,
)

__all__ = [
    "DecodeError",
    "Error",
    "IoError",
    "Lexicon",
    "RemoteError",
    "ValidationError",
    "apply_infill",
    "bleu",
    "build_dictionary",
    "build_infill_input",
    "build_knowledge_input",
    "compute_stats",
    "contains_idiom",
    "detect_idioms",
    "diff",
    "edit_distance",
    "extract_interpretations",
    "format_diff",
    "paraphrase",
    "paraphrase_proportion",
    "recursive_simplify",
    "rouge_n",
    "split_corpus",
    "tokenize",
]
