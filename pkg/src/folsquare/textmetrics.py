"""Corpus complexity metrics: grade level and lexical diversity.

Tokenization is Unicode word matching, lowercased for type counting.
Syllables come from a vowel-group count with a silent-e adjustment. These
choices are part of this package's contract; scores are reproducible here
but not guaranteed to match any external pipeline's tokenizer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from folsquare.errors import EmptyText

WORD_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)?", re.UNICODE)
SENTENCE_END_RE = re.compile(r"[.!?]+(?=\s|$)")

MTLD_THRESHOLD = 0.72
MTLD_MIN_TOKENS = 10


def tokenize(text: str) -> list[str]:
    return [w.lower() for w in WORD_RE.findall(text)]


def count_sentences(text: str) -> int:
    """Terminal-punctuation runs; unpunctuated text counts as one sentence."""
    if not text.strip():
        return 0
    return max(1, len(SENTENCE_END_RE.findall(text)))


_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


def count_syllables(word: str) -> int:
    """Vowel-group heuristic: final silent e is dropped unless it is the
    only vowel or part of a consonant-le ending."""
    w = word.lower()
    groups = _VOWEL_GROUP_RE.findall(w)
    count = len(groups)
    if count > 1 and w.endswith("e") and not w.endswith("le") and not w.endswith("ee"):
        count -= 1
    return max(1, count)


def fkgl_from_counts(words: int, sentences: int, syllables: int) -> float:
    """Grade level from raw counts: 0.39·(words/sentences) + 11.8·(syllables/words) − 15.59."""
    if words < 1 or sentences < 1:
        raise EmptyText("grade level needs at least one word and one sentence")
    return 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59


def fkgl(text: str) -> float:
    tokens = tokenize(text)
    if not tokens:
        raise EmptyText("no words in text")
    sentences = count_sentences(text)
    syllables = sum(count_syllables(t) for t in tokens)
    return fkgl_from_counts(len(tokens), sentences, syllables)


def vocab(tokens: list[str]) -> int:
    if not tokens:
        raise EmptyText("no tokens")
    return len(set(tokens))


def ttr(tokens: list[str]) -> float:
    if not tokens:
        raise EmptyText("no tokens")
    return len(set(tokens)) / len(tokens)


def ubr(tokens: list[str]) -> float:
    """Unique adjacent bigrams over total bigrams; 0 for single-token input."""
    if not tokens:
        raise EmptyText("no tokens")
    if len(tokens) < 2:
        return 0.0
    bigrams = list(zip(tokens, tokens[1:]))
    return len(set(bigrams)) / len(bigrams)


def _mtld_pass(tokens: list[str], threshold: float) -> float:
    factors = 0.0
    types: set[str] = set()
    count = 0
    for token in tokens:
        count += 1
        types.add(token)
        if len(types) / count <= threshold:
            factors += 1.0
            types = set()
            count = 0
    if count:
        partial_ttr = len(types) / count
        factors += (1.0 - partial_ttr) / (1.0 - threshold)
    if factors == 0.0:
        return float(len(tokens))  # all-distinct stream never closes a factor
    return len(tokens) / factors


def mtld(tokens: list[str], threshold: float = MTLD_THRESHOLD) -> float:
    """Measure of textual lexical diversity: mean factor length, averaged
    over a forward and a backward pass.

    Inputs shorter than ten tokens return the token count (declared
    degenerate-value policy).
    """
    if not tokens:
        raise EmptyText("no tokens")
    if len(tokens) < MTLD_MIN_TOKENS:
        return float(len(tokens))
    forward = _mtld_pass(tokens, threshold)
    backward = _mtld_pass(list(reversed(tokens)), threshold)
    return (forward + backward) / 2.0


@dataclass
class CorpusStats:
    fkgl: float
    ttr: float
    mtld: float
    ubr: float
    vocab_size: int
    token_count: int
    sentence_count: int
    syllable_count: int

    def to_dict(self) -> dict:
        return {
            "fkgl": round(self.fkgl, 4),
            "ttr": round(self.ttr, 4),
            "mtld": round(self.mtld, 4),
            "ubr": round(self.ubr, 4),
            "vocab_size": self.vocab_size,
            "token_count": self.token_count,
            "sentence_count": self.sentence_count,
            "syllable_count": self.syllable_count,
        }


def corpus_stats(text: str) -> CorpusStats:
    tokens = tokenize(text)
    if not tokens:
        raise EmptyText("no words in text")
    sentences = count_sentences(text)
    syllables = sum(count_syllables(t) for t in tokens)
    return CorpusStats(
        fkgl=fkgl_from_counts(len(tokens), sentences, syllables),
        ttr=ttr(tokens),
        mtld=mtld(tokens),
        ubr=ubr(tokens),
        vocab_size=vocab(tokens),
        token_count=len(tokens),
        sentence_count=sentences,
        syllable_count=syllables,
    )
