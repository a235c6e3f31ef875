"""Sentence splitting, tokenization and position-indexed documents."""

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyDocument
from .porter import stem as porter_stem

# Lowercased, without the trailing period.
ABBREVIATIONS = frozenset(
    """
    dr mr mrs ms prof sr jr st mt vs etc al fig figs eq eqs ref refs vol no nos
    pp ed eds approx dept univ corp inc ltd co jan feb mar apr jun jul aug sep
    sept oct nov dec e.g i.e cf resp ca viz ph.d u.s u.k
    """.split()
)

_SENTENCE_END = re.compile(r"[.!?]+[\"')\]]*(?=\s|$)")
_PARAGRAPH = re.compile(r"\n[ \t]*\n")
# Characters which, stripped from a token edge, mark a phrase boundary.
_BREAK_CHARS = set(".,;:!?()[]{}\"'`")


def _is_punct(ch):
    return unicodedata.category(ch)[0] in "PS"


def _ends_sentence(text, dot_start, dot_end):
    """Decide whether the terminal punctuation at text[dot_start:dot_end] ends a sentence."""
    rest = text[dot_end:].lstrip()
    if not rest:
        return True
    if text[dot_start] == ".":
        word_start = dot_start
        while word_start > 0 and not text[word_start - 1].isspace():
            word_start -= 1
        word = text[word_start:dot_start].lstrip("\"'([")
        if word.lower() in ABBREVIATIONS:
            return False
        # Initials such as "J. Smith".
        if len(word) == 1 and word.isupper():
            return False
    first = rest[0]
    if first in "\"'([":
        first = rest[1:2] or first
    return first.isupper() or first.isdigit()


def split_sentences(text):
    """Split ``text`` into sentences.

    A run of ``.``, ``!`` or ``?`` ends a sentence when followed by an
    uppercase letter (or digit) or by the end of the text, unless the word
    it terminates is a known abbreviation or a single-letter initial. Blank
    lines always separate sentences.
    """
    if not text or not text.strip():
        raise EmptyDocument("document is empty")
    sentences = []
    for block in _PARAGRAPH.split(text):
        start = 0
        for m in _SENTENCE_END.finditer(block):
            if _ends_sentence(block, m.start(), m.end()):
                piece = " ".join(block[start:m.end()].split())
                if piece:
                    sentences.append(piece)
                start = m.end()
        tail = " ".join(block[start:].split())
        if tail:
            sentences.append(tail)
    return sentences


def _raw_tokens(sentence):
    """Return ``[surface, boundary_after]`` pairs.

    ``boundary_after`` is set when punctuation separating phrases was stripped
    from the right edge of the token, or when the next raw chunk was pure
    punctuation.
    """
    out = []
    for chunk in sentence.split():
        left = 0
        right = len(chunk)
        while left < right and _is_punct(chunk[left]):
            left += 1
        while right > left and _is_punct(chunk[right - 1]):
            right -= 1
        word = chunk[left:right]
        leading_break = any(c in _BREAK_CHARS for c in chunk[:left])
        trailing_break = any(c in _BREAK_CHARS for c in chunk[right:])
        if leading_break and out:
            out[-1][1] = True
        if not word:
            if (leading_break or trailing_break) and out:
                out[-1][1] = True
            continue
        out.append([word, trailing_break])
    return out


def tokenize(sentence):
    """Split on whitespace and strip punctuation from token edges.

    Intra-word hyphens survive; tokens without any letter (numbers, lone
    punctuation) are dropped.

    >>> tokenize("(fringe) patterns,")
    ['fringe', 'patterns']
    """
    return [w for w, _ in _raw_tokens(sentence) if any(c.isalpha() for c in w)]


@dataclass(frozen=True)
class StopwordList:
    entries: frozenset

    def __contains__(self, word):
        return word.lower() in self.entries

    def __len__(self):
        return len(self.entries)

    @classmethod
    def from_words(cls, words):
        return cls(frozenset(w.strip().lower() for w in words if w.strip()))

    @classmethod
    def load(cls, path):
        words = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if line:
                    words.append(line)
        return cls.from_words(words)

    @classmethod
    def default(cls):
        return cls.load(Path(__file__).with_name("data") / "stopwords_en.txt")


@dataclass(frozen=True)
class Token:
    surface: str
    stem: str
    position: int
    sentence_index: int
    is_stopword: bool = False
    boundary_after: bool = False


@dataclass(frozen=True)
class Document:
    tokens: tuple
    sentence_count: int
    stemming: bool = True
    doc_id: str = ""

    @property
    def length(self):
        return len(self.tokens)

    def term(self, token):
        """Normalized form used as graph node: the stem, or the lowercased surface."""
        return token.stem if self.stemming else token.surface.lower()

    def terms(self):
        return [self.term(t) for t in self.tokens]

    def sentences(self):
        """Token tuples grouped by sentence, in order."""
        groups = [[] for _ in range(self.sentence_count)]
        for t in self.tokens:
            groups[t.sentence_index].append(t)
        return [tuple(g) for g in groups]


def build_document(text, stopwords=None, stemming=True, doc_id=""):
    """Build a :class:`Document`.

    Positions count every kept token, stopwords included, so they are true
    in-text positions. Sentences left with no token after tokenization are
    dropped so sentence indices stay contiguous.
    """
    if stopwords is None:
        stopwords = StopwordList(frozenset())
    tokens = []
    sentence_index = 0
    for sentence in split_sentences(text):
        raw = _raw_tokens(sentence)
        kept = []
        for word, boundary in raw:
            if not any(c.isalpha() for c in word):
                # A dropped number still separates its neighbours as a phrase break.
                if boundary and kept:
                    kept[-1][1] = True
                continue
            kept.append([word, boundary])
        if not kept:
            continue
        for word, boundary in kept:
            tokens.append(
                Token(
                    surface=word,
                    stem=porter_stem(word),
                    position=len(tokens) + 1,
                    sentence_index=sentence_index,
                    is_stopword=word in stopwords,
                    boundary_after=boundary,
                )
            )
        sentence_index += 1
    if not tokens:
        raise EmptyDocument("document has no word tokens")
    return Document(tuple(tokens), sentence_index, stemming, doc_id)
