"""Gold-standard matching and corpus-level metrics."""

import re
from dataclasses import dataclass, field

from .porter import stem as porter_stem
from .textproc import tokenize

_PHRASE_SEP = re.compile(r"[;\n\r]+")


def gold_unigrams(text, stemming=True, stopwords=None):
    """Explode keyphrases (newline or semicolon separated) into a set of unigrams.

    Stopwords are dropped when a list is given: no extractor can ever return them.
    """
    out = set()
    for phrase in _PHRASE_SEP.split(text):
        for word in tokenize(phrase):
            if stopwords is not None and word in stopwords:
                continue
            out.add(porter_stem(word) if stemming else word.lower())
    return out


def load_gold(path, stemming=True, stopwords=None):
    with open(path, encoding="utf-8") as fh:
        return gold_unigrams(fh.read(), stemming, stopwords)


@dataclass(frozen=True)
class DocScore:
    doc_id: str
    precision: float
    recall: float
    f1: float
    matched: int
    extracted: int
    gold: int


def f1_score(p, r):
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def score_document(extracted, gold, doc_id=""):
    """Precision, recall and F1 of an extracted term list against gold unigrams."""
    terms = extracted.terms() if hasattr(extracted, "terms") else list(extracted)
    found = set(terms)
    matched = len(found & gold)
    p = matched / len(found) if found else 0.0
    r = matched / len(gold) if gold else 0.0
    return DocScore(doc_id, p, r, f1_score(p, r), matched, len(found), len(gold))


def jaccard(a, b):
    a, b = set(a), set(b)
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


@dataclass
class EvalReport:
    method: str
    dataset: str
    k: int
    precision: float
    recall: float
    f1: float
    documents: list = field(default_factory=list)
    structural: bool = False

    def as_record(self, per_document=True):
        rec = {
            "method": self.method,
            "dataset": self.dataset,
            "k": self.k,
            "P": round(100 * self.precision, 2),
            "R": round(100 * self.recall, 2),
            "F1": round(100 * self.f1, 2),
            "n_documents": len(self.documents),
        }
        if self.structural:
            rec["note"] = "extraction size determined by graph structure, k ignored"
        if per_document:
            rec["per_document"] = [
                {
                    "id": d.doc_id,
                    "P": round(100 * d.precision, 2),
                    "R": round(100 * d.recall, 2),
                    "F1": round(100 * d.f1, 2),
                    "matched": d.matched,
                }
                for d in self.documents
            ]
        return rec

    def csv_row(self):
        return f"{self.method},{self.dataset},{self.k},{100 * self.precision:.2f},{100 * self.recall:.2f},{100 * self.f1:.2f}"


CSV_HEADER = "method,dataset,k,P,R,F1"


def macro_average(reports, method="", dataset="", k=0, structural=False):
    """Unweighted mean of per-document P, R and F1 (F1 is averaged, not recomputed)."""
    reports = list(reports)
    if not reports:
        raise ValueError("macro average of no documents")
    n = len(reports)
    return EvalReport(
        method,
        dataset,
        k,
        sum(r.precision for r in reports) / n,
        sum(r.recall for r in reports) / n,
        sum(r.f1 for r in reports) / n,
        reports,
        structural,
    )


def document_coverage(doc, gold, stemming=True):
    """Fraction of a document's gold unigrams that occur in its token stream."""
    if not gold:
        return 0.0
    present = {t.stem if stemming else t.surface.lower() for t in doc.tokens}
    return len(gold & present) / len(gold)


def coverage_bound(docs, gold, stemming=True):
    """Macro-averaged percentage of gold unigrams present in their documents.

    ``docs`` and ``gold`` map document ids to Documents and gold sets; gold
    sets must be normalized the same way (stemmed or not).
    """
    values = [document_coverage(docs[i], g, stemming) for i, g in gold.items() if i in docs and g]
    if not values:
        return 0.0
    return 100.0 * sum(values) / len(values)


def candidate_overlap(candidates, gold, docs=None):
    """Macro-averaged percentage of in-text gold unigrams admitted as candidates.

    ``candidates`` maps ids to CandidateSets. With ``docs`` given, gold
    unigrams absent from the document text are left out of the denominator.
    """
    values = []
    for doc_id, cand in candidates.items():
        g = gold.get(doc_id)
        if not g:
            continue
        if docs is not None:
            d = docs[doc_id]
            g = g & set(d.terms())
            if not g:
                continue
        values.append(len(g & set(cand.names())) / len(g))
    return 100.0 * sum(values) / len(values) if values else 0.0
