"""Reproducible long documents for timing runs."""

import numpy as np

_FILLER = ["the", "of", "and", "a", "to", "in", "is", "for", "on", "with", "by", "that", "as", "are", "from"]


def synthetic_text(n_sentences=300, vocabulary=1500, seed=0, stop_rate=0.4):
    """Zipf-distributed content words mixed with function words, 10-25 words per sentence."""
    rng = np.random.default_rng(seed)
    words = [f"term{i}x" for i in range(vocabulary)]
    p = 1.0 / np.arange(1, vocabulary + 1)
    p /= p.sum()
    sentences = []
    for _ in range(n_sentences):
        length = int(rng.integers(10, 26))
        picks = rng.choice(vocabulary, size=length, p=p)
        ws = [_FILLER[int(rng.integers(len(_FILLER)))] if rng.random() < stop_rate else words[i] for i in picks]
        sentences.append(" ".join(ws).capitalize() + ".")
    return " ".join(sentences)
