"""Shared fixtures: reference concept-space matrices and corpus helpers."""

import numpy as np
import pytest

from extsum.corpus import make_document
from extsum.linalg import SvdFactorization

# 4 concepts x 5 sentences: the reference grid for the row-wise selectors.
CONCEPT_ROWS_4X5 = np.array(
    [
        [0.557, 0.691, 0.241, 0.110, 0.432],
        [0.345, 0.674, 0.742, 0.212, 0.567],
        [0.732, 0.232, 0.435, 0.157, 0.246],
        [0.628, 0.836, 0.783, 0.265, 0.343],
    ]
)

# 4 sentences x 4 concepts: the reference grid for the length-based selector.
SENTENCE_ROWS_4X4 = np.array(
    [
        [0.846, 0.334, 0.231, 0.210],
        [0.455, 0.235, 0.432, 0.342],
        [0.562, 0.632, 0.735, 0.857],
        [0.378, 0.186, 0.248, 0.545],
    ]
)


def factorization_from_vt(vt: np.ndarray, sigma: np.ndarray) -> SvdFactorization:
    """Wrap a hand-specified concept grid as a factorization for selector tests."""
    c = vt.shape[0]
    return SvdFactorization(u=np.eye(c), sigma=np.asarray(sigma, float), vt=vt.copy(), rank=c)


@pytest.fixture
def concept_fixture() -> SvdFactorization:
    # Sigma chosen so three summary seats apportion as (2, 1, 0, 0).
    return factorization_from_vt(CONCEPT_ROWS_4X5, np.array([2.5, 1.2, 0.5, 0.3]))


@pytest.fixture
def length_fixture() -> SvdFactorization:
    # Equal concept importances; the grid's row values drive the ranking.
    return factorization_from_vt(SENTENCE_ROWS_4X4.T.copy(), np.ones(4))


@pytest.fixture
def small_doc():
    return make_document(
        "d0",
        [
            "the cat sat on the mat.",
            "dogs chase cats around the yard.",
            "mats and cats and dogs everywhere.",
            "quantum physics is hard to learn.",
            "fields of quantum physics research.",
        ],
    )


def random_count_doc(rng: np.random.Generator, n_sentences: int, vocab_size: int = 12):
    """A random document built from a fixed fake vocabulary."""
    words = [f"w{i:02d}" for i in range(vocab_size)]
    sentences = []
    for _ in range(n_sentences):
        n = int(rng.integers(3, 9))
        picks = rng.integers(0, vocab_size, size=n)
        sentences.append(" ".join(words[int(j)] for j in picks) + ".")
    return make_document("rand", sentences)
