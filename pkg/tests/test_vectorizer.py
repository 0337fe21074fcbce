"""Term-by-sentence matrix construction and vector operations."""

import math

import numpy as np
import pytest

from extsum.corpus import make_document
from extsum.vectorizer import (
    EmptyVocabularyError,
    TermVector,
    build_matrix,
    cosine,
    document_vector,
    matrix_to_tsv,
    query_vector,
)

from conftest import random_count_doc

LN2 = math.log(2.0)


def two_sentence_doc():
    # Columns: ["a b", "b c"] -> vocab [a, b, c]
    return make_document("d", ["a b.", "b c."])


class TestBuildMatrix:
    def test_raw_counts(self):
        m = build_matrix(two_sentence_doc(), "raw")
        assert m.vocab.terms == ("a", "b", "c")
        np.testing.assert_array_equal(m.values, [[1, 0], [1, 1], [0, 1]])
        np.testing.assert_array_equal(m.raw_counts, m.values)

    def test_binary(self):
        m = build_matrix(two_sentence_doc(), "binary")
        np.testing.assert_array_equal(m.values, [[1, 0], [1, 1], [0, 1]])

    def test_binary_is_zero_one_with_repeats(self):
        m = build_matrix(make_document("d", ["a a a b.", "b b c."]), "binary")
        assert set(np.unique(m.values)) <= {0.0, 1.0}

    def test_tf_idf_hand_values(self):
        m = build_matrix(two_sentence_doc(), "tf_idf")
        # "b" appears in both sentences: weight exactly 0 everywhere
        np.testing.assert_array_equal(m.values[1], [0.0, 0.0])
        assert m.values[0, 0] == pytest.approx(LN2, abs=1e-12)
        assert m.values[2, 1] == pytest.approx(LN2, abs=1e-12)

    def test_log_entropy_against_straight_line_recompute(self):
        rng = np.random.default_rng(3)
        doc = random_count_doc(rng, 6)
        m = build_matrix(doc, "log_entropy")
        counts = m.raw_counts
        t, s = counts.shape
        expected = np.zeros((t, s))
        for i in range(t):
            total = counts[i].sum()
            entropy_sum = 0.0
            for j in range(s):
                p = counts[i, j] / total
                if p > 0:
                    entropy_sum += p * math.log(p)
            g = 1.0 + entropy_sum / math.log(s)
            for j in range(s):
                expected[i, j] = math.log(1 + counts[i, j]) * g
        np.testing.assert_allclose(m.values, expected, atol=1e-12)

    def test_log_entropy_single_sentence(self):
        m = build_matrix(make_document("d", ["a a b."]), "log_entropy")
        np.testing.assert_allclose(
            m.values[:, 0], [math.log(3), math.log(2)], atol=1e-12
        )

    def test_empty_vocabulary_raises(self):
        doc = make_document("d", ["...", "!!"])
        with pytest.raises(EmptyVocabularyError):
            build_matrix(doc)

    def test_vocab_depends_only_on_token_multiset(self):
        a = build_matrix(make_document("d", ["x y.", "z w."]))
        b = build_matrix(make_document("d", ["z w.", "x y."]))
        assert a.vocab.terms == b.vocab.terms

    def test_zero_column_iff_no_tokens(self):
        doc = make_document("d", ["a b.", "...", "c."])
        m = build_matrix(doc, "raw")
        zero_cols = [j for j in range(3) if not m.values[:, j].any()]
        assert zero_cols == [1]

    def test_unknown_weighting(self):
        with pytest.raises(ValueError, match="weighting"):
            build_matrix(two_sentence_doc(), "bogus")


class TestCosine:
    def test_parallel(self):
        u = TermVector(values=np.array([1.0, 2.0, 3.0]))
        assert cosine(u, u) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        u = TermVector(values=np.array([1.0, 0.0]))
        v = TermVector(values=np.array([0.0, 1.0]))
        assert cosine(u, v) == 0.0

    def test_hand_value(self):
        u = TermVector(values=np.array([1.0, 1.0, 0.0]))
        v = TermVector(values=np.array([1.0, 0.0, 0.0]))
        assert cosine(u, v) == pytest.approx(1 / math.sqrt(2), abs=1e-5)

    def test_zero_norm_returns_zero(self):
        u = TermVector(values=np.zeros(3))
        v = TermVector(values=np.array([1.0, 2.0, 3.0]))
        assert cosine(u, v) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            cosine(TermVector(values=np.zeros(2)), TermVector(values=np.zeros(3)))

    def test_symmetry_and_scale_invariance(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            n = int(rng.integers(1, 20))
            u = TermVector(values=rng.normal(size=n))
            v = TermVector(values=rng.normal(size=n))
            assert abs(cosine(u, v) - cosine(v, u)) < 1e-12
            alpha = float(rng.uniform(0.1, 10.0))
            scaled = TermVector(values=alpha * u.values)
            assert abs(cosine(scaled, v) - cosine(u, v)) < 1e-12
            assert -1.0 - 1e-12 <= cosine(u, v) <= 1.0 + 1e-12


class TestDocumentVector:
    def test_row_sums(self):
        m = build_matrix(two_sentence_doc(), "raw")
        np.testing.assert_array_equal(document_vector(m).values, [1, 2, 1])

    def test_single_sentence_equals_its_column(self):
        m = build_matrix(make_document("d", ["a a b."]))
        np.testing.assert_array_equal(document_vector(m).values, m.values[:, 0])

    def test_positive_cosine_with_every_nonzero_column(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            doc = random_count_doc(rng, int(rng.integers(2, 8)))
            m = build_matrix(doc)
            d = document_vector(m)
            for j in range(m.n_sentences):
                col = TermVector(values=m.values[:, j].copy())
                if col.values.any():
                    assert cosine(d, col) > 0


class TestQueryVector:
    def test_raw_count(self):
        m = build_matrix(two_sentence_doc(), "raw")
        np.testing.assert_array_equal(query_vector("b", m).values, [0, 1, 0])

    def test_all_oov_is_zero(self):
        m = build_matrix(two_sentence_doc(), "raw")
        assert not query_vector("z z", m).values.any()

    def test_tf_idf_uses_matrix_idf(self):
        m = build_matrix(two_sentence_doc(), "tf_idf")
        q = query_vector("a b", m)
        assert q.values[0] == pytest.approx(LN2, abs=1e-12)  # df(a)=1 of s=2
        assert q.values[1] == 0.0  # df(b)=s
        assert q.values[2] == 0.0  # not in the query

    def test_normalization_pipeline_matches_corpus(self):
        m = build_matrix(two_sentence_doc(), "raw")
        np.testing.assert_array_equal(
            query_vector("B!", m).values, query_vector("b", m).values
        )


def test_matrix_tsv_layout():
    m = build_matrix(two_sentence_doc(), "raw")
    lines = matrix_to_tsv(m).splitlines()
    assert lines[0] == "term\t0\t1"
    assert lines[1].startswith("a\t")
    assert len(lines) == 4
