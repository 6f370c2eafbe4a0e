"""
Pretrained word vectors: loading the text ``.vec`` format, cutting the
vocabulary down to real words, and exact cosine geometry over it.
"""

import logging

import numpy as np
from django.conf import settings

from paradigms.exceptions import EmbeddingFormatError, VectorError

# decimal places neighbour distances are rounded to before ranking
DISTANCE_DECIMALS = 12


class EmbeddingStore:
    """
    Word vectors in load order. A word's rank is the line it was read from,
    which doubles as a frequency proxy for frequency-sorted vector files.
    """

    def __init__(self, words, vectors, ranks=None, dim=None):
        vectors = np.asarray(vectors, dtype=np.float64)
        words = tuple(words)
        if vectors.ndim != 2:
            if words or dim is None:
                raise VectorError("vectors must be a two-dimensional array")
            vectors = np.zeros((0, dim))
        if vectors.shape[0] != len(words):
            raise VectorError(
                "{} words but {} vectors".format(len(words), vectors.shape[0])
            )
        self.dim = dim or vectors.shape[1]
        if self.dim < 1 or vectors.shape[1] != self.dim:
            raise VectorError("all vectors must have dimension {}".format(self.dim))
        if words and not np.all(np.any(vectors != 0, axis=1)):
            raise VectorError("zero vectors cannot be stored")

        self.words = words
        self.index = {word: row for row, word in enumerate(words)}
        if len(self.index) != len(words):
            raise VectorError("words in an embedding store must be unique")
        self.ranks = tuple(ranks) if ranks is not None else tuple(range(len(words)))
        self.vectors = vectors
        self.vectors.flags.writeable = False

    def __contains__(self, word):
        return word in self.index

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __eq__(self, other):
        if not isinstance(other, EmbeddingStore):
            return NotImplemented
        return (
            self.words == other.words
            and self.ranks == other.ranks
            and np.array_equal(self.vectors, other.vectors)
        )

    def vector(self, word):
        return self.vectors[self.index[word]]

    def rank(self, word):
        return self.ranks[self.index[word]]

    def matrix(self, words):
        return self.vectors[[self.index[word] for word in words]]

    def export(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("{} {}\n".format(len(self.words), self.dim))
            for word, vector in zip(self.words, self.vectors):
                f.write(
                    "{} {}\n".format(word, " ".join(repr(float(x)) for x in vector))
                )


class Vocabulary:
    """The filtered word list tagging searches over, in rank order."""

    def __init__(self, words, source=None):
        self.words = tuple(words)
        self.source = source
        self._members = frozenset(self.words)

    def __contains__(self, word):
        return word in self._members

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def export(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for word in self.words:
                f.write(word + "\n")


def read_vocabulary(path, store=None):
    with open(path, encoding="utf-8") as f:
        words = [line.rstrip("\n") for line in f if line.strip()]
    return Vocabulary(words, source=store)


def load_embeddings(path, limit=None):
    """
    Read a text vector file: a ``<count> <dim>`` header, then one word per
    line followed by its ``dim`` values.
    """
    with open(path, encoding="utf-8") as f:
        header = f.readline()
        try:
            count, dim = (int(value) for value in header.split())
        except ValueError:
            raise EmbeddingFormatError(
                "malformed header {!r}".format(header.strip()), line=1
            )
        if dim < 1 or count < 0:
            raise EmbeddingFormatError(
                "malformed header {!r}".format(header.strip()), line=1
            )

        words, vectors, ranks = [], [], []
        seen = set()
        duplicates = 0
        lines_read = 0
        for rank, line in enumerate(f):
            if rank >= count or (limit is not None and len(words) >= limit):
                break
            lines_read += 1
            parts = line.rstrip().split(" ")
            if len(parts) != dim + 1:
                raise EmbeddingFormatError(
                    "expected {} values, found {}".format(dim, len(parts) - 1),
                    line=rank + 2,
                )
            word = parts[0]
            try:
                vector = [float(value) for value in parts[1:]]
            except ValueError:
                raise EmbeddingFormatError("non-numeric value", line=rank + 2)
            if word in seen:
                duplicates += 1
                continue
            seen.add(word)
            if not any(vector):
                logging.warning(
                    "Zero vector for {!r} on line {} skipped".format(word, rank + 2)
                )
                continue
            words.append(word)
            vectors.append(vector)
            ranks.append(rank)

    if duplicates:
        logging.warning(
            "{:,.0f} duplicate words skipped in {} (first occurrence kept)".format(
                duplicates, path
            )
        )
    if lines_read < count and (limit is None or len(words) < limit):
        logging.warning(
            "Header of {} promises {:,.0f} vectors, found {:,.0f}".format(
                path, count, lines_read
            )
        )
    logging.info("Loaded {:,.0f} vectors of dimension {}".format(len(words), dim))
    return EmbeddingStore(words, np.array(vectors).reshape(-1, dim), ranks, dim=dim)


def is_real_word(word, alphabet, vowels):
    """Lower-cased, alphabetic and containing at least one vowel."""
    if not word or word != word.lower():
        return False
    if alphabet:
        if any(char not in alphabet for char in word):
            return False
    elif not word.isalpha():
        return False
    return any(char in vowels for char in word)


def filter_vocabulary(store, alphabet=None, vowels="aeiou", cap=None):
    """
    Keep the words of ``store`` (an EmbeddingStore, or an already filtered
    Vocabulary) that pass ``is_real_word``, in rank order, up to ``cap``.
    An empty alphabet means any alphabetic character.
    """
    if alphabet and not set(vowels) <= set(alphabet):
        raise ValueError("vowels must be part of the alphabet")
    words = [word for word in store.words if is_real_word(word, alphabet, vowels)]
    if cap is not None:
        words = words[:cap]
    source = store.source if isinstance(store, Vocabulary) else store
    logging.info(
        "Vocabulary of {:,.0f} words kept from {:,.0f}".format(
            len(words), len(store.words)
        )
    )
    return Vocabulary(words, source=source)


def cosine_distance(u, v):
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise VectorError("dimension mismatch: {} and {}".format(u.shape, v.shape))
    norm_u = np.linalg.norm(u)
    norm_v = np.linalg.norm(v)
    if norm_u == 0 or norm_v == 0:
        raise VectorError("cosine distance is undefined for a zero vector")
    distance = 1.0 - float(np.dot(u, v)) / (norm_u * norm_v)
    return min(2.0, max(0.0, distance))


def cosine_distances(vector, matrix):
    """Cosine distance from ``vector`` to every row of ``matrix``."""
    norms = np.linalg.norm(matrix, axis=1) * np.linalg.norm(vector)
    if np.any(norms == 0):
        raise VectorError("cosine distance is undefined for a zero vector")
    return np.clip(1.0 - (matrix @ vector) / norms, 0.0, 2.0)


class NeighbourIndex:
    """
    Exact cosine nearest neighbours over a fixed set of store words.

    Candidates are kept in lexicographic order. Distances are rounded to
    DISTANCE_DECIMALS places, and equal ones come back in word order.
    """

    def __init__(self, store, words):
        self.words = tuple(sorted(set(words)))
        if not self.words:
            raise VectorError("cannot search an empty candidate set")
        self.store = store
        self.positions = {word: row for row, word in enumerate(self.words)}
        matrix = store.matrix(self.words)
        self.unit = matrix / np.linalg.norm(matrix, axis=1, keepdims=True)

    def __len__(self):
        return len(self.words)

    def distances(self, queries):
        """Cosine distances, rounded to DISTANCE_DECIMALS, one row per query."""
        queries = np.atleast_2d(np.asarray(queries, dtype=np.float64))
        norms = np.linalg.norm(queries, axis=1, keepdims=True)
        if np.any(norms == 0):
            raise VectorError("cannot search from a zero vector")
        distances = np.clip(1.0 - (queries / norms) @ self.unit.T, 0.0, 2.0)
        return np.round(distances, DISTANCE_DECIMALS)

    def _ranked(self, distances, k):
        # the k smallest per row, ties by candidate index; any candidate tied
        # with the k-th distance is kept until the final sort
        k = min(k, distances.shape[1])
        kth = np.partition(distances, k - 1, axis=1)[:, k - 1]
        rows = []
        for row, limit in zip(distances, kth):
            candidates = np.flatnonzero(row <= limit)
            order = np.lexsort((candidates, row[candidates]))
            rows.append(candidates[order][:k])
        return np.array(rows, dtype=np.int64).reshape(len(rows), k)

    def nearest(self, query, k):
        if k < 1:
            raise ValueError("k must be at least 1")
        distances = self.distances(query)
        return [
            (self.words[i], float(distances[0, i]))
            for i in self._ranked(distances, k)[0]
        ]

    def nearest_many(self, queries, k):
        """
        Indices (into ``self.words``) of the ``k`` nearest candidates for every
        row of ``queries``, in batches of NEIGHBOUR_CHUNK_SIZE rows.
        """
        if k < 1:
            raise ValueError("k must be at least 1")
        queries = np.atleast_2d(np.asarray(queries, dtype=np.float64))
        k = min(k, len(self.words))
        chunk_size = settings.NEIGHBOUR_CHUNK_SIZE
        results = []
        for start in range(0, queries.shape[0], chunk_size):
            distances = self.distances(queries[start : start + chunk_size])
            results.append(self._ranked(distances, k))
        if not results:
            return np.zeros((0, k), dtype=np.int64)
        return np.vstack(results)


def nearest_in_set(query, candidates, store, k):
    """The ``k`` candidates closest to ``query``, ascending, ties by word."""
    return NeighbourIndex(store, candidates).nearest(query, k)
