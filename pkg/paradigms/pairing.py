"""
Pairing tagged words across cells into training examples.

Words are grouped into one bin per cell, and words of two bins are paired
as distinct nearest neighbours under CSLS (cross-domain similarity local
scaling with k=2): the distance between two words, less half the distance
from each of them to its second nearest neighbour in the other bin.
"""

import logging
from collections import namedtuple

import numpy as np

from paradigms.editscript import levenshtein_matrix
from paradigms.embedding import DISTANCE_DECIMALS
from paradigms.exceptions import PairingError
from paradigms.models import PROVENANCE_STRENGTH, Metric

Bin = namedtuple("Bin", ["cell", "members"])
TrainingPair = namedtuple(
    "TrainingPair",
    ["source_form", "source_cell", "target_cell", "target_form", "score", "provenance"],
    defaults=[None],
)


def bin_tagged(lexicon, store=None):
    """
    One bin per tagged cell, members sorted. With a store, words that have
    no vector are left out.
    """
    members = {}
    for word, cell in lexicon.pairs():
        if store is not None and word not in store:
            continue
        members.setdefault(cell, set()).add(word)
    return {
        cell: Bin(cell, tuple(sorted(words))) for cell, words in sorted(members.items())
    }


def distance_matrix(xs, ys, metric, store=None):
    if metric == Metric.LEVENSHTEIN:
        return levenshtein_matrix(xs, ys).astype(np.float64)
    if metric == Metric.COSINE:
        if store is None:
            raise PairingError("cosine pairing needs word vectors")
        x_matrix = store.matrix(xs)
        y_matrix = store.matrix(ys)
        x_unit = x_matrix / np.linalg.norm(x_matrix, axis=1, keepdims=True)
        y_unit = y_matrix / np.linalg.norm(y_matrix, axis=1, keepdims=True)
        distances = np.clip(1.0 - x_unit @ y_unit.T, 0.0, 2.0)
        return np.round(distances, DISTANCE_DECIMALS)
    raise PairingError("unknown metric {!r}".format(metric))


def csls_matrix(distances):
    """CSLS scores for a full distance matrix between two bins of size >= 2."""
    if distances.shape[0] < 2 or distances.shape[1] < 2:
        raise PairingError("CSLS needs at least two words in each bin")
    row_penalty = np.partition(distances, 1, axis=1)[:, 1]
    column_penalty = np.partition(distances, 1, axis=0)[1, :]
    return distances - 0.5 * row_penalty[:, None] - 0.5 * column_penalty[None, :]


def csls_score(x, y, bin_x, bin_y, metric, store=None):
    """CSLS score of the pair (x, y); lower is a better match."""
    if len(bin_x.members) < 2 or len(bin_y.members) < 2:
        raise PairingError("CSLS needs at least two words in each bin")
    to_y = distance_matrix([x], bin_y.members, metric, store)[0]
    to_x = distance_matrix(bin_x.members, [y], metric, store)[:, 0]
    direct = to_y[bin_y.members.index(y)]
    return float(
        direct - 0.5 * np.partition(to_y, 1)[1] - 0.5 * np.partition(to_x, 1)[1]
    )


def match_greedily(scores):
    """
    One-to-one (row, column) matches in ascending score order; ties go to
    the lower row, then the lower column.
    """
    rows, columns = np.indices(scores.shape)
    order = np.lexsort((columns.ravel(), rows.ravel(), scores.ravel()))
    used_rows, used_columns = set(), set()
    limit = min(scores.shape)
    matches = []
    for position in order:
        row, column = divmod(int(position), scores.shape[1])
        if row in used_rows or column in used_columns:
            continue
        used_rows.add(row)
        used_columns.add(column)
        matches.append((row, column))
        if len(matches) == limit:
            break
    return matches


def weaker_provenance(first, second):
    if first is None or second is None:
        return None
    return min(first, second, key=PROVENANCE_STRENGTH.__getitem__)


def pair_bins(bins, metric, cap, store=None, lexicon=None):
    """
    Match every ordered pair of bins, pool the matches, and keep the ``cap``
    best-scoring ones.
    """
    if cap < 1:
        raise PairingError("the dataset cap must be at least 1")
    metric = Metric(metric)
    pool = []
    skipped = 0
    cells = sorted(bins)
    for source in cells:
        for target in cells:
            if source == target:
                continue
            xs, ys = bins[source].members, bins[target].members
            if len(xs) < 2 or len(ys) < 2:
                skipped += 1
                continue
            scores = csls_matrix(distance_matrix(xs, ys, metric, store))
            for row, column in match_greedily(scores):
                provenance = None
                if lexicon is not None:
                    provenance = weaker_provenance(
                        lexicon.provenance(xs[row], source),
                        lexicon.provenance(ys[column], target),
                    )
                pool.append(
                    TrainingPair(
                        xs[row],
                        source,
                        target,
                        ys[column],
                        float(scores[row, column]),
                        provenance,
                    )
                )
    if skipped:
        logging.warning(
            "{:,.0f} bin pairs skipped: CSLS needs two words in each bin".format(
                skipped
            )
        )

    pool.sort(
        key=lambda pair: (
            pair.score,
            pair.source_form,
            pair.target_form,
            pair.source_cell,
            pair.target_cell,
        )
    )
    logging.info(
        "{:,.0f} pairs matched, keeping {:,.0f}".format(len(pool), min(len(pool), cap))
    )
    return pool[:cap]


def emit_dataset(pairs, schema, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for pair in pairs:
            f.write(
                "{}\t{}\t{}\t{}\t{!r}\n".format(
                    pair.source_form,
                    schema[pair.source_cell].label,
                    schema[pair.target_cell].label,
                    pair.target_form,
                    pair.score,
                )
            )
    return len(pairs)


def read_dataset(path, schema):
    """Training pairs from a dataset file; the provenance is not stored."""
    pairs = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            source_form, source, target, target_form, score = line.rstrip("\n").split(
                "\t"
            )
            pairs.append(
                TrainingPair(
                    source_form,
                    schema.cell_for_label(source),
                    schema.cell_for_label(target),
                    target_form,
                    float(score),
                )
            )
    return pairs
