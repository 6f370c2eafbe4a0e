"""
Assigning paradigm cells to vocabulary words.

Three ways of doing it, one per pipeline variant:

- orthographic: a word is tagged with a cell when the seed's edit scripts
  from that cell lead to other vocabulary words for at least half of the
  paradigm;
- semantic: a word pair is tagged when its difference vector points the
  same way as the seed's mean difference vector for a relation;
- combined: the semantic relation vectors are re-estimated iteratively from
  "semi-gold" pairs that pass a relaxed orthographic test and a strict
  semantic one, before a final semantic tagging pass.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from django.conf import settings
from tqdm import tqdm

from paradigms.editscript import edit_script, serialize_script, try_apply
from paradigms.embedding import NeighbourIndex
from paradigms.models import PROVENANCE_STRENGTH, FinalCutoff, Provenance
from paradigms.seedio import enumerate_relations

TagAssignment = namedtuple(
    "TagAssignment", ["word", "cell", "provenance", "evidence"]
)
SemRelation = namedtuple(
    "SemRelation",
    ["key", "vector", "cutoff_avg", "cutoff_max", "support", "usable"],
)
BootstrapTrace = namedtuple("BootstrapTrace", ["key", "sizes", "accepted"])


def progress(iterable, **kwargs):
    if settings.SHOW_PROGRESS:
        return tqdm(iterable, **kwargs)
    return iterable


class TaggedLexicon:
    """
    (word, cell) assignments with the strongest provenance seen for each and
    the set of relations that support it.
    """

    def __init__(self):
        self._provenance = {}
        self._support = {}

    def add(self, word, cell, provenance, support=()):
        key = (word, cell)
        provenance = Provenance(provenance)
        current = self._provenance.get(key)
        if (
            current is None
            or PROVENANCE_STRENGTH[provenance] > PROVENANCE_STRENGTH[current]
        ):
            self._provenance[key] = provenance
        self._support.setdefault(key, set()).update(support)

    def update(self, other):
        for (word, cell), provenance in other._provenance.items():
            self.add(word, cell, provenance, other._support[(word, cell)])

    def __contains__(self, item):
        return item in self._provenance

    def __len__(self):
        return len(self._provenance)

    def __eq__(self, other):
        if not isinstance(other, TaggedLexicon):
            return NotImplemented
        return self.assignments() == other.assignments()

    def provenance(self, word, cell):
        return self._provenance.get((word, cell))

    def evidence(self, word, cell):
        return len(self._support[(word, cell)])

    def pairs(self):
        return set(self._provenance)

    def assignments(self):
        return [
            TagAssignment(word, cell, provenance, len(self._support[(word, cell)]))
            for (word, cell), provenance in sorted(self._provenance.items())
        ]

    def cells_of(self, word):
        return sorted(cell for tagged, cell in self._provenance if tagged == word)

    def counts(self):
        counts = {}
        for _, cell in self._provenance:
            counts[cell] = counts.get(cell, 0) + 1
        return dict(sorted(counts.items()))

    def export(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for assignment in self.assignments():
                f.write(
                    "{}\t{}\t{}\t{}\n".format(
                        assignment.word,
                        assignment.cell,
                        assignment.provenance.value,
                        assignment.evidence,
                    )
                )


def read_tagged(path):
    """
    Read a tagged lexicon back. The supporting relations are not stored, so
    each entry gets ``evidence`` opaque support markers.
    """
    lexicon = TaggedLexicon()
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            word, cell, provenance, evidence = line.rstrip("\n").split("\t")
            lexicon.add(word, int(cell), provenance, range(int(evidence)))
    return lexicon


def log_counts(lexicon, label):
    for cell, count in lexicon.counts().items():
        logging.info("{}: {:,.0f} words tagged with cell {}".format(label, count, cell))


class OrthRelation:
    """
    The seed's edit scripts for one relation. Membership ignores boundary
    flags; ``variants`` keeps every distinct flagged script for application.
    """

    def __init__(self, key, scripts):
        self.key = key
        variants = {}
        for script in scripts:
            variants.setdefault(serialize_script(script), script)
        self.variants = tuple(variants.values())
        self.scripts = frozenset(self.variants)

    def __contains__(self, script):
        return script in self.scripts

    def targets(self, word, vocab):
        """Vocabulary words this relation's scripts turn ``word`` into."""
        found = []
        for script in self.variants:
            if not script:
                continue
            target = try_apply(script, word)
            if (
                target is None
                or target == word
                or target in found
                or target not in vocab
            ):
                continue
            if edit_script(word, target) in self.scripts:
                found.append(target)
        return found


def build_orth_relations(seed):
    return {
        key: OrthRelation(
            key,
            [
                edit_script(table.forms[key.source], table.forms[key.target])
                for table in seed.tables
            ],
        )
        for key in enumerate_relations(seed.schema)
    }


def coverage_threshold(m):
    return math.ceil((m - 1) / 2)


def orth_tag(vocab, relations, schema, threshold=None):
    """
    Tag (w, t_j) when relations out of t_j reach vocabulary words for at
    least ``threshold`` distinct target cells (ceil((m-1)/2) by default).
    """
    if threshold is None:
        threshold = coverage_threshold(schema.m)
    threshold = max(threshold, 1)
    by_source = {}
    for key in sorted(relations):
        by_source.setdefault(key.source, []).append(relations[key])

    lexicon = TaggedLexicon()
    for word in progress(vocab.words, desc="orthographic tagging"):
        for source, source_relations in by_source.items():
            supported = [
                relation.key
                for relation in source_relations
                if relation.targets(word, vocab)
            ]
            if len(supported) >= threshold:
                lexicon.add(word, source, Provenance.ORTH, supported)
    log_counts(lexicon, "orth")
    return lexicon


def difference_vectors(store, pairs):
    if not pairs:
        return np.zeros((0, store.dim))
    sources = store.matrix([source for source, _ in pairs])
    targets = store.matrix([target for _, target in pairs])
    return sources - targets


def relation_distances(vector, differences):
    """
    Cosine distance from a relation vector to each difference vector. Zero
    differences are infinitely far; an exact copy of the vector is at 0.
    """
    differences = np.atleast_2d(differences)
    norms = np.linalg.norm(differences, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        distances = 1.0 - (differences @ vector) / (norms * np.linalg.norm(vector))
    distances = np.clip(distances, 0.0, 2.0)
    distances[np.all(differences == vector, axis=1)] = 0.0
    distances[norms == 0] = np.inf
    return distances


def _unusable(key, reason):
    logging.warning(
        "Relation {}->{} unusable: {}".format(key.source, key.target, reason)
    )
    return SemRelation(key, None, None, None, (), False)


def estimate_relation(key, store, pairs, cutoff_pairs=None):
    """
    Mean difference vector over ``pairs``, with the average and maximum
    scatter of ``cutoff_pairs`` (default ``pairs``) around it.
    """
    pairs = tuple(pairs)
    if not pairs:
        return _unusable(key, "no examples with both forms in the vocabulary")
    vector = difference_vectors(store, pairs).mean(axis=0)
    if not np.any(vector):
        return _unusable(key, "mean difference vector is zero")
    scatter_pairs = pairs if cutoff_pairs is None else tuple(cutoff_pairs)
    distances = relation_distances(vector, difference_vectors(store, scatter_pairs))
    return SemRelation(
        key, vector, float(distances.mean()), float(distances.max()), pairs, True
    )


def seed_pairs(seed, store, key):
    """Seed (source, target) forms for a relation that can back a vector."""
    pairs = []
    for table in seed.tables:
        source, target = table.forms[key.source], table.forms[key.target]
        if source == target:
            continue
        if source not in store or target not in store:
            logging.warning(
                "Seed table {} skipped for relation {}->{}: "
                "form not in the embeddings".format(
                    table.lexeme, key.source, key.target
                )
            )
            continue
        pairs.append((source, target))
    return pairs


def build_sem_relation(seed, store, key):
    return estimate_relation(key, store, seed_pairs(seed, store, key))


class SemanticSearch:
    """Predicted-point neighbour search over the in-store vocabulary."""

    def __init__(self, vocab, store, neighbor_budget):
        self.store = store
        self.neighbor_budget = neighbor_budget
        words = [word for word in vocab.words if word in store]
        self.index = NeighbourIndex(store, words) if words else None
        self.matrix = store.matrix(self.index.words) if words else None

    def matches(self, vector, cutoff):
        """Word pairs (a, b) with v(a) - v(b) within ``cutoff`` of ``vector``."""
        if self.index is None:
            return []
        limit = cutoff + settings.SEMANTIC_TOLERANCE
        neighbours = self.index.nearest_many(
            self.matrix - vector, self.neighbor_budget + 1
        )
        rows = np.arange(len(neighbours))[:, None]
        valid = neighbours != rows
        valid &= np.cumsum(valid, axis=1) <= self.neighbor_budget

        matches = []
        words = self.index.words
        chunk_size = settings.NEIGHBOUR_CHUNK_SIZE
        for start in range(0, len(neighbours), chunk_size):
            chunk = neighbours[start : start + chunk_size]
            differences = (
                self.matrix[start : start + chunk_size, None, :] - self.matrix[chunk]
            )
            distances = relation_distances(
                vector, differences.reshape(-1, self.store.dim)
            ).reshape(chunk.shape)
            hits = valid[start : start + chunk_size] & (distances <= limit)
            for row, column in zip(*np.nonzero(hits)):
                matches.append((words[start + row], words[chunk[row, column]]))
        return matches


def sem_tag(vocab, store, relations, neighbor_budget, search=None):
    search = search or SemanticSearch(vocab, store, neighbor_budget)
    lexicon = TaggedLexicon()
    for key in progress(sorted(relations), desc="semantic tagging"):
        relation = relations[key]
        if not relation.usable:
            continue
        for source, target in search.matches(relation.vector, relation.cutoff_avg):
            lexicon.add(source, key.source, Provenance.SEM, [key])
            lexicon.add(target, key.target, Provenance.SEM, [key])
    log_counts(lexicon, "sem")
    return lexicon


def relaxed_candidates(vocab, store, relation):
    """
    Pairs whose edit script is in the relation's seed scripts, without the
    paradigm coverage requirement. Both words must have vectors.
    """
    pairs = []
    for word in vocab.words:
        if word not in store:
            continue
        for target in relation.targets(word, vocab):
            if target in store:
                pairs.append((word, target))
    return sorted(pairs)


def _bootstrap_relation(key, store, seed_relation, candidates, max_iters):
    support = list(seed_relation.support)
    seed_differences = difference_vectors(store, support)
    seen = set(support)
    pending = [pair for pair in candidates if pair not in seen]
    pending_differences = difference_vectors(store, pending)
    accepted = {}
    sizes = []
    vector = seed_relation.vector

    for iteration in range(1, max_iters + 1):
        cutoff = relation_distances(vector, seed_differences).max()
        if not pending:
            sizes.append(len(accepted))
            break
        keep = relation_distances(vector, pending_differences) > (
            cutoff + settings.SEMANTIC_TOLERANCE
        )
        added = [pair for pair, kept in zip(pending, keep) if not kept]
        for pair in added:
            accepted[pair] = iteration
        sizes.append(len(accepted))
        logging.info(
            "Relation {}->{} iteration {}: "
            "{:,.0f} semi-gold pairs added, {:,.0f} in total".format(
                key.source, key.target, iteration, len(added), len(accepted)
            )
        )
        if not added:
            break
        pending = [pair for pair, kept in zip(pending, keep) if kept]
        pending_differences = pending_differences[keep]
        vector = difference_vectors(store, support + sorted(accepted)).mean(axis=0)
        if not np.any(vector):
            logging.warning(
                "Relation {}->{}: bootstrapped vector vanished, stopping".format(
                    key.source, key.target
                )
            )
            break

    return BootstrapTrace(key, sizes, accepted)


def comb_bootstrap(
    seed,
    store,
    vocab,
    orth,
    max_iters,
    neighbor_budget=20,
    final_cutoff=FinalCutoff.UNION,
):
    """
    Grow each relation's support with semi-gold pairs, then tag semantically
    with the enriched relation vectors.

    Returns the enriched relations, the tagged lexicon (semantic tags plus the
    semi-gold pairs) and a BootstrapTrace per relation.
    """
    relations = {}
    traces = {}
    lexicon = TaggedLexicon()
    for key in progress(sorted(orth), desc="bootstrapping"):
        seed_relation = build_sem_relation(seed, store, key)
        if not seed_relation.usable:
            relations[key] = seed_relation
            continue
        candidates = relaxed_candidates(vocab, store, orth[key])
        trace = _bootstrap_relation(key, store, seed_relation, candidates, max_iters)
        traces[key] = trace

        support = list(seed_relation.support) + sorted(trace.accepted)
        if final_cutoff == FinalCutoff.SEED:
            relation = estimate_relation(
                key, store, support, cutoff_pairs=seed_relation.support
            )
        else:
            relation = estimate_relation(key, store, support)
        relations[key] = relation if relation.usable else seed_relation

        for source, target in sorted(trace.accepted):
            lexicon.add(source, key.source, Provenance.SEMI_GOLD, [key])
            lexicon.add(target, key.target, Provenance.SEMI_GOLD, [key])

    lexicon.update(sem_tag(vocab, store, relations, neighbor_budget))
    log_counts(lexicon, "comb")
    return relations, lexicon, traces


def export_relations(path, orth, semantic=None):
    """One line per seed script, and one per semantic relation estimate."""
    semantic = semantic or {}
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for key in sorted(orth):
            for script in orth[key].variants:
                f.write(
                    "orth\t{}\t{}\t{}\n".format(
                        key.source, key.target, serialize_script(script)
                    )
                )
        for key in sorted(semantic):
            relation = semantic[key]
            if relation.usable:
                f.write(
                    "sem\t{}\t{}\t{}\t{!r}\t{!r}\n".format(
                        key.source,
                        key.target,
                        len(relation.support),
                        relation.cutoff_avg,
                        relation.cutoff_max,
                    )
                )
            else:
                f.write("sem\t{}\t{}\t0\t-\t-\n".format(key.source, key.target))


def export_traces(path, traces):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for key in sorted(traces):
            previous = 0
            for iteration, size in enumerate(traces[key].sizes, start=1):
                f.write(
                    "{}\t{}\t{}\t{}\t{}\n".format(
                        key.source, key.target, iteration, size - previous, size
                    )
                )
                previous = size
