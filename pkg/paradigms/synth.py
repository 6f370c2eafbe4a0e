"""
Synthetic suffixing languages with matching embedding spaces.

Every form is a stem plus a class- and cell-specific suffix, optionally
adjusted by vowel harmony, and its vector is the sum of a per-lexeme stem
vector, a per-cell offset and a little gaussian noise. Difference vectors
within one relation therefore agree up to the noise, which is what the
semantic tagger relies on.
"""

import logging
import os
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from paradigms.embedding import EmbeddingStore
from paradigms.exceptions import SynthError
from paradigms.seedio import FeatureBundle, InflectionTable, ParadigmSchema

HarmonyRule = namedtuple("HarmonyRule", ["back", "front", "alternants"])

DEFAULT_HARMONY = HarmonyRule(
    back="aou", front="eiy", alternants={"a": "e", "o": "i", "u": "y"}
)

STEM_LENGTHS = (3, 6)
DISTRACTOR_LENGTHS = (2, 7)
MAX_ATTEMPTS_PER_WORD = 200


@dataclass(frozen=True)
class SynthSpec:
    m: int = 6
    classes: tuple = None
    lexeme_count: int = 300
    stem_alphabet: str = "bdgklmnprstaeiou"
    vowels: str = "aeiou"
    harmony: HarmonyRule = None
    embed_dim: int = 64
    noise_sigma: float = 0.05
    seed: int = 0
    zipf: float = 0.0
    distractors: int = 0
    class_count: int = 1

    def suffix_tables(self):
        if self.classes is not None:
            return [tuple(table) for table in self.classes]
        return auto_suffix_tables(
            self.m, self.class_count, self.stem_alphabet, self.vowels
        )

    def validate(self):
        if self.m < 2:
            raise SynthError("a paradigm needs at least two cells")
        if self.lexeme_count < 1:
            raise SynthError("at least one lexeme is needed")
        if self.embed_dim < 1:
            raise SynthError("embed_dim must be positive")
        if self.noise_sigma < 0:
            raise SynthError("noise_sigma cannot be negative")
        if not set(self.vowels) & set(self.stem_alphabet):
            raise SynthError("the stem alphabet has no vowels")
        tables = self.suffix_tables()
        if not tables:
            raise SynthError("at least one class is needed")
        for class_id, table in enumerate(tables):
            if len(table) != self.m:
                raise SynthError(
                    "class {} defines {} suffixes for {} cells".format(
                        class_id, len(table), self.m
                    )
                )
        if self.harmony is not None:
            back, front = set(self.harmony.back), set(self.harmony.front)
            if not back or not front or back & front:
                raise SynthError("harmony needs two disjoint vowel groups")
            for table in tables:
                for suffix in table:
                    for char in suffix:
                        if char in back and char not in self.harmony.alternants:
                            raise SynthError(
                                "no front alternant for {!r}".format(char)
                            )


SynthLanguage = namedtuple(
    "SynthLanguage", ["schema", "tables", "class_of", "store", "distractors"]
)


def auto_suffix_tables(m, class_count, alphabet, vowels):
    """
    Suffix tables in which the non-empty suffixes of a class share no
    letters; cell 0 is the bare stem. Suffixes are vowel + consonant pairs
    (a single vowel for cell 1) cut from rotations of the alphabet.
    """
    vowel_list = [char for char in alphabet if char in vowels]
    consonants = [char for char in alphabet if char not in vowels]
    if len(vowel_list) < m - 1 or len(consonants) < m - 2:
        raise SynthError(
            "alphabet too small for {} letter-disjoint suffixes".format(m - 1)
        )
    tables = []
    for class_id in range(class_count):
        vowel_order = vowel_list[class_id:] + vowel_list[:class_id]
        shift = class_id * (m - 2)
        consonant_order = consonants[shift:] + consonants[:shift]
        suffixes = [""]
        for cell in range(1, m):
            if cell == 1:
                suffixes.append(vowel_order[0])
            else:
                suffixes.append(vowel_order[cell - 1] + consonant_order[cell - 2])
        tables.append(tuple(suffixes))
    if len(set(tables)) != len(tables):
        raise SynthError(
            "alphabet too small for {} distinct classes".format(class_count)
        )
    return tables


def apply_harmony(stem, suffix, harmony):
    if harmony is None:
        return suffix
    vowels = harmony.back + harmony.front
    stem_vowels = [char for char in stem if char in vowels]
    if not stem_vowels or stem_vowels[-1] in harmony.back:
        return suffix
    return "".join(harmony.alternants.get(char, char) for char in suffix)


def cell_bundle(cell_id):
    if cell_id == 0:
        return FeatureBundle(["V", "NFIN"])
    return FeatureBundle(["V", "C{}".format(cell_id)])


def _random_word(rng, alphabet, lengths):
    length = int(rng.integers(lengths[0], lengths[1] + 1))
    return "".join(rng.choice(list(alphabet), size=length))


def _unit(rng, dim):
    vector = rng.standard_normal(dim)
    return vector / np.linalg.norm(vector)


def generate_language(spec):
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    tables_by_class = spec.suffix_tables()
    schema = ParadigmSchema([[cell_bundle(cell)] for cell in range(spec.m)])

    tables, class_of = [], {}
    taken = set()
    attempts = 0
    while len(tables) < spec.lexeme_count:
        attempts += 1
        if attempts > spec.lexeme_count * MAX_ATTEMPTS_PER_WORD:
            raise SynthError(
                "could not draw {} distinct stems from {!r}".format(
                    spec.lexeme_count, spec.stem_alphabet
                )
            )
        stem = _random_word(rng, spec.stem_alphabet, STEM_LENGTHS)
        if not any(char in spec.vowels for char in stem):
            continue
        class_id = len(tables) % len(tables_by_class)
        forms = {
            cell: stem + apply_harmony(stem, suffix, spec.harmony)
            for cell, suffix in enumerate(tables_by_class[class_id])
        }
        if taken & set(forms.values()):
            continue
        taken.update(forms.values())
        lexeme = forms[0]
        tables.append(InflectionTable(lexeme, forms))
        class_of[lexeme] = class_id

    distractors = []
    attempts = 0
    while len(distractors) < spec.distractors:
        attempts += 1
        if attempts > spec.distractors * MAX_ATTEMPTS_PER_WORD:
            raise SynthError("could not draw {} distractors".format(spec.distractors))
        word = _random_word(rng, spec.stem_alphabet, DISTRACTOR_LENGTHS)
        if word in taken:
            continue
        taken.add(word)
        distractors.append(word)

    offsets = [_unit(rng, spec.embed_dim) for _ in range(spec.m)]
    noise_scale = spec.noise_sigma / np.sqrt(spec.embed_dim)
    words, vectors, weights = [], [], []
    seen = set()
    for rank, table in enumerate(tables):
        stem_base = _unit(rng, spec.embed_dim)
        for cell, form in table.forms.items():
            noise = rng.standard_normal(spec.embed_dim) * noise_scale
            if form in seen:
                continue
            seen.add(form)
            words.append(form)
            vectors.append(stem_base + offsets[cell] + noise)
            weights.append((rank + 1) ** -spec.zipf * (cell + 1) ** -spec.zipf)
    for word in distractors:
        words.append(word)
        vectors.append(_unit(rng, spec.embed_dim) * np.sqrt(2))
        weights.append(0.0)

    order = sorted(range(len(words)), key=lambda i: (-weights[i], i))
    store = EmbeddingStore(
        [words[i] for i in order], np.array([vectors[i] for i in order])
    )
    logging.info(
        "Generated {:,.0f} lexemes in {} classes, {:,.0f} words".format(
            len(tables), len(tables_by_class), len(store)
        )
    )
    return SynthLanguage(schema, tables, class_of, store, tuple(distractors))


def export_gold(lang, directory):
    """
    Write unimorph.tsv, embeddings.vec, gold.tsv (word, tags) and
    classes.tsv (lexeme, class) into ``directory``.
    """
    os.makedirs(directory, exist_ok=True)
    paths = {
        name: os.path.join(directory, filename)
        for name, filename in [
            ("unimorph", "unimorph.tsv"),
            ("embeddings", "embeddings.vec"),
            ("gold", "gold.tsv"),
            ("classes", "classes.tsv"),
        ]
    }
    with open(paths["unimorph"], "w", encoding="utf-8", newline="\n") as f:
        for table in lang.tables:
            for cell in lang.schema:
                f.write(
                    "{}\t{}\t{}\n".format(
                        table.lexeme, table.forms[cell.id], cell.bundles[0]
                    )
                )
    lang.store.export(paths["embeddings"])
    gold = {}
    for table in lang.tables:
        for cell in lang.schema:
            gold.setdefault(table.forms[cell.id], []).append(cell.bundles[0])
    with open(paths["gold"], "w", encoding="utf-8", newline="\n") as f:
        for word, bundles in gold.items():
            for bundle in bundles:
                f.write("{}\t{}\n".format(word, bundle))
    with open(paths["classes"], "w", encoding="utf-8", newline="\n") as f:
        for lexeme, class_id in lang.class_of.items():
            f.write("{}\t{}\n".format(lexeme, class_id))
    return paths


def read_classes(path):
    with open(path, encoding="utf-8") as f:
        return {
            lexeme: int(class_id)
            for lexeme, class_id in (
                line.rstrip("\n").split("\t") for line in f if line.strip()
            )
        }
