import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from paradigms.embedding import EmbeddingStore
from paradigms.exceptions import SchemaError, SeedSelectionError
from paradigms.models import SeedStrategy
from paradigms.seedio import (
    FeatureBundle,
    ParadigmSchema,
    RelationKey,
    UnimorphEntry,
    build_schema,
    build_seed,
    enumerate_relations,
    export_tables,
    gold_tables,
    parse_unimorph,
    read_schema,
    read_seed,
    select_seed,
)

ENGLISH = [
    ("walk", "walk", "V;NFIN"),
    ("walk", "walks", "V;3;SG;PRS"),
    ("walk", "walking", "V;V.PTCP;PRS"),
    ("walk", "walked", "V;PST"),
    ("walk", "walked", "V;V.PTCP;PST"),
    ("talk", "talk", "V;NFIN"),
    ("talk", "talks", "V;3;SG;PRS"),
    ("talk", "talking", "V;V.PTCP;PRS"),
    ("talk", "talked", "V;PST"),
    ("talk", "talked", "V;V.PTCP;PST"),
    ("sing", "sing", "V;NFIN"),
    ("sing", "sings", "V;3;SG;PRS"),
    ("sing", "singing", "V;V.PTCP;PRS"),
    ("sing", "sang", "V;PST"),
    ("sing", "sung", "V;V.PTCP;PST"),
]


def entries_from(rows):
    return [
        UnimorphEntry(lemma, form, FeatureBundle.parse(tags))
        for lemma, form, tags in rows
    ]


def write_file(directory, name, text):
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


class FeatureBundleTests(SimpleTestCase):
    def test_order_and_duplicates_do_not_matter(self):
        self.assertEqual(FeatureBundle.parse("V;SG;1"), FeatureBundle.parse("1;V;SG;V"))
        self.assertEqual(str(FeatureBundle.parse("V;SG;1")), "1;SG;V")

    def test_empty(self):
        with self.assertRaises(SchemaError):
            FeatureBundle.parse(" ; ")


class ParseUnimorphTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def test_parse(self):
        path = write_file(
            self.directory.name, "fra.tsv", "parler\tparle\tV;IND;PRS;1;SG\n\n"
        )
        entries = parse_unimorph(path)
        self.assertEqual(
            entries,
            [UnimorphEntry("parler", "parle", FeatureBundle.parse("V;IND;PRS;1;SG"))],
        )

    def test_malformed_lines_are_skipped(self):
        path = write_file(
            self.directory.name,
            "fra.tsv",
            "parler\tparle\n"
            "parler\tparle\tV;1;SG\n"
            "pomme de terre\tpommes de terre\tN;PL\n",
        )
        with self.assertLogs(level="WARNING") as logs:
            entries = parse_unimorph(path)
        self.assertEqual(len(entries), 1)
        self.assertEqual(len(logs.records), 2)

    def test_empty_file(self):
        path = write_file(self.directory.name, "fra.tsv", "")
        self.assertEqual(parse_unimorph(path), [])


class BuildSchemaTests(SimpleTestCase):
    def test_merges_syncretic_bundles(self):
        schema, tables = build_schema(entries_from(ENGLISH), ["walk", "talk"])
        self.assertEqual(schema.m, 4)
        self.assertEqual(schema.bundle_count, 5)
        merged = schema.cell_for_bundle(FeatureBundle.parse("V;PST"))
        self.assertEqual(
            merged, schema.cell_for_bundle(FeatureBundle.parse("V;V.PTCP;PST"))
        )
        self.assertEqual(tables[0].forms[merged], "walked")

    def test_irregular_lexeme_prevents_merge(self):
        schema, _ = build_schema(entries_from(ENGLISH), ["walk", "talk", "sing"])
        self.assertEqual(schema.m, 5)

    def test_single_lexeme_merges_identical_forms(self):
        rows = [("mettre", "mets", "V;1;SG"), ("mettre", "mets", "V;2;SG")]
        schema, tables = build_schema(entries_from(rows), ["mettre"])
        self.assertEqual(schema.m, 1)
        self.assertEqual(tables[0].forms, {0: "mets"})

    def test_missing_form(self):
        rows = ENGLISH + [("jump", "jump", "V;NFIN")]
        with self.assertRaises(SchemaError):
            build_schema(entries_from(rows), ["walk", "jump"])

    def test_missing_lexeme(self):
        with self.assertRaises(SchemaError):
            build_schema(entries_from(ENGLISH), ["walk", "swim"])

    def test_fixpoint(self):
        seed = build_seed(entries_from(ENGLISH), ["walk", "talk"])
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "seed.tsv")
            export_tables(seed.tables, seed.schema, path)
            again = read_seed(path)
        self.assertEqual(again.schema, seed.schema)
        self.assertEqual(again.tables, seed.tables)

    def test_schema_round_trip(self):
        schema, _ = build_schema(entries_from(ENGLISH), ["walk", "talk"])
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "schema.tsv")
            schema.export(path)
            self.assertEqual(read_schema(path), schema)

    def test_cell_for_label(self):
        schema, _ = build_schema(entries_from(ENGLISH), ["walk", "talk"])
        merged = schema.cell_for_bundle(FeatureBundle.parse("V;PST"))
        self.assertEqual(schema.cell_for_label(schema[merged].label), merged)
        self.assertEqual(schema.cell_for_label("V;V.PTCP;PST"), merged)
        with self.assertRaises(SchemaError):
            schema.cell_for_label("N;PL")

    def test_gold_tables(self):
        seed = build_seed(entries_from(ENGLISH), ["walk", "talk"])
        tables = gold_tables(entries_from(ENGLISH), seed.schema, exclude={"walk"})
        self.assertEqual([table.lexeme for table in tables], ["talk", "sing"])
        merged = seed.schema.cell_for_bundle(FeatureBundle.parse("V;PST"))
        self.assertEqual(tables[1].forms[merged], "sang")


def regular_lexemes(count):
    rows = []
    for i in range(count):
        lemma = "lex{}".format(chr(ord("a") + i))
        rows.append((lemma, lemma + "o", "V;1;SG"))
        rows.append((lemma, lemma + "as", "V;2;SG"))
    return rows


class SelectSeedTests(SimpleTestCase):
    def test_frequency(self):
        rows = regular_lexemes(10)
        words = []
        for lemma, form, _ in rows:
            # the first five lexemes have both forms in the store
            if lemma < "lexf" or form.endswith("o"):
                words.append(form)
        vectors = np.ones((len(words), 2))
        vectors[:, 0] += np.arange(len(words))
        store = EmbeddingStore(words, vectors)
        seed = select_seed(entries_from(rows), store, 5, SeedStrategy.FREQUENCY)
        self.assertEqual(set(seed.lexemes), {"lexa", "lexb", "lexc", "lexd", "lexe"})

    def test_diverse_skips_repeated_signatures(self):
        rows = [
            ("parler", "parle", "V;1;SG"),
            ("parler", "parlons", "V;1;PL"),
            ("aimer", "aime", "V;1;SG"),
            ("aimer", "aimons", "V;1;PL"),
            ("finir", "finis", "V;1;SG"),
            ("finir", "finissons", "V;1;PL"),
        ]
        words = ["parle", "parlons", "aime", "aimons", "finis", "finissons"]
        store = EmbeddingStore(words, np.eye(6))
        entries = entries_from(rows)

        frequency = select_seed(entries, store, 2, SeedStrategy.FREQUENCY)
        self.assertEqual(frequency.lexemes, ["parler", "aimer"])
        diverse = select_seed(entries, store, 2, SeedStrategy.DIVERSE)
        self.assertEqual(diverse.lexemes, ["parler", "finir"])

    def test_diverse_falls_back_to_frequency(self):
        rows = [
            ("parler", "parle", "V;1;SG"),
            ("parler", "parlons", "V;1;PL"),
            ("aimer", "aime", "V;1;SG"),
            ("aimer", "aimons", "V;1;PL"),
        ]
        store = EmbeddingStore(["parle", "parlons", "aime", "aimons"], np.eye(4))
        with self.assertLogs(level="WARNING"):
            seed = select_seed(entries_from(rows), store, 2, SeedStrategy.DIVERSE)
        self.assertEqual(seed.lexemes, ["parler", "aimer"])

    def test_not_enough_tables(self):
        rows = regular_lexemes(5)
        store = EmbeddingStore(["lexao"], np.ones((1, 2)))
        with self.assertRaises(SeedSelectionError):
            select_seed(entries_from(rows), store, 6)


class EnumerateRelationsTests(SimpleTestCase):
    def schema(self, m):
        return ParadigmSchema(
            [[FeatureBundle(["V", "C{}".format(i)])] for i in range(m)]
        )

    def test_counts(self):
        self.assertEqual(enumerate_relations(self.schema(2)), [(0, 1), (1, 0)])
        relations = enumerate_relations(self.schema(3))
        self.assertEqual(
            relations, [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
        )
        self.assertIsInstance(relations[0], RelationKey)
        self.assertEqual(enumerate_relations(self.schema(1)), [])
        self.assertEqual(len(enumerate_relations(self.schema(7))), 42)
