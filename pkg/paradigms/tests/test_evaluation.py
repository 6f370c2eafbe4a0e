import math
import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from paradigms.evaluation import (
    TaggingCounts,
    exact_match,
    export_report,
    export_series,
    feature_error_breakdown,
    gold_from_entries,
    gold_pairs,
    inflection_items,
    lemma_accuracy,
    pearson,
    per_cell_breakdown,
    precision_recall,
    read_gold,
    read_report,
    read_series,
    skyline_accuracy,
    tagging_counts,
    tagging_metrics,
    unattested_scripts,
)
from paradigms.exceptions import EvaluationError
from paradigms.inflector import train_rules
from paradigms.pairing import TrainingPair
from paradigms.seedio import (
    FeatureBundle,
    InflectionTable,
    ParadigmSchema,
    UnimorphEntry,
    build_seed,
)
from paradigms.tagging import build_orth_relations


def schema_of(*labels):
    return ParadigmSchema([[FeatureBundle.parse(label)] for label in labels])


class ExactMatchTests(SimpleTestCase):
    def test_exact_match(self):
        self.assertEqual(exact_match([("a", "a"), ("b", "c")]), 0.5)
        self.assertEqual(exact_match([("a", "a")]), 1.0)

    def test_empty(self):
        with self.assertRaises(EvaluationError):
            exact_match([])


class TaggingMetricTests(SimpleTestCase):
    gold = {
        "w1": {0},
        "w2": {0},
        "w3": {1},
        "w5": {0},
        "w6": {1},
        "w7": {0},
    }

    def test_precision_and_recall(self):
        tagged = {("w1", 0), ("w2", 0), ("w3", 1), ("w4", 1)}
        precision, recall = tagging_metrics(tagged, self.gold)
        self.assertEqual(precision, 0.75)
        self.assertEqual(recall, 0.5)
        self.assertEqual(tagging_counts(tagged, self.gold), TaggingCounts(3, 4, 6))

    def test_nothing_tagged(self):
        precision, recall = tagging_metrics(set(), self.gold)
        self.assertIsNone(precision)
        self.assertEqual(recall, 0.0)

    def test_empty_gold(self):
        with self.assertRaises(EvaluationError):
            tagging_metrics({("w1", 0)}, {})

    def test_feature_error_breakdown(self):
        schema = schema_of("V;1;SG", "V;1;PL", "N;PL")
        tagged = {("parle", 0), ("parle", 1), ("parle", 2), ("xyz", 0)}
        self.assertEqual(
            feature_error_breakdown(tagged, {"parle": {0}}, schema),
            {"one_feature": 1, "other": 1, "unknown_word": 1},
        )

    def test_gold_from_entries(self):
        schema = schema_of("V;1;SG", "V;3;SG")
        entries = [
            UnimorphEntry("parler", "parle", FeatureBundle.parse("V;1;SG")),
            UnimorphEntry("parler", "parle", FeatureBundle.parse("V;3;SG")),
            UnimorphEntry("parler", "parlons", FeatureBundle.parse("V;1;PL")),
        ]
        self.assertEqual(gold_from_entries(entries, schema), {"parle": {0, 1}})

    def test_read_gold(self):
        schema = schema_of("V;1;SG", "V;3;SG")
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "gold.tsv")
            with open(path, "w", encoding="utf-8") as f:
                f.write("parle\tV;SG;1\nparle\tV;3;SG\nparlons\tV;1;PL\n")
            self.assertEqual(read_gold(path, schema), {"parle": {0, 1}})


class PearsonTests(SimpleTestCase):
    def test_examples(self):
        self.assertAlmostEqual(pearson([1, 2, 3], [2, 4, 6]), 1.0)
        self.assertAlmostEqual(pearson([1, 2, 3], [3, 2, 1]), -1.0)
        self.assertAlmostEqual(pearson([1, 2, 3, 4], [1, 3, 2, 4]), 0.8)
        self.assertAlmostEqual(pearson([1, 2, 3], [1, 3, 2]), 0.5, places=12)

    def test_affine_invariance(self):
        rng = np.random.default_rng(7)
        xs, ys = rng.standard_normal(20), rng.standard_normal(20)
        r = pearson(xs, ys)
        self.assertAlmostEqual(pearson(3 * xs + 1, 0.5 * ys - 2), r)
        self.assertAlmostEqual(pearson(-3 * xs + 1, ys), -r)

    def test_errors(self):
        with self.assertRaises(EvaluationError):
            pearson([1], [2])
        with self.assertRaises(EvaluationError):
            pearson([1, 2, 3], [5, 5, 5])
        with self.assertRaises(EvaluationError):
            pearson([1, 2], [1, 2, 3])


class BreakdownTests(SimpleTestCase):
    items = [
        (0, "a", "a", False),
        (0, "b", "c", False),
        (1, "x", "x", False),
        (1, "y", "y", True),
    ]

    def test_per_cell(self):
        report = per_cell_breakdown(self.items, {0: 9, 1: 0})
        self.assertEqual(report.overall_accuracy, 0.75)
        self.assertEqual(report.per_cell[0].accuracy, 0.5)
        self.assertEqual(report.per_cell[0].tagged_count, 9)
        self.assertEqual(report.per_cell[1].abstained, 1)
        self.assertEqual(report.items, 4)
        self.assertEqual(report.correct, 3)
        self.assertEqual(report.series, [(math.log(10), 0.5), (0.0, 1.0)])
        self.assertAlmostEqual(report.pearson_r, -1.0)

    def test_single_cell_has_no_correlation(self):
        report = per_cell_breakdown(self.items[:2], {0: 9})
        self.assertIsNone(report.pearson_r)

    def test_report_round_trip(self):
        report = per_cell_breakdown(self.items, {0: 9, 1: 0})
        report.tagging_counts = TaggingCounts(3, 4, 6)
        report.tagging_precision, report.tagging_recall = precision_recall(
            report.tagging_counts
        )
        report.tagging_errors = {"one_feature": 1, "other": 0, "unknown_word": 0}
        report.unattested = (2, 10)
        report.skyline = (0.875, 12)
        with tempfile.TemporaryDirectory() as directory:
            report_path = os.path.join(directory, "report.tsv")
            series_path = os.path.join(directory, "series.tsv")
            export_report(report, report_path)
            export_series(report, series_path)
            again = read_report(report_path)
            series = read_series(series_path)
        self.assertEqual(again, report)
        self.assertEqual(series, report.series)
        counts = again.tagging_counts
        self.assertEqual(counts.correct / counts.tagged, again.tagging_precision)
        self.assertEqual(pearson(*zip(*series)), report.pearson_r)


class InflectionItemTests(SimpleTestCase):
    def setUp(self):
        self.model = train_rules(
            [
                TrainingPair("parle", 0, 1, "parla", 0.0),
                TrainingPair("parle", 0, 2, "parlons", 0.0),
            ]
        )
        self.schema = schema_of("V;1;SG", "V;3;SG;PST", "V;1;PL")
        self.table = InflectionTable("tomber", {0: "tombe", 1: "tomba", 2: "tombons"})

    def test_items(self):
        items = inflection_items(self.model, [self.table])
        self.assertEqual(len(items), 6)
        self.assertIn((1, "tomba", "tomba", False), items)
        # no rules were trained out of cell 1
        self.assertIn((0, "tomba", "tombe", True), items)

    def test_lemma_accuracy(self):
        self.assertEqual(
            lemma_accuracy(self.model, [self.table], self.schema, 0), 1.0
        )


class SkylineTests(SimpleTestCase):
    tables = [
        InflectionTable("parler", {0: "parle", 1: "parla", 2: "parlons"}),
        InflectionTable("aimer", {0: "aime", 1: "aima", 2: "aimons"}),
    ]
    test_table = InflectionTable("tomber", {0: "tombe", 1: "tomba", 2: "tombons"})

    def test_gold_pairs(self):
        pairs = gold_pairs(self.tables, 100)
        self.assertEqual(len(pairs), 12)
        self.assertEqual(pairs[0], TrainingPair("parle", 0, 1, "parla", 0.0))
        self.assertEqual(len(gold_pairs(self.tables, 5)), 5)

    def test_syncretic_forms_are_skipped(self):
        table = InflectionTable("finir", {0: "finis", 1: "finis", 2: "finit"})
        self.assertEqual(len(gold_pairs([table], 100)), 4)

    def test_skyline_accuracy(self):
        self.assertEqual(
            skyline_accuracy(self.tables, [self.test_table], 100, 5), (1.0, 12)
        )

    def test_nothing_to_train_on(self):
        self.assertIsNone(skyline_accuracy([], [self.test_table], 100, 5))


class UnattestedScriptTests(SimpleTestCase):
    def test_unattested(self):
        rows = [
            ("parler", "parle", "V;1;SG"),
            ("parler", "parla", "V;3;SG;PST"),
        ]
        seed = build_seed(
            [
                UnimorphEntry(lemma, form, FeatureBundle.parse(tags))
                for lemma, form, tags in rows
            ],
            ["parler"],
        )
        orth = build_orth_relations(seed)
        dataset = [
            TrainingPair("aime", 0, 1, "aima", 0.0),
            TrainingPair("finis", 0, 1, "finit", 0.0),
        ]
        self.assertEqual(unattested_scripts(dataset, orth), (1, 2))
