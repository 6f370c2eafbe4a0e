import os
import tempfile

from django.test import SimpleTestCase

from paradigms.editscript import serialize_script
from paradigms.exceptions import InflectorError
from paradigms.inflector import complete_table, inflect, read_model, train_rules
from paradigms.pairing import TrainingPair
from paradigms.seedio import FeatureBundle, ParadigmSchema, RelationKey


def pairs(source_cell, target_cell, *forms):
    return [
        TrainingPair(source, source_cell, target_cell, target, 0.0)
        for source, target in forms
    ]


def schema(m):
    return ParadigmSchema([[FeatureBundle(["V", "C{}".format(i)])] for i in range(m)])


class TrainTests(SimpleTestCase):
    def test_shared_suffix_rule(self):
        model = train_rules(pairs(0, 1, ("parle", "parla"), ("aime", "aima")))
        result = inflect(model, "chante", 0, 1)
        self.assertEqual(result.form, "chanta")
        self.assertFalse(result.abstained)
        self.assertEqual(result.rule.suffix, "e")
        self.assertEqual(result.rule.support, 2)

    def test_majority_wins(self):
        model = train_rules(
            pairs(
                0,
                1,
                ("parle", "parla"),
                ("aime", "aima"),
                ("chante", "chanta"),
                ("bande", "bandu"),
            )
        )
        rule = {rule.suffix: rule for rule in model.rules[RelationKey(0, 1)]}["e"]
        self.assertEqual(serialize_script(rule.script), "$e>a")
        self.assertEqual(rule.support, 3)
        self.assertEqual(inflect(model, "tombe", 0, 1).form, "tomba")

    def test_ties_go_to_the_smaller_script(self):
        model = train_rules(pairs(0, 1, ("bande", "bandu"), ("parle", "parla")))
        self.assertEqual(inflect(model, "tombe", 0, 1).form, "tomba")

    def test_single_pair(self):
        model = train_rules(pairs(0, 1, ("parle", "parla")))
        self.assertEqual(inflect(model, "aime", 0, 1).form, "aima")

    def test_longest_suffix_first(self):
        model = train_rules(
            pairs(
                0,
                1,
                ("parle", "parla"),
                ("aime", "aima"),
                ("finis", "finit"),
                ("choisis", "choisit"),
            )
        )
        self.assertEqual(inflect(model, "bondis", 0, 1).form, "bondit")
        self.assertEqual(inflect(model, "tombe", 0, 1).form, "tomba")

    def test_abstains_when_nothing_applies(self):
        model = train_rules(pairs(0, 1, ("finis", "finit")))
        result = inflect(model, "parle", 0, 1)
        self.assertEqual(result.form, "parle")
        self.assertTrue(result.abstained)
        self.assertIsNone(result.rule)

    def test_unknown_relation(self):
        model = train_rules(pairs(0, 1, ("parle", "parla")))
        with self.assertRaises(InflectorError):
            inflect(model, "parla", 1, 0)

    def test_training_pairs_are_reproduced(self):
        dataset = pairs(
            0,
            2,
            ("parle", "parlons"),
            ("finis", "finissons"),
            ("bois", "buvons"),
        )
        model = train_rules(dataset)
        for pair in dataset:
            self.assertEqual(
                inflect(model, pair.source_form, 0, 2).form, pair.target_form
            )

    def test_zero_max_suffix_uses_fallback_only(self):
        model = train_rules(pairs(0, 1, ("parle", "parla")), max_suffix=0)
        self.assertEqual([rule.suffix for rule in model.rules[RelationKey(0, 1)]], [""])
        self.assertEqual(inflect(model, "aime", 0, 1).form, "aima")

    def test_empty_dataset(self):
        with self.assertRaises(InflectorError):
            train_rules([])

    def test_round_trip(self):
        model = train_rules(
            pairs(0, 1, ("parle", "parla"), ("bois", "but"))
            + pairs(1, 0, ("parla", "parle"), ("but", "bois"))
        )
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "model.tsv")
            model.export(path)
            self.assertEqual(read_model(path), model)


class CompleteTableTests(SimpleTestCase):
    def setUp(self):
        self.model = train_rules(
            pairs(
                0,
                2,
                ("parle", "parlons"),
                ("aime", "aimons"),
                ("chante", "chantons"),
            )
            + pairs(1, 2, ("parla", "parlions"))
        )
        self.schema = schema(3)

    def test_most_supported_source_wins(self):
        table = complete_table(self.model, {0: "tombe", 1: "tomba"}, self.schema)
        self.assertEqual(table.forms[2], "tombons")
        self.assertEqual(table.abstained, frozenset())

    def test_unreachable_cell_copies_a_given_form(self):
        table = complete_table(self.model, {0: "tombe"}, self.schema, "tomber")
        self.assertEqual(table.lexeme, "tomber")
        self.assertEqual(table.forms, {0: "tombe", 1: "tombe", 2: "tombons"})
        self.assertEqual(table.abstained, {1})

    def test_given_forms_are_kept(self):
        table = complete_table(self.model, {0: "tombe", 2: "tombions"}, self.schema)
        self.assertEqual(table.forms[2], "tombions")

    def test_invalid_input(self):
        with self.assertRaises(InflectorError):
            complete_table(self.model, {}, self.schema)
        with self.assertRaises(InflectorError):
            complete_table(self.model, {5: "tombe"}, self.schema)
