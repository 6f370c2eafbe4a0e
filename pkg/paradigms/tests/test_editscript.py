import random

from django.test import SimpleTestCase

from paradigms.editscript import (
    EditOp,
    EditScript,
    apply_script,
    edit_script,
    levenshtein,
    levenshtein_matrix,
    parse_script,
    serialize_script,
    try_apply,
)
from paradigms.exceptions import ScriptNotApplicable


def random_word(rng, alphabet="abcdef", max_length=12):
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_length)))


class EditScriptTests(SimpleTestCase):
    def test_french_examples(self):
        self.assertEqual(edit_script("parle", "parla").key, (("e", "a"),))
        self.assertEqual(edit_script("finis", "finit").key, (("s", "t"),))
        self.assertEqual(edit_script("bois", "but").key, (("ois", "ut"),))
        self.assertEqual(edit_script("parle", "parlons").key, (("e", "ons"),))
        self.assertEqual(edit_script("finis", "finissons").key, (("", "sons"),))

    def test_boundary_flags(self):
        script = edit_script("finis", "finissons")
        self.assertEqual(script.ops, (EditOp("", "sons", False, True),))
        script = edit_script("bois", "buvons")
        self.assertEqual(script.key, (("b", "buv"), ("i", "n")))
        self.assertTrue(script.ops[0].at_start)

    def test_identity_is_empty(self):
        self.assertFalse(edit_script("parle", "parle"))
        self.assertEqual(len(edit_script("parle", "parle")), 0)

    def test_equality_ignores_boundary_flags(self):
        self.assertEqual(
            EditScript([EditOp("e", "a", False, True)]),
            EditScript([EditOp("e", "a", False, False)]),
        )
        self.assertEqual(edit_script("parle", "parla"), edit_script("aime", "aima"))
        self.assertNotEqual(
            edit_script("parle", "parla"), edit_script("finis", "finit")
        )

    def test_apply_to_new_word(self):
        script = edit_script("parle", "parla")
        self.assertEqual(apply_script(script, "chante"), "chanta")
        self.assertEqual(
            apply_script(edit_script("finis", "finissons"), "choisis"), "choisissons"
        )

    def test_not_applicable(self):
        script = edit_script("finis", "finit")
        with self.assertRaises(ScriptNotApplicable):
            apply_script(script, "parle")
        self.assertIsNone(try_apply(script, "parle"))

    def test_repeated_substring_is_widened(self):
        script = edit_script("abab", "abb")
        self.assertEqual(script.key, (("ba", "b"),))
        self.assertEqual(apply_script(script, "abab"), "abb")

    def test_empty_words(self):
        self.assertEqual(apply_script(edit_script("", "abc"), ""), "abc")
        self.assertEqual(apply_script(edit_script("abc", ""), "abc"), "")
        with self.assertRaises(ValueError):
            edit_script("", "")

    def test_round_trip(self):
        rng = random.Random(1)
        for _ in range(10_000):
            a, b = random_word(rng), random_word(rng)
            if not a and not b:
                continue
            script = edit_script(a, b)
            self.assertEqual(apply_script(script, a), b, (a, b))
            self.assertEqual(not script, a == b)

    def test_substitution_is_one_edit(self):
        self.assertEqual(edit_script("baf", "bff").key, (("a", "f"),))
        self.assertEqual(edit_script("ebd", "edd").key, (("b", "d"),))
        self.assertEqual(len(edit_script("cfd", "ecdd")), 2)

    def test_no_more_edits_than_distance(self):
        rng = random.Random(4)
        for _ in range(10_000):
            a, b = random_word(rng), random_word(rng)
            if not a and not b:
                continue
            self.assertLessEqual(len(edit_script(a, b)), levenshtein(a, b), (a, b))


class SerializationTests(SimpleTestCase):
    def test_format(self):
        self.assertEqual(serialize_script(edit_script("parle", "parla")), "$e>a")
        self.assertEqual(serialize_script(edit_script("bois", "buvons")), "^b>buv;i>n")
        self.assertEqual(serialize_script(EditScript()), "")

    def test_special_characters_are_escaped(self):
        script = EditScript([EditOp("a>b", "c;d"), EditOp("\\", "$^", True)])
        text = serialize_script(script)
        self.assertEqual(parse_script(text).ops, script.ops)

    def test_parse_keeps_flags(self):
        for a, b in [("bois", "buvons"), ("finis", "finissons"), ("abab", "abb")]:
            script = edit_script(a, b)
            parsed = parse_script(serialize_script(script))
            self.assertEqual(parsed.ops, script.ops)
            self.assertEqual(apply_script(parsed, a), b)

    def test_malformed(self):
        with self.assertRaises(ValueError):
            parse_script("abc")
        with self.assertRaises(ValueError):
            parse_script("a>b\\")


class LevenshteinTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(levenshtein("kitten", "sitting"), 3)
        self.assertEqual(levenshtein("", "abc"), 3)
        self.assertEqual(levenshtein("parle", "parle"), 0)
        self.assertEqual(levenshtein("aa", "cd"), 2)

    def test_metric_laws(self):
        rng = random.Random(2)
        for _ in range(10_000):
            a, b, c = (random_word(rng, "abc", 6) for _ in range(3))
            ab = levenshtein(a, b)
            self.assertEqual(ab, levenshtein(b, a))
            self.assertEqual(ab == 0, a == b)
            self.assertLessEqual(levenshtein(a, c), ab + levenshtein(b, c))

    def test_matrix_matches_scalar(self):
        rng = random.Random(3)
        xs = [random_word(rng, "abcd", 8) for _ in range(25)]
        ys = [random_word(rng, "abcd", 8) for _ in range(30)]
        matrix = levenshtein_matrix(xs, ys)
        self.assertEqual(matrix.shape, (25, 30))
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                self.assertEqual(matrix[i, j], levenshtein(x, y), (x, y))

    def test_matrix_empty(self):
        self.assertEqual(levenshtein_matrix([], ["a"]).shape, (0, 1))
        self.assertEqual(levenshtein_matrix(["a"], []).shape, (1, 0))
