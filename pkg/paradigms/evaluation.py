"""
Metrics for the tagger, the pairer and the inflector, and the evaluation
report file.
"""

import math
from collections import Counter, namedtuple
from dataclasses import dataclass, field

import numpy as np

from paradigms.editscript import edit_script
from paradigms.exceptions import EvaluationError, InflectorError
from paradigms.inflector import complete_table, train_rules
from paradigms.pairing import TrainingPair
from paradigms.seedio import FeatureBundle, RelationKey

CellScore = namedtuple(
    "CellScore", ["accuracy", "gold_count", "tagged_count", "correct", "abstained"]
)
TaggingCounts = namedtuple("TaggingCounts", ["correct", "tagged", "gold"])


@dataclass
class EvalReport:
    overall_accuracy: float
    per_cell: dict
    series: list = field(default_factory=list)
    pearson_r: float = None
    tagging_precision: float = None
    tagging_recall: float = None
    tagging_counts: TaggingCounts = None
    lemma_accuracy: float = None
    tagging_errors: dict = None
    unattested: tuple = None
    skyline: tuple = None

    @property
    def items(self):
        return sum(score.gold_count for score in self.per_cell.values())

    @property
    def correct(self):
        return sum(score.correct for score in self.per_cell.values())

    @property
    def abstained(self):
        return sum(score.abstained for score in self.per_cell.values())


def exact_match(predictions):
    predictions = list(predictions)
    if not predictions:
        raise EvaluationError("no predictions to score")
    return sum(predicted == gold for predicted, gold in predictions) / len(predictions)


def tagging_counts(tagged, gold):
    """Correct, tagged and gold (word, cell) pair counts."""
    tagged_pairs = set(tagged.pairs()) if hasattr(tagged, "pairs") else set(tagged)
    gold_pairs = {(word, cell) for word, cells in gold.items() for cell in cells}
    if not gold_pairs:
        raise EvaluationError("the gold tagging is empty")
    return TaggingCounts(
        len(tagged_pairs & gold_pairs), len(tagged_pairs), len(gold_pairs)
    )


def precision_recall(counts):
    precision = counts.correct / counts.tagged if counts.tagged else None
    return precision, counts.correct / counts.gold


def tagging_metrics(tagged, gold):
    """
    (precision, recall) of tagged (word, cell) pairs against ``gold``
    (word -> cell ids). Precision is None when nothing was tagged.
    """
    return precision_recall(tagging_counts(tagged, gold))


def inflection_items(model, tables):
    """
    (target cell, predicted, gold, abstained) for every ordered pair of
    cells of every table. A relation the model never saw is an abstention.
    """
    items = []
    for table in tables:
        for source, form in table.forms.items():
            for target, gold in table.forms.items():
                if source == target:
                    continue
                try:
                    result = model.inflect(form, source, target)
                except InflectorError:
                    items.append((target, form, gold, True))
                    continue
                items.append((target, result.form, gold, result.abstained))
    return items


def lemma_accuracy(model, tables, schema, lemma_cell):
    """Exact match over the cells filled from the lemma form alone."""
    predictions = []
    for table in tables:
        completed = complete_table(
            model, {lemma_cell: table.forms[lemma_cell]}, schema, table.lexeme
        )
        predictions.extend(
            (completed.forms[cell], gold)
            for cell, gold in table.forms.items()
            if cell != lemma_cell
        )
    return exact_match(predictions)


def gold_pairs(tables, cap):
    """
    Training pairs for every ordered pair of distinct forms of ``tables``,
    taken in table order until there are ``cap`` of them.
    """
    pairs = []
    for table in tables:
        for source, source_form in sorted(table.forms.items()):
            for target, target_form in sorted(table.forms.items()):
                if source == target or source_form == target_form:
                    continue
                pairs.append(
                    TrainingPair(source_form, source, target, target_form, 0.0)
                )
                if len(pairs) == cap:
                    return pairs
    return pairs


def skyline_accuracy(train_tables, test_tables, cap, max_suffix):
    """
    Exact match of the rule inflector trained on gold pairs from
    ``train_tables``, the upper bound for the bootstrapped model. Returns
    (accuracy, training pairs), or None when there is nothing to train on.
    """
    pairs = gold_pairs(train_tables, cap)
    if not pairs:
        return None
    model = train_rules(pairs, max_suffix)
    items = inflection_items(model, test_tables)
    accuracy = exact_match((predicted, gold) for _, predicted, gold, _ in items)
    return accuracy, len(pairs)


def pearson(xs, ys):
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise EvaluationError("series must be one-dimensional and the same length")
    if len(xs) < 2:
        raise EvaluationError("a correlation needs at least two points")
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        raise EvaluationError("a correlation needs variance in both series")
    return float(np.clip(np.corrcoef(xs, ys)[0, 1], -1.0, 1.0))


def per_cell_breakdown(predictions, tagged_counts):
    """
    Accuracy per target cell from (cell, predicted, gold[, abstained])
    items, plus the (log(tagged count + 1), accuracy) series over cells and
    its correlation when there are at least two cells.
    """
    totals = Counter()
    correct = Counter()
    abstained = Counter()
    for item in predictions:
        cell, predicted, gold = item[:3]
        totals[cell] += 1
        correct[cell] += predicted == gold
        if len(item) > 3 and item[3]:
            abstained[cell] += 1

    per_cell = {
        cell: CellScore(
            correct[cell] / totals[cell],
            totals[cell],
            tagged_counts.get(cell, 0),
            correct[cell],
            abstained[cell],
        )
        for cell in sorted(totals)
    }
    series = [
        (math.log(score.tagged_count + 1), score.accuracy)
        for score in per_cell.values()
    ]
    pearson_r = None
    if len(series) >= 2:
        try:
            pearson_r = pearson(*zip(*series))
        except EvaluationError:
            pearson_r = None

    items = sum(totals.values())
    return EvalReport(
        overall_accuracy=sum(correct.values()) / items if items else 0.0,
        per_cell=per_cell,
        series=series,
        pearson_r=pearson_r,
    )


def feature_error_breakdown(tagged, gold, schema):
    """
    Wrong tags sorted into those one feature away from a gold bundle of the
    word, other wrong tags on known words, and tags on unknown words.
    """
    breakdown = Counter(one_feature=0, other=0, unknown_word=0)
    tagged_pairs = tagged.pairs() if hasattr(tagged, "pairs") else set(tagged)
    for word, cell in sorted(tagged_pairs):
        gold_cells = gold.get(word)
        if not gold_cells:
            breakdown["unknown_word"] += 1
            continue
        if cell in gold_cells:
            continue
        gold_bundles = [
            set(bundle)
            for gold_cell in gold_cells
            for bundle in schema[gold_cell].bundles
        ]
        near = any(
            len(set(bundle) - gold_bundle) <= 1 and len(gold_bundle - set(bundle)) <= 1
            for bundle in schema[cell].bundles
            for gold_bundle in gold_bundles
        )
        breakdown["one_feature" if near else "other"] += 1
    return dict(breakdown)


def unattested_scripts(pairs, orth):
    """
    How many training pairs use an edit script the seed never showed for
    their relation, out of all pairs.
    """
    unattested = 0
    for pair in pairs:
        key = RelationKey(pair.source_cell, pair.target_cell)
        if pair.source_form == pair.target_form:
            continue
        relation = orth.get(key)
        script = edit_script(pair.source_form, pair.target_form)
        if relation is None or script not in relation:
            unattested += 1
    return unattested, len(pairs)


def gold_from_entries(entries, schema):
    """word -> cell ids for every UniMorph entry whose bundle is in ``schema``."""
    gold = {}
    for entry in entries:
        cell = schema.cell_for_bundle(entry.bundle)
        if cell is not None:
            gold.setdefault(entry.form, set()).add(cell)
    return gold


def read_gold(path, schema):
    """word -> cell ids from ``word<TAB>tags`` lines."""
    gold = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            word, tags = line.rstrip("\n").split("\t")
            cell = schema.cell_for_bundle(FeatureBundle.parse(tags))
            if cell is not None:
                gold.setdefault(word, set()).add(cell)
    return gold


def _number(value):
    return "-" if value is None else repr(value)


def export_report(report, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("# overall\n")
        f.write("accuracy\t{!r}\n".format(report.overall_accuracy))
        f.write("items\t{}\n".format(report.items))
        f.write("correct\t{}\n".format(report.correct))
        f.write("abstained\t{}\n".format(report.abstained))
        if report.lemma_accuracy is not None:
            f.write("lemma_accuracy\t{!r}\n".format(report.lemma_accuracy))

        if report.tagging_counts is not None:
            f.write("# tagging\n")
            f.write("precision\t{}\n".format(_number(report.tagging_precision)))
            f.write("recall\t{!r}\n".format(report.tagging_recall))
            for name, value in report.tagging_counts._asdict().items():
                f.write("{}\t{}\n".format(name, value))

        if report.tagging_errors is not None:
            f.write("# tagging errors\n")
            for name, value in report.tagging_errors.items():
                f.write("{}\t{}\n".format(name, value))

        if report.unattested is not None:
            f.write("# unattested scripts\n")
            f.write("unattested\t{}\n".format(report.unattested[0]))
            f.write("pairs\t{}\n".format(report.unattested[1]))

        if report.skyline is not None:
            f.write("# skyline: rules trained on gold tables\n")
            f.write("accuracy\t{!r}\n".format(report.skyline[0]))
            f.write("pairs\t{}\n".format(report.skyline[1]))

        f.write("# per cell: cell, accuracy, gold, tagged, correct, abstained\n")
        for cell, score in report.per_cell.items():
            f.write(
                "{}\t{!r}\t{}\t{}\t{}\t{}\n".format(
                    cell,
                    score.accuracy,
                    score.gold_count,
                    score.tagged_count,
                    score.correct,
                    score.abstained,
                )
            )

        f.write("# correlation: accuracy against log(tagged count + 1)\n")
        f.write("pearson\t{}\n".format(_number(report.pearson_r)))


def export_series(report, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("# log(tagged count + 1)\taccuracy\n")
        for x, y in report.series:
            f.write("{!r}\t{!r}\n".format(x, y))


def read_series(path):
    series = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.startswith("#") or not line.strip():
                continue
            x, y = line.rstrip("\n").split("\t")
            series.append((float(x), float(y)))
    return series


def _read_sections(path):
    sections = {}
    current = None
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if line.startswith("# "):
                current = line[2:].split(":")[0]
                sections[current] = []
            elif line.strip():
                sections[current].append(line.split("\t"))
    return sections


def _value(text, kind=float):
    return None if text == "-" else kind(text)


def read_report(path):
    sections = _read_sections(path)
    overall = dict(sections["overall"])
    per_cell = {
        int(row[0]): CellScore(
            float(row[1]), int(row[2]), int(row[3]), int(row[4]), int(row[5])
        )
        for row in sections["per cell"]
    }
    report = EvalReport(
        overall_accuracy=float(overall["accuracy"]),
        per_cell=per_cell,
        series=[
            (math.log(score.tagged_count + 1), score.accuracy)
            for score in per_cell.values()
        ],
        pearson_r=_value(dict(sections["correlation"])["pearson"]),
        lemma_accuracy=_value(overall.get("lemma_accuracy", "-")),
    )
    if "tagging" in sections:
        tagging = dict(sections["tagging"])
        report.tagging_precision = _value(tagging["precision"])
        report.tagging_recall = float(tagging["recall"])
        report.tagging_counts = TaggingCounts(
            int(tagging["correct"]), int(tagging["tagged"]), int(tagging["gold"])
        )
    if "tagging errors" in sections:
        report.tagging_errors = {
            name: int(value) for name, value in sections["tagging errors"]
        }
    if "unattested scripts" in sections:
        unattested = dict(sections["unattested scripts"])
        report.unattested = (int(unattested["unattested"]), int(unattested["pairs"]))
    if "skyline" in sections:
        skyline = dict(sections["skyline"])
        report.skyline = (float(skyline["accuracy"]), int(skyline["pairs"]))
    return report
