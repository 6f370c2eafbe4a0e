"""
A longest-suffix edit-rule inflector trained on bootstrapped pairs.

For every relation and every source suffix up to ``max_suffix`` characters,
the rule is the edit script most training pairs ending in that suffix agree
on. Inflecting a form tries its longest matching suffix first.
"""

import logging
from collections import Counter, namedtuple

from paradigms.editscript import (
    apply_script,
    edit_script,
    parse_script,
    serialize_script,
)
from paradigms.exceptions import InflectorError, ScriptNotApplicable
from paradigms.seedio import InflectionTable, RelationKey

Rule = namedtuple("Rule", ["suffix", "script", "support"])
Inflection = namedtuple("Inflection", ["form", "abstained", "rule"])


def _suffixes(form, max_suffix):
    longest = min(max_suffix, len(form))
    return [form[len(form) - length :] for length in range(longest + 1)]


class RuleModel:
    def __init__(self, rules, max_suffix):
        self.max_suffix = max_suffix
        self.rules = {}
        self._lookup = {}
        for key, relation_rules in sorted(rules.items()):
            key = RelationKey(*key)
            ordered = sorted(
                relation_rules,
                key=lambda rule: (-len(rule.suffix), -rule.support, rule.suffix),
            )
            lookup = {rule.suffix: rule for rule in ordered}
            if len(lookup) != len(ordered):
                raise InflectorError(
                    "duplicate suffix conditions for relation {}->{}".format(*key)
                )
            self.rules[key] = tuple(ordered)
            self._lookup[key] = lookup

    def __contains__(self, key):
        return key in self.rules

    def __eq__(self, other):
        if not isinstance(other, RuleModel):
            return NotImplemented
        return self.max_suffix == other.max_suffix and self.rules == other.rules

    def inflect(self, form, source_cell, target_cell):
        key = RelationKey(source_cell, target_cell)
        if key not in self._lookup:
            raise InflectorError(
                "no rules for relation {}->{}".format(source_cell, target_cell)
            )
        lookup = self._lookup[key]
        for suffix in reversed(_suffixes(form, self.max_suffix)):
            rule = lookup.get(suffix)
            if rule is None:
                continue
            try:
                return Inflection(apply_script(rule.script, form), False, rule)
            except ScriptNotApplicable:
                continue
        return Inflection(form, True, None)

    def export(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("# max_suffix={}\n".format(self.max_suffix))
            for key, rules in self.rules.items():
                for rule in rules:
                    f.write(
                        "{}\t{}\t{}\t{}\t{}\n".format(
                            key.source,
                            key.target,
                            rule.suffix,
                            serialize_script(rule.script),
                            rule.support,
                        )
                    )


def train_rules(dataset, max_suffix=5):
    if not dataset:
        raise InflectorError("cannot train on an empty dataset")
    if max_suffix < 0:
        raise InflectorError("max_suffix cannot be negative")

    votes = {}
    for pair in dataset:
        key = RelationKey(pair.source_cell, pair.target_cell)
        script = serialize_script(edit_script(pair.source_form, pair.target_form))
        for suffix in _suffixes(pair.source_form, max_suffix):
            votes.setdefault(key, {}).setdefault(suffix, Counter())[script] += 1

    rules = {}
    for key, suffix_votes in votes.items():
        rules[key] = []
        for suffix, counter in suffix_votes.items():
            script, support = min(counter.items(), key=lambda item: (-item[1], item[0]))
            rules[key].append(Rule(suffix, parse_script(script), support))

    model = RuleModel(rules, max_suffix)
    logging.info(
        "Trained {:,.0f} rules for {:,.0f} relations from {:,.0f} pairs".format(
            sum(len(relation_rules) for relation_rules in model.rules.values()),
            len(model.rules),
            len(dataset),
        )
    )
    return model


def inflect(model, form, source_cell, target_cell):
    """
    Inflect ``form`` from ``source_cell`` into ``target_cell``. When no rule
    applies the form comes back unchanged with ``abstained`` set.
    """
    return model.inflect(form, source_cell, target_cell)


def complete_table(model, given, schema, lexeme=None):
    """
    Fill every cell missing from ``given`` (cell id -> form). Each cell is
    inflected from the given cell whose firing rule has the most support,
    ties to the lowest cell id; a cell nothing can be inflected into gets the
    lowest given form and is marked abstained.
    """
    if not given:
        raise InflectorError("at least one form must be given")
    for cell_id in given:
        if not 0 <= cell_id < schema.m:
            raise InflectorError("cell {} is not in the paradigm".format(cell_id))

    forms = dict(given)
    abstained = set()
    for cell in schema:
        if cell.id in given:
            continue
        candidates = []
        for source in sorted(given):
            key = RelationKey(source, cell.id)
            if key not in model:
                continue
            result = model.inflect(given[source], source, cell.id)
            support = result.rule.support if result.rule else 0
            candidates.append(((result.abstained, -support, source), result))
        if not candidates:
            forms[cell.id] = given[min(given)]
            abstained.add(cell.id)
            continue
        _, best = min(candidates, key=lambda candidate: candidate[0])
        forms[cell.id] = best.form
        if best.abstained:
            abstained.add(cell.id)
    return InflectionTable(lexeme, forms, abstained)


def read_model(path):
    max_suffix = None
    rules = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if line.startswith("# max_suffix="):
                max_suffix = int(line.split("=", 1)[1])
                continue
            if not line.strip():
                continue
            source, target, suffix, script, support = line.split("\t")
            rules.setdefault(RelationKey(int(source), int(target)), []).append(
                Rule(suffix, parse_script(script), int(support))
            )
    if max_suffix is None:
        raise InflectorError("{} has no max_suffix header".format(path))
    return RuleModel(rules, max_suffix)
