"""
Labeled inflection tables: reading UniMorph files, merging syncretic cells
into a paradigm schema and choosing the seed tables that supervise the rest
of the pipeline.
"""

import logging
from collections import namedtuple

from paradigms.editscript import edit_script
from paradigms.exceptions import SchemaError, SeedSelectionError
from paradigms.models import SeedStrategy

UnimorphEntry = namedtuple("UnimorphEntry", ["lemma", "form", "bundle"])
RelationKey = namedtuple("RelationKey", ["source", "target"])


class FeatureBundle:
    __slots__ = ("tags",)

    def __init__(self, tags):
        self.tags = tuple(sorted(set(tags)))
        if not self.tags:
            raise SchemaError("a feature bundle needs at least one tag")

    @classmethod
    def parse(cls, text):
        return cls(tag.strip() for tag in text.split(";") if tag.strip())

    def __eq__(self, other):
        if not isinstance(other, FeatureBundle):
            return NotImplemented
        return self.tags == other.tags

    def __lt__(self, other):
        return self.tags < other.tags

    def __hash__(self):
        return hash(self.tags)

    def __iter__(self):
        return iter(self.tags)

    def __len__(self):
        return len(self.tags)

    def __str__(self):
        return ";".join(self.tags)

    def __repr__(self):
        return "FeatureBundle({!r})".format(str(self))


class ParadigmCell(namedtuple("ParadigmCell", ["id", "bundles"])):
    __slots__ = ()

    @property
    def label(self):
        return "|".join(str(bundle) for bundle in self.bundles)


class ParadigmSchema:
    """The cells of a paradigm, each one or more syncretic feature bundles."""

    def __init__(self, cells):
        self.cells = tuple(
            ParadigmCell(cell_id, tuple(sorted(bundles)))
            for cell_id, bundles in enumerate(cells)
        )
        if not self.cells:
            raise SchemaError("a paradigm needs at least one cell")
        self._by_bundle = {}
        for cell in self.cells:
            if not cell.bundles:
                raise SchemaError("cell {} has no feature bundles".format(cell.id))
            for bundle in cell.bundles:
                if bundle in self._by_bundle:
                    raise SchemaError("{} appears in two cells".format(bundle))
                self._by_bundle[bundle] = cell.id
        self._by_label = {cell.label: cell.id for cell in self.cells}

    @property
    def m(self):
        return len(self.cells)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __getitem__(self, cell_id):
        return self.cells[cell_id]

    def __eq__(self, other):
        if not isinstance(other, ParadigmSchema):
            return NotImplemented
        return self.cells == other.cells

    @property
    def bundle_count(self):
        return len(self._by_bundle)

    def cell_for_bundle(self, bundle):
        return self._by_bundle.get(bundle)

    def cell_for_label(self, label):
        """
        The cell written as ``label``: a full cell label, or any single bundle
        of the cell. Raises SchemaError for anything else.
        """
        if label in self._by_label:
            return self._by_label[label]
        cells = {
            self._by_bundle.get(FeatureBundle.parse(part)) for part in label.split("|")
        }
        if len(cells) != 1 or None in cells:
            raise SchemaError("{!r} is not a cell of this paradigm".format(label))
        return cells.pop()

    def export(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for cell in self.cells:
                f.write("{}\t{}\n".format(cell.id, cell.label))


def read_schema(path):
    cells = []
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            cell_id, label = line.rstrip("\n").split("\t")
            if int(cell_id) != len(cells):
                raise SchemaError(
                    "{} line {}: expected cell {}".format(path, line_number, len(cells))
                )
            cells.append([FeatureBundle.parse(part) for part in label.split("|")])
    return ParadigmSchema(cells)


class InflectionTable:
    def __init__(self, lexeme, forms, abstained=()):
        self.lexeme = lexeme
        self.forms = dict(sorted(forms.items()))
        self.abstained = frozenset(abstained)

    def __getitem__(self, cell_id):
        return self.forms[cell_id]

    def __eq__(self, other):
        if not isinstance(other, InflectionTable):
            return NotImplemented
        return self.lexeme == other.lexeme and self.forms == other.forms

    def __repr__(self):
        return "InflectionTable({!r}, {!r})".format(self.lexeme, self.forms)

    def is_total(self, schema):
        return all(cell.id in self.forms for cell in schema)


class SeedSet:
    def __init__(self, schema, tables):
        self.schema = schema
        self.tables = tuple(tables)
        if not self.tables:
            raise SeedSelectionError("a seed needs at least one table")
        for table in self.tables:
            if not table.is_total(schema):
                raise SchemaError(
                    "seed table {} is not complete".format(table.lexeme)
                )

    @property
    def n(self):
        return len(self.tables)

    @property
    def lexemes(self):
        return [table.lexeme for table in self.tables]


def parse_unimorph(path):
    """
    Read ``lemma<TAB>form<TAB>tag;tag;...`` lines. Blank lines are ignored;
    malformed lines and multiword entries are skipped and counted.
    """
    entries = []
    malformed = multiword = 0
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            columns = [column.strip() for column in line.split("\t")]
            if len(columns) < 3 or not all(columns[:3]):
                malformed += 1
                continue
            lemma, form, tags = columns[:3]
            if " " in lemma or " " in form:
                multiword += 1
                continue
            try:
                bundle = FeatureBundle.parse(tags)
            except SchemaError:
                malformed += 1
                continue
            entries.append(UnimorphEntry(lemma, form, bundle))

    if malformed:
        logging.warning("{:,.0f} malformed lines skipped in {}".format(malformed, path))
    if multiword:
        logging.warning(
            "{:,.0f} multiword entries skipped in {}".format(multiword, path)
        )
    logging.info("Read {:,.0f} inflected forms from {}".format(len(entries), path))
    return entries


def group_forms(entries):
    """lemma -> {bundle: form}, lemmas in file order; the first form wins."""
    forms = {}
    for entry in entries:
        forms.setdefault(entry.lemma, {}).setdefault(entry.bundle, entry.form)
    return forms


def build_schema(entries, lexemes):
    """
    Merge the bundles that every selected lexeme realises with the same form,
    and return the merged schema with one total table per lexeme.
    """
    lexemes = list(dict.fromkeys(lexemes))
    if not lexemes:
        raise SchemaError("no lexemes selected")
    selected = set(lexemes)
    forms = group_forms(entry for entry in entries if entry.lemma in selected)
    bundles = list(
        dict.fromkeys(
            bundle for lexeme_forms in forms.values() for bundle in lexeme_forms
        )
    )
    for lexeme in lexemes:
        if lexeme not in forms:
            raise SchemaError("no forms found for lexeme {}".format(lexeme))
        for bundle in bundles:
            if bundle not in forms[lexeme]:
                raise SchemaError("{} has no form for {}".format(lexeme, bundle))

    groups = {}
    for bundle in bundles:
        signature = tuple(forms[lexeme][bundle] for lexeme in lexemes)
        groups.setdefault(signature, []).append(bundle)
    schema = ParadigmSchema(groups.values())
    if schema.bundle_count > schema.m:
        logging.info(
            "Merged {} feature bundles into {} cells".format(
                schema.bundle_count, schema.m
            )
        )

    tables = [
        InflectionTable(
            lexeme, {cell.id: forms[lexeme][cell.bundles[0]] for cell in schema}
        )
        for lexeme in lexemes
    ]
    return schema, tables


def build_seed(entries, lexemes):
    schema, tables = build_schema(entries, lexemes)
    return SeedSet(schema, tables)


def complete_lexemes(entries):
    """Lexemes with a form for every bundle seen anywhere in ``entries``."""
    forms = group_forms(entries)
    bundles = {bundle for lexeme_forms in forms.values() for bundle in lexeme_forms}
    return {
        lexeme: lexeme_forms
        for lexeme, lexeme_forms in forms.items()
        if len(lexeme_forms) == len(bundles)
    }


def script_signature(lemma, forms):
    return frozenset(edit_script(lemma, form) for form in forms)


def select_seed(entries, store, n, strategy=SeedStrategy.DIVERSE):
    """
    Pick ``n`` complete tables, preferring lexemes with the most forms in the
    embedding store (then the lowest summed ranks). The diverse strategy skips
    lexemes whose lemma-to-form edit scripts repeat a chosen lexeme's, unless
    that would leave fewer than ``n``.
    """
    candidates = complete_lexemes(entries)
    if len(candidates) < n:
        raise SeedSelectionError(
            "{} complete tables found, {} needed".format(len(candidates), n)
        )

    def ranking(lexeme):
        in_store = [form for form in set(candidates[lexeme].values()) if form in store]
        return (-len(in_store), sum(store.rank(form) for form in in_store), lexeme)

    ranked = sorted(candidates, key=ranking)
    if strategy == SeedStrategy.FREQUENCY:
        chosen = ranked[:n]
    elif strategy == SeedStrategy.DIVERSE:
        chosen, skipped, signatures = [], [], set()
        for lexeme in ranked:
            if len(chosen) == n:
                break
            signature = script_signature(lexeme, candidates[lexeme].values())
            if signature in signatures:
                skipped.append(lexeme)
                continue
            signatures.add(signature)
            chosen.append(lexeme)
        if len(chosen) < n:
            logging.warning(
                "Only {} distinct edit-script signatures, "
                "filling the seed by frequency".format(len(chosen))
            )
            chosen.extend(skipped[: n - len(chosen)])
    else:
        raise SeedSelectionError("unknown seed strategy {!r}".format(strategy))

    logging.info("Seed lexemes: {}".format(", ".join(chosen)))
    return build_seed(entries, chosen)


def enumerate_relations(schema):
    return [
        RelationKey(source.id, target.id)
        for source in schema
        for target in schema
        if source.id != target.id
    ]


def export_tables(tables, schema, path):
    """Write tables back out as UniMorph lines, one per feature bundle."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for table in tables:
            for cell in schema:
                for bundle in cell.bundles:
                    line = (table.lexeme, table.forms[cell.id], bundle)
                    f.write("{}\t{}\t{}\n".format(*line))


def read_seed(path):
    entries = parse_unimorph(path)
    return build_seed(entries, [entry.lemma for entry in entries])


def gold_tables(entries, schema, exclude=()):
    """
    Every lexeme in ``entries`` with a form for each cell of ``schema``; the
    form of a merged cell is taken from its first bundle the lexeme has.
    """
    tables = []
    for lexeme, lexeme_forms in group_forms(entries).items():
        if lexeme in exclude:
            continue
        forms = {}
        for cell in schema:
            for bundle in cell.bundles:
                if bundle in lexeme_forms:
                    forms[cell.id] = lexeme_forms[bundle]
                    break
        if len(forms) == schema.m:
            tables.append(InflectionTable(lexeme, forms))
    return tables
