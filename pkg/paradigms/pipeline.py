"""
The pipeline stages behind the management commands.

Each stage reads its inputs from the configured paths and the previous
stages' files in ``output_dir``, computes everything, and writes its own
files at the end. Domain errors come out as StageError naming the stage.
"""

import functools
import logging
import os
from collections import namedtuple

import numpy as np

from paradigms.embedding import filter_vocabulary, load_embeddings, read_vocabulary
from paradigms.evaluation import (
    export_report,
    export_series,
    feature_error_breakdown,
    gold_from_entries,
    inflection_items,
    lemma_accuracy,
    per_cell_breakdown,
    precision_recall,
    read_gold,
    skyline_accuracy,
    tagging_counts,
    unattested_scripts,
)
from paradigms.exceptions import (
    ConfigError,
    EvaluationError,
    MorphbootError,
    SchemaError,
    StageError,
)
from paradigms.inflector import read_model, train_rules
from paradigms.models import Metric, Variant
from paradigms.pairing import bin_tagged, emit_dataset, pair_bins, read_dataset
from paradigms.seedio import (
    FeatureBundle,
    build_seed,
    enumerate_relations,
    export_tables,
    gold_tables,
    parse_unimorph,
    read_schema,
    read_seed,
    select_seed,
)
from paradigms.synth import export_gold, generate_language
from paradigms.tagging import (
    build_orth_relations,
    build_sem_relation,
    comb_bootstrap,
    export_relations,
    export_traces,
    orth_tag,
    read_tagged,
    sem_tag,
)

TagResult = namedtuple(
    "TagResult", ["seed", "lexicon", "orth", "semantic", "traces"]
)


def stage(name):
    def decorator(function):
        @functools.wraps(function)
        def wrapper(config, *args, **kwargs):
            try:
                return function(config, *args, **kwargs)
            except StageError:
                raise
            except (MorphbootError, OSError, ValueError) as error:
                raise StageError(name, error) from error

        return wrapper

    return decorator


def require(config, *names):
    for name in names:
        if not getattr(config, name):
            raise ConfigError("{} is not set".format(name))


def load_store(config):
    require(config, "embeddings")
    return load_embeddings(config.embeddings, config.embedding_limit)


def prepare_output(config):
    os.makedirs(config.output_dir, exist_ok=True)


@stage("ingest")
def run_ingest(config):
    store = load_store(config)
    vocab = filter_vocabulary(
        store, config.alphabet, config.vowels, config.effective_vocab_cap
    )
    prepare_output(config)
    vocab.export(config.path("vocabulary"))
    return vocab


@stage("seed")
def run_seed(config):
    require(config, "unimorph")
    entries = parse_unimorph(config.unimorph)
    if config.lexemes:
        seed = build_seed(entries, config.lexemes)
    else:
        seed = select_seed(entries, load_store(config), config.n, config.seed_strategy)
    if seed.schema.m < 2:
        raise SchemaError("the paradigm has a single cell, there is nothing to relate")

    prepare_output(config)
    seed.schema.export(config.path("schema"))
    export_tables(seed.tables, seed.schema, config.path("seed"))
    return seed


@stage("tag")
def run_tag(config):
    seed = read_seed(config.path("seed"))
    orth = build_orth_relations(seed)
    semantic = traces = None
    if config.variant == Variant.ORTH:
        vocab = read_vocabulary(config.path("vocabulary"))
        lexicon = orth_tag(vocab, orth, seed.schema, config.coverage_threshold)
    else:
        store = load_store(config)
        vocab = read_vocabulary(config.path("vocabulary"), store)
        if config.variant == Variant.SEM:
            semantic = {
                key: build_sem_relation(seed, store, key)
                for key in enumerate_relations(seed.schema)
            }
            lexicon = sem_tag(vocab, store, semantic, config.neighbor_budget)
        else:
            semantic, lexicon, traces = comb_bootstrap(
                seed,
                store,
                vocab,
                orth,
                config.max_iters,
                config.neighbor_budget,
                config.final_cutoff,
            )

    prepare_output(config)
    lexicon.export(config.path("tagged"))
    export_relations(config.path("relations"), orth, semantic)
    if traces is not None:
        export_traces(config.path("bootstrap"), traces)
    return TagResult(seed, lexicon, orth, semantic, traces)


@stage("pair")
def run_pair(config):
    schema = read_schema(config.path("schema"))
    lexicon = read_tagged(config.path("tagged"))
    metric = config.metric
    store = load_store(config) if metric == Metric.COSINE else None
    bins = bin_tagged(lexicon, store)
    pairs = pair_bins(bins, metric, config.dataset_cap, store, lexicon)

    prepare_output(config)
    emit_dataset(pairs, schema, config.path("dataset"))
    return pairs


@stage("train")
def run_train(config):
    schema = read_schema(config.path("schema"))
    model = train_rules(read_dataset(config.path("dataset"), schema), config.max_suffix)

    prepare_output(config)
    model.export(config.path("model"))
    return model


@stage("inflect")
def run_inflect(config, input_path):
    """
    Inflect every ``form<TAB>source cell<TAB>target cell`` line of
    ``input_path``; cells are written as labels or single bundles.
    """
    schema = read_schema(config.path("schema"))
    model = read_model(config.path("model"))
    rows = []
    with open(input_path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            form, source, target = line.rstrip("\n").split("\t")[:3]
            source_cell = schema.cell_for_label(source)
            target_cell = schema.cell_for_label(target)
            result = model.inflect(form, source_cell, target_cell)
            rows.append((form, source_cell, target_cell, result))

    prepare_output(config)
    with open(config.path("predictions"), "w", encoding="utf-8", newline="\n") as f:
        for form, source_cell, target_cell, result in rows:
            f.write(
                "{}\t{}\t{}\t{}\t{}\n".format(
                    form,
                    schema[source_cell].label,
                    schema[target_cell].label,
                    result.form,
                    int(result.abstained),
                )
            )
    return [result for *_, result in rows]


def sample_tables(tables, size, random_seed):
    """``size`` tables drawn without replacement, kept in file order."""
    if not size or size >= len(tables):
        return list(tables)
    rng = np.random.default_rng(random_seed)
    chosen = sorted(rng.choice(len(tables), size=size, replace=False))
    return [tables[int(index)] for index in chosen]


@stage("evaluate")
def run_evaluate(config):
    require(config, "unimorph")
    schema = read_schema(config.path("schema"))
    seed = read_seed(config.path("seed"))
    model = read_model(config.path("model"))
    lexicon = read_tagged(config.path("tagged"))
    dataset = read_dataset(config.path("dataset"), schema)
    entries = parse_unimorph(config.unimorph)

    held_out = gold_tables(entries, schema, exclude=set(seed.lexemes))
    tables = sample_tables(held_out, config.test_lexemes, config.random_seed)
    if not tables:
        raise EvaluationError("no complete held-out lexemes to evaluate on")
    logging.info("Evaluating on {:,.0f} held-out lexemes".format(len(tables)))

    report = per_cell_breakdown(inflection_items(model, tables), lexicon.counts())
    gold = (
        read_gold(config.gold, schema)
        if config.gold
        else gold_from_entries(entries, schema)
    )
    report.tagging_counts = tagging_counts(lexicon, gold)
    report.tagging_precision, report.tagging_recall = precision_recall(
        report.tagging_counts
    )
    report.tagging_errors = feature_error_breakdown(lexicon, gold, schema)
    report.unattested = unattested_scripts(dataset, build_orth_relations(seed))
    tested = {table.lexeme for table in tables}
    train_tables = [
        table
        for table in gold_tables(entries, schema)
        if table.lexeme not in tested
    ]
    report.skyline = skyline_accuracy(
        train_tables, tables, config.dataset_cap, config.max_suffix
    )
    if report.skyline is None:
        logging.warning("No gold tables left to train the skyline on")
    if config.lemma_tags:
        lemma_cell = schema.cell_for_bundle(FeatureBundle.parse(config.lemma_tags))
        if lemma_cell is None:
            raise ConfigError(
                "lemma_tags {!r} is not a cell of the paradigm".format(
                    config.lemma_tags
                )
            )
        report.lemma_accuracy = lemma_accuracy(model, tables, schema, lemma_cell)

    prepare_output(config)
    export_report(report, config.path("report"))
    export_series(report, config.path("series"))
    return report


@stage("synth")
def run_synth(config):
    language = generate_language(config.synth_spec())
    export_gold(language, config.output_dir)
    return language


def run_pipeline(config):
    run_ingest(config)
    run_seed(config)
    run_tag(config)
    run_pair(config)
    run_train(config)
    return run_evaluate(config)
