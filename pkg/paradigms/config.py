"""
Pipeline configuration: ``key = value`` files read with python-dotenv,
overridden by command-line flags, falling back to
``settings.PIPELINE_DEFAULTS``.
"""

import argparse
import os
from dataclasses import dataclass, fields

from django.conf import settings
from dotenv import dotenv_values

from paradigms.exceptions import ConfigError
from paradigms.models import FinalCutoff, Metric, SeedStrategy, Variant
from paradigms.synth import DEFAULT_HARMONY, SynthSpec

INTEGER_FIELDS = {
    "n",
    "embedding_limit",
    "vocab_cap",
    "coverage_threshold",
    "neighbor_budget",
    "max_iters",
    "dataset_cap",
    "max_suffix",
    "random_seed",
    "test_lexemes",
    "synth_lexemes",
    "synth_cells",
    "synth_classes",
    "synth_dim",
    "synth_distractors",
}
FLOAT_FIELDS = {"synth_noise", "synth_zipf"}
BOOLEAN_FIELDS = {"synth_harmony"}
TRUE_VALUES = {"1", "true", "yes", "on"}
FALSE_VALUES = {"0", "false", "no", "off"}

ARTIFACTS = {
    "vocabulary": "vocabulary.txt",
    "schema": "schema.tsv",
    "seed": "seed.tsv",
    "tagged": "tagged.tsv",
    "relations": "relations.tsv",
    "bootstrap": "bootstrap.tsv",
    "dataset": "dataset.tsv",
    "model": "model.tsv",
    "predictions": "predictions.tsv",
    "report": "report.tsv",
    "series": "series.tsv",
}


@dataclass(frozen=True)
class PipelineConfig:
    embeddings: str = None
    unimorph: str = None
    gold: str = None
    output_dir: str = "output"
    n: int = 5
    lexemes: tuple = None
    seed_strategy: str = SeedStrategy.DIVERSE
    variant: str = Variant.COMB
    embedding_limit: int = None
    alphabet: str = "abcdefghijklmnopqrstuvwxyz"
    vowels: str = "aeiou"
    vocab_cap: int = None
    coverage_threshold: int = None
    neighbor_budget: int = 20
    max_iters: int = 10
    final_cutoff: str = FinalCutoff.UNION
    pairing_metric: str = None
    dataset_cap: int = 10_000
    max_suffix: int = 5
    random_seed: int = 0
    test_lexemes: int = 50
    lemma_tags: str = None
    synth_lexemes: int = 300
    synth_cells: int = 6
    synth_classes: int = 1
    synth_suffixes: tuple = None
    synth_dim: int = 64
    synth_noise: float = 0.05
    synth_harmony: bool = False
    synth_zipf: float = 0.0
    synth_distractors: int = 0

    def path(self, artifact):
        return os.path.join(self.output_dir, ARTIFACTS[artifact])

    @property
    def metric(self):
        if self.pairing_metric:
            return Metric(self.pairing_metric)
        if self.variant == Variant.ORTH:
            return Metric.LEVENSHTEIN
        return Metric.COSINE

    @property
    def effective_vocab_cap(self):
        if self.vocab_cap is not None:
            return self.vocab_cap
        if self.variant == Variant.ORTH:
            return settings.ORTH_VOCAB_CAP
        return None

    def synth_spec(self):
        return SynthSpec(
            m=self.synth_cells,
            classes=self.synth_suffixes,
            lexeme_count=self.synth_lexemes,
            harmony=DEFAULT_HARMONY if self.synth_harmony else None,
            embed_dim=self.synth_dim,
            noise_sigma=self.synth_noise,
            seed=self.random_seed,
            zipf=self.synth_zipf,
            distractors=self.synth_distractors,
            class_count=self.synth_classes,
        )


FIELD_NAMES = [config_field.name for config_field in fields(PipelineConfig)]


def parse_suffix_tables(text):
    """``,a,os|,e,ir`` -> (("", "a", "os"), ("", "e", "ir"))"""
    return tuple(
        tuple(suffix.strip() for suffix in table.split(","))
        for table in text.split("|")
    )


def coerce(name, value):
    if value is None or isinstance(value, (bool, int, float, tuple)):
        return value
    value = str(value).strip()
    if value.lower() in ("", "none"):
        return None
    try:
        if name in INTEGER_FIELDS:
            return int(value)
        if name in FLOAT_FIELDS:
            return float(value)
    except ValueError:
        raise ConfigError("{} must be a number, not {!r}".format(name, value))
    if name in BOOLEAN_FIELDS:
        if value.lower() in TRUE_VALUES:
            return True
        if value.lower() in FALSE_VALUES:
            return False
        raise ConfigError("{} must be true or false, not {!r}".format(name, value))
    if name == "lexemes":
        return tuple(lexeme.strip() for lexeme in value.split(",") if lexeme.strip())
    if name == "synth_suffixes":
        return parse_suffix_tables(value)
    return value


def _check_choice(name, value, choices):
    if value is not None and value not in choices.values:
        raise ConfigError(
            "{} must be one of {}, not {!r}".format(
                name, ", ".join(choices.values), value
            )
        )


def validate(values):
    _check_choice("variant", values["variant"], Variant)
    _check_choice("seed_strategy", values["seed_strategy"], SeedStrategy)
    _check_choice("final_cutoff", values["final_cutoff"], FinalCutoff)
    _check_choice("pairing_metric", values["pairing_metric"], Metric)
    for name in ("n", "dataset_cap", "neighbor_budget"):
        if values[name] is None or values[name] < 1:
            raise ConfigError("{} must be at least 1".format(name))
    for name in ("max_iters", "max_suffix", "test_lexemes"):
        if values[name] is None or values[name] < 0:
            raise ConfigError("{} cannot be negative".format(name))
    for name in ("vocab_cap", "embedding_limit", "coverage_threshold"):
        if values[name] is not None and values[name] < 0:
            raise ConfigError("{} cannot be negative".format(name))
    if not values["vowels"]:
        raise ConfigError("at least one vowel is needed")
    if values["alphabet"] and not set(values["vowels"]) <= set(values["alphabet"]):
        raise ConfigError("vowels must be part of the alphabet")


def load_config(path=None, overrides=None):
    """
    Build a PipelineConfig from the defaults, the config file at ``path``
    (``settings.PIPELINE_CONFIG`` when not given) and ``overrides``; values
    that are None in ``overrides`` are ignored.
    """
    values = {
        name: coerce(name, settings.PIPELINE_DEFAULTS.get(name))
        for name in FIELD_NAMES
    }

    if path is not None and not os.path.exists(path):
        raise ConfigError("config file {} not found".format(path))
    path = path or settings.PIPELINE_CONFIG
    if path and os.path.exists(path):
        for name, value in dotenv_values(path).items():
            if name not in values:
                raise ConfigError("unknown setting {!r} in {}".format(name, path))
            values[name] = coerce(name, value)

    for name, value in (overrides or {}).items():
        if value is None:
            continue
        if name not in values:
            raise ConfigError("unknown setting {!r}".format(name))
        values[name] = coerce(name, value)

    validate(values)
    return PipelineConfig(**values)


def add_config_arguments(parser):
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help="Configuration file of key = value lines",
    )
    for name in FIELD_NAMES:
        flag = "--{}".format(name.replace("_", "-"))
        if name in BOOLEAN_FIELDS:
            parser.add_argument(flag, action=argparse.BooleanOptionalAction)
        else:
            parser.add_argument(flag, type=str, default=None, dest=name)


def config_from_options(options):
    return load_config(
        options.get("config"),
        {name: options.get(name) for name in FIELD_NAMES},
    )
