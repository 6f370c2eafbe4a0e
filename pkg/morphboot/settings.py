"""
Django settings for the morphboot project.

Only the parts of Django a command-line pipeline needs are configured: the
``paradigms`` app (for its management commands and tests), logging and the
pipeline defaults. There is no database; the tests are all SimpleTestCase.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# not used for anything cryptographic, but Django expects one
SECRET_KEY = os.environ.get("SECRET_KEY", "morphboot-local")

DEBUG = os.environ.get("DEBUG", "true").lower().startswith("t")

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "paradigms",
]

DATABASES = {}


# Logging
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "{levelname} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": os.environ.get("LOG_LEVEL", "INFO"),
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Pipeline configuration file (key = value lines), overridable per run
PIPELINE_CONFIG = os.environ.get(
    "MORPHBOOT_CONFIG", os.path.join(BASE_DIR, "morphboot.conf")
)

# defaults for every PipelineConfig field
PIPELINE_DEFAULTS = dict(
    embeddings=None,
    unimorph=None,
    gold=None,
    output_dir="output",
    n=5,
    lexemes=None,
    seed_strategy="frequency+diverse",
    variant="comb",
    embedding_limit=None,
    alphabet="abcdefghijklmnopqrstuvwxyz",
    vowels="aeiou",
    vocab_cap=None,
    coverage_threshold=None,
    neighbor_budget=20,
    max_iters=10,
    final_cutoff="union",
    pairing_metric=None,
    dataset_cap=10_000,
    max_suffix=5,
    random_seed=0,
    test_lexemes=50,
    lemma_tags=None,
    synth_lexemes=300,
    synth_cells=6,
    synth_classes=1,
    synth_suffixes=None,
    synth_dim=64,
    synth_noise=0.05,
    synth_harmony=False,
    synth_zipf=0.0,
    synth_distractors=0,
)

# vocabulary cap used by the orthographic variant when none is configured
ORTH_VOCAB_CAP = 200_000

# absolute slack when comparing a cosine distance with a relation cut-off
SEMANTIC_TOLERANCE = 1e-9

# rows per batch in nearest-neighbour searches
NEIGHBOUR_CHUNK_SIZE = 512

# tqdm progress bars on long loops
SHOW_PROGRESS = os.environ.get("SHOW_PROGRESS", "false").lower().startswith("t")
