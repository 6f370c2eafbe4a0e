from django.db import models
from django.utils.translation import gettext_lazy as _


class Variant(models.TextChoices):
    ORTH = "orth", _("Orthographic edit-script tagging")
    SEM = "sem", _("Semantic difference-vector tagging")
    COMB = "comb", _("Combined bootstrapping with semi-gold examples")


class Provenance(models.TextChoices):
    ORTH = "orth", _("Tagged by paradigm coverage of seed edit scripts")
    SEM = "sem", _("Tagged by the semantic relation criterion")
    SEMI_GOLD = "semi-gold", _("Accepted as a semi-gold bootstrapping example")


class Metric(models.TextChoices):
    COSINE = "cosine", _("Cosine distance between word vectors")
    LEVENSHTEIN = "levenshtein", _("Levenshtein distance between word forms")


class SeedStrategy(models.TextChoices):
    FREQUENCY = "frequency", _("Most in-vocabulary forms")
    DIVERSE = "frequency+diverse", _("Most in-vocabulary forms, distinct edit scripts")


class FinalCutoff(models.TextChoices):
    UNION = "union", _("Average scatter over seed and semi-gold examples")
    SEED = "seed", _("Average scatter over seed examples only")


# a pair's provenance is the weaker of its two members
PROVENANCE_STRENGTH = {
    Provenance.ORTH: 3,
    Provenance.SEMI_GOLD: 2,
    Provenance.SEM: 1,
}
