from paradigms.management.base import PipelineCommand
from paradigms.pipeline import run_seed


class Command(PipelineCommand):
    help = "Select the seed inflection tables and merge syncretic cells"

    def run(self, config, /, **options):
        return run_seed(config)

    def summary(self, config, seed):
        return (
            f"Seed of {seed.n} tables over {seed.schema.m} cells: "
            f"{', '.join(seed.lexemes)}"
        )
