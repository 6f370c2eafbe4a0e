from paradigms.management.base import PipelineCommand
from paradigms.management.commands.evaluate import describe
from paradigms.pipeline import run_pipeline


class Command(PipelineCommand):
    help = "Run every stage from ingest to evaluate"

    def run(self, config, /, **options):
        return run_pipeline(config)

    def summary(self, config, report):
        return describe(report)
