from paradigms.management.base import PipelineCommand
from paradigms.pipeline import run_ingest


class Command(PipelineCommand):
    help = "Load the word vectors and write the filtered vocabulary"

    def run(self, config, /, **options):
        return run_ingest(config)

    def summary(self, config, vocab):
        return f"Kept {len(vocab):,.0f} words in {config.path('vocabulary')}"
