from paradigms.management.base import PipelineCommand
from paradigms.pipeline import run_pair


class Command(PipelineCommand):
    help = "Pair tagged words across cells into a training dataset"

    def run(self, config, /, **options):
        return run_pair(config)

    def summary(self, config, pairs):
        return f"Wrote {len(pairs):,.0f} training pairs to {config.path('dataset')}"
