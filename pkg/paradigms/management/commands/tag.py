from paradigms.management.base import PipelineCommand
from paradigms.pipeline import run_tag


class Command(PipelineCommand):
    help = "Tag vocabulary words with paradigm cells"

    def run(self, config, /, **options):
        return run_tag(config)

    def summary(self, config, result):
        count = len(result.lexicon)
        message = f"Tagged {count:,.0f} (word, cell) pairs ({config.variant})"
        if result.traces:
            semi_gold = sum(len(trace.accepted) for trace in result.traces.values())
            message += f", {semi_gold:,.0f} semi-gold pairs"
        return message
