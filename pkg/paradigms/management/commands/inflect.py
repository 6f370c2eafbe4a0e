from paradigms.management.base import PipelineCommand
from paradigms.pipeline import run_inflect


class Command(PipelineCommand):
    help = (
        "Inflect forms with the trained model. "
        "Input lines are form, source cell and target cell separated by tabs"
    )

    def add_arguments(self, parser):
        parser.add_argument("input", type=str)
        super().add_arguments(parser)

    def run(self, config, /, **options):
        return run_inflect(config, options["input"])

    def summary(self, config, results):
        abstained = sum(result.abstained for result in results)
        return (
            f"Inflected {len(results):,.0f} forms ({abstained:,.0f} abstentions) "
            f"into {config.path('predictions')}"
        )
