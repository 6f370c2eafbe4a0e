from paradigms.management.base import PipelineCommand
from paradigms.pipeline import run_evaluate


def describe(report):
    message = f"Accuracy {report.overall_accuracy:.3f} on {report.items:,.0f} items"
    if report.tagging_precision is not None:
        message += f", tagging precision {report.tagging_precision:.3f}"
    if report.tagging_recall is not None:
        message += f", recall {report.tagging_recall:.3f}"
    if report.skyline is not None:
        message += f", skyline {report.skyline[0]:.3f}"
    if report.pearson_r is not None:
        message += f", pearson {report.pearson_r:.3f}"
    return message


class Command(PipelineCommand):
    help = "Evaluate the tagger and the inflector on held-out lexemes"

    def run(self, config, /, **options):
        return run_evaluate(config)

    def summary(self, config, report):
        return describe(report)
