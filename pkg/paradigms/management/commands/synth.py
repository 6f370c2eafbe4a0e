from paradigms.management.base import PipelineCommand
from paradigms.pipeline import run_synth


class Command(PipelineCommand):
    help = "Generate a synthetic language with matching word vectors"

    def run(self, config, /, **options):
        return run_synth(config)

    def summary(self, config, language):
        return (
            f"Generated {len(language.tables):,.0f} lexemes and "
            f"{len(language.store):,.0f} words in {config.output_dir}"
        )
