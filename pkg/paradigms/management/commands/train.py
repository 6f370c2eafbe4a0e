from paradigms.management.base import PipelineCommand
from paradigms.pipeline import run_train


class Command(PipelineCommand):
    help = "Train the suffix rule inflector on the bootstrapped dataset"

    def run(self, config, /, **options):
        return run_train(config)

    def summary(self, config, model):
        rules = sum(len(relation_rules) for relation_rules in model.rules.values())
        return f"Trained {rules:,.0f} rules for {len(model.rules)} relations"
