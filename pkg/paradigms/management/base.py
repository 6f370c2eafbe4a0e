from django.core.management.base import BaseCommand, CommandError

from paradigms.config import add_config_arguments, config_from_options
from paradigms.exceptions import ConfigError, StageError


class PipelineCommand(BaseCommand):
    """A pipeline stage run with the shared configuration flags."""

    def add_arguments(self, parser):
        add_config_arguments(parser)

    def handle(self, *args, **options):
        try:
            config = config_from_options(options)
        except ConfigError as error:
            raise CommandError("configuration error: {}".format(error))
        try:
            result = self.run(config, **options)
        except StageError as error:
            raise CommandError(str(error))
        self.stdout.write(self.style.SUCCESS(self.summary(config, result)))

    def run(self, config, /, **options):
        raise NotImplementedError

    def summary(self, config, result):
        raise NotImplementedError
