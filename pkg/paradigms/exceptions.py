class MorphbootError(Exception):
    pass


class EmbeddingFormatError(MorphbootError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)


class VectorError(MorphbootError):
    pass


class SchemaError(MorphbootError):
    pass


class SeedSelectionError(MorphbootError):
    pass


class ScriptNotApplicable(MorphbootError):
    pass


class InflectorError(MorphbootError):
    pass


class EvaluationError(MorphbootError):
    pass


class SynthError(MorphbootError):
    pass


class ConfigError(MorphbootError):
    pass


class StageError(MorphbootError):
    def __init__(self, stage, error):
        self.stage = stage
        self.error = error
        super().__init__("{} stage failed: {}".format(stage, error))


class PairingError(MorphbootError):
    pass
