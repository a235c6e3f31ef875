class ScakeError(Exception):
    """Base class for all errors raised by this package."""


class EmptyDocument(ScakeError):
    pass


class AnnotationFormatError(ScakeError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


class MissingAnnotations(ScakeError):
    pass


class UnsupportedGraph(ScakeError):
    pass


class InvalidTeleport(ScakeError):
    pass


class EmptyCorpus(ScakeError):
    pass


class ConfigError(ScakeError):
    pass
