"""Exception types shared across the package."""


class ModelError(ValueError):
    """An input violates a structural precondition of an operation."""


class MissingSimplexError(ModelError):
    """A lookup names a simplex the complex does not contain."""


class SceneError(ModelError):
    """Base class for problems with scene files."""


class SceneSyntaxError(SceneError):
    """Scene text could not be parsed at all."""


class SceneSemanticError(SceneError):
    """Scene text parsed but violates an invariant of the data model."""
