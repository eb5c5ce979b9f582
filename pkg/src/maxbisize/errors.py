"""Exception types shared across the package."""


class BicliqueError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BicliqueError):
    pass


class TwinsPresent(BicliqueError):
    def __init__(self, classes):
        self.classes = classes
        super().__init__(f"graph has {len(classes)} twin class(es)")


class NotInClass(BicliqueError):
    """No decomposition case applies to some node of the recursion."""

    def __init__(self, vertices):
        self.vertices = vertices
        super().__init__(f"undecomposable node on {len(vertices)} vertices")


class PreconditionViolated(BicliqueError):
    pass


class WidthExceeded(BicliqueError):
    pass


class SizeLimit(BicliqueError):
    pass


class BoundViolated(BicliqueError):
    pass


class NoNontrivialBiclique(BicliqueError):
    pass


class ElementNotFound(BicliqueError):
    pass


class TwinsProduced(BicliqueError):
    pass


class BadSpec(BicliqueError):
    pass


class BadParameter(BicliqueError):
    pass
