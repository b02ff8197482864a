"""Symbol algebra, reflection groups and eigentope search for generalized regular polytopes."""

__version__ = "0.1.0"

__all__ = [
    "core",
    "algebra",
    "groups",
    "eigen",
    "tessellation",
    "reporting",
]

# Lazily export the engine so that `import eigentope` does not pull in scipy
# and pandas (PEP 562 module-level __getattr__).
__all__.extend(["EigentopeEngine", "Config"])


def __getattr__(name: str):

    if name == "EigentopeEngine":
        from .core.orchestrator import EigentopeEngine

        return EigentopeEngine

    if name == "Config":
        from .core.config import Config

        return Config

    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    # include lazy attributes in dir() results
    return sorted(list(globals().keys()) + ["EigentopeEngine", "Config"])
