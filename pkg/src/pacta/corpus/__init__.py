"""Bundled example contracts and replay files."""

from importlib import resources

from pacta.dsl import parse
from pacta.model import ContractSpec

SPEC_NAMES = (
    "pizza_simple",
    "pizza_timed",
    "pizza_warranty",
    "pizza_promissory",
    "pizza_power",
    "pizza_types",
)


def read_text(filename: str) -> str:
    return (resources.files(__name__) / filename).read_text(encoding="utf-8")


def load(name: str) -> ContractSpec:
    """Parse a bundled contract by its short name, e.g. ``pizza_simple``."""
    if name not in SPEC_NAMES:
        raise KeyError(f"no bundled contract named {name!r}")
    result = parse(read_text(f"{name}.pact"))
    if result.spec is None:  # bundled specs must always parse
        raise RuntimeError(f"bundled contract {name} failed to parse: {result.diagnostics}")
    return result.spec
