"""Context registry: which reflection table serves which word context."""

from typing import Dict

from eigentope.core.models import Context
from eigentope.groups.generators3 import GENERATORS3
from eigentope.groups.generators4 import GENERATORS4
from eigentope.groups.maps import MapSpec


class GeneratorRegistry:
    """
    Mapping from word context to its letter table. P4 words chain the E4 maps
    on the E-vector while their frame matrices come from generators4.
    """

    def __init__(self):
        self._tables: Dict[Context, Dict[str, MapSpec]] = {}

    def register(self, context, table: Dict[str, MapSpec]):
        self._tables[Context.parse(context)] = dict(table)

    def get(self, context) -> Dict[str, MapSpec]:
        return self._tables[Context.parse(context)]

    def spec(self, context, letter: str) -> MapSpec:
        return self.get(context)[letter]


REGISTRY = GeneratorRegistry()
REGISTRY.register(Context.E3, GENERATORS3)
REGISTRY.register(Context.E4, GENERATORS4)
REGISTRY.register(Context.P4, GENERATORS4)
