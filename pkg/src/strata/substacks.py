"""
Substack specs - contraction-closed sets of graphs describing open unions
of strata.

Specs are looked up by name through SpecRegistry: "all", "max-edges:E",
"stable", "chains" (every vertex has at least two half-edges) and
"oesinghaus" (the chain graphs with marking 1 at one end and 2, 3 at the
other inside n = 3).
"""

import logging
from abc import ABC, abstractmethod
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional

from src.core import SubstackException
from src.graphs.canonical import graph_key
from src.graphs.enumeration import enumerate_graphs
from src.graphs.prestable import PrestableGraph
from src.graphs.surgery import contract_edge

logger = logging.getLogger(__name__)


class SubstackSpec(ABC):
    """Predicate on canonical graphs: allowed iff the stratum lies in U."""

    name: str = "spec"

    @abstractmethod
    def allows(self, g: PrestableGraph) -> bool:
        """Return True when the stratum of g lies in the open substack."""

    def edge_bound(self) -> Optional[int]:
        """Upper bound on edge counts of allowed graphs, if any."""
        return None

    def identity(self) -> tuple:
        return (type(self).__name__, self.name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubstackSpec) and self.identity() == other.identity()

    def __hash__(self) -> int:
        return hash(self.identity())

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.name!r})"


class AllGraphs(SubstackSpec):
    name = "all"

    def allows(self, g: PrestableGraph) -> bool:
        return True


class MaxEdges(SubstackSpec):
    def __init__(self, e: int):
        if e < 0:
            raise SubstackException(f"edge bound must be non-negative, got {e}", spec=f"max-edges:{e}")
        self.e = e
        self.name = f"max-edges:{e}"

    def allows(self, g: PrestableGraph) -> bool:
        return g.num_edges <= self.e

    def edge_bound(self) -> Optional[int]:
        return self.e


class StableOnly(SubstackSpec):
    name = "stable"

    def allows(self, g: PrestableGraph) -> bool:
        return g.is_stable()


class Semistable(SubstackSpec):
    """Every vertex carries at least two half-edges."""

    name = "chains"

    def allows(self, g: PrestableGraph) -> bool:
        return all(g.valence(v) >= 2 for v in range(g.num_vertices))


class Oesinghaus(SubstackSpec):
    """Chains in n = 3 with marking 1 on one end vertex and 2, 3 on the other."""

    name = "oesinghaus"

    def allows(self, g: PrestableGraph) -> bool:
        if g.n != 3:
            return False
        if g.num_edges == 0:
            return True
        end_1 = g.half_edges[g.leg(1)]
        end_23 = g.half_edges[g.leg(2)]
        if g.half_edges[g.leg(3)] != end_23 or end_1 == end_23:
            return False
        for v in range(g.num_vertices):
            edges = sum(1 for h in g.vertex_half_edges(v) if not g.is_leg(h))
            expected = 2 if v not in (end_1, end_23) else 1
            if edges != expected or g.valence(v) != (3 if v == end_23 else 2):
                return False
        return True


class CustomList(SubstackSpec):
    """Explicit list of allowed graphs (compared by canonical key)."""

    def __init__(self, graphs: Iterable[PrestableGraph], name: str = "custom"):
        self.keys: FrozenSet[bytes] = frozenset(graph_key(g) for g in graphs)
        self.name = name

    def allows(self, g: PrestableGraph) -> bool:
        return graph_key(g) in self.keys

    def identity(self) -> tuple:
        return (type(self).__name__, self.name, tuple(sorted(self.keys)))


def check_contraction_closed(spec: SubstackSpec, n: int, max_edges: int) -> None:
    """
    Verify openness on all graphs with at most max_edges edges.

    Raises:
        SubstackException: If an allowed graph contracts to a disallowed one.
    """
    for p in range(1, max_edges + 1):
        for g in enumerate_graphs(n, p):
            if not spec.allows(g):
                continue
            for h, _ in g.edges():
                contracted = contract_edge(g, h)
                if not spec.allows(contracted):
                    raise SubstackException(
                        f"{spec.name} is not contraction-closed: {g!r} allowed but {contracted!r} is not",
                        spec=spec.name,
                    )
    logger.debug("spec %s is contraction-closed up to %d edges for n=%d", spec.name, max_edges, n)


class SpecRegistry:
    """Named substack spec factories."""

    def __init__(self):
        self._factories: Dict[str, Callable[[Optional[str]], SubstackSpec]] = {}

    def register(self, name: str, factory: Callable[[Optional[str]], SubstackSpec]) -> None:
        if name in self._factories:
            raise SubstackException(f"spec '{name}' already registered", spec=name)
        self._factories[name] = factory

    def resolve(self, text: str) -> SubstackSpec:
        """
        Resolve "name" or "name:argument" into a spec.

        Raises:
            SubstackException: For unknown names or bad arguments.
        """
        name, _, argument = text.strip().partition(":")
        factory = self._factories.get(name)
        if factory is None:
            raise SubstackException(f"unknown substack spec '{text}'", spec=text)
        return factory(argument or None)

    def list_names(self) -> List[str]:
        return sorted(self._factories)


def _max_edges_factory(argument: Optional[str]) -> SubstackSpec:
    if argument is None:
        raise SubstackException("max-edges needs an argument, e.g. max-edges:3", spec="max-edges")
    try:
        return MaxEdges(int(argument))
    except ValueError:
        raise SubstackException(f"bad edge bound '{argument}'", spec=f"max-edges:{argument}")


def _no_argument(cls) -> Callable[[Optional[str]], SubstackSpec]:
    def factory(argument: Optional[str]) -> SubstackSpec:
        if argument is not None:
            raise SubstackException(f"spec '{cls.name}' takes no argument", spec=f"{cls.name}:{argument}")
        return cls()

    return factory


_global_spec_registry: Optional[SpecRegistry] = None


def get_spec_registry() -> SpecRegistry:
    """Get the global spec registry with the built-in specs registered."""
    global _global_spec_registry
    if _global_spec_registry is None:
        registry = SpecRegistry()
        registry.register("all", _no_argument(AllGraphs))
        registry.register("max-edges", _max_edges_factory)
        registry.register("stable", _no_argument(StableOnly))
        registry.register("chains", _no_argument(Semistable))
        registry.register("semistable", _no_argument(Semistable))
        registry.register("oesinghaus", _no_argument(Oesinghaus))
        _global_spec_registry = registry
    return _global_spec_registry


def resolve_spec(text: str) -> SubstackSpec:
    return get_spec_registry().resolve(text)
