"""Named graph constructions: Minkowski sum graphs and the seeded orbit closures."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .graph_builder import EdgeMode, UnitGraph, build_graph, minkowski_sum, orbit_closure
from .polygon_metric import Metric
from .seeds import SeedList, seed_list, seed_metric
from .vector_catalog import catalog

CONSTRUCTIONS = ("u-sum", "w-sum", "g120", "g121", "g295", "from-file")

_DEFAULT_MODE = {"u-sum": EdgeMode.CATALOG_U, "w-sum": EdgeMode.CATALOG_W}


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    metric: Metric | None
    construction: str
    mode: EdgeMode | None = None
    seeds: Path | None = None
    threads: int = 1

    def resolve_metric(self) -> Metric:
        """The metric, inferred for named graphs and checked against an explicit choice."""
        name = self.construction
        if name not in CONSTRUCTIONS:
            raise ConstructionError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
        if name in ("g120", "g121", "g295"):
            own = seed_metric(name)
            if self.metric is not None and self.metric is not own:
                raise ConstructionError(f"{name} lives in the {own.value} metric, not {self.metric.value}")
            return own
        if name == "from-file":
            if self.seeds is None:
                raise ConstructionError("from-file needs --seeds")
            return SeedList.load(self.seeds).metric if self.metric is None else self.metric
        if self.metric is None:
            raise ConstructionError(f"{name} needs --metric")
        return self.metric


def build_construction(cfg: RunConfig) -> UnitGraph:
    metric = cfg.resolve_metric()
    name = cfg.construction
    mode = cfg.mode or _DEFAULT_MODE.get(name, EdgeMode.FULL)
    if name in ("u-sum", "w-sum"):
        U = catalog(metric).U
        verts = minkowski_sum(U, U)
        prov = f"{metric.value} U+U, {mode.value} edges"
    elif name == "from-file":
        seeds = SeedList.load(cfg.seeds)
        if seeds.metric is not metric:
            raise ConstructionError(f"seed file is for the {seeds.metric.value} metric, not {metric.value}")
        verts = orbit_closure(seeds)
        prov = f"orbit closure of {cfg.seeds}, {mode.value} edges"
    else:
        verts = orbit_closure(seed_list(name))
        prov = f"{name.upper()}, {mode.value} edges"
    return build_graph(verts, mode, provenance=prov, workers=cfg.threads)
