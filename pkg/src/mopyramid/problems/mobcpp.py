"""Bulk-commodity production planning: cover orders, minimize makespan and surplus.

A factory takes orders for commodities and fills them by executing
recipes; each recipe run (a *job*) takes a fixed time on one resource of
its hall and yields fixed amounts of one or more commodities. A genotype
selects how many jobs of each recipe to run, one bit per potential job.
The per-recipe bit budget is the smallest job count that covers the
largest order the recipe serves, so any order is coverable by a single
recipe group.

Bits are laid out commodity-major: first the job bits of recipes anchored
at commodity 0, then commodity 1, and so on; a recipe yielding several
commodities is anchored at the lowest-index one. Within a commodity,
recipe groups appear in recipe-index order.

Raw genotypes may under- or over-produce. Evaluation first repairs the
selection with a single left-to-right pass (force a job on while some
served order is under-produced, drop it when removal leaves every served
order covered, keep it otherwise), then schedules the selected jobs
longest-first onto the least-loaded resource of their hall. Objectives,
both minimized: makespan (latest resource completion time) and total
surplus (units produced beyond the orders).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "EncodingLayout",
    "LayoutGroup",
    "MobcppInstance",
    "MobcppParams",
    "MobcppProblem",
    "Recipe",
    "generate_mobcpp_instance",
    "mobcpp_evaluate",
    "mobcpp_layout",
    "mobcpp_repair",
    "read_mobcpp_instance",
    "write_mobcpp_instance",
]


@dataclass(frozen=True)
class Recipe:
    time: float
    hall: int
    yields: dict[int, float]  # commodity index -> units produced per job


@dataclass(frozen=True)
class MobcppInstance:
    num_halls: int
    resources_per_hall: tuple[int, ...]
    orders: tuple[float, ...]
    hall_of_commodity: tuple[int, ...]
    recipes: tuple[Recipe, ...]

    def __post_init__(self):
        if self.num_halls != len(self.resources_per_hall):
            raise ValueError("resources_per_hall must list every hall")
        if any(r < 1 for r in self.resources_per_hall):
            raise ValueError("every hall needs at least one resource")
        if len(self.orders) != len(self.hall_of_commodity):
            raise ValueError("hall_of_commodity must cover every commodity")
        if any(o <= 0 for o in self.orders):
            raise ValueError("ordered amounts must be positive")
        covered = set()
        for idx, recipe in enumerate(self.recipes):
            if recipe.time <= 0:
                raise ValueError(f"recipe {idx} has non-positive execution time")
            positive = {j: d for j, d in recipe.yields.items() if d > 0}
            if not positive:
                raise ValueError(f"recipe {idx} yields nothing")
            for j in positive:
                if self.hall_of_commodity[j] != recipe.hall:
                    raise ValueError(
                        f"recipe {idx} (hall {recipe.hall}) yields commodity {j} "
                        f"of hall {self.hall_of_commodity[j]}"
                    )
            covered.update(positive)
        missing = set(range(len(self.orders))) - covered
        if missing:
            raise ValueError(f"no recipe produces commodities {sorted(missing)}")

    @property
    def num_commodities(self) -> int:
        return len(self.orders)


@dataclass(frozen=True)
class LayoutGroup:
    recipe: int
    anchor: int  # lowest-index commodity the recipe yields
    offset: int
    count: int  # job bits reserved for the recipe


@dataclass(frozen=True)
class EncodingLayout:
    groups: tuple[LayoutGroup, ...]
    length: int


def _job_bound(instance: MobcppInstance, recipe: Recipe) -> int:
    """Jobs needed for this recipe alone to cover its largest served order."""
    return max(
        math.ceil(instance.orders[j] / d) for j, d in recipe.yields.items() if d > 0
    )


def mobcpp_layout(instance: MobcppInstance) -> EncodingLayout:
    """Assign bit ranges: commodity-major, recipe-index-minor."""
    anchored = []
    for idx, recipe in enumerate(instance.recipes):
        anchor = min(j for j, d in recipe.yields.items() if d > 0)
        anchored.append((anchor, idx))
    anchored.sort()
    groups = []
    offset = 0
    for anchor, idx in anchored:
        count = _job_bound(instance, instance.recipes[idx])
        groups.append(LayoutGroup(recipe=idx, anchor=anchor, offset=offset, count=count))
        offset += count
    return EncodingLayout(groups=tuple(groups), length=offset)


class _CompiledMobcpp:
    """Precomputed bit masks and schedules for fast repair/evaluation.

    Genotypes are manipulated as Python ints (bit k = gene k); conversion
    from/to uint8 arrays happens at the boundary.
    """

    def __init__(self, instance: MobcppInstance, layout: EncodingLayout):
        self.instance = instance
        self.layout = layout
        self.orders = [float(o) for o in instance.orders]
        self.total_ordered = float(sum(self.orders))
        self.num_bytes = (layout.length + 7) // 8
        self.groups = []
        for grp in layout.groups:
            recipe = instance.recipes[grp.recipe]
            yields = sorted((j, float(d)) for j, d in recipe.yields.items() if d > 0)
            mask = ((1 << grp.count) - 1) << grp.offset
            self.groups.append(
                (
                    grp.offset,
                    grp.count,
                    mask,
                    yields,
                    yields[0] if len(yields) == 1 else None,
                    float(recipe.time),
                )
            )
        # per hall: (resource count, group slots sorted by descending time
        # then recipe index) for longest-processing-time-first scheduling
        self.halls = []
        for hall in range(instance.num_halls):
            slots = [
                (gi, self.groups[gi][5])
                for gi, grp in enumerate(layout.groups)
                if instance.recipes[grp.recipe].hall == hall
            ]
            slots.sort(key=lambda s: (-s[1], layout.groups[s[0]].recipe))
            self.halls.append((instance.resources_per_hall[hall], slots))

    def to_int(self, bits: np.ndarray) -> int:
        packed = np.packbits(bits, bitorder="little").tobytes()
        return int.from_bytes(packed, "little")

    def to_bits(self, value: int) -> np.ndarray:
        raw = value.to_bytes(self.num_bytes, "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[
            : self.layout.length
        ].astype(np.uint8)

    def plan_of(self, genotype: int) -> list[float]:
        plan = [0.0] * len(self.orders)
        for offset, _count, mask, yields, _single, _t in self.groups:
            jobs = (genotype & mask).bit_count()
            if jobs:
                for j, d in yields:
                    plan[j] += d * jobs
        return plan

    def repair(self, genotype: int) -> tuple[int, list[float]]:
        plan = self.plan_of(genotype)
        orders = self.orders
        for offset, count, mask, yields, single, _t in self.groups:
            bits = (genotype >> offset) & ((1 << count) - 1)
            if single is not None:
                j, d = single
                o = orders[j]
                p = plan[j]
                boundary = -1
                if p < o:
                    # force jobs on, first-zero first, until the order is covered
                    inv = ~bits & ((1 << count) - 1)
                    while p < o and inv:
                        low = inv & -inv
                        inv ^= low
                        bits |= low
                        p += d
                        boundary = low.bit_length() - 1
                if p >= o:
                    # drop redundant jobs past the last forced-on position
                    ones = bits & ~((1 << (boundary + 1)) - 1) if boundary >= 0 else bits
                    while ones and p - d >= o:
                        low = ones & -ones
                        ones ^= low
                        bits ^= low
                        p -= d
                plan[j] = p
            else:
                for pos in range(count):
                    bit = (bits >> pos) & 1
                    decision = -1
                    for j, d in yields:
                        if orders[j] > plan[j]:
                            decision = 1
                            break
                        if decision == -1 and orders[j] > plan[j] - d:
                            decision = 0
                    if decision == 1:
                        if not bit:
                            bits |= 1 << pos
                            for j, d in yields:
                                plan[j] += d
                    elif decision == -1 and bit:
                        bits ^= 1 << pos
                        for j, d in yields:
                            plan[j] -= d
            genotype = (genotype & ~mask) | (bits << offset)
        return genotype, plan

    def makespan(self, genotype: int) -> float:
        worst = 0.0
        for resources, slots in self.halls:
            loads = [0.0] * resources
            for gi, t in slots:
                offset, _count, mask, _yields, _single, _t = self.groups[gi]
                for _ in range((genotype & mask).bit_count()):
                    best = 0
                    for r in range(1, resources):
                        if loads[r] < loads[best]:
                            best = r
                    loads[best] += t
            high = max(loads)
            if high > worst:
                worst = high
        return worst

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        repaired, plan = self.repair(self.to_int(bits))
        surplus = sum(plan) - self.total_ordered
        return np.array([self.makespan(repaired), surplus])


class MobcppProblem:
    num_objectives = 2

    def __init__(self, instance: MobcppInstance, name: str | None = None):
        self.instance = instance
        self.layout = mobcpp_layout(instance)
        self._compiled = _CompiledMobcpp(instance, self.layout)
        self.length = self.layout.length
        self.name = name or f"mobcpp-{self.length}"

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        return self._compiled.evaluate(bits)

    def repair(self, bits: np.ndarray) -> np.ndarray:
        repaired, _plan = self._compiled.repair(self._compiled.to_int(bits))
        return self._compiled.to_bits(repaired)


def mobcpp_repair(instance: MobcppInstance, layout: EncodingLayout, bits: np.ndarray) -> np.ndarray:
    """Repaired copy of `bits`: every order covered, no removable job kept."""
    compiled = _CompiledMobcpp(instance, layout)
    repaired, _plan = compiled.repair(compiled.to_int(bits))
    return compiled.to_bits(repaired)


def mobcpp_evaluate(instance: MobcppInstance, layout: EncodingLayout, bits: np.ndarray) -> np.ndarray:
    """(makespan, total surplus) of the repaired genotype, both minimized."""
    return _CompiledMobcpp(instance, layout).evaluate(bits)


@dataclass(frozen=True)
class MobcppParams:
    """Generator knobs; ranges follow the published test-case envelopes."""

    halls: int = 1
    resources: int = 2
    commodities: int = 6
    recipes: int = 12
    order_range: tuple[int, int] = (20, 60)
    yield_range: tuple[int, int] = (2, 12)
    time_range: tuple[int, int] = (1, 9)

    def validate(self) -> None:
        if not 1 <= self.halls <= 12:
            raise ValueError("halls must be within 1..12")
        if not 2 <= self.resources <= 24:
            raise ValueError("resources must be within 2..24")
        if not 6 <= self.commodities <= 72:
            raise ValueError("commodities must be within 6..72")
        if not 12 <= self.recipes <= 144:
            raise ValueError("recipes must be within 12..144")
        if self.resources < self.halls:
            raise ValueError("need at least one resource per hall")
        if self.commodities < self.halls:
            raise ValueError("need at least one commodity per hall")
        if self.recipes < self.commodities:
            raise ValueError("fewer recipes than commodities leaves orders unproducible")
        for lo, hi in (self.order_range, self.yield_range, self.time_range):
            if lo < 1 or hi < lo:
                raise ValueError("ranges must satisfy 1 <= lo <= hi")


def generate_mobcpp_instance(params: MobcppParams, seed: int) -> MobcppInstance:
    """Deterministic random instance within the published parameter envelopes.

    Commodities are partitioned among halls and each recipe yields exactly
    one commodity of its hall; every commodity gets at least one recipe.
    """
    params.validate()
    rng = np.random.default_rng(seed)

    hall_of_commodity = np.empty(params.commodities, dtype=np.int64)
    hall_of_commodity[: params.halls] = np.arange(params.halls)
    hall_of_commodity[params.halls :] = rng.integers(
        0, params.halls, size=params.commodities - params.halls
    )

    resources = np.ones(params.halls, dtype=np.int64)
    for _ in range(params.resources - params.halls):
        resources[rng.integers(params.halls)] += 1

    orders = rng.integers(params.order_range[0], params.order_range[1] + 1,
                          size=params.commodities)

    commodity_of_recipe = np.empty(params.recipes, dtype=np.int64)
    commodity_of_recipe[: params.commodities] = np.arange(params.commodities)
    commodity_of_recipe[params.commodities :] = rng.integers(
        0, params.commodities, size=params.recipes - params.commodities
    )
    times = rng.integers(params.time_range[0], params.time_range[1] + 1,
                         size=params.recipes)
    yields = rng.integers(params.yield_range[0], params.yield_range[1] + 1,
                          size=params.recipes)

    recipes = tuple(
        Recipe(
            time=float(times[i]),
            hall=int(hall_of_commodity[commodity_of_recipe[i]]),
            yields={int(commodity_of_recipe[i]): float(yields[i])},
        )
        for i in range(params.recipes)
    )
    return MobcppInstance(
        num_halls=params.halls,
        resources_per_hall=tuple(int(r) for r in resources),
        orders=tuple(float(o) for o in orders),
        hall_of_commodity=tuple(int(h) for h in hall_of_commodity),
        recipes=recipes,
    )


def write_mobcpp_instance(instance: MobcppInstance, path: str | Path) -> None:
    lines = [
        f"halls {instance.num_halls}",
        "resources " + " ".join(str(r) for r in instance.resources_per_hall),
        f"commodities {instance.num_commodities}",
    ]
    for j, (order, hall) in enumerate(zip(instance.orders, instance.hall_of_commodity)):
        lines.append(f"commodity {j} hall={hall} order={float(order)!r}")
    lines.append(f"recipes {len(instance.recipes)}")
    for i, recipe in enumerate(instance.recipes):
        pairs = ",".join(f"{j}:{float(d)!r}" for j, d in sorted(recipe.yields.items()))
        lines.append(f"recipe {i} hall={recipe.hall} time={float(recipe.time)!r} yields={pairs}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_mobcpp_instance(path: str | Path) -> MobcppInstance:
    rows = [r.strip() for r in Path(path).read_text(encoding="utf-8").split("\n")]
    rows = [r for r in rows if r and not r.startswith("#")]
    fields_of = lambda row: dict(tok.split("=", 1) for tok in row.split()[2:])

    it = iter(rows)
    head = next(it).split()
    if head[0] != "halls":
        raise ValueError("instance file must start with a 'halls' line")
    num_halls = int(head[1])
    res_row = next(it).split()
    resources = tuple(int(tok) for tok in res_row[1:])
    num_commodities = int(next(it).split()[1])
    orders: list[float] = [0.0] * num_commodities
    hall_of: list[int] = [0] * num_commodities
    for _ in range(num_commodities):
        row = next(it)
        idx = int(row.split()[1])
        fields = fields_of(row)
        orders[idx] = float(fields["order"])
        hall_of[idx] = int(fields["hall"])
    num_recipes = int(next(it).split()[1])
    recipes = []
    for _ in range(num_recipes):
        row = next(it)
        fields = fields_of(row)
        yields = {}
        for pair in fields["yields"].split(","):
            j, d = pair.split(":")
            yields[int(j)] = float(d)
        recipes.append(Recipe(time=float(fields["time"]), hall=int(fields["hall"]),
                              yields=yields))
    return MobcppInstance(
        num_halls=num_halls,
        resources_per_hall=resources,
        orders=tuple(orders),
        hall_of_commodity=tuple(hall_of),
        recipes=tuple(recipes),
    )
