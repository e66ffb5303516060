"""Objective functions: bitstring benchmarks, MAXCUT, knapsack and MOBCPP."""

from __future__ import annotations

from pathlib import Path

from .bitstrings import Lotz, Trap5InvTrap5, ZeromaxOnemax
from .fronts import BRUTE_FORCE_MAX_LENGTH, brute_force_front, optimal_front
from .knapsack import (
    KnapsackInstance,
    KnapsackProblem,
    generate_knapsack_instance,
    read_knapsack_instance,
    repair_knapsack,
    write_knapsack_instance,
)
from .maxcut import (
    MaxcutInstance,
    MaxcutProblem,
    generate_maxcut_instance,
    read_maxcut_instance,
    write_maxcut_instance,
)
from .mobcpp import (
    EncodingLayout,
    LayoutGroup,
    MobcppInstance,
    MobcppParams,
    MobcppProblem,
    Recipe,
    generate_mobcpp_instance,
    mobcpp_evaluate,
    mobcpp_layout,
    mobcpp_repair,
    read_mobcpp_instance,
    write_mobcpp_instance,
)

__all__ = [
    "BRUTE_FORCE_MAX_LENGTH",
    "EncodingLayout",
    "KnapsackInstance",
    "KnapsackProblem",
    "LayoutGroup",
    "Lotz",
    "MaxcutInstance",
    "MaxcutProblem",
    "MobcppInstance",
    "MobcppParams",
    "MobcppProblem",
    "Recipe",
    "Trap5InvTrap5",
    "ZeromaxOnemax",
    "brute_force_front",
    "generate_knapsack_instance",
    "generate_maxcut_instance",
    "generate_mobcpp_instance",
    "make_problem",
    "mobcpp_evaluate",
    "mobcpp_layout",
    "mobcpp_repair",
    "optimal_front",
    "read_knapsack_instance",
    "read_maxcut_instance",
    "read_mobcpp_instance",
    "repair_knapsack",
    "write_knapsack_instance",
    "write_maxcut_instance",
    "write_mobcpp_instance",
]

SIZED_PROBLEMS = ("zeromax-onemax", "trap5-invtrap5", "lotz", "maxcut", "knapsack")
INSTANCE_PROBLEMS = ("maxcut", "knapsack", "mobcpp")


def make_problem(name: str, size: int | None = None, instance: str | Path | None = None):
    """Build a problem from a registry name plus a size or an instance file.

    Sized benchmarks without instance files (`maxcut`, `knapsack`) fall
    back to a generated instance whose seed derives from the size, so the
    same name/size pair always denotes the same problem.
    """
    if name == "zeromax-onemax":
        return ZeromaxOnemax(_need_size(name, size))
    if name == "trap5-invtrap5":
        return Trap5InvTrap5(_need_size(name, size))
    if name == "lotz":
        return Lotz(_need_size(name, size))
    if name == "maxcut":
        if instance is not None:
            return MaxcutProblem(read_maxcut_instance(instance))
        l = _need_size(name, size)
        return MaxcutProblem(generate_maxcut_instance(l, seed=9000 + l))
    if name == "knapsack":
        if instance is not None:
            return KnapsackProblem(read_knapsack_instance(instance))
        l = _need_size(name, size)
        return KnapsackProblem(generate_knapsack_instance(l, 2, seed=7000 + l))
    if name == "mobcpp":
        if instance is None:
            raise ValueError("mobcpp requires an instance file (see generate_mobcpp_instance)")
        return MobcppProblem(read_mobcpp_instance(instance))
    raise ValueError(f"unknown problem {name!r}")


def _need_size(name: str, size: int | None) -> int:
    if size is None:
        raise ValueError(f"problem {name!r} requires a size")
    return size
