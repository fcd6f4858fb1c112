"""Reflexive decision procedures for equations over a hierarchy of
algebraic structures with homomorphisms."""

from .carriers import InstancePath, Kind, Registry, instances_equal
from .errors import ReflError
from .reify import Verdict, solve
from .surface import Goal, parse
from .theory import default_registry, load_theory

__all__ = ["InstancePath", "Kind", "Registry", "instances_equal", "ReflError", "Verdict",
           "solve", "Goal", "parse", "default_registry", "load_theory"]
