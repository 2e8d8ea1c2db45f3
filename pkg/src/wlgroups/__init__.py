"""Weisfeiler-Leman refinement, pebble games and structure tools for finite
groups given by Cayley tables."""

from .groups import (Group, SubgroupSet, catalog_group, catalog_names, from_table, load_group,
                     make_named, resolve_group)

__version__ = "0.1.0"

__all__ = [
    "Group", "SubgroupSet", "catalog_group", "catalog_names", "from_table", "load_group",
    "make_named", "resolve_group", "__version__",
]
