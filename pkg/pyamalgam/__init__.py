# flake8: noqa

"""
This is a package for tree amalgamations of graphs, their tree-decompositions,
ends and hyperbolicity.
"""

from pyamalgam.graph import Graph
from pyamalgam.action import Action
from pyamalgam.patch import Patch
from pyamalgam.treedecomp import TreeDecomposition
from pyamalgam.amalgamation import AmalgamationSpec
from pyamalgam.build import AmalgamGraph, build_amalgam
