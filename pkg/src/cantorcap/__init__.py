"""Exact measures and Choquet capacities on the closed subsets of Cantor space."""
from .core import ClopenSet, FiniteTree, canonicalize, decode_code, encode_tree, enumerate_trees
from .measure import DepthDependent, Regular, UNIFORM, mu_of_code, mu_star_basic, symmetric
from .capacity import capacity_bruteforce, capacity_dp, capacity_X
from .choquet import BranchTable, CapacityOracle, invert, roundtrip_error
from .asymptotics import SymmetricParam, classify, f_map, ml_subsequence, p_sequence
from .pi01 import construct, schedule_c, verify

__version__ = "0.1.0"
