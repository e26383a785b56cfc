from app.shelling_engine.constructive import shell_2_ball, shell_star
from app.shelling_engine.search import (
    CostModel,
    StructuralCostModel,
    brute_force_shellings,
    search_shelling,
)
from app.shelling_engine.trees import EdgeCost, enumerate_spanning_trees, spanning_tree
from app.shelling_engine.verifier import ShellingVerifier, verify_shelling

__all__ = [
    "CostModel",
    "EdgeCost",
    "ShellingVerifier",
    "StructuralCostModel",
    "brute_force_shellings",
    "enumerate_spanning_trees",
    "search_shelling",
    "shell_2_ball",
    "shell_star",
    "spanning_tree",
    "verify_shelling",
]
