"""Procedural visual-reasoning puzzle benchmark engine."""

__version__ = "0.1.0"

TASKS = ("rush_hour", "sliding_puzzle", "hinge_folding", "paper_fold", "form_board")
LEVELS = (1, 2, 3, 4, 5)
