"""Centralized configuration for asimkit."""

VERSION = "0.1.0"

# Translation
DEFAULT_VARIABLE = "x"
FRESH_VARIABLE_PREFIX = "y"

# Model and relation documents (field names are part of the file format)
MODEL_FIELDS = ("vocab", "worlds", "rel", "val")
OPTIONAL_MODEL_FIELDS = ("point",)
RELATION_FIELDS = ("pairs",)
PAIR_FIELDS = ("dir", "from", "to", "fromSeq", "toSeq")
DIRECTION_CODES = ("LR", "RL")

# Model enumeration
MODEL_ENUMERATION_CAP = 250_000
CANONICAL_MAX_WORLDS = 5
WORLD_NAME_PREFIX = "w"

# Tuple-form k-asimulation oracle
BRUTE_FORCE_MAX_WORLDS = 3
BRUTE_FORCE_MAX_K = 2

# Formula repertoire
REPERTOIRE_BUDGET = 1_000_000
REPERTOIRE_CLOSURE_ROUNDS = None  # disjunction rounds per layer; None runs to the fixpoint
PROBE_MAX_WORLDS = 2

# Reproduction pipeline
REPRODUCTION_MAX_WORLDS = 3
REPRODUCTION_SAMPLE_STRIDE = 25
REPRODUCTION_DEPTH = 2
LIFT_MAX_K = 3
FINAL_REPORT_FILENAME = "final_report.json"

# CLI exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
