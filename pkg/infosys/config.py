"""Configuration constants for the workbench."""

import os
from pathlib import Path

# Paths
PROJECT_ROOT = Path(__file__).parent.parent
FIXTURES_DIR = PROJECT_ROOT / "fixtures"

# Debug logging, read by __main__
DEBUG = bool(os.getenv("INFOSYS_DEBUG"))

# Size caps for exhaustive scans (exit code 3 beyond these)
MAX_ISO_ELEMS = int(os.getenv("INFOSYS_MAX_ISO_ELEMS", "12"))
MAX_SUBSET_TOKENS = int(os.getenv("INFOSYS_MAX_SUBSET_TOKENS", "16"))
MAX_DIRECTED_SCAN_ELEMS = int(os.getenv("INFOSYS_MAX_DIRECTED_SCAN_ELEMS", "10"))
MAX_PRODUCT_TOKENS = int(os.getenv("INFOSYS_MAX_PRODUCT_TOKENS", "64"))
MAX_PRODUCT_CON = int(os.getenv("INFOSYS_MAX_PRODUCT_CON", "20000"))
MAX_RELATION_ENUM = int(os.getenv("INFOSYS_MAX_RELATION_ENUM", "12"))
MAX_FUNCTION_TABLES = int(os.getenv("INFOSYS_MAX_FUNCTION_TABLES", "256"))

# Reserved token names
FRESH_TOKEN = "⊥ε"      # delta added when lifting a cis
TERMINAL_TOKEN = "Δ"    # sole token of the one-point system

# Evaluate the printed form of ais axiom 5 alongside the cut rule
STRICT_PRINTED_AXIOMS = os.getenv("INFOSYS_STRICT_PRINTED_AXIOMS", "").lower() == "true"
