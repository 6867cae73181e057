"""
laman-lcontact - Personal Configuration Template

SETUP INSTRUCTIONS:
1. Copy this file to 'config/config.py'
2. Adjust the options below; anything left out keeps its default
3. Any option can also be set from the environment as LAMAN_<NAME>

Only UPPERCASE names are read.
"""

# ===========================
# FILE PATHS
# ===========================

OUTPUT_FOLDER = "./data/output"  # Default folder for batch outputs

# ===========================
# GENERATION
# ===========================

DEFAULT_SEED = 1  # Seed for `generate` and `bench` when --seed is omitted

# ===========================
# PIPELINE
# ===========================

CHECK_STAGES = True  # Verify every stage (angle rules, edge rules, types, D_r/D_b) while drawing
BRUTE_FORCE_LIMIT = 10  # Largest n for the exhaustive subset oracle (`check --oracle`)
BATCH_JOBS = 1  # Worker processes for `batch` when --jobs is omitted

# ===========================
# SVG RENDERING
# ===========================

SVG_CELL_SIZE = 40  # Pixels per grid unit
SVG_MARGIN = 1  # Grid units of padding around the drawing

# Stroke color per vertex type (quadrant of the two legs)
TYPE_COLORS = {
    "I": "#d62728",
    "II": "#1f77b4",
    "III": "#2ca02c",
    "IV": "#9467bd",
}

# ===========================
# LOGGING
# ===========================

LOG_LEVEL = "INFO"  # Level used with --verbose: DEBUG, INFO, WARNING, ERROR
