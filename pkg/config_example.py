"""
Configuration Example for laman-lcontact

Copy this file to config/config.py and adjust for your setup.
"""

# Output
OUTPUT_FOLDER = "./data/output"

# Pipeline Options
CHECK_STAGES = True  # Verify each stage while drawing
BATCH_JOBS = 4  # Parallel workers for batch drawing
BRUTE_FORCE_LIMIT = 10  # Subset oracle refuses larger graphs

# Rendering
SVG_CELL_SIZE = 30
