#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import os.path
from dotenv import load_dotenv

# Get the project root directory
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Load environment variables from .env file in project root
env_path = os.path.join(PROJECT_ROOT, '.env')
load_dotenv(dotenv_path=env_path)

# Map evaluation
EXP_CLAMP = float(os.getenv("EXP_CLAMP", "709"))  # Largest exponent passed to exp
DEFAULT_KAPPA = float(os.getenv("DEFAULT_KAPPA", "10"))  # Sharpness of the gaussian bump rule

# Root isolation and periodic orbits
ROOT_SCAN_CELLS = int(os.getenv("ROOT_SCAN_CELLS", "10000"))  # Sign-change scan cells on [0,1]
PERIOD_TOLERANCE = float(os.getenv("PERIOD_TOLERANCE", "1e-10"))  # Max |f^k(x) - x| for a period-k point
DISTINCT_TOLERANCE = float(os.getenv("DISTINCT_TOLERANCE", "1e-6"))  # Min separation of orbit points

# Set computations
SET_TOLERANCE = float(os.getenv("SET_TOLERANCE", "1e-12"))  # Inclusion tolerance for exact images
HAUSDORFF_TOLERANCE = float(os.getenv("HAUSDORFF_TOLERANCE", "1e-9"))  # Set equality for propagated images
DELTA_GRID = int(os.getenv("DELTA_GRID", "1001"))  # Rate grid for the absorbing set
ADAPTIVE_SAMPLES = int(os.getenv("ADAPTIVE_SAMPLES", "16384"))  # Samples for adaptive interval images
COVER_GRID = int(os.getenv("COVER_GRID", "1000"))  # Grid points for cover tests
ANCHOR_STEPS = int(os.getenv("ANCHOR_STEPS", "60"))  # Halving steps in turbulent pair anchor search

# Scans
CLUSTER_RESOLUTION = float(os.getenv("CLUSTER_RESOLUTION", "1e-4"))  # Distinct limit value resolution
SCAN_BURN_IN = int(os.getenv("SCAN_BURN_IN", "10000"))  # Default discarded steps per grid point
SCAN_KEEP = int(os.getenv("SCAN_KEEP", "200"))  # Default kept samples per grid point
CHAOS_MWU_THREADS = os.getenv("CHAOS_MWU_THREADS")  # Worker cap, unset means cpu count

# Diagnostics
DIAGNOSTIC_GRID_SAMPLES = int(os.getenv("DIAGNOSTIC_GRID_SAMPLES", "64"))  # Equispaced samples
DIAGNOSTIC_RANDOM_SAMPLES = int(os.getenv("DIAGNOSTIC_RANDOM_SAMPLES", "64"))  # Seeded random samples
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "20240101"))
TAIL_FRACTION = float(os.getenv("TAIL_FRACTION", "0.5"))  # Tail used for liminf/limsup proxies
LYAPUNOV_LOG_FLOOR = float(os.getenv("LYAPUNOV_LOG_FLOOR", "-745"))  # Stand-in for ln(0)

# Extended precision tracking
TRACKING_MIN_BITS = int(os.getenv("TRACKING_MIN_BITS", "200"))  # Floor on mpmath precision
TRACKING_BITS_PER_STEP = int(os.getenv("TRACKING_BITS_PER_STEP", "8"))  # Extra bits per tracked step
MAX_PRECISION_RETRIES = int(os.getenv("MAX_PRECISION_RETRIES", "3"))  # Precision doublings before giving up

# Log Configuration
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_DIR = os.path.expanduser(os.getenv("LOG_DIR", "~/.chaos_mwu/logs"))
