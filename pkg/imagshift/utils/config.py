"""Configuration module for imagshift."""

import os

from dotenv import find_dotenv, load_dotenv

# Load environment variables
load_dotenv(find_dotenv())

DEBUG = os.environ.get('IMAGSHIFT_DEBUG', 'false').lower() == 'true'

# Quadrature
ABS_TOL = float(os.environ.get('IMAGSHIFT_ABS_TOL', 1e-12))
REL_TOL = float(os.environ.get('IMAGSHIFT_REL_TOL', 1e-10))
MAX_LEVELS = int(os.environ.get('IMAGSHIFT_MAX_LEVELS', 8))

# Series and continuation
SERIES_REL_TOL = float(os.environ.get('IMAGSHIFT_SERIES_REL_TOL', 1e-16))
SERIES_MAX_TERMS = int(os.environ.get('IMAGSHIFT_SERIES_MAX_TERMS', 10000))
CONTINUATION_RADIUS = float(os.environ.get('IMAGSHIFT_CONTINUATION_RADIUS', 0.8))
ODE_RTOL = float(os.environ.get('IMAGSHIFT_ODE_RTOL', 1e-12))

# Coefficients closer than this to a pole raise PoleError
POLE_DISTANCE = float(os.environ.get('IMAGSHIFT_POLE_DISTANCE', 1e-8))

# Output
CSV_DIGITS = int(os.environ.get('IMAGSHIFT_CSV_DIGITS', 17))
VERIFY_WORKERS = int(os.environ.get('IMAGSHIFT_VERIFY_WORKERS', 1))

# Points kept per memoized transform closure
CACHE_MAX_ENTRIES = int(os.environ.get('IMAGSHIFT_CACHE_MAX_ENTRIES', 4096))

RESOURCES_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'resources')
