"""
Centralized configuration for the PAC interval toolkit
"""

import os

# Output configuration
OUTPUT_DIR = os.environ.get(
    'OUTPUT_DIR',
    '/app/output' if os.path.exists('/app/output') else 'output'
)
ROWS_FILE = 'rows.csv'
AGGREGATES_FILE = 'aggregates.json'
CLASSES_FILE = 'classes.csv'
ERRORS_FILE = 'errors.csv'

# API configuration
FLASK_HOST = os.environ.get('FLASK_HOST', '0.0.0.0')
FLASK_PORT = int(os.environ.get('FLASK_PORT', 5000))
FLASK_DEBUG = os.environ.get('FLASK_DEBUG', 'False').lower() == 'true'

# Calibration defaults
DEFAULT_DELTA = 1e-5
DEFAULT_EPSILONS = (0.2, 0.3, 0.4)
ROOT_TOLERANCE = 1e-12

# Experiment defaults
DEFAULT_SEEDS = (100, 101, 102, 103, 104)
DEFAULT_SPLIT = (0.6, 0.2, 0.2)
DEFAULT_N_EXAMPLES = 5000
DEFAULT_FEATURE_DIM = 8

# Training defaults
DEFAULT_HIDDEN_DIM = 16
DEFAULT_LEARNING_RATE = 0.01
DEFAULT_EPOCHS = 100
DEFAULT_BATCH_SIZE = 64
DEFAULT_MAX_GRAD_NORM = 1.0

# Visual acuity label space
LABEL_MIN = 0
LABEL_MAX = 10
LETTER_FLOOR = 0.01
CLINICAL_WIDTH = 2.0
WIDE_WIDTH = 5.0

# Per-class counts of the fundus dataset, classes 0..10
VA_CLASS_COUNTS = (3274, 2164, 1647, 2091, 2005, 3240, 3803, 4261, 4370, 6358, 21568)

# Logging
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')
LOG_FILE = os.environ.get('LOG_FILE', '')
