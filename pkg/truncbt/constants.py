import math

CONFIG_FILE_NAME = "truncbt.yaml"
CONFIG_SECTION = "core"

# Valuation of zero: larger than every finite valuation.
INFINITY = math.inf

MAX_RING_SIZE = 2**31

BASE_BLOCKS = "blocks"
BASE_ORDINARY = "ordinary"
BASE_MINIMAL = "minimal"
BASE_KRAFT = "kraft"

SEED_IDENTITY = "identity"
