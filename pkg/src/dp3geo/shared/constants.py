"""Shared constants for the dp3geo toolkit."""

# Logging
SERVICE_NAME = "dp3geo"
DEFAULT_LOG_LEVEL = "WARNING"

# Environment
ENV_OUTPUT_DIR = "DP3GEO_OUTPUT_DIR"

# Geography window (n horizontal, d vertical)
DEFAULT_N_MIN = -6
DEFAULT_N_MAX = 2
DEFAULT_D_MAX = 14

# SVG layout, integer user units. CELL is divisible by 3 so the Pukhlikov
# line 3d + 5n = 12 lands on integer coordinates.
SVG_CELL = 30
SVG_MARGIN = 60

# Geography markers
MARKER_DOT = "dot"
MARKER_BULLET = "bullet"
MARKER_CIRCLE = "circle"

# Sigma-proxy positions of -K relative to the cone <L, D_z>
SIGMA_INTERIOR = "interior"
SIGMA_BOUNDARY = "boundary"
SIGMA_OUTSIDE = "outside"

# Wall kinds of the 2-ray game
STEP_ANTIFLIP = "antiflip"
STEP_FLOP = "flop"
STEP_FLIP = "flip"
STEP_TERMINAL = "terminal"

# Terminal wall heuristic
AMBIENT_HEURISTIC_TAG = "ambient heuristic"
CONTRACTION_FIBRATION = "fibration"
CONTRACTION_DIVISORIAL = "divisorial"

# Output formats per subcommand
FORMAT_TSV = "tsv"
FORMAT_SVG = "svg"
FORMAT_JSON = "json"
FORMAT_TEXT = "text"

GEOGRAPHY_FORMATS = (FORMAT_TSV, FORMAT_SVG, FORMAT_JSON)
REPORT_FORMATS = (FORMAT_TEXT, FORMAT_JSON)

TSV_COLUMNS = (
    "n",
    "d",
    "a",
    "b",
    "c",
    "marker",
    "label",
    "sigma_position",
    "k2_strict",
    "nonrigid_source",
)

# Coordinate names
BASE_NAMES_P1 = ("u", "v")
FIBRE_NAMES_4 = ("x", "y", "z", "t")
EXTENSION_NAMES = ("ξ", "η", "ζ")

# Number of fibre coordinates of a dP3 family scroll F(0,a,b,c)
DP3_FIBRE_RANK = 4

# Section counts reported at a terminal wall: multiples 1..N of the ray
TERMINAL_SECTION_MULTIPLES = 2

# Plane-curve ambient for determinantal counts
PLANE_VARIABLES = 3

# Admissibility clauses (reasons reported by geography.admissible)
CLAUSE_N_GE_MINUS_3A = "n ≥ −3a"
CLAUSE_EQUAL_TWISTS = "a=b and n=−3a"
CLAUSE_N_GE_MINUS_C = "n ≥ −c"
CLAUSE_TRIVIAL = "(n,d) ≠ (0,0)"

# K² flag certainty
K2_IFF = "iff"
K2_SUFFICIENT_ONLY = "sufficient direction only"

# Nonrigid source tags
SOURCE_NONE = "none"
SOURCE_TABLE2_PREFIX = "table2:"
SOURCE_CLASSICAL_PREFIX = "classical:"
