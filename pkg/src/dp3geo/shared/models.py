"""Data models for dp3geo."""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from dp3geo.shared.constants import (
    CLAUSE_EQUAL_TWISTS,
    CLAUSE_N_GE_MINUS_3A,
    CLAUSE_N_GE_MINUS_C,
    CLAUSE_TRIVIAL,
    CONTRACTION_DIVISORIAL,
    CONTRACTION_FIBRATION,
    FIBRE_NAMES_4,
    MARKER_BULLET,
    MARKER_CIRCLE,
    MARKER_DOT,
    SIGMA_BOUNDARY,
    SIGMA_INTERIOR,
    SIGMA_OUTSIDE,
    STEP_ANTIFLIP,
    STEP_FLIP,
    STEP_FLOP,
    STEP_TERMINAL,
)
from dp3geo.shared.utils import (
    Vector,
    cone_extremes,
    cross,
    format_class,
    format_monomial,
    primitive,
)

Monomial = Tuple[int, int, int, int]
Term = Tuple[int, int, int]


class Marker(str, Enum):
    """Geography marker enumeration."""
    DOT = MARKER_DOT
    BULLET = MARKER_BULLET
    CIRCLE = MARKER_CIRCLE


class SigmaPosition(str, Enum):
    """Position of -K relative to the cone <L, D_z>."""
    INTERIOR = SIGMA_INTERIOR
    BOUNDARY = SIGMA_BOUNDARY
    OUTSIDE = SIGMA_OUTSIDE


class StepKind(str, Enum):
    """Wall kinds of the 2-ray game."""
    ANTIFLIP = STEP_ANTIFLIP
    FLOP = STEP_FLOP
    FLIP = STEP_FLIP
    TERMINAL = STEP_TERMINAL


class ContractionKind(str, Enum):
    """Ambient guess for the morphism at the terminal wall."""
    FIBRATION = CONTRACTION_FIBRATION
    DIVISORIAL = CONTRACTION_DIVISORIAL


class BaseEntity(BaseModel):
    """Base model for all entities: immutable, enums stored by value."""

    model_config = ConfigDict(frozen=True, use_enum_values=True)


# ---------------------------------------------------------------- scroll


class DivClass(BaseEntity):
    """Divisor class mM + lL, equivalently a character of the rank-2 torus."""
    m: int = Field(..., description="Coefficient of M")
    l: int = Field(..., description="Coefficient of L")

    @classmethod
    def of(cls, m: int, l: int) -> "DivClass":
        return cls(m=m, l=l)

    @classmethod
    def from_vector(cls, vector: Vector) -> "DivClass":
        return cls(m=vector[0], l=vector[1])

    @property
    def vector(self) -> Vector:
        return (self.m, self.l)

    @property
    def is_zero(self) -> bool:
        return self.m == 0 and self.l == 0

    def ray(self) -> "DivClass":
        """Primitive generator of the ray through this class."""
        return DivClass.from_vector(primitive(self.vector))

    def scale(self, factor: int) -> "DivClass":
        return DivClass(m=factor * self.m, l=factor * self.l)

    def __add__(self, other: "DivClass") -> "DivClass":
        return DivClass(m=self.m + other.m, l=self.l + other.l)

    def __sub__(self, other: "DivClass") -> "DivClass":
        return DivClass(m=self.m - other.m, l=self.l - other.l)

    def __neg__(self) -> "DivClass":
        return DivClass(m=-self.m, l=-self.l)

    def __str__(self) -> str:
        return format_class(self.m, self.l)


M_CLASS = DivClass(m=1, l=0)
L_CLASS = DivClass(m=0, l=1)


class WeightMatrix(BaseEntity):
    """Character matrix of a (C*)^2 action on affine space.

    ``rows[0]`` holds the weights of the first character (the L row) and
    ``rows[1]`` those of the second (the M row), so column i is the class
    rows[1][i]·M + rows[0][i]·L of the i-th coordinate.
    """
    rows: Tuple[Tuple[int, ...], Tuple[int, ...]] = Field(..., description="L row, then M row")
    names: Tuple[str, ...] = Field(..., description="Display names of the coordinates")

    @model_validator(mode="after")
    def validate_geometry(self) -> "WeightMatrix":
        """Check arity, rank and strict convexity of the column rays."""
        l_row, m_row = self.rows
        if len(l_row) != len(m_row):
            raise ValueError("rows must have equal length")
        if len(l_row) < 4:
            raise ValueError(f"a weight matrix needs at least 4 columns, got {len(l_row)}")
        if len(self.names) != len(l_row):
            raise ValueError("one name per column is required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("coordinate names must be distinct")

        vectors = self.vectors
        if any(v == (0, 0) for v in vectors):
            raise ValueError("zero column")
        if all(cross(vectors[0], w) == 0 for w in vectors):
            raise ValueError("rows are linearly dependent (rank < 2)")
        cone_extremes(vectors)
        return self

    @classmethod
    def from_columns(cls, columns: List[DivClass], names: List[str]) -> "WeightMatrix":
        return cls(
            rows=(tuple(c.l for c in columns), tuple(c.m for c in columns)),
            names=tuple(names),
        )

    @classmethod
    def from_display_rows(cls, display_rows: List[List[int]], names: List[str]) -> "WeightMatrix":
        """Build from the hand-written layout with the M row on top."""
        return cls(rows=(tuple(display_rows[1]), tuple(display_rows[0])), names=tuple(names))

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def vectors(self) -> List[Vector]:
        return list(zip(self.rows[1], self.rows[0]))

    @property
    def columns(self) -> List[DivClass]:
        return [DivClass.from_vector(v) for v in self.vectors]

    def display_rows(self) -> List[List[int]]:
        """Rows with the M row on top, the layout used when writing scrolls by hand."""
        return [list(self.rows[1]), list(self.rows[0])]


class StandardScroll(BaseEntity):
    """The scroll F(a_0,...,a_n) over P^k."""
    base_dim: int = Field(1, ge=1, le=2, description="Dimension k of the base P^k")
    twists: Tuple[int, ...] = Field(..., min_length=1, description="Twists a_i in coordinate order")

    @property
    def fibre_rank(self) -> int:
        return len(self.twists)

    @property
    def dim(self) -> int:
        return self.base_dim + self.fibre_rank - 1

    @property
    def degree(self) -> int:
        return sum(self.twists)

    def __str__(self) -> str:
        twists = ",".join(str(a) for a in self.twists)
        return f"F({twists})/P{self.base_dim}"


class Chamber(BaseEntity):
    """Open chamber between two consecutive column rays of the walk."""
    lo_ray: DivClass
    hi_ray: DivClass
    left_block: Tuple[int, ...] = Field(..., description="Columns on or before lo_ray")
    right_block: Tuple[int, ...] = Field(..., description="Columns on or after hi_ray")

    @model_validator(mode="after")
    def validate_blocks(self) -> "Chamber":
        if set(self.left_block) & set(self.right_block):
            raise ValueError("chamber blocks must be disjoint")
        if self.lo_ray == self.hi_ray:
            raise ValueError("chamber rays must be distinct")
        return self


class RayColumns(BaseEntity):
    """A distinct column ray with the columns lying on it."""
    ray: DivClass
    columns: Tuple[int, ...]


class ChamberWalk(BaseEntity):
    """Chambers of the useful cone in walk order, plus the terminal wall."""
    rays: Tuple[RayColumns, ...]
    chambers: Tuple[Chamber, ...]
    terminal_wall: DivClass

    @property
    def walls(self) -> List[DivClass]:
        """Interior walls: rays shared by consecutive chambers."""
        return [chamber.hi_ray for chamber in self.chambers[:-1]]


class BasisChange(BaseEntity):
    """Unimodular change of basis acting on (m, l) column vectors."""
    matrix: Tuple[Tuple[int, int], Tuple[int, int]]

    @property
    def det(self) -> int:
        (p, q), (r, s) = self.matrix
        return p * s - q * r

    def apply(self, cls: DivClass) -> DivClass:
        (p, q), (r, s) = self.matrix
        return DivClass(m=p * cls.m + q * cls.l, l=r * cls.m + s * cls.l)


# ---------------------------------------------------------------- chow


class ChowExpr(BaseEntity):
    """Integer polynomial in M and L, stored as sorted (m_exp, l_exp, coeff) terms."""
    terms: Tuple[Tuple[int, int, int], ...] = Field(default_factory=tuple)

    @field_validator("terms")
    @classmethod
    def normalize_terms(cls, v: Tuple[Term, ...]) -> Tuple[Term, ...]:
        merged: Dict[Tuple[int, int], int] = {}
        for m_exp, l_exp, coeff in v:
            if m_exp < 0 or l_exp < 0:
                raise ValueError("exponents must be nonnegative")
            merged[(m_exp, l_exp)] = merged.get((m_exp, l_exp), 0) + coeff
        return tuple(
            sorted(
                ((m, l, c) for (m, l), c in merged.items() if c),
                key=lambda t: (-t[0] - t[1], -t[0]),
            )
        )

    @property
    def degree(self) -> int:
        return max((m + l for m, l, _ in self.terms), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_homogeneous(self) -> bool:
        return len({m + l for m, l, _ in self.terms}) <= 1

    def coefficient(self, m_exp: int, l_exp: int) -> int:
        return next((c for m, l, c in self.terms if (m, l) == (m_exp, l_exp)), 0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        text = ""
        for m_exp, l_exp, coeff in self.terms:
            monomial = format_monomial((m_exp, l_exp), ("M", "L"))
            magnitude = abs(coeff)
            if monomial == "1":
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}{monomial}"
            if not text:
                text = ("-" if coeff < 0 else "") + body
            else:
                text += (" - " if coeff < 0 else " + ") + body
        return text


class CycleClass(BaseEntity):
    """1-cycle gamma_coeff·Γ + m2l_coeff·M²L on a 4-fold scroll over P¹."""
    gamma_coeff: int
    m2l_coeff: int

    def __str__(self) -> str:
        sign = "-" if self.m2l_coeff < 0 else "+"
        return f"{self.gamma_coeff}Γ {sign} {abs(self.m2l_coeff)}M²L"


class K2Report(BaseEntity):
    """K_X² as a cycle with the Pukhlikov-line flag."""
    cycle: CycleClass
    interior: bool = Field(..., description="3d + 5n < 12")
    certainty: str


# ---------------------------------------------------------------- geography


class FamilyParams(BaseEntity):
    """dP3 family X in |3M + nL| on F(0,a,b,c) over P¹."""
    n: int
    a: int = Field(..., ge=0)
    b: int = Field(..., ge=0)
    c: int = Field(..., ge=0)

    @model_validator(mode="after")
    def validate_order(self) -> "FamilyParams":
        if not self.a <= self.b <= self.c:
            raise ValueError("twists must satisfy 0 ≤ a ≤ b ≤ c")
        return self

    @property
    def d(self) -> int:
        return self.a + self.b + self.c

    @property
    def twists(self) -> Tuple[int, int, int, int]:
        return (0, self.a, self.b, self.c)

    @property
    def label(self) -> str:
        parts = (self.a, self.b, self.c)
        if max(parts) > 9:
            return ",".join(str(p) for p in parts)
        return "".join(str(p) for p in parts)

    def violation(self) -> Optional[str]:
        """Name the first admissibility clause this family breaks, if any."""
        n, a, b, c = self.n, self.a, self.b, self.c
        if n < -3 * a:
            return CLAUSE_N_GE_MINUS_3A
        if n == -3 * a and a == b and n < 0:
            return CLAUSE_EQUAL_TWISTS
        if n < 0 and n < -c:
            return CLAUSE_N_GE_MINUS_C
        if n == 0 and self.d == 0:
            return CLAUSE_TRIVIAL
        return None

    def __str__(self) -> str:
        return f"({self.n};{self.a},{self.b},{self.c})"


class Admissibility(BaseEntity):
    admissible: bool
    reason: Optional[str] = None


class FamilyEntry(BaseEntity):
    """Per-family tags at a geography point."""
    family: FamilyParams
    label: str = ""
    sigma_position: SigmaPosition
    nonrigid_source: str


class GeographyPoint(BaseEntity):
    """All admissible families at one (n, d)."""
    n: int
    d: int
    families: Tuple[FamilyEntry, ...]
    marker: Marker
    pukhlikov_strict: bool = Field(..., description="3d + 5n < 12")

    @property
    def labels(self) -> List[str]:
        return [entry.label for entry in self.families if entry.label]


class GeographyDocument(BaseEntity):
    points: Tuple[GeographyPoint, ...]


# ---------------------------------------------------------------- newton


class NewtonRow(BaseEntity):
    monomial: Monomial
    degree: int = Field(..., ge=0)

    @computed_field  # type: ignore[misc]
    @property
    def text(self) -> str:
        return format_monomial(self.monomial, FIBRE_NAMES_4)


class NewtonTable(BaseEntity):
    """Fibre monomials of the cubic with the degrees of their base coefficients."""
    family: FamilyParams
    rows: Tuple[NewtonRow, ...]

    def counts_by_degree(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for row in self.rows:
            counts[row.degree] = counts.get(row.degree, 0) + 1
        return counts

    def texts_by_degree(self) -> Dict[int, List[str]]:
        grouped: Dict[int, List[str]] = {}
        for row in self.rows:
            grouped.setdefault(row.degree, []).append(row.text)
        return grouped


class DivisibilityProfile(BaseEntity):
    """Special-member constraints: u-powers dividing coefficients, and vanishing coefficients."""
    powers: Dict[str, int] = Field(default_factory=dict, description="monomial -> power of u")
    vanishing: Tuple[str, ...] = Field(default_factory=tuple)

    @field_validator("powers")
    @classmethod
    def validate_powers(cls, v: Dict[str, int]) -> Dict[str, int]:
        if any(power < 0 for power in v.values()):
            raise ValueError("divisibility powers must be nonnegative")
        return v

    def power(self, text: str) -> int:
        return self.powers.get(text, 0)

    def vanishes(self, text: str) -> bool:
        return text in self.vanishing


class BaseLocusReport(BaseEntity):
    """Monomial certificates for the base-locus inequalities."""
    family: FamilyParams
    all_divisible_by_z_or_t: bool
    has_x3: bool
    x2_terms: Tuple[str, ...]
    equal_twist_cubic: bool = Field(..., description="x-terms need t and the yz-cubic is constant")
    agrees_with_inequalities: bool


class NewtonMapEntry(BaseEntity):
    source: str
    target: str
    source_degree: int
    target_degree: int
    residual_power: int


class SubstitutionResult(BaseEntity):
    """Outcome of u^w-substitution followed by cancelling u^s."""
    source: FamilyParams
    family: FamilyParams
    weights: Tuple[int, int, int, int]
    cancel: int
    permutation: Tuple[int, int, int, int] = Field(
        ..., description="new coordinate i is old permutation[i]"
    )
    profile: DivisibilityProfile
    newton_map: Tuple[NewtonMapEntry, ...]
    class_audit: bool


# ---------------------------------------------------------------- links


class LinkStep(BaseEntity):
    """One interior wall of the 2-ray game."""
    wall: DivClass
    kind: StepKind
    k_pairing: int
    before: Tuple[str, ...]
    on_wall: Tuple[str, ...]
    after: Tuple[str, ...]


class TerminalWall(BaseEntity):
    """Last wall of the walk, where the game ends in a contraction."""
    ray: DivClass
    sections: Tuple[str, ...]
    section_counts: Tuple[int, ...] = Field(..., description="|H0(k·ray)| for k = 1, 2, ...")
    far_columns: Tuple[str, ...] = Field(..., description="Columns on the terminal ray")
    beyond_columns: Tuple[str, ...] = Field(..., description="Columns strictly past the ray")
    contraction: ContractionKind
    base_dim: Optional[int] = None
    tag: str
    interpretation: Optional[str] = None


class Table2Row(BaseEntity):
    """Curated nonrigid dP3 fibration with its link data."""
    id: str
    family: FamilyParams
    mu: int = Field(..., ge=1)
    extensions: Tuple[DivClass, ...] = Field(default_factory=tuple)
    extension_names: Tuple[str, ...] = Field(default_factory=tuple)
    extensions_reconstructed: bool = False
    general: bool = Field(..., description="General member (True) or special members only")
    first_move: StepKind
    step_narrative: str
    other_model: str
    other_model_uncertain: bool = False
    other_model_scroll: Optional[WeightMatrix] = None
    other_model_class: Optional[DivClass] = None
    singularity: Optional[str] = None
    sigma_override: bool = Field(
        False, description="Nonrigid although -K is not inside <L, D_z>"
    )
    terminal_interpretation: str

    @model_validator(mode="after")
    def validate_row(self) -> "Table2Row":
        if self.family.violation() is not None:
            raise ValueError(f"row {self.id}: family {self.family} is not admissible")
        if len(self.extension_names) != len(self.extensions):
            raise ValueError(f"row {self.id}: one name per extension is required")
        return self

    @property
    def label(self) -> str:
        return self.family.label if self.general else f"[{self.family.label}]"


class ClassicalLink(BaseEntity):
    """Well-known nonrigid family outside the table (e.g. the link to P³)."""
    key: str
    family: FamilyParams
    target: str


class LinkTrace(BaseEntity):
    family: FamilyParams
    scroll: WeightMatrix
    anticanonical: DivClass
    steps: Tuple[LinkStep, ...]
    terminal: TerminalWall
    table2_row: Optional[str] = None


class MuVerification(BaseEntity):
    row_id: str
    expected: DivClass = Field(..., description="-μK - L")
    edge: DivClass
    passed: bool


class FirstWallVerification(BaseEntity):
    row_id: str
    mk_dot_gamma: int
    first_move: StepKind
    traced_kind: StepKind
    passed: bool


class SigmaVerification(BaseEntity):
    row_id: str
    position: SigmaPosition
    override: bool
    passed: bool


class Table2Verification(BaseEntity):
    row: Table2Row
    mu: MuVerification
    first_wall: FirstWallVerification
    sigma: SigmaVerification

    @property
    def passed(self) -> bool:
        return self.mu.passed and self.first_wall.passed and self.sigma.passed


# ---------------------------------------------------------------- detcat


class CoverSpec(BaseEntity):
    """2-to-1 cover of a smooth plane curve of degree d, through λ with λ² = O(-e)."""
    d: int = Field(..., ge=1)
    e: int = Field(0, ge=0, le=1)
    p_overrides: Dict[int, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_parity(self) -> "CoverSpec":
        if (self.e * self.d) % 2:
            raise ValueError("e·d must be even so that λ has integral degree")
        if any(value < 0 for value in self.p_overrides.values()):
            raise ValueError("h0 overrides must be nonnegative")
        return self

    @property
    def genus(self) -> int:
        return (self.d - 1) * (self.d - 2) // 2

    def lambda_degree(self, n: int) -> int:
        return self.d * n - self.e * self.d // 2

    def chi(self, n: int) -> int:
        return self.lambda_degree(n) + 1 - self.genus

    def dual_index(self, n: int) -> int:
        return self.d - 3 + self.e - n


class DetFormat(BaseEntity):
    """Symmetric determinantal format: diagonal degrees and derived numerology."""
    d: int
    e: int = Field(0, ge=0, le=1)
    diag_degrees: Tuple[int, ...]

    @model_validator(mode="after")
    def validate_partition(self) -> "DetFormat":
        if any(part <= 0 for part in self.diag_degrees):
            raise ValueError("partition parts must be positive")
        if sum(self.diag_degrees) != self.d:
            raise ValueError(f"partition {list(self.diag_degrees)} does not sum to {self.d}")
        if any((part - self.d - self.e) % 2 for part in self.diag_degrees):
            raise ValueError("every diagonal degree must be congruent to d + e mod 2")
        return self

    @computed_field  # type: ignore[misc]
    @property
    def gen_degrees(self) -> Tuple[int, ...]:
        return tuple((self.d + self.e - part) // 2 for part in self.diag_degrees)

    @computed_field  # type: ignore[misc]
    @property
    def rel_degrees(self) -> Tuple[int, ...]:
        return tuple((self.d + self.e + part) // 2 for part in self.diag_degrees)

    @computed_field  # type: ignore[misc]
    @property
    def entry_degrees(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            tuple((di + dj) // 2 for dj in self.diag_degrees) for di in self.diag_degrees
        )

    @property
    def size(self) -> int:
        return len(self.diag_degrees)


class ModuliCount(BaseEntity):
    params: int
    gauge: int
    family_dim: int
    all_curves_dim: int

    @property
    def codimension(self) -> int:
        return self.all_curves_dim - self.family_dim


class ConicBundleModel(BaseEntity):
    """Conic bundle over P² with a degree-7 discriminant, by h0(λ(2))."""
    h0_lambda2: int
    partition: Tuple[int, ...]
    model_over_p2: str
    link: str
    other_model: str
    other_model_uncertain: bool = False


class ThetaReport(BaseEntity):
    spec: Optional[CoverSpec] = None
    format: DetFormat
    rr_table: Optional[Tuple[int, ...]] = None
    hilbert: Tuple[int, ...]
    moduli: ModuliCount
    conic_bundle: Optional[ConicBundleModel] = None


# ---------------------------------------------------------------- cli documents


class FamilyReport(BaseEntity):
    family: FamilyParams
    admissibility: Admissibility
    anticanonical: Optional[DivClass] = None
    mk_dot_gamma: Optional[int] = None
    k2: Optional[K2Report] = None
    sigma_position: Optional[SigmaPosition] = None
    newton_counts: Dict[int, int] = Field(default_factory=dict)


class NewtonReport(BaseEntity):
    table: NewtonTable
    val: int
    certificates: BaseLocusReport
    profile: Optional[DivisibilityProfile] = None
    substitution: Optional[SubstitutionResult] = None


class ChowReport(BaseEntity):
    scroll: StandardScroll
    expression: str
    value: Optional[int] = None
    normal_form: Optional[str] = None


class Table2Document(BaseEntity):
    rows: Tuple[Table2Row, ...]
    verifications: Tuple[Table2Verification, ...] = Field(default_factory=tuple)

