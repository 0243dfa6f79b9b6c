"""Curated datasets: the nonrigid dP3 fibrations, classical links and degree-7 conic bundles."""

from typing import Dict, Optional, Tuple

from dp3geo.shared.models import (
    ClassicalLink,
    ConicBundleModel,
    DivClass,
    FamilyParams,
    StepKind,
    Table2Row,
    WeightMatrix,
)

_SCROLL_NAMES = ["u", "v", "x", "y", "z", "t"]


def _family(n: int, a: int, b: int, c: int) -> FamilyParams:
    return FamilyParams(n=n, a=a, b=b, c=c)


TABLE2: Tuple[Table2Row, ...] = (
    Table2Row(
        id="1",
        family=_family(1, 0, 0, 1),
        mu=3,
        extensions=(DivClass(m=3, l=-1),),
        extension_names=("ξ",),
        extensions_reconstructed=True,
        general=True,
        first_move=StepKind.FLOP,
        step_narrative="9-flop then (2,0) to 1/2(1,1,1) singularity",
        other_model="Y′_{3,3} ⊂ P⁵(1⁵,2), general in its family",
        sigma_override=True,
        terminal_interpretation="(2,0) contraction to a 1/2(1,1,1) point",
    ),
    Table2Row(
        id="2",
        family=_family(0, 0, 1, 1),
        mu=1,
        general=True,
        first_move=StepKind.FLOP,
        step_narrative="3-flop",
        other_model="dP3 fibration, same numerology as X",
        terminal_interpretation="dP3 fibration over P¹",
    ),
    Table2Row(
        id="3",
        family=_family(-1, 1, 1, 1),
        mu=1,
        general=True,
        first_move=StepKind.FLOP,
        step_narrative="flop",
        other_model="conic bundle over P² with deg Δ = 7",
        terminal_interpretation="conic bundle over P²",
    ),
    Table2Row(
        id="4",
        family=_family(-2, 1, 1, 2),
        mu=1,
        general=True,
        first_move=StepKind.FLOP,
        step_narrative="flop then (2,1) to linear P¹ ≅ ℓ ⊂ Y′",
        other_model="Y′₄ ⊂ P⁴(1⁴,2)",
        terminal_interpretation="(2,1) contraction to a line ℓ ⊂ Y′",
    ),
    Table2Row(
        id="5",
        family=_family(-2, 1, 2, 2),
        mu=1,
        general=True,
        first_move=StepKind.ANTIFLIP,
        step_narrative="Francia antiflip then flop",
        other_model="dP2 fibration with 1/2(1,1,1) on 1 fibre",
        other_model_scroll=WeightMatrix.from_display_rows(
            [[0, 0, 1, 2, 1, 1], [1, 1, 0, -1, -1, -1]], _SCROLL_NAMES
        ),
        other_model_class=DivClass(m=4, l=-1),
        terminal_interpretation="dP2 fibration over P¹",
    ),
    Table2Row(
        id="6",
        family=_family(-3, 1, 2, 3),
        mu=1,
        general=True,
        first_move=StepKind.ANTIFLIP,
        step_narrative="Francia antiflip then (2,0) to P ∈ Y′",
        other_model="Y′₆ ⊂ P⁴(1³,2,3), P a cD4 singularity",
        terminal_interpretation="(2,0) contraction to a cD4 point P ∈ Y′",
    ),
    Table2Row(
        id="7",
        family=_family(-3, 1, 3, 3),
        mu=1,
        general=True,
        first_move=StepKind.ANTIFLIP,
        step_narrative="toric antiflip (1,1,-1,-3)",
        other_model="dP1 fibration with 1/3(1,1,2) on 1 fibre",
        other_model_scroll=WeightMatrix.from_display_rows(
            [[0, 0, 2, 3, 1, 1], [1, 1, -1, -2, -1, -1]], _SCROLL_NAMES
        ),
        other_model_class=DivClass(m=6, l=-3),
        terminal_interpretation="dP1 fibration over P¹",
    ),
    Table2Row(
        id="8a",
        family=_family(-1, 1, 1, 2),
        mu=5,
        extensions=(DivClass(m=3, l=-3), DivClass(m=5, l=-6)),
        extension_names=("ξ", "η"),
        general=False,
        first_move=StepKind.ANTIFLIP,
        step_narrative="(1,1,-1,-1,-3), 7-flop, (2,0)",
        other_model="Y′ ⊂ P(1⁴,2,3,4) general, P = 1/4(1,1,3)",
        singularity="xy=zt",
        terminal_interpretation="(2,0) contraction to a 1/4(1,1,3) point",
    ),
    Table2Row(
        id="8b",
        family=_family(-1, 1, 1, 2),
        mu=3,
        extensions=(DivClass(m=3, l=-4),),
        extension_names=("η",),
        general=False,
        first_move=StepKind.ANTIFLIP,
        step_narrative="(1,1,-1,-1,-4), 3-flop, (2,0)",
        other_model="Y′ ⊂ P⁵(1⁴,2²)",
        other_model_uncertain=True,
        singularity="xy=z³+t³",
        terminal_interpretation="(2,0) contraction to a point of index 2",
    ),
    Table2Row(
        id="9",
        family=_family(-2, 1, 1, 3),
        mu=3,
        extensions=(DivClass(m=3, l=-4),),
        extension_names=("ξ",),
        extensions_reconstructed=True,
        general=False,
        first_move=StepKind.ANTIFLIP,
        step_narrative="(1,1,-1,-1,-4), 3-flop, (2,0)",
        other_model="Y′ ⊂ P⁵(1²,2²,3,5)",
        other_model_uncertain=True,
        singularity="xy=z³+t³",
        terminal_interpretation="(2,0) contraction to a point of index 5",
    ),
    Table2Row(
        id="10",
        family=_family(-2, 1, 2, 3),
        mu=3,
        extensions=(DivClass(m=3, l=-7),),
        extension_names=("ξ",),
        extensions_reconstructed=True,
        general=False,
        first_move=StepKind.ANTIFLIP,
        step_narrative="(1,1,-1,-2,-7), (2,0)",
        other_model="Y′ ⊂ P⁵(1²,2³,3)",
        other_model_uncertain=True,
        singularity="xy=z³+t⁶",
        terminal_interpretation="(2,0) contraction to a point of index 2",
    ),
)

CLASSICAL_LINKS: Tuple[ClassicalLink, ...] = (
    ClassicalLink(key="P3", family=_family(1, 0, 0, 0), target="P³ (pencil of cubic surfaces)"),
    ClassicalLink(
        key="cubic3fold",
        family=_family(0, 0, 0, 1),
        target="cubic 3-fold Y₃ ⊂ P⁴ (pencil of P³s through a plane)",
    ),
)

CONIC_BUNDLES: Tuple[ConicBundleModel, ...] = (
    ConicBundleModel(
        h0_lambda2=0,
        partition=(1, 1, 1, 1, 1, 1, 1),
        model_over_p2="X_{2M+L,M+L,M+L} ⊂ P² × P⁴",
        link="flop and (2,1)-contraction",
        other_model="Y_{2,2,2} ⊂ P⁶",
    ),
    ConicBundleModel(
        h0_lambda2=1,
        partition=(3, 1, 1, 1, 1),
        model_over_p2="X_{2M+L,M+L} ⊂ F(1,0³)",
        link="flop and (2,0)-contraction",
        other_model="Y_{2,3,3,3,3} ⊂ P(1⁶,2)",
    ),
    ConicBundleModel(
        h0_lambda2=2,
        partition=(3, 3, 1),
        model_over_p2="X_{2M+L} ⊂ F(1,1,0)",
        link="flop",
        other_model="Y_{3M−L} ⊂ F(1³,0)",
    ),
    ConicBundleModel(
        h0_lambda2=3,
        partition=(5, 1, 1),
        model_over_p2="X_{2M+L} ⊂ F(2,0,0)",
        link="bad K-trivial (2,1)-contraction",
        other_model="X rigid",
        other_model_uncertain=True,
    ),
)


def table2_row(row_id: str) -> Optional[Table2Row]:
    return next((row for row in TABLE2 if row.id == row_id), None)


def rows_for(fam: FamilyParams) -> Tuple[Table2Row, ...]:
    """Table rows of a family (8a and 8b share one)."""
    return tuple(row for row in TABLE2 if row.family == fam)


def classical_for(fam: FamilyParams) -> Optional[ClassicalLink]:
    return next((link for link in CLASSICAL_LINKS if link.family == fam), None)


def conic_bundle_by_h0() -> Dict[int, ConicBundleModel]:
    return {model.h0_lambda2: model for model in CONIC_BUNDLES}
