"""
Ambient 2-ray games of dP3 fibrations.

The game walks the chambers of the family's scroll (possibly extended by
unprojection variables) from the L edge. Each interior wall is classified by
where -K_X sits relative to it; the last wall ends the game with a
contraction, guessed from the columns on and past the terminal ray.
"""

from typing import List, Optional, Sequence, Tuple

from aws_lambda_powertools import Logger

from dp3geo import curated
from dp3geo.chow import anticanonical_on_X, family_scroll, mk_dot_gamma
from dp3geo.geography import sigma_position
from dp3geo.scroll import extend, section_count, section_texts, standard_to_matrix, walk
from dp3geo.shared.constants import (
    AMBIENT_HEURISTIC_TAG,
    EXTENSION_NAMES,
    SERVICE_NAME,
    TERMINAL_SECTION_MULTIPLES,
)
from dp3geo.shared.exceptions import InadmissibleFamilyError
from dp3geo.shared.models import (
    L_CLASS,
    M_CLASS,
    ContractionKind,
    DivClass,
    FamilyParams,
    FirstWallVerification,
    LinkStep,
    LinkTrace,
    MuVerification,
    SigmaPosition,
    SigmaVerification,
    StepKind,
    Table2Document,
    Table2Row,
    Table2Verification,
    TerminalWall,
    WeightMatrix,
)
from dp3geo.shared.utils import cross, primitive, sign, walk_compare

logger = Logger(service=SERVICE_NAME, child=True)

Extension = Tuple[DivClass, str]


def _kind(wall: DivClass, minus_k: DivClass) -> StepKind:
    turn = cross(wall.vector, minus_k.vector)
    if turn < 0:
        return StepKind.ANTIFLIP
    if turn == 0:
        return StepKind.FLOP
    return StepKind.FLIP


Names = Tuple[str, ...]


def _split(mat: WeightMatrix, ray: DivClass) -> Tuple[Names, Names, Names]:
    """Column names strictly before, on, and strictly after a ray in walk order."""
    blocks: Tuple[List[str], List[str], List[str]] = ([], [], [])
    for name, vector in zip(mat.names, mat.vectors):
        position = walk_compare(primitive(vector), ray.vector)
        # -1: the ray is clockwise of the column, so the column comes first
        blocks[{-1: 0, 0: 1, 1: 2}[position]].append(name)
    return tuple(blocks[0]), tuple(blocks[1]), tuple(blocks[2])


def family_matrix(fam: FamilyParams, extensions: Sequence[Extension] = ()) -> WeightMatrix:
    """Weight matrix of F(0,a,b,c) over P¹, extended by the given variables in order."""
    mat = standard_to_matrix(family_scroll(fam))
    for index, (cls, name) in enumerate(extensions):
        mat = extend(mat, cls, name or EXTENSION_NAMES[index % len(EXTENSION_NAMES)])
    return mat


def mobile_edge(mat: WeightMatrix) -> DivClass:
    """Far edge of the useful cone: the ray of the second-to-last column."""
    return walk(mat).terminal_wall


def _terminal(mat: WeightMatrix, ray: DivClass, interpretation: Optional[str]) -> TerminalWall:
    _, far, beyond = _split(mat, ray)
    if beyond:
        contraction, base_dim = ContractionKind.DIVISORIAL, None
    elif len(far) >= 2:
        contraction, base_dim = ContractionKind.FIBRATION, len(far) - 1
    else:
        contraction, base_dim = ContractionKind.DIVISORIAL, None
    return TerminalWall(
        ray=ray,
        sections=tuple(section_texts(mat, ray)),
        section_counts=tuple(
            section_count(mat, ray.scale(k)) for k in range(1, TERMINAL_SECTION_MULTIPLES + 1)
        ),
        far_columns=far,
        beyond_columns=beyond,
        contraction=contraction,
        base_dim=base_dim,
        tag=AMBIENT_HEURISTIC_TAG,
        interpretation=interpretation,
    )


def _matching_row(fam: FamilyParams, extensions: Sequence[Extension]) -> Optional[Table2Row]:
    classes = tuple(cls for cls, _ in extensions)
    rows = curated.rows_for(fam)
    return next((row for row in rows if row.extensions == classes), None)


def trace(fam: FamilyParams, extensions: Sequence[Extension] = ()) -> LinkTrace:
    """Run the ambient 2-ray game of a family."""
    reason = fam.violation()
    if reason is not None:
        raise InadmissibleFamilyError(f"Family {fam} is not admissible: {reason}")

    mat = family_matrix(fam, extensions)
    chamber_walk = walk(mat)
    minus_k = anticanonical_on_X(fam)

    steps = []
    for index, wall in enumerate(chamber_walk.walls):
        if index == 0 and wall == M_CLASS:
            pairing = mk_dot_gamma(fam)
        else:
            pairing = sign(cross(wall.vector, minus_k.vector))
        before, on_wall, after = _split(mat, wall)
        steps.append(
            LinkStep(
                wall=wall,
                kind=_kind(wall, minus_k),
                k_pairing=pairing,
                before=before,
                on_wall=on_wall,
                after=after,
            )
        )

    row = _matching_row(fam, extensions)
    interpretation = row.terminal_interpretation if row else None
    terminal = _terminal(mat, chamber_walk.terminal_wall, interpretation)
    logger.debug(
        "Link traced",
        extra={"family": str(fam), "walls": len(steps), "terminal": str(terminal.ray)},
    )
    return LinkTrace(
        family=fam,
        scroll=mat,
        anticanonical=minus_k,
        steps=tuple(steps),
        terminal=terminal,
        table2_row=row.id if row else None,
    )


def row_extensions(row: Table2Row) -> List[Extension]:
    return list(zip(row.extensions, row.extension_names))


def first_move(row: Table2Row) -> StepKind:
    """Kind of the first wall of the row's (extended) scroll."""
    steps = trace(row.family, row_extensions(row)).steps
    return StepKind(steps[0].kind) if steps else StepKind.TERMINAL


def verify_mu(row: Table2Row) -> MuVerification:
    """Check that -μK - L spans the far edge of the row's useful cone."""
    expected = anticanonical_on_X(row.family).scale(row.mu) - L_CLASS
    edge = mobile_edge(family_matrix(row.family, row_extensions(row)))
    return MuVerification(
        row_id=row.id, expected=expected, edge=edge, passed=expected.ray() == edge
    )


def verify_first_wall(row: Table2Row) -> FirstWallVerification:
    """The first move is a flop exactly when -K·Γ = 0 and an antiflip when -K·Γ < 0."""
    pairing = mk_dot_gamma(row.family)
    traced = first_move(row)
    expected = {StepKind.FLOP: pairing == 0, StepKind.ANTIFLIP: pairing < 0}
    numeric = expected.get(StepKind(row.first_move), False)
    return FirstWallVerification(
        row_id=row.id,
        mk_dot_gamma=pairing,
        first_move=row.first_move,
        traced_kind=traced,
        passed=numeric and traced == row.first_move,
    )


def verify_sigma(row: Table2Row) -> SigmaVerification:
    """General members have -K inside <L, D_z> unless the row is curated as an exception."""
    position = sigma_position(row.family)
    return SigmaVerification(
        row_id=row.id,
        position=position,
        override=row.sigma_override,
        passed=not row.general or position == SigmaPosition.INTERIOR or row.sigma_override,
    )


def table2() -> Tuple[Table2Row, ...]:
    """The curated nonrigid dP3 fibrations."""
    return curated.TABLE2


def table2_document(verify: bool = False) -> Table2Document:
    rows = table2()
    if not verify:
        return Table2Document(rows=rows)
    verifications = tuple(
        Table2Verification(
            row=row,
            mu=verify_mu(row),
            first_wall=verify_first_wall(row),
            sigma=verify_sigma(row),
        )
        for row in rows
    )
    failed = [v.row.id for v in verifications if not v.passed]
    if failed:
        logger.warning("Table rows failed verification", extra={"rows": failed})
    return Table2Document(rows=rows, verifications=verifications)


def trace_report(link: LinkTrace) -> str:
    """Indented text report of a trace."""
    lines = [
        f"family {link.family} on scroll {', '.join(link.scroll.names)}",
        f"  weights M: {link.scroll.display_rows()[0]}",
        f"  weights L: {link.scroll.display_rows()[1]}",
        f"  -K = {link.anticanonical}",
    ]
    for number, step in enumerate(link.steps, start=1):
        lines.append(f"  wall {number}: {step.wall}  {step.kind} (pairing {step.k_pairing})")
        blocks = " | ".join(
            f"({', '.join(block)})" for block in (step.before, step.on_wall, step.after)
        )
        lines.append(f"    blocks: {blocks}")
    end = link.terminal
    target = f"fibration over P^{end.base_dim}" if end.base_dim else "divisorial contraction"
    lines.append(f"  terminal wall: {end.ray}  {target} [{end.tag}]")
    lines.append(f"    far columns: {', '.join(end.far_columns) or '-'}")
    lines.append(f"    beyond: {', '.join(end.beyond_columns) or '-'}")
    counts = ", ".join(str(count) for count in end.section_counts)
    lines.append(f"    sections: {counts} for multiples 1..{len(end.section_counts)}")
    if end.interpretation:
        lines.append(f"    on X: {end.interpretation} (row {link.table2_row})")
    return "\n".join(lines) + "\n"
