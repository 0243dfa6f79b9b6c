"""
Geography of dP3 fibrations X ∈ |3M + nL| ⊂ F(0,a,b,c).

Families are grouped by (n, d) with d = a + b + c. Each point gets a marker:
bullet when a family at the point is a known nonrigid one, circle when some
family puts -K on the boundary of the cone <L, D_z>, dot otherwise.
"""

from typing import Iterator, List, Sequence
from xml.sax.saxutils import escape

from aws_lambda_powertools import Logger

from dp3geo import curated
from dp3geo.shared.constants import (
    DEFAULT_D_MAX,
    DEFAULT_N_MAX,
    DEFAULT_N_MIN,
    FORMAT_JSON,
    FORMAT_SVG,
    FORMAT_TSV,
    SERVICE_NAME,
    SOURCE_CLASSICAL_PREFIX,
    SOURCE_NONE,
    SOURCE_TABLE2_PREFIX,
    SVG_CELL,
    SVG_MARGIN,
    TSV_COLUMNS,
)
from dp3geo.shared.exceptions import UnknownFormatError
from dp3geo.shared.models import (
    Admissibility,
    FamilyEntry,
    FamilyParams,
    GeographyDocument,
    GeographyPoint,
    Marker,
    SigmaPosition,
)
from dp3geo.shared.utils import dump_document, sign
from dp3geo.shared.validators import validate_family

logger = Logger(service=SERVICE_NAME, child=True)

_LEGEND = (
    "• known nonrigid   ∘ -K on the boundary of <L, D_z>   · other families   --- 3d + 5n = 12"
)


def admissible(n: int, a: int, b: int, c: int) -> Admissibility:
    """Check the inequalities a family must satisfy; the reason names the broken clause."""
    reason = validate_family(n, a, b, c).violation()
    return Admissibility(admissible=reason is None, reason=reason)


def families_at(n: int, d: int) -> List[FamilyParams]:
    """Admissible families with the given n and d, ordered by (a, b, c)."""
    found = []
    for a in range(d // 3 + 1):
        for b in range(a, (d - a) // 2 + 1):
            fam = FamilyParams(n=n, a=a, b=b, c=d - a - b)
            if fam.violation() is None:
                found.append(fam)
    return found


def sigma_position(fam: FamilyParams) -> SigmaPosition:
    """Position of -K relative to σ = <L, D_z>, from the sign of 2 - a - c - n."""
    return {
        1: SigmaPosition.INTERIOR,
        0: SigmaPosition.BOUNDARY,
        -1: SigmaPosition.OUTSIDE,
    }[sign(2 - fam.a - fam.c - fam.n)]


def star_necessary(fam: FamilyParams) -> bool:
    """Necessary inequality for condition (∗): 2 - a < c + n."""
    return 2 - fam.a < fam.c + fam.n


def k_trivial_bad_link(fam: FamilyParams) -> bool:
    """Families tagged (abc): every member has a K-trivial bad link.

    These sit on the σ boundary with n < 0, and have b = c when a = 1.
    """
    return (
        sigma_position(fam) == SigmaPosition.BOUNDARY
        and fam.n < 0
        and (fam.a >= 2 or fam.b == fam.c)
    )


def family_entry(fam: FamilyParams) -> FamilyEntry:
    """Label, σ-position and nonrigid source of one family."""
    position = sigma_position(fam)
    rows = curated.rows_for(fam)
    classical = curated.classical_for(fam)
    if rows:
        label = rows[0].label
        source = SOURCE_TABLE2_PREFIX + "/".join(row.id for row in rows)
    elif classical is not None:
        label, source = "", SOURCE_CLASSICAL_PREFIX + classical.key
    elif k_trivial_bad_link(fam):
        label, source = f"({fam.label})", SOURCE_NONE
    else:
        label, source = "", SOURCE_NONE
    return FamilyEntry(family=fam, label=label, sigma_position=position, nonrigid_source=source)


def _marker(entries: Sequence[FamilyEntry]) -> Marker:
    if any(entry.nonrigid_source != SOURCE_NONE for entry in entries):
        return Marker.BULLET
    if any(
        entry.sigma_position == SigmaPosition.BOUNDARY and entry.family.c > 0 for entry in entries
    ):
        return Marker.CIRCLE
    return Marker.DOT


def point(n: int, d: int) -> GeographyPoint:
    """The geography point (n, d); its family list may be empty."""
    entries = tuple(family_entry(fam) for fam in families_at(n, d))
    return GeographyPoint(
        n=n,
        d=d,
        families=entries,
        marker=_marker(entries),
        pukhlikov_strict=3 * d + 5 * n < 12,
    )


def enumerate_geography(
    n_min: int = DEFAULT_N_MIN, n_max: int = DEFAULT_N_MAX, d_max: int = DEFAULT_D_MAX
) -> List[GeographyPoint]:
    """All (n, d) in the window carrying at least one admissible family, n-major."""
    points = [
        p
        for n in range(n_min, n_max + 1)
        for d in range(d_max + 1)
        if (p := point(n, d)).families
    ]
    logger.debug(
        "Geography enumerated",
        extra={"n_min": n_min, "n_max": n_max, "d_max": d_max, "points": len(points)},
    )
    return points


# ---------------------------------------------------------------- rendering


def _tsv_rows(points: Sequence[GeographyPoint]) -> Iterator[str]:
    yield "\t".join(TSV_COLUMNS)
    for p in points:
        for entry in p.families:
            fam = entry.family
            yield "\t".join(
                [
                    str(fam.n),
                    str(p.d),
                    str(fam.a),
                    str(fam.b),
                    str(fam.c),
                    p.marker,
                    entry.label,
                    entry.sigma_position,
                    "true" if p.pukhlikov_strict else "false",
                    entry.nonrigid_source,
                ]
            )


def _svg(points: Sequence[GeographyPoint], n_min: int, n_max: int, d_max: int) -> str:
    width = 2 * SVG_MARGIN + (n_max - n_min) * SVG_CELL
    height = 2 * SVG_MARGIN + d_max * SVG_CELL

    def x(n: int) -> int:
        return SVG_MARGIN + (n - n_min) * SVG_CELL

    def y(d: int) -> int:
        return SVG_MARGIN + (d_max - d) * SVG_CELL

    # 3d + 5n = 12, in units of a third of a cell
    def line_y(n: int) -> int:
        return y(0) - (SVG_CELL // 3) * (12 - 5 * n)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}"'
        f' viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        '<g stroke="black" stroke-width="1">',
        f'<line x1="{x(n_min)}" y1="{y(0)}" x2="{x(n_max)}" y2="{y(0)}"/>',
    ]
    if n_min <= 0 <= n_max:
        out.append(f'<line x1="{x(0)}" y1="{y(0)}" x2="{x(0)}" y2="{y(d_max)}"/>')
    out.append("</g>")
    out.append(
        f'<line x1="{x(n_min)}" y1="{line_y(n_min)}" x2="{x(n_max)}" y2="{line_y(n_max)}"'
        ' stroke="gray" stroke-dasharray="6,4"/>'
    )

    out.append('<g font-family="sans-serif" font-size="10" text-anchor="middle">')
    for n in range(n_min, n_max + 1):
        out.append(f'<text x="{x(n)}" y="{y(0) + 18}">{n}</text>')
    for d in range(0, d_max + 1, 2):
        out.append(f'<text x="{x(n_min) - 18}" y="{y(d) + 4}">{d}</text>')
    out.append(f'<text x="{x(n_max) + 20}" y="{y(0) + 4}">n</text>')
    out.append(f'<text x="{x(n_min) - 18}" y="{y(d_max) - 14}">d</text>')
    out.append("</g>")

    out.append('<g font-family="sans-serif" font-size="9">')
    for p in points:
        cx, cy = x(p.n), y(p.d)
        if p.marker == Marker.BULLET:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="black"/>')
        elif p.marker == Marker.CIRCLE:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="white" stroke="black"/>')
        else:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="2" fill="black"/>')
        if p.labels:
            out.append(f'<text x="{cx + 7}" y="{cy - 6}">{escape(" ".join(p.labels))}</text>')
    out.append("</g>")

    legend_y = height - SVG_MARGIN // 3
    out.append(
        f'<text x="{SVG_MARGIN}" y="{legend_y}" font-family="sans-serif" font-size="10">'
        f"{escape(_LEGEND)}"
        "</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(
    points: Sequence[GeographyPoint],
    fmt: str,
    n_min: int = DEFAULT_N_MIN,
    n_max: int = DEFAULT_N_MAX,
    d_max: int = DEFAULT_D_MAX,
) -> str:
    """Render points as TSV (one row per family), JSON or an SVG figure of the window."""
    if fmt == FORMAT_TSV:
        return "\n".join(_tsv_rows(points)) + "\n"
    if fmt == FORMAT_JSON:
        return dump_document(GeographyDocument(points=tuple(points)))
    if fmt == FORMAT_SVG:
        return _svg(points, n_min, n_max, d_max)
    raise UnknownFormatError(f"Unknown geography format '{fmt}' (expected tsv, svg or json)")
