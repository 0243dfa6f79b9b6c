"""Command-line front end: one subcommand per toolkit area, documents on stdout."""

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, NoReturn, Optional, Sequence, Tuple, Type

from aws_lambda_powertools import Logger
from pydantic import BaseModel

from dp3geo import chow, detcat, geography, links, newton
from dp3geo.shared.config import Config
from dp3geo.shared.constants import (
    DEFAULT_D_MAX,
    DEFAULT_N_MAX,
    DEFAULT_N_MIN,
    FORMAT_JSON,
    FORMAT_TEXT,
    FORMAT_TSV,
    GEOGRAPHY_FORMATS,
    REPORT_FORMATS,
    SERVICE_NAME,
)
from dp3geo.shared.exceptions import Dp3GeoError, ValidationError
from dp3geo.shared.models import (
    Admissibility,
    ChowReport,
    FamilyParams,
    FamilyReport,
    GeographyDocument,
    LinkTrace,
    NewtonReport,
    StandardScroll,
    Table2Document,
    ThetaReport,
)
from dp3geo.shared.utils import dump_document
from dp3geo.shared.validators import (
    build,
    load_profile,
    parse_class,
    parse_int_list,
    parse_overrides,
    validate_cover,
    validate_family,
)

logger = Logger(service=SERVICE_NAME, child=True)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

Document = Tuple[str, str]

SCHEMAS: Dict[str, Type[BaseModel]] = {
    "geography": GeographyDocument,
    "family": FamilyReport,
    "newton": NewtonReport,
    "chow": ChowReport,
    "link": LinkTrace,
    "table2": Table2Document,
    "theta": ThetaReport,
}


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit status 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def _family_args(args: argparse.Namespace) -> FamilyParams:
    return validate_family(args.n, args.a, args.b, args.c)


def _render(args: argparse.Namespace, document: BaseModel, text: Callable[[], str]) -> Document:
    if args.format == FORMAT_JSON:
        return dump_document(document), "json"
    return text(), "txt"


# ---------------------------------------------------------------- handlers


def run_geography(args: argparse.Namespace) -> Document:
    if args.n_min > args.n_max or args.d_max < 0:
        raise ValidationError(
            f"Empty window: n in [{args.n_min}, {args.n_max}], d in [0, {args.d_max}]"
        )
    points = geography.enumerate_geography(args.n_min, args.n_max, args.d_max)
    return geography.render(points, args.format, args.n_min, args.n_max, args.d_max), args.format


def family_report(fam: FamilyParams) -> FamilyReport:
    admissibility = geography.admissible(fam.n, fam.a, fam.b, fam.c)
    if not admissibility.admissible:
        return FamilyReport(family=fam, admissibility=admissibility)
    return FamilyReport(
        family=fam,
        admissibility=admissibility,
        anticanonical=chow.anticanonical_on_X(fam),
        mk_dot_gamma=chow.mk_dot_gamma(fam),
        k2=chow.kx_squared(fam),
        sigma_position=geography.sigma_position(fam),
        newton_counts=newton.newton_table(fam).counts_by_degree(),
    )


def _family_text(report: FamilyReport) -> str:
    verdict = _verdict(report.admissibility)
    lines = [f"family {report.family}", f"  admissible: {verdict}"]
    if report.k2 is not None:
        strict = "interior" if report.k2.interior else "not interior"
        lines += [
            f"  -K = {report.anticanonical}",
            f"  -K·Γ = {report.mk_dot_gamma}",
            f"  K² = {report.k2.cycle} ({strict}, {report.k2.certainty})",
            f"  σ-position: {report.sigma_position}",
            "  Newton counts: "
            + " ".join(f"{deg}:{count}" for deg, count in sorted(report.newton_counts.items())),
        ]
    return "\n".join(lines) + "\n"


def _verdict(admissibility: Admissibility) -> str:
    return "yes" if admissibility.admissible else f"no (breaks {admissibility.reason})"


def run_family(args: argparse.Namespace) -> Document:
    report = family_report(_family_args(args))
    return _render(args, report, lambda: _family_text(report))


def _newton_text(report: NewtonReport) -> str:
    lines = [f"Newton table of {report.table.family}"]
    for degree, texts in report.table.texts_by_degree().items():
        lines.append(f"  {degree}: {', '.join(texts)}")
    lines.append(f"  val(F) = {report.val}")
    certs = report.certificates
    lines.append(
        f"  certificates: z|t divides all = {certs.all_divisible_by_z_or_t}, x³ = {certs.has_x3},"
        f" x²-terms = {', '.join(certs.x2_terms) or '-'}, agree = {certs.agrees_with_inequalities}"
    )
    result = report.substitution
    if result is not None:
        weights = ",".join(str(w) for w in result.weights)
        lines.append(
            f"  substitution u^({weights}), cancel u^{result.cancel}:"
            f" {result.source} -> {result.family}"
        )
        for entry in result.newton_map:
            residual = f"  u^{entry.residual_power}" if entry.residual_power else ""
            lines.append(
                f"    {entry.source} ({entry.source_degree}) -> {entry.target}"
                f" ({entry.target_degree}){residual}"
            )
    return "\n".join(lines) + "\n"


def run_newton(args: argparse.Namespace) -> Document:
    fam = _family_args(args)
    profile = load_profile(args.profile) if args.profile else None
    if args.cancel is not None and args.substitute is None:
        raise ValidationError("--cancel needs --substitute")

    table = newton.newton_table(fam)
    substitution = None
    if args.substitute is not None:
        weights = parse_int_list(args.substitute, "substitution weights")
        substitution = newton.weighted_substitution(fam, weights, args.cancel or 0, profile)
    report = NewtonReport(
        table=table,
        val=newton.val(table, profile),
        certificates=newton.base_locus_certificates(fam),
        profile=profile,
        substitution=substitution,
    )
    return _render(args, report, lambda: _newton_text(report))


def run_chow(args: argparse.Namespace) -> Document:
    twists = parse_int_list(args.scroll, "scroll twists")
    scroll = build(StandardScroll, "scroll", base_dim=args.base_dim, twists=tuple(twists))
    result = chow.reduce(scroll, chow.parse_expression(args.expr))
    if isinstance(result, int):
        report = ChowReport(scroll=scroll, expression=args.expr, value=result)
        line = f"{scroll}: {args.expr} = {result}\n"
    else:
        report = ChowReport(scroll=scroll, expression=args.expr, normal_form=str(result))
        line = f"{scroll}: {args.expr} ≡ {result}\n"
    return _render(args, report, lambda: line)


def run_link(args: argparse.Namespace) -> Document:
    extensions = [parse_class(text) for text in args.extend]
    link = links.trace(_family_args(args), extensions)
    return _render(args, link, lambda: links.trace_report(link))


def _table2_text(document: Table2Document) -> str:
    lines = []
    for row in document.rows:
        extensions = ", ".join(
            f"{name}={cls}" for cls, name in zip(row.extensions, row.extension_names)
        )
        other = row.other_model + (" ?" if row.other_model_uncertain else "")
        lines.append(
            f"{row.id:>3}  {str(row.family):<12} {row.label:<6} μ={row.mu}"
            f"  {row.first_move:<8} {extensions or '-'}  {other}"
        )
    for check in document.verifications:
        mu = "ok" if check.mu.passed else f"FAIL (edge {check.mu.edge})"
        wall = "ok" if check.first_wall.passed else f"FAIL (traced {check.first_wall.traced_kind})"
        sigma = "ok" if check.sigma.passed else f"FAIL ({check.sigma.position})"
        lines.append(f"verify {check.row.id}: μ {mu}; first wall {wall}; σ {sigma}")
    return "\n".join(lines) + "\n"


def run_table2(args: argparse.Namespace) -> Document:
    document = links.table2_document(verify=args.verify)
    return _render(args, document, lambda: _table2_text(document))


def _numbers(values: Sequence[int]) -> str:
    return " ".join(str(value) for value in values)


def _theta_text(report: ThetaReport) -> str:
    fmt = report.format
    lines = [f"theta d={fmt.d} e={fmt.e}"]
    if report.rr_table is not None:
        lines.append(f"  h0(λ(n)), n = 0..{len(report.rr_table) - 1}: {_numbers(report.rr_table)}")
    lines += [
        f"  partition: {'+'.join(str(part) for part in fmt.diag_degrees)}",
        f"  generator degrees: {_numbers(fmt.gen_degrees)}",
        f"  relation degrees: {_numbers(fmt.rel_degrees)}",
        "  entry degrees:",
    ]
    lines += [f"    {_numbers(row)}" for row in fmt.entry_degrees]
    moduli = report.moduli
    lines += [
        f"  Hilbert series: {_numbers(report.hilbert)}",
        f"  moduli: {moduli.params} - {moduli.gauge} = {moduli.family_dim}"
        f" of {moduli.all_curves_dim} (codimension {moduli.codimension})",
    ]
    bundle = report.conic_bundle
    if bundle is not None:
        other = bundle.other_model + (" ?" if bundle.other_model_uncertain else "")
        lines.append(
            f"  conic bundle: {bundle.model_over_p2}; link: {bundle.link}; other model: {other}"
        )
    return "\n".join(lines) + "\n"


def run_theta(args: argparse.Namespace) -> Document:
    if args.partition is not None:
        if args.p:
            raise ValidationError("--p and --partition are exclusive")
        parts = parse_int_list(args.partition, "partition")
        report = detcat.theta_report(detcat.format_from_partition(args.degree, args.e, parts))
    else:
        spec = validate_cover(args.degree, args.e, parse_overrides(args.p))
        report = detcat.theta_report(spec)
    return _render(args, report, lambda: _theta_text(report))


HANDLERS: Dict[str, Callable[[argparse.Namespace], Document]] = {
    "geography": run_geography,
    "family": run_family,
    "newton": run_newton,
    "chow": run_chow,
    "link": run_link,
    "table2": run_table2,
    "theta": run_theta,
}


# ---------------------------------------------------------------- parser


def _add_family(parser: argparse.ArgumentParser) -> None:
    helps = (("n", "class 3M + nL"), ("a", "twist a"), ("b", "twist b"), ("c", "twist c"))
    for name, meaning in helps:
        parser.add_argument(name, type=int, help=meaning)


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--output-dir", help="Write <dir>/<subcommand>.<ext> instead of stdout")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, help="Log level")
    common.add_argument("--schema", action="store_true", help="Print the JSON schema and exit")

    parser = ArgumentParser(prog="dp3geo", description="Geography and links of dP3 fibrations.")
    commands = parser.add_subparsers(dest="command", required=True)

    geo = commands.add_parser("geography", parents=[common], help="Geography of families")
    geo.add_argument("--n-min", type=int, default=DEFAULT_N_MIN)
    geo.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    geo.add_argument("--d-max", type=int, default=DEFAULT_D_MAX)
    geo.add_argument("--format", choices=GEOGRAPHY_FORMATS, default=FORMAT_TSV)

    fam = commands.add_parser("family", parents=[common], help="Report on one family")
    _add_family(fam)
    fam.add_argument("--format", choices=REPORT_FORMATS, default=FORMAT_TEXT)

    table = commands.add_parser("newton", parents=[common], help="Newton table of a family")
    _add_family(table)
    table.add_argument("--profile", help="JSON divisibility profile")
    table.add_argument("--substitute", help="Weights w1,w2,w3,w4 of x,y,z,t")
    table.add_argument("--cancel", type=int, help="Power of u cancelled after substituting")
    table.add_argument("--format", choices=REPORT_FORMATS, default=FORMAT_TEXT)

    ring = commands.add_parser("chow", parents=[common], help="Intersection numbers on a scroll")
    ring.add_argument("--scroll", required=True, help="Twists a0,a1,...")
    ring.add_argument("--base-dim", type=int, default=1)
    ring.add_argument("--expr", required=True, help="Polynomial in M and L")
    ring.add_argument("--format", choices=REPORT_FORMATS, default=FORMAT_TEXT)

    link = commands.add_parser("link", parents=[common], help="Ambient 2-ray game of a family")
    _add_family(link)
    link.add_argument(
        "--extend", action="append", default=[], help="Extra variable m:l[:name] or e.g. 3M-3L"
    )
    link.add_argument("--format", choices=REPORT_FORMATS, default=FORMAT_TEXT)

    rows = commands.add_parser("table2", parents=[common], help="Curated nonrigid families")
    rows.add_argument("--verify", action="store_true", help="Check μ and the first wall")
    rows.add_argument("--format", choices=REPORT_FORMATS, default=FORMAT_TEXT)

    theta = commands.add_parser("theta", parents=[common], help="Determinantal numerology")
    theta.add_argument("--degree", type=int, required=True, help="Curve degree d")
    theta.add_argument("--e", type=int, default=0, help="0 if λ² = O, 1 if λ² = O(-1)")
    theta.add_argument("--p", action="append", default=[], help="Override n=h0(λ(n))")
    theta.add_argument("--partition", help="Diagonal degrees p1,p2,...")
    theta.add_argument("--format", choices=REPORT_FORMATS, default=FORMAT_TEXT)
    return parser


# ---------------------------------------------------------------- entry point


def _emit(config: Config, command: str, text: str, ext: str) -> None:
    if not config.writes_files:
        sys.stdout.write(text)
        return
    path = Path(config.output_dir) / f"{command}.{ext}"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Document written", extra={"path": str(path)})
    print(path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = Config(output_dir=args.output_dir, log_level=args.log_level)
        if args.schema:
            schema = SCHEMAS[args.command].model_json_schema()
            text, ext = json.dumps(schema, indent=2, ensure_ascii=False) + "\n", "json"
        else:
            text, ext = HANDLERS[args.command](args)
        _emit(config, args.command, text, ext)
    except Dp3GeoError as e:
        logger.debug("Command failed", extra={"command": args.command, "error": str(e)})
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: cannot write output: {e.strerror}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
