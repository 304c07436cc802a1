"""Command-line frontend: ``lipgroove {extract,enroll,match,identify}``.

Every record on standard output is a ``key=value`` line. Exit codes:
0 success or accepted match, 1 no match, 2 environment or input error,
3 degenerate lip image, 4 duplicate id.
"""

import argparse
import os
import sys

from .edges import CannyParams
from .errors import DegenerateLip, DuplicateId, LipGrooveError, NoObject, StageError
from .features import MatchConfig, build_template, compute_ratios, identify, match_score, split_lips
from .filters import REPLICATE, ZERO
from .pipeline import PIPELINE_CANNY, PipelineConfig, dump_stages, extract_grooves
from .raster import read_pnm, write_pgm
from .store import enroll, load_all

EXIT_OK = 0
EXIT_NO_MATCH = 1
EXIT_ENVIRONMENT = 2
EXIT_DEGENERATE = 3
EXIT_DUPLICATE = 4

DB_ENV = "LIPGROOVE_DB"


def _common_flags():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("pipeline")
    g.add_argument("--epsilon", type=float, default=1.0, help="threshold convergence tolerance")
    g.add_argument("--sigma", type=float, default=1.4, help="sigma of the smoothing Gaussian")
    g.add_argument("--kernel-size", type=int, default=7, help="side of the smoothing Gaussian")
    g.add_argument("--pre-passes", type=int, default=4, help="smoothing passes before the first Sobel")
    g.add_argument("--mid-passes", type=int, default=1, help="smoothing passes between Sobel stages")
    g.add_argument("--border", choices=(REPLICATE, ZERO), default=REPLICATE)
    g.add_argument("--canny-low", type=float, default=PIPELINE_CANNY.low)
    g.add_argument("--canny-high", type=float, default=PIPELINE_CANNY.high)
    g.add_argument("--canny-sigma", type=float, default=PIPELINE_CANNY.sigma)
    g.add_argument("--swap-sobel-naming", action="store_true", help="swap which Sobel mask feeds which map")
    g.add_argument("--dump-stages", action="store_true", help="write stage_<a..n>.pgm into --out-dir")
    g.add_argument("--out-dir", default=".", help="directory for output images")
    m = p.add_argument_group("matching")
    m.add_argument("--ratio-tol", type=float, default=MatchConfig.ratio_tol)
    m.add_argument("--accept", type=float, default=MatchConfig.accept)
    m.add_argument("--db", default=None, help=f"template store directory (default: ${DB_ENV})")
    return p


def build_parser():
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="lipgroove", description="Lip-print groove extraction and matching.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common], help="write groove maps and print lip statistics")
    p.add_argument("input")

    p = sub.add_parser("enroll", parents=[common], help="extract a template and add it to the store")
    p.add_argument("input")
    p.add_argument("id")
    p.add_argument("--overwrite", action="store_true")

    p = sub.add_parser("match", parents=[common], help="compare two images")
    p.add_argument("path_a")
    p.add_argument("path_b")

    p = sub.add_parser("identify", parents=[common], help="search the store for a probe image")
    p.add_argument("probe")
    return parser


def pipeline_config(args):
    canny = CannyParams(
        sigma=args.canny_sigma,
        kernel_size=PIPELINE_CANNY.kernel_size,
        low=args.canny_low,
        high=args.canny_high,
    )
    return PipelineConfig(
        epsilon=args.epsilon,
        kernel_size=args.kernel_size,
        sigma=args.sigma,
        pre_passes=args.pre_passes,
        mid_passes=args.mid_passes,
        border=args.border,
        canny=canny,
        swap_sobel_naming=args.swap_sobel_naming,
        dump_stages=args.dump_stages,
    )


def match_config(args):
    return MatchConfig(ratio_tol=args.ratio_tol, accept=args.accept)


def _emit(out, key, value):
    if isinstance(value, bool):
        value = "true" if value else "false"
    elif isinstance(value, float):
        value = repr(value)
    out.write(f"{key}={value}\n")


def _emit_report(out, report):
    _emit(out, "ratio_gate_passed", report.ratio_gate_passed)
    _emit(out, "ratio_distance", f"{report.ratio_distance:.6f}")
    _emit(out, "groove_score", f"{report.groove_score:.6f}")
    _emit(out, "accepted", report.accepted)


def _db_dir(args):
    db = args.db or os.environ.get(DB_ENV)
    if not db:
        raise LipGrooveError(f"no template store given; pass --db or set {DB_ENV}")
    return db


def _template_for(path, template_id, cfg):
    return build_template(template_id, extract_grooves(read_pnm(path), cfg))


def cmd_extract(args, out):
    cfg = pipeline_config(args)
    result = extract_grooves(read_pnm(args.input), cfg)
    os.makedirs(args.out_dir, exist_ok=True)
    for name, grid in (("horizontal", result.horizontal), ("vertical", result.vertical), ("mask", result.mask)):
        write_pgm(os.path.join(args.out_dir, f"{name}.pgm"), grid.astype("uint8") * 255)
    if cfg.dump_stages:
        dump_stages(result, args.out_dir)

    h, w = result.mask.shape
    _emit(out, "width", w)
    _emit(out, "height", h)
    _emit(out, "threshold_iterations", len(result.trace.iterations))
    _emit(out, "threshold_trace", ",".join(repr(t) for t in result.trace.iterations))
    _emit(out, "threshold_final", result.trace.final)
    _emit(out, "horizontal_edge_pixels", int(result.horizontal.sum()))
    _emit(out, "vertical_edge_pixels", int(result.vertical.sum()))
    mouth_row, upper_h, lower_h = split_lips(result.mask)
    ratios = compute_ratios(result.mask)
    _emit(out, "mouth_row", mouth_row)
    _emit(out, "upper_height", upper_h)
    _emit(out, "lower_height", lower_h)
    _emit(out, "upper_lower_height_ratio", ratios.upper_lower_height_ratio)
    _emit(out, "upper_height_width_ratio", ratios.upper_height_width_ratio)
    return EXIT_OK


def cmd_enroll(args, out):
    db = _db_dir(args)
    template = _template_for(args.input, args.id, pipeline_config(args))
    path = enroll(db, template, overwrite=args.overwrite)
    _emit(out, "enrolled", template.id)
    _emit(out, "path", path)
    return EXIT_OK


def cmd_match(args, out):
    cfg = pipeline_config(args)
    a = _template_for(args.path_a, "a", cfg)
    b = _template_for(args.path_b, "b", cfg)
    report = match_score(a, b, match_config(args))
    _emit_report(out, report)
    return EXIT_OK if report.accepted else EXIT_NO_MATCH


def cmd_identify(args, out):
    db = _db_dir(args)
    probe = _template_for(args.probe, "probe", pipeline_config(args))
    if not os.path.isdir(db):
        raise FileNotFoundError(f"template store {db!r} does not exist")
    found = identify(probe, load_all(db), match_config(args))
    if found is None:
        _emit(out, "match_id", "NONE")
        return EXIT_NO_MATCH
    match_id, report = found
    _emit(out, "match_id", match_id)
    _emit_report(out, report)
    return EXIT_OK


COMMANDS = {
    "extract": cmd_extract,
    "enroll": cmd_enroll,
    "match": cmd_match,
    "identify": cmd_identify,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (NoObject, DegenerateLip) as exc:
        err.write(f"lipgroove: degenerate lip image: {exc}\n")
        return EXIT_DEGENERATE
    except DuplicateId as exc:
        err.write(f"lipgroove: {exc}\n")
        return EXIT_DUPLICATE
    except StageError as exc:
        if isinstance(exc.cause, (NoObject, DegenerateLip)):
            err.write(f"lipgroove: degenerate lip image: {exc}\n")
            return EXIT_DEGENERATE
        err.write(f"lipgroove: {exc}\n")
        return EXIT_ENVIRONMENT
    except (LipGrooveError, OSError, ValueError) as exc:
        err.write(f"lipgroove: {exc}\n")
        return EXIT_ENVIRONMENT


if __name__ == "__main__":
    sys.exit(main())
