"""Template persistence: the ``.lipt`` text format and a one-file-per-id store.

File layout (LF line endings)::

    LIPT 1
    id <id>
    ratios <upper/lower> <upper/width>
    dims 128 64
    64 lines of 128 '0'/'1' characters   (horizontal groove map)
    64 lines of 128 '0'/'1' characters   (vertical groove map)
"""

import os
import re
import tempfile

import numpy as np

from .errors import (
    BadTemplateHeader,
    BadTemplateMagic,
    CorruptTemplateFile,
    DuplicateId,
    InvalidId,
    InvalidMapCharacter,
    MalformedMap,
    TemplateFormatError,
    UnsupportedVersion,
    WrongDims,
)
from .features import MAP_HEIGHT, MAP_WIDTH, LipRatios, Template

MAGIC = "LIPT"
VERSION = "1"
SUFFIX = ".lipt"

_VALID_ID = re.compile(r"[A-Za-z0-9_-]+")
_HEADER_LINES = 4


def _format_ratio(value):
    return np.format_float_positional(float(value), precision=9, unique=False, fractional=False, trim="-")


def _map_lines(grid):
    chars = np.where(grid, ord("1"), ord("0")).astype(np.uint8)
    return [row.tobytes().decode("ascii") for row in chars]


def serialize_template(template):
    lines = [
        f"{MAGIC} {VERSION}",
        f"id {template.id}",
        "ratios {} {}".format(
            _format_ratio(template.ratios.upper_lower_height_ratio),
            _format_ratio(template.ratios.upper_height_width_ratio),
        ),
        f"dims {MAP_WIDTH} {MAP_HEIGHT}",
    ]
    lines += _map_lines(template.h_map)
    lines += _map_lines(template.v_map)
    return ("\n".join(lines) + "\n").encode("utf-8")


def _parse_map(lines, first_line_no):
    grid = np.zeros((MAP_HEIGHT, MAP_WIDTH), dtype=bool)
    for r, line in enumerate(lines):
        line_no = first_line_no + r
        if len(line) != MAP_WIDTH:
            raise MalformedMap(f"expected {MAP_WIDTH} characters, found {len(line)}", line_no)
        bad = set(line) - {"0", "1"}
        if bad:
            raise InvalidMapCharacter(f"unexpected characters {sorted(bad)!r}", line_no)
        grid[r] = np.frombuffer(line.encode("ascii"), dtype=np.uint8) == ord("1")
    return grid


def parse_template(data):
    try:
        text = bytes(data).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise TemplateFormatError(f"not UTF-8 text: {exc}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    magic = lines[0].split(" ") if lines else [""]
    if magic[0] != MAGIC or len(magic) != 2:
        raise BadTemplateMagic(f"expected '{MAGIC} {VERSION}', found {lines[0] if lines else ''!r}")
    if magic[1] != VERSION:
        raise UnsupportedVersion(f"unsupported template version {magic[1]!r}")
    if len(lines) < _HEADER_LINES:
        raise BadTemplateHeader("header truncated")

    if not lines[1].startswith("id ") or len(lines[1]) == 3:
        raise BadTemplateHeader(f"line 2: expected 'id <id>', found {lines[1]!r}")
    template_id = lines[1][3:]

    fields = lines[2].split(" ")
    if fields[0] != "ratios" or len(fields) != 3:
        raise BadTemplateHeader(f"line 3: expected 'ratios <r1> <r2>', found {lines[2]!r}")
    try:
        r1, r2 = float(fields[1]), float(fields[2])
    except ValueError:
        raise BadTemplateHeader(f"line 3: non-numeric ratio in {lines[2]!r}") from None

    if lines[3] != f"dims {MAP_WIDTH} {MAP_HEIGHT}":
        raise WrongDims(f"line 4: expected 'dims {MAP_WIDTH} {MAP_HEIGHT}', found {lines[3]!r}")

    body = lines[_HEADER_LINES:]
    if len(body) != 2 * MAP_HEIGHT:
        raise WrongDims(f"expected {2 * MAP_HEIGHT} map lines, found {len(body)}")
    h_map = _parse_map(body[:MAP_HEIGHT], _HEADER_LINES + 1)
    v_map = _parse_map(body[MAP_HEIGHT:], _HEADER_LINES + MAP_HEIGHT + 1)

    try:
        return Template(template_id, LipRatios(r1, r2), h_map, v_map)
    except ValueError as exc:
        raise BadTemplateHeader(str(exc)) from None


def check_id(template_id):
    if not _VALID_ID.fullmatch(template_id or ""):
        raise InvalidId(f"id {template_id!r} may only contain letters, digits, '-' and '_'")
    return template_id


def enroll(store_dir, template, overwrite=False):
    """Write ``<id>.lipt`` atomically (temp file + rename)."""
    check_id(template.id)
    os.makedirs(store_dir, exist_ok=True)
    target = os.path.join(store_dir, template.id + SUFFIX)
    if not overwrite and os.path.exists(target):
        raise DuplicateId(f"id {template.id!r} already enrolled")
    fd, tmp = tempfile.mkstemp(dir=store_dir, prefix=".tmp-", suffix=SUFFIX + ".part")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(serialize_template(template))
            fh.flush()
            os.fsync(fh.fileno())
        if overwrite:
            os.replace(tmp, target)
        else:
            # link() fails if the target appeared meanwhile, keeping the no-clobber promise
            try:
                os.link(tmp, target)
            except FileExistsError:
                raise DuplicateId(f"id {template.id!r} already enrolled") from None
            except OSError:
                # filesystems without hard links
                os.replace(tmp, target)
            else:
                os.unlink(tmp)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return target


def load_all(store_dir):
    """Parse every ``*.lipt`` file; result sorted by id."""
    templates = []
    for name in sorted(os.listdir(store_dir)):
        if not name.endswith(SUFFIX) or name.startswith("."):
            continue
        path = os.path.join(store_dir, name)
        try:
            with open(path, "rb") as fh:
                templates.append(parse_template(fh.read()))
        except TemplateFormatError as exc:
            raise CorruptTemplateFile(name, exc) from exc
    templates.sort(key=lambda t: t.id)
    return templates
