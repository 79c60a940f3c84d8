"""
JSON parsing and byte-stable serialization for cones, downsets, regions,
hull presentations and command results.

Output uses sorted keys, compact separators and a trailing newline. Integers
stay JSON integers, other rationals become reduced "p/q" strings, and null
stands for an infinite interval end.
"""
import json
from fractions import Fraction

from .cone_geometry import GeneralPiece
from .downset import CoprincipalPiece, DownsetExpr
from .errors import FaceNotInLattice, SchemaError
from .grid_module import HullPresentation
from .pogroup import COORDINATE_NAMES, lattice_of, make_cone
from .region import Region, make_interval


def dumps(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError('<document>', exc.msg, line=exc.lineno, column=exc.colno)


def load_file(path):
    with open(path, encoding='utf-8') as handle:
        return loads(handle.read())


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def rational_to_json(value):
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def coefficient_to_json(value):
    return str(Fraction(value))


def parse_rational(value, field):
    if isinstance(value, bool):
        raise SchemaError(field, f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(field, f"malformed rational {value!r}")
    raise SchemaError(field, f"expected an integer or a \"p/q\" string, got {value!r}")


def parse_integer(value, field):
    result = parse_rational(value, field)
    if result.denominator != 1:
        raise SchemaError(field, f"expected an integer, got {value!r}")
    return result.numerator


def _require(mapping, key, field):
    if not isinstance(mapping, dict):
        raise SchemaError(field, f"expected an object, got {type(mapping).__name__}")
    if key not in mapping:
        raise SchemaError(f"{field}.{key}" if field else key, "missing required field")
    return mapping[key]


def _require_list(value, field):
    if not isinstance(value, list):
        raise SchemaError(field, f"expected a list, got {type(value).__name__}")
    return value


def _vector(value, field, parse=parse_rational):
    return tuple(parse(x, f"{field}[{i}]") for i, x in enumerate(_require_list(value, field)))


# ---------------------------------------------------------------------------
# cones and faces
# ---------------------------------------------------------------------------

def parse_cone(data, field='group'):
    kind = _require(data, 'kind', field)
    if not isinstance(kind, str):
        raise SchemaError(f"{field}.kind", f"expected a string, got {kind!r}")
    n = data.get('n')
    if n is not None:
        n = parse_integer(n, f"{field}.n")
    generators = halfspaces = None
    if 'generators' in data:
        generators = [_vector(v, f"{field}.generators[{i}]", parse_integer)
                      for i, v in enumerate(_require_list(data['generators'], f"{field}.generators"))]
    if 'halfspaces' in data:
        halfspaces = [_vector(v, f"{field}.halfspaces[{i}]", parse_integer)
                      for i, v in enumerate(_require_list(data['halfspaces'], f"{field}.halfspaces"))]
    return make_cone(kind, n=n, generators=generators, halfspaces=halfspaces)


def cone_to_json(cone):
    if cone.is_orthant:
        return {"kind": cone.kind, "n": cone.n}
    return {"kind": cone.kind, "n": cone.n,
            "generators": [list(g) for g in cone.generators],
            "halfspaces": [list(h) for h in cone.halfspaces]}


def face_ref_to_json(face, lattice):
    """Short face reference: id plus char_set on orthants, id plus tight halfspaces on cones"""
    if lattice.cone.is_orthant:
        return {"id": face.id, "char_set": list(face.char_set)}
    return {"id": face.id, "tight": sorted(face.tight)}


def face_to_json(face, lattice):
    payload = {"id": face.id, "dim": face.dim, "label": face.label(lattice.cone.is_orthant),
               "generators": sorted(face.generator_ids), "tight": sorted(face.tight)}
    if lattice.cone.is_orthant:
        payload["char_set"] = list(face.char_set)
    return payload


def lattice_to_json(lattice):
    return {
        "group": cone_to_json(lattice.cone),
        "closed": lattice.closed_flag.value,
        "faces": [face_to_json(face, lattice) for face in lattice.faces],
        "rays": [face.id for face in lattice.rays],
    }


def _face_by_id(text, spec, lattice):
    try:
        return lattice.by_id(int(text))
    except ValueError:
        raise SchemaError('face', f"malformed face id in {spec!r}")


def parse_face(spec, lattice):
    """
    Face from a command-line spec.

    Accepted: "origin" (trivial face), "full", "id:K", coordinate letters such
    as "x" or "xy", or comma-separated coordinate indices such as "0,2". On
    cone groups a bare integer is a lattice id; on orthants digits stay
    coordinate indices, so use "id:K" there.
    """
    spec = (spec or '').strip()
    if spec in ('', 'origin', 'none'):
        return lattice.trivial
    if spec == 'full':
        return lattice.full
    if spec.startswith('id:'):
        return _face_by_id(spec[3:], spec, lattice)
    if not lattice.cone.is_orthant:
        if spec.lstrip('-').isdigit():
            return _face_by_id(spec, spec, lattice)
        raise FaceNotInLattice(f"faces of {lattice.cone.kind} are given by lattice id, got {spec!r}")
    if all(c in COORDINATE_NAMES for c in spec):
        indices = [COORDINATE_NAMES.index(c) for c in spec]
    else:
        try:
            indices = [int(part) for part in spec.split(',')]
        except ValueError:
            raise SchemaError('face', f"unrecognized face spec {spec!r}")
    if any(not 0 <= i < lattice.cone.n for i in indices):
        raise FaceNotInLattice(f"face {spec!r} names a coordinate outside 0..{lattice.cone.n - 1}")
    return lattice.by_char_set(indices)


# ---------------------------------------------------------------------------
# downsets
# ---------------------------------------------------------------------------

def _parse_face_indices(value, field, n):
    indices = _vector(value, field, parse_integer)
    for k, i in enumerate(indices):
        if not 0 <= i < n:
            raise SchemaError(f"{field}[{k}]", f"coordinate index {i} outside 0..{n - 1}")
    return indices


def parse_downset(data, field=''):
    prefix = f"{field}." if field else ''
    group = parse_cone(_require(data, 'group', field), f"{prefix}group")
    raw = _require_list(_require(data, 'pieces', field), f"{prefix}pieces")
    if not group.is_orthant:
        return parse_general_downset(group, raw, f"{prefix}pieces")
    pieces = []
    for k, entry in enumerate(raw):
        where = f"{prefix}pieces[{k}]"
        apex = _vector(_require(entry, 'apex', where), f"{where}.apex")
        if len(apex) != group.n:
            raise SchemaError(f"{where}.apex", f"expected {group.n} coordinates, got {len(apex)}")
        if group.mode == 'int' and any(a.denominator != 1 for a in apex):
            raise SchemaError(f"{where}.apex", "integer group needs integer apex coordinates")
        face = _parse_face_indices(_require(entry, 'face', where), f"{where}.face", group.n)
        strict = entry.get('strict')
        if strict is not None:
            strict = _require_list(strict, f"{where}.strict")
            if len(strict) != group.n or not all(isinstance(s, bool) for s in strict):
                raise SchemaError(f"{where}.strict", f"expected {group.n} booleans")
        pieces.append(CoprincipalPiece.make(apex, face, group.mode, strict))
    return DownsetExpr.make(group, pieces)


def parse_general_downset(group, raw, field):
    """Pieces over a cone-int group, faces given by lattice id"""
    lattice = lattice_of(group)
    pieces = []
    for k, entry in enumerate(raw):
        where = f"{field}[{k}]"
        apex = _vector(_require(entry, 'apex', where), f"{where}.apex", parse_integer)
        if len(apex) != group.n:
            raise SchemaError(f"{where}.apex", f"expected {group.n} coordinates, got {len(apex)}")
        face_id = parse_integer(_require(entry, 'face', where), f"{where}.face")
        pieces.append(GeneralPiece(apex, lattice.by_id(face_id)))
    return GeneralDownset(group, tuple(pieces))


class GeneralDownset:
    """Union of pieces over a cone-int group, as read from JSON"""

    def __init__(self, group, pieces):
        self.group = group
        self.pieces = pieces

    @property
    def lattice(self):
        return lattice_of(self.group)


def piece_to_json(piece, mode):
    payload = {"apex": [rational_to_json(a) for a in piece.apex], "face": list(piece.face)}
    if mode == 'rat' and any(piece.strict):
        payload["strict"] = list(piece.strict)
    return payload


def downset_to_json(D):
    if isinstance(D, GeneralDownset):
        return {"group": cone_to_json(D.group),
                "pieces": [{"apex": list(p.apex), "face": p.face.id} for p in D.pieces]}
    return {"group": cone_to_json(D.group), "pieces": [piece_to_json(p, D.mode) for p in D.pieces]}


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

def region_to_json(region):
    """Boxes as corner vectors, null for an infinite end; strictness flags only in rational mode"""
    boxes = []
    for box in region.boxes:
        entry = {"lo": [None if iv.lo is None else rational_to_json(iv.lo) for iv in box],
                 "hi": [None if iv.hi is None else rational_to_json(iv.hi) for iv in box]}
        if region.mode == 'rat':
            entry["lo_closed"] = [iv.lo_closed for iv in box]
            entry["hi_closed"] = [iv.hi_closed for iv in box]
        boxes.append(entry)
    return {"n": region.n, "mode": region.mode, "boxes": boxes}


def _corner(entry, key, where, n):
    values = _require_list(_require(entry, key, where), f"{where}.{key}")
    if len(values) != n:
        raise SchemaError(f"{where}.{key}", f"expected {n} coordinates, got {len(values)}")
    return [None if v is None else parse_rational(v, f"{where}.{key}[{i}]") for i, v in enumerate(values)]


def _flags(entry, key, where, n):
    flags = entry.get(key)
    if flags is None:
        return [True] * n
    flags = _require_list(flags, f"{where}.{key}")
    if len(flags) != n or not all(isinstance(f, bool) for f in flags):
        raise SchemaError(f"{where}.{key}", f"expected {n} booleans")
    return flags


def parse_region(data, field='region'):
    """Read {"boxes": [{"lo": [...], "hi": [...]}]}; "n" and "mode" (default int) are optional"""
    raw = _require_list(_require(data, 'boxes', field), f"{field}.boxes")
    mode = data.get('mode', 'int')
    if mode not in ('int', 'rat'):
        raise SchemaError(f"{field}.mode", f"expected 'int' or 'rat', got {mode!r}")
    if 'n' in data:
        n = parse_integer(data['n'], f"{field}.n")
    elif raw:
        n = len(_require_list(_require(raw[0], 'lo', f"{field}.boxes[0]"), f"{field}.boxes[0].lo"))
    else:
        raise SchemaError(f"{field}.n", "an empty region needs its rank")
    boxes = []
    for k, entry in enumerate(raw):
        where = f"{field}.boxes[{k}]"
        lo, hi = _corner(entry, 'lo', where, n), _corner(entry, 'hi', where, n)
        lo_closed, hi_closed = _flags(entry, 'lo_closed', where, n), _flags(entry, 'hi_closed', where, n)
        boxes.append(tuple(make_interval(lo[i], hi[i], mode, lo_closed[i], hi_closed[i]) for i in range(n)))
    return Region.from_boxes(n, mode, boxes)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def parse_module(data, field=''):
    prefix = f"{field}." if field else ''
    hull = [parse_downset(entry, f"{prefix}hull[{k}]")
            for k, entry in enumerate(_require_list(_require(data, 'hull', field), f"{prefix}hull"))]
    box = _require(data, 'box', field)
    lo = _vector(_require(box, 'lo', f"{prefix}box"), f"{prefix}box.lo", parse_integer)
    hi = _vector(_require(box, 'hi', f"{prefix}box"), f"{prefix}box.hi", parse_integer)
    generators = []
    raw = _require_list(_require(data, 'generators', field), f"{prefix}generators")
    for k, entry in enumerate(raw):
        where = f"{prefix}generators[{k}]"
        degree = _vector(_require(entry, 'degree', where), f"{where}.degree", parse_integer)
        coeffs = _vector(_require(entry, 'coeffs', where), f"{where}.coeffs")
        generators.append((degree, coeffs))
    return HullPresentation.make(hull, generators, lo, hi)


def module_to_json(h):
    return {
        "hull": [downset_to_json(D) for D in h.hull],
        "generators": [{"degree": list(g.degree), "coeffs": [coefficient_to_json(c) for c in g.coeffs]}
                       for g in h.generators],
        "box": {"lo": list(h.lo), "hi": list(h.hi)},
    }


def dims_to_json(module):
    return [{"degree": list(q), "dim": d} for q, d in sorted(module.dims.items()) if d]


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

def decomposition_to_json(D, components, pruned=False):
    return {
        "group": cone_to_json(D.group),
        "components": [{"char_set": list(face.char_set), "label": face.label(),
                        "pieces": [piece_to_json(p, D.mode) for p in component.pieces]}
                       for face, component in components],
        "pruned": pruned,
    }


def module_decomposition_to_json(decomposition):
    return {
        "components": [{"char_set": list(c.face.char_set), "label": c.face.label(), "dims": dims_to_json(c.quotient)}
                       for c in decomposition.components],
        "dims": dims_to_json(decomposition.module),
        "injective": decomposition.injective,
    }