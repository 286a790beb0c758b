"""JSON workspace loading: one ambient plus named presentations, points and morphisms."""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DuplicateName, HeightError, NotHomogeneous, WorkspaceError
from .geometry import Ambient, Morphism, ProjectivePoint, parse_polynomial
from .presentations import DivisorPresentation, SubschemePresentation
from .quadratic import QuadElement, QuadraticField

_TOP_KEYS = {"ambient", "presentations", "points", "morphisms"}


@dataclass
class Workspace:
    ambient: Ambient
    presentations: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)

    def presentation(self, name):
        return self._get(self.presentations, "presentation", name)

    def point(self, name):
        return self._get(self.points, "point", name)

    def morphism(self, name):
        return self._get(self.morphisms, "morphism", name)

    @staticmethod
    def _get(table, kind, name):
        try:
            return table[name]
        except KeyError:
            known = ", ".join(sorted(table)) or "none"
            raise WorkspaceError(f"no {kind} named {name!r} (known: {known})") from None


def _rethrow(exc, where):
    """Re-raise ``exc`` with the offending field path prepended, keeping its type."""
    msg = f"{where}: {exc}"
    if isinstance(exc, NotHomogeneous):
        raise NotHomogeneous(msg, exc.terms) from exc
    try:
        new = type(exc)(msg)
    except TypeError:
        new = WorkspaceError(msg)
    raise new from exc


def _expect(cond, where, what):
    if not cond:
        raise WorkspaceError(f"{where}: expected {what}")


def _int_list(value, where):
    _expect(isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in value),
            where, "a list of integers")
    return tuple(value)


def _rational(text, where):
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    _expect(isinstance(text, str), where, 'a rational string "p/q"')
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise WorkspaceError(f"{where}: not a rational number: {text!r}") from None


def _entry(value, field_, where):
    if isinstance(value, list):
        _expect(len(value) == 2, where, 'a two-element array ["a","b"]')
        if field_ is None:
            raise WorkspaceError(f"{where}: quadratic entry in a point without a declared field")
        return QuadElement(_rational(value[0], f"{where}[0]"), _rational(value[1], f"{where}[1]"), field_)
    return _rational(value, where)


def _unique_names(pairs):
    """object_pairs_hook that rejects repeated keys (json keeps the last one silently)."""
    out = {}
    for k, v in pairs:
        if k in out:
            raise DuplicateName(f"duplicate key {k!r}")
        out[k] = v
    return out


def _load_divisor(raw, amb, where):
    _expect(isinstance(raw, dict), where, "an object")
    missing = {"s_D", "L", "M"} - set(raw)
    if missing:
        raise WorkspaceError(f"{where}: missing key(s) {', '.join(sorted(missing))}")
    polys = {}
    try:
        polys["s_D"] = parse_polynomial(raw["s_D"], amb)
    except HeightError as exc:
        _rethrow(exc, f"{where}.s_D")
    bundles = {}
    for key in ("L", "M"):
        b = raw[key]
        _expect(isinstance(b, dict) and {"degree", "sections"} <= set(b), f"{where}.{key}",
                'an object with "degree" and "sections"')
        deg = _int_list(b["degree"], f"{where}.{key}.degree")
        _expect(isinstance(b["sections"], list), f"{where}.{key}.sections", "a list of polynomial strings")
        secs = []
        for i, s in enumerate(b["sections"]):
            try:
                secs.append(parse_polynomial(s, amb))
            except HeightError as exc:
                _rethrow(exc, f"{where}.{key}.sections[{i}]")
        bundles[key] = (deg, tuple(secs))
    try:
        return DivisorPresentation(polys["s_D"], bundles["L"][0], bundles["L"][1],
                                   bundles["M"][0], bundles["M"][1])
    except HeightError as exc:
        _rethrow(exc, where)


def _load_point(raw, amb, where):
    _expect(isinstance(raw, dict) and "coords" in raw, where, 'an object with "coords"')
    fspec = raw.get("field")
    field_ = None
    if fspec is not None:
        _expect(isinstance(fspec, dict) and isinstance(fspec.get("d"), int), f"{where}.field",
                'null or {"d": int}')
        try:
            field_ = QuadraticField(fspec["d"])
        except HeightError as exc:
            _rethrow(exc, f"{where}.field")
    coords = raw["coords"]
    _expect(isinstance(coords, list) and all(isinstance(b, list) for b in coords), f"{where}.coords",
            "a list of coordinate blocks")
    blocks = [[_entry(v, field_, f"{where}.coords[{b}][{j}]") for j, v in enumerate(blk)]
              for b, blk in enumerate(coords)]
    try:
        return ProjectivePoint(blocks, field_, amb)
    except HeightError as exc:
        _rethrow(exc, where)


def _load_morphism(raw, amb, where):
    _expect(isinstance(raw, dict) and {"target_blocks", "components"} <= set(raw), where,
            'an object with "target_blocks" and "components"')
    target = Ambient(_int_list(raw["target_blocks"], f"{where}.target_blocks"))
    comps = raw["components"]
    _expect(isinstance(comps, list) and all(isinstance(b, list) for b in comps), f"{where}.components",
            "a list of component blocks")
    blocks = []
    for b, blk in enumerate(comps):
        row = []
        for j, s in enumerate(blk):
            try:
                row.append(parse_polynomial(s, amb))
            except HeightError as exc:
                _rethrow(exc, f"{where}.components[{b}][{j}]")
        blocks.append(row)
    try:
        return Morphism(amb, target, blocks)
    except HeightError as exc:
        _rethrow(exc, where)


def parse_workspace(doc):
    """Build a validated Workspace from an already-decoded JSON document."""
    _expect(isinstance(doc, dict), "workspace", "a JSON object")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise WorkspaceError(f"workspace: unknown key(s) {', '.join(sorted(extra))}")
    _expect("ambient" in doc and isinstance(doc["ambient"], dict) and "blocks" in doc["ambient"],
            "ambient", 'an object with "blocks"')
    blocks = _int_list(doc["ambient"]["blocks"], "ambient.blocks")
    try:
        amb = Ambient(blocks)
    except (HeightError, ValueError) as exc:
        raise WorkspaceError(f"ambient.blocks: {exc}") from None
    ws = Workspace(amb)
    for section, table, loader in (("presentations", ws.presentations, None),
                                   ("points", ws.points, _load_point),
                                   ("morphisms", ws.morphisms, _load_morphism)):
        entries = doc.get(section, {})
        _expect(isinstance(entries, dict), section, "an object mapping names to entries")
        for name, raw in entries.items():
            where = f"{section}.{name}"
            if loader is None:
                _expect(isinstance(raw, dict) and isinstance(raw.get("divisors"), list) and raw["divisors"],
                        where, 'an object with a nonempty "divisors" list')
                divs = tuple(_load_divisor(d, amb, f"{where}.divisors[{i}]")
                             for i, d in enumerate(raw["divisors"]))
                table[name] = SubschemePresentation(divs, name)
            else:
                table[name] = loader(raw, amb, where)
    return ws


def load_workspace(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise WorkspaceError(f"cannot read workspace {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text, object_pairs_hook=_unique_names)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except DuplicateName as exc:
        raise DuplicateName(f"{path}: {exc}") from None
    return parse_workspace(doc)

