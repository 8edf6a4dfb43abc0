"""The ``.ossp`` JSON document: load, canonical dump, bundled fixtures.

A document looks like::

    {
      "bottom": "0", "top": "1",
      "states": ["p", "q"], "properties": ["0", "1"],
      "order": {"derive_from_xi": true},          # or {"pairs": [["0", "1"]]}
      "xi": {"p": ["1"], "q": ["1"]},
      "ortho": {"include_bottom_pairs": true, "pairs": []}   # optional
    }

``ortho.pairs`` are written one-sided and closed symmetrically on load.
"""

import json
from dataclasses import dataclass
from importlib import resources

from ._util import natural_key
from .errors import ParseError
from .order import build_lattice
from .ortho import OrthoSPS, PropertyOrthoRelation
from .sps import StatePropertySystem

FIXTURES = ("example.ossp", "triv2.ossp", "diamond.ossp", "chain3.ossp", "m3.ossp")

_KEYS = {"states", "properties", "bottom", "top", "order", "xi", "ortho"}


def _nat(names):
    return sorted(names, key=natural_key)


def _pair_sort(pairs):
    return sorted(pairs, key=lambda pr: (natural_key(pr[0]), natural_key(pr[1])))


@dataclass(frozen=True)
class StructureBundle:
    """A resolved document. ``order_pairs`` is ``None`` when the order is
    derived from ``xi``; ``ortho_pairs`` is ``None`` when there is no
    relation."""

    states: tuple
    properties: tuple
    bottom: str
    top: str
    order_pairs: tuple
    xi: dict
    ortho_pairs: tuple = None
    include_bottom_pairs: bool = False

    @property
    def derive_order(self):
        return self.order_pairs is None

    def resolved_order(self):
        """Explicit order pairs; derived ones use Cartan-image inclusion."""
        if self.order_pairs is not None:
            return list(self.order_pairs)
        kappa = {a: frozenset(p for p in self.states if a in self.xi[p]) for a in self.properties}
        return [(a, b) for a in self.properties for b in self.properties
                if a != b and kappa[a] <= kappa[b]]

    def lattice(self):
        lat = build_lattice(self.properties, self.resolved_order())
        if lat.bottom != self.bottom:
            raise ParseError(f"declared bottom {self.bottom!r} but the order has {lat.bottom!r}",
                             field="bottom")
        if lat.top != self.top:
            raise ParseError(f"declared top {self.top!r} but the order has {lat.top!r}",
                             field="top")
        return lat

    def to_sps(self):
        return StatePropertySystem(self.states, self.lattice(), self.xi)

    def to_osps(self):
        if self.ortho_pairs is None:
            raise ParseError("document has no ortho relation", field="ortho")
        sps = self.to_sps()
        rel = PropertyOrthoRelation.closed(sps.lattice, self.ortho_pairs,
                                           include_bottom=self.include_bottom_pairs)
        return OrthoSPS(sps, rel)

    def to_document(self):
        doc = {
            "states": _nat(self.states),
            "properties": _nat(self.properties),
            "bottom": self.bottom,
            "top": self.top,
            "order": ({"derive_from_xi": True} if self.derive_order
                      else {"pairs": [list(p) for p in _pair_sort(set(self.order_pairs))]}),
            "xi": {p: _nat(self.xi[p]) for p in self.states},
        }
        if self.ortho_pairs is not None:
            doc["ortho"] = {
                "pairs": [list(p) for p in _pair_sort(set(self.ortho_pairs))],
                "include_bottom_pairs": self.include_bottom_pairs,
            }
        return doc

    @classmethod
    def from_sps(cls, sps, rel=None, derive_order=True):
        """Bundle an SPS, listing every pair of ``rel`` explicitly."""
        lat = sps.lattice
        order = None if derive_order else tuple(
            (a, b) for a, b in lat.poset.leq if a != b)
        return cls(tuple(sps.states), tuple(lat.elements), lat.bottom, lat.top, order,
                   {p: tuple(_nat(sps.xi[p])) for p in sps.states},
                   None if rel is None else tuple(tuple(p) for p in rel.pairs), False)


def dumps_document(doc):
    """Canonical text: sorted keys, two-space indent, LF, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_bundle(bundle):
    return dumps_document(bundle.to_document())


def _str_list(value, field):
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ParseError("expected a list of strings", field=field)
    if len(set(value)) != len(value):
        raise ParseError("duplicate names", field=field)
    return value


def _pair_list(value, field, known, what):
    if not isinstance(value, list):
        raise ParseError("expected a list of pairs", field=field)
    out = []
    for k, pr in enumerate(value):
        f = f"{field}[{k}]"
        if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(x, str) for x in pr)):
            raise ParseError("expected a two-element list of names", field=f)
        for x in pr:
            if x not in known:
                raise ParseError(f"unknown {what} {x!r}", field=f)
        out.append(tuple(pr))
    return tuple(out)


def parse_document(doc):
    """Resolve a decoded JSON document; raises :class:`ParseError` with the
    offending field path."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", field="$")
    extra = set(doc) - _KEYS
    if extra:
        raise ParseError(f"unexpected keys {sorted(extra)}", field="$")
    for key in ("states", "properties", "bottom", "top", "order", "xi"):
        if key not in doc:
            raise ParseError("missing", field=key)
    states = _str_list(doc["states"], "states")
    props = _str_list(doc["properties"], "properties")
    known = set(props)
    for key in ("bottom", "top"):
        if doc[key] not in known:
            raise ParseError(f"unknown property {doc[key]!r}", field=key)

    order = doc["order"]
    if not isinstance(order, dict):
        raise ParseError("expected an object", field="order")
    if order.get("derive_from_xi") is True and "pairs" not in order:
        order_pairs = None
    elif set(order) == {"pairs"}:
        order_pairs = _pair_list(order["pairs"], "order.pairs", known, "property")
    else:
        raise ParseError('expected {"pairs": [...]} or {"derive_from_xi": true}', field="order")

    xi = doc["xi"]
    if not isinstance(xi, dict):
        raise ParseError("expected an object", field="xi")
    for p in xi:
        if p not in states:
            raise ParseError(f"unknown state {p!r}", field=f"xi.{p}")
    resolved = {}
    for p in states:
        if p not in xi:
            raise ParseError("missing state", field=f"xi.{p}")
        names = _str_list(xi[p], f"xi.{p}")
        for k, a in enumerate(names):
            if a not in known:
                raise ParseError(f"unknown property {a!r}", field=f"xi.{p}[{k}]")
        resolved[p] = tuple(names)

    ortho_pairs, include_bottom = None, False
    if "ortho" in doc:
        ortho = doc["ortho"]
        if not isinstance(ortho, dict) or not set(ortho) <= {"pairs", "include_bottom_pairs"}:
            raise ParseError('expected {"pairs": [...], "include_bottom_pairs": bool}', field="ortho")
        ortho_pairs = _pair_list(ortho.get("pairs", []), "ortho.pairs", known, "property")
        include_bottom = ortho.get("include_bottom_pairs", False)
        if not isinstance(include_bottom, bool):
            raise ParseError("expected a boolean", field="ortho.include_bottom_pairs")
    return StructureBundle(tuple(states), tuple(props), doc["bottom"], doc["top"], order_pairs,
                           resolved, ortho_pairs, include_bottom)


def loads_bundle(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                         field="$") from None
    return parse_document(doc)


def load_bundle(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", field=str(path)) from None
    return loads_bundle(text)


def fixture_text(name):
    return resources.files("orthosps").joinpath("fixtures", name).read_text(encoding="utf-8")


def load_fixture(name):
    return loads_bundle(fixture_text(name))
