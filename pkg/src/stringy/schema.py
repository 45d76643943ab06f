"""JSON wire format for input documents and computed reports.

Rationals travel as "p/q" strings (never decimals), E-polynomials as sparse
[p, q, coeff] triples in lexicographic order, and serialization is
canonical: sorted keys, reduced fractions, trailing newline.  Exporting a
document, parsing it back and exporting again is byte-identical.  Unknown
fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .bipoly import BiPoly
from .errors import SchemaError
from .hodge import ChernData, HodgeDiamond
from .invariants import DivisorInfo, ResolutionData, StratumData
from .rational import format_rat, parse_rat

_RESOLUTION_ASSERTIONS = ("e_st", "c_st_1_n1")
_DIAMOND_ASSERTIONS = ("euler", "c1_cn1_inferred")


@dataclass(frozen=True)
class ParsedInput:
    """Either kind of input document, normalized."""

    kind: str
    resolution: Optional[ResolutionData] = None
    diamond: Optional[HodgeDiamond] = None
    chern: Optional[ChernData] = None
    canonical_class_trivial: bool = False
    assertions: Mapping[str, Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "assertions", dict(self.assertions or {}))


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"{where}: unknown fields {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise SchemaError(f"{where}: missing fields {sorted(missing)}")


def _parse_int(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{where}: expected an integer, got {value!r}")
    return value


def _parse_triples(raw, where: str) -> dict[tuple[int, int], int]:
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: expected a list of [p, q, coeff] triples")
    out: dict[tuple[int, int], int] = {}
    for item in raw:
        if (not isinstance(item, list) or len(item) != 3
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            raise SchemaError(f"{where}: bad triple {item!r}")
        p, q, coeff = item
        if (p, q) in out:
            raise SchemaError(f"{where}: duplicate exponent pair ({p}, {q})")
        out[(p, q)] = coeff
    return out


def _parse_optional_rat(obj: dict, key: str, where: str) -> Optional[Fraction]:
    if key not in obj or obj[key] is None:
        return None
    return parse_rat(obj[key])


def _parse_assertions(obj: dict, allowed: tuple[str, ...]) -> dict[str, Fraction]:
    raw = obj.get("assertions")
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise SchemaError("assertions: expected an object")
    out = {}
    for name, value in raw.items():
        if name not in allowed:
            raise SchemaError(f"assertions: unknown invariant {name!r} "
                              f"(allowed: {', '.join(allowed)})")
        out[name] = parse_rat(value)
    return out


def parse_input(document: dict) -> ParsedInput:
    """Parse and normalize an input document of either kind."""
    if not isinstance(document, dict):
        raise SchemaError("input document must be a JSON object")
    kind = document.get("kind")
    if kind == "resolution":
        return _parse_resolution(document)
    if kind == "hodge_diamond":
        return _parse_diamond(document)
    raise SchemaError(f"kind must be 'resolution' or 'hodge_diamond', got {kind!r}")


def _parse_resolution(document: dict) -> ParsedInput:
    _require_keys(document,
                  {"kind", "dimension", "divisors", "strata", "assertions"},
                  {"kind", "dimension", "divisors", "strata"}, "document")
    n = _parse_int(document["dimension"], "dimension")
    if not isinstance(document["divisors"], list):
        raise SchemaError("divisors: expected a list")
    divisors = []
    for i, raw in enumerate(document["divisors"]):
        where = f"divisors[{i}]"
        _require_keys(raw, {"id", "discrepancy"}, {"id", "discrepancy"}, where)
        divisors.append(DivisorInfo(_parse_int(raw["id"], where),
                                    parse_rat(raw["discrepancy"])))
    if not isinstance(document["strata"], list):
        raise SchemaError("strata: expected a list")
    strata = []
    seen = set()
    for i, raw in enumerate(document["strata"]):
        where = f"strata[{i}]"
        _require_keys(raw,
                      {"J", "e_polynomial", "euler", "c1_cd1",
                       "pullback_c1_cd1", "normal_restrictions"},
                      {"J", "e_polynomial"}, where)
        if not isinstance(raw["J"], list):
            raise SchemaError(f"{where}: J must be a list of divisor ids")
        subset = frozenset(_parse_int(j, f"{where}.J") for j in raw["J"])
        if len(subset) != len(raw["J"]):
            raise SchemaError(f"{where}: duplicate ids in J")
        if subset in seen:
            raise SchemaError(f"{where}: duplicate stratum for J")
        seen.add(subset)
        e_poly = BiPoly(_parse_triples(raw["e_polynomial"], f"{where}.e_polynomial"))
        euler = None
        if raw.get("euler") is not None:
            euler = _parse_int(raw["euler"], f"{where}.euler")
        restrictions = None
        if raw.get("normal_restrictions") is not None:
            if not isinstance(raw["normal_restrictions"], dict):
                raise SchemaError(f"{where}.normal_restrictions: expected an object")
            restrictions = {}
            for key, value in raw["normal_restrictions"].items():
                try:
                    j = int(key)
                except ValueError:
                    raise SchemaError(f"{where}.normal_restrictions: bad id {key!r}")
                restrictions[j] = parse_rat(value)
        strata.append(StratumData(
            subset, e_poly, n - len(subset), euler=euler,
            c1_cd1=_parse_optional_rat(raw, "c1_cd1", where),
            pullback_c1_cd1=_parse_optional_rat(raw, "pullback_c1_cd1", where),
            normal_restrictions=restrictions))
    data = ResolutionData.build(n, divisors, strata)
    return ParsedInput("resolution", resolution=data,
                       assertions=_parse_assertions(document, _RESOLUTION_ASSERTIONS))


def _parse_diamond(document: dict) -> ParsedInput:
    _require_keys(document,
                  {"kind", "dimension", "hodge_numbers", "c1_cn1",
                   "canonical_class_trivial", "assertions"},
                  {"kind", "dimension", "hodge_numbers"}, "document")
    n = _parse_int(document["dimension"], "dimension")
    numbers = _parse_triples(document["hodge_numbers"], "hodge_numbers")
    for (p, q), h in numbers.items():
        if h < 0:
            raise SchemaError(f"hodge_numbers: negative entry at ({p}, {q})")
    diamond = HodgeDiamond(n, numbers)
    chern = None
    c1_cn1 = _parse_optional_rat(document, "c1_cn1", "document")
    if c1_cn1 is not None:
        euler = sum((-1) ** (p + q) * h for (p, q), h in numbers.items())
        chern = ChernData(euler, c1_cn1)
    trivial = document.get("canonical_class_trivial", False)
    if not isinstance(trivial, bool):
        raise SchemaError("canonical_class_trivial must be a boolean")
    return ParsedInput("hodge_diamond", diamond=diamond, chern=chern,
                       canonical_class_trivial=trivial,
                       assertions=_parse_assertions(document, _DIAMOND_ASSERTIONS))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _triples(poly_terms) -> list[list[int]]:
    return [[p, q, coeff] for (p, q), coeff in poly_terms]


def document_from_resolution(data: ResolutionData,
                             assertions: Mapping[str, Fraction] | None = None) -> dict:
    strata = []
    for J in data.subsets():
        s = data.strata[J]
        if s.is_empty and s.euler is None and s.c1_cd1 is None \
                and s.pullback_c1_cd1 is None and not s.normal_restrictions:
            continue  # empty strata are implied; the parser refills them
        record: dict = {"J": sorted(s.subset), "e_polynomial": _triples(s.e_poly.terms())}
        if s.euler is not None:
            record["euler"] = s.euler
        if s.c1_cd1 is not None:
            record["c1_cd1"] = format_rat(s.c1_cd1)
        if s.pullback_c1_cd1 is not None:
            record["pullback_c1_cd1"] = format_rat(s.pullback_c1_cd1)
        if s.normal_restrictions:
            record["normal_restrictions"] = {
                str(j): format_rat(x) for j, x in sorted(s.normal_restrictions.items())}
        strata.append(record)
    document = {
        "kind": "resolution",
        "dimension": data.dimension,
        "divisors": [{"id": d.index, "discrepancy": format_rat(d.discrepancy)}
                     for d in data.divisors],
        "strata": strata,
    }
    if assertions:
        document["assertions"] = {name: format_rat(value)
                                  for name, value in sorted(assertions.items())}
    return document


def document_from_diamond(diamond: HodgeDiamond,
                          c1_cn1: Fraction | None = None,
                          canonical_class_trivial: bool = False,
                          assertions: Mapping[str, Fraction] | None = None) -> dict:
    document: dict = {
        "kind": "hodge_diamond",
        "dimension": diamond.n,
        "hodge_numbers": [[p, q, h] for (p, q), h in sorted(diamond.entries.items())],
    }
    if c1_cn1 is not None:
        document["c1_cn1"] = format_rat(c1_cn1)
    if canonical_class_trivial:
        document["canonical_class_trivial"] = True
    if assertions:
        document["assertions"] = {name: format_rat(value)
                                  for name, value in sorted(assertions.items())}
    return document


def canonical_json(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + "\n"
