"""JSON encodings for every object crossing the tool boundary.

All rationals travel as exact [numerator, denominator] pairs; no
floating point appears in any interface.  Encoders emit terms in the
canonical order so output is byte-deterministic; decoders validate and
raise ValueError on malformed input (the CLI maps that to exit code 1).
"""

from __future__ import annotations

from fractions import Fraction

from .diffops import MultiDiffOp
from .model import FlatModel
from .poly import Poly
from .starprod import TruncatedStar
from .symbols import MultiVector, SymbolChain, VectorField


def model_to_json(model: FlatModel) -> dict:
    return {"n_total": model.n_total, "n_wobs": model.n_wobs, "n_null": model.n_null}


def model_from_json(data: dict) -> FlatModel:
    try:
        return FlatModel(int(data["n_total"]), int(data["n_wobs"]), int(data["n_null"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed model: {exc}") from exc


def poly_to_json(p: Poly) -> dict:
    return {"terms": [{"coeff": [c.numerator, c.denominator], "exp": list(e)}
                      for e, c in p.sorted_terms()]}


def poly_from_json(data: dict, nvars: int) -> Poly:
    if not isinstance(data, dict) or "terms" not in data:
        raise ValueError("polynomial JSON needs a 'terms' array")
    terms = {}
    for item in data["terms"]:
        try:
            num, den = item["coeff"]
            exp = tuple(int(e) for e in item["exp"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial term {item}: {exc}") from exc
        if len(exp) != nvars:
            raise ValueError(f"exponent {exp} does not match {nvars} variables")
        terms[exp] = terms.get(exp, Fraction(0)) + Fraction(int(num), int(den))
    return Poly(nvars, terms)


def chain_to_json(chain: SymbolChain) -> dict:
    return {"arity": chain.arity,
            "terms": [{"coeff_poly": poly_to_json(coeff), "slots": [list(w) for w in slots]}
                      for slots, coeff in chain.sorted_terms()]}


def chain_from_json(data: dict, model: FlatModel) -> SymbolChain:
    if not isinstance(data, dict) or "arity" not in data or "terms" not in data:
        raise ValueError("symbol chain JSON needs 'arity' and 'terms'")
    arity = int(data["arity"])
    terms = []
    for item in data["terms"]:
        try:
            coeff = poly_from_json(item["coeff_poly"], model.n_total)
            slots = tuple(tuple(sorted(int(i) for i in w)) for w in item["slots"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed chain term {item}: {exc}") from exc
        terms.append((slots, coeff))
    return SymbolChain(model, arity, terms)


def op_to_json(op: MultiDiffOp) -> dict:
    return {"symbol": chain_to_json(op.symbol)}


def op_from_json(data: dict, model: FlatModel) -> MultiDiffOp:
    if not isinstance(data, dict) or "symbol" not in data:
        raise ValueError("operator JSON needs a 'symbol'")
    return MultiDiffOp(chain_from_json(data["symbol"], model))


def field_to_json(x: VectorField) -> dict:
    return {"components": [poly_to_json(c) for c in x.components]}


def field_from_json(data: dict, model: FlatModel) -> VectorField:
    if not isinstance(data, dict) or "components" not in data:
        raise ValueError("vector field JSON needs 'components'")
    comps = [poly_from_json(c, model.n_total) for c in data["components"]]
    if len(comps) != model.n_total:
        raise ValueError(f"need {model.n_total} components, got {len(comps)}")
    return VectorField(model, comps)


def multivector_to_json(x: MultiVector) -> dict:
    return {"degree": x.degree,
            "terms": [{"coeff_poly": poly_to_json(c), "indices": list(idx)}
                      for idx, c in sorted(x.terms.items())]}


def multivector_from_json(data: dict, model: FlatModel) -> MultiVector:
    if not isinstance(data, dict) or "degree" not in data or "terms" not in data:
        raise ValueError("multivector JSON needs 'degree' and 'terms'")
    terms = []
    for item in data["terms"]:
        try:
            coeff = poly_from_json(item["coeff_poly"], model.n_total)
            idx = tuple(int(i) for i in item["indices"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed multivector term {item}: {exc}") from exc
        terms.append((idx, coeff))
    return MultiVector(model, int(data["degree"]), terms)


def star_to_json(star: TruncatedStar) -> dict:
    return {"order": star.order, "cochains": [op_to_json(c) for c in star.cochains]}


def star_from_json(data: dict, model: FlatModel) -> TruncatedStar:
    if not isinstance(data, dict) or "order" not in data or "cochains" not in data:
        raise ValueError("star product JSON needs 'order' and 'cochains'")
    cochains = [op_from_json(c, model) for c in data["cochains"]]
    if len(cochains) != int(data["order"]):
        raise ValueError("'order' does not match the number of cochains")
    return TruncatedStar(model, cochains)


# -- human-readable rendering -------------------------------------------------


def poly_str(p: Poly) -> str:
    return str(p)


def chain_str(chain: SymbolChain) -> str:
    """Pretty form in the canonical term order, e.g. -1 d1(x)d3."""
    if chain.is_zero():
        return "0"
    parts = []
    for slots, coeff in chain.sorted_terms():
        words = "(x)".join("v".join(f"d{i}" for i in w) for w in slots)
        parts.append(f"({coeff}) {words}")
    return "  +  ".join(parts)


def multivector_str(x: MultiVector) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for idx, coeff in sorted(x.terms.items()):
        words = "^".join(f"d{i}" for i in idx)
        parts.append(f"({coeff}) {words}")
    return "  +  ".join(parts)
