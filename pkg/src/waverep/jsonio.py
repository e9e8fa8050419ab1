"""JSON schemas for sets, group elements, points and functions.

Exact rationals travel as strings "p/q" so endpoints survive
serialization without float corruption; point coordinates accept either
decimal strings or exact "p/q pi" strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .boxes import Box, BoxSet
from .errors import InputError
from .funcs import ModulatedBoxSum, Term
from .groups import AdicVector, DilationMatrix, GroupElement, RealPoint, validate_dilation

__all__ = [
    "parse_ratio",
    "ratio_str",
    "parse_boxset",
    "boxset_json",
    "parse_point",
    "point_json",
    "parse_matrix_arg",
    "parse_group_element",
    "parse_mbs",
    "mbs_json",
    "load_json",
]


def parse_ratio(text) -> Fraction:
    try:
        if isinstance(text, str):
            return Fraction(text.strip())
        if isinstance(text, int):
            return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}: {exc}") from None
    raise InputError(f"bad rational {text!r} (use 'p/q' strings or integers)")


def ratio_str(f: Fraction) -> str:
    return str(f)


def parse_boxset(data: dict) -> BoxSet:
    try:
        dim = int(data["dim"])
        boxes = []
        for i, entry in enumerate(data["boxes"]):
            lo = tuple(parse_ratio(x) for x in entry["lo"])
            hi = tuple(parse_ratio(x) for x in entry["hi"])
            if len(lo) != dim or len(hi) != dim:
                raise InputError(f"box {i}: endpoint arity != dim")
            boxes.append(Box(lo, hi))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed set definition: {exc}") from None
    return BoxSet.of(dim, boxes)


def boxset_json(s: BoxSet) -> dict:
    return {
        "dim": s.dim,
        "boxes": [
            {"lo": [ratio_str(x) for x in b.lo], "hi": [ratio_str(x) for x in b.hi]}
            for b in s.boxes
        ],
    }


def parse_point(coords: list[str]) -> RealPoint:
    """Each coordinate a decimal string or an exact 'p/q pi' string."""
    pi_parts: list[Fraction] = []
    float_parts: list[float] = []
    exact = True
    for c in coords:
        text = str(c).strip()
        if text.endswith("pi"):
            pi_parts.append(parse_ratio(text[:-2].strip() or "1"))
            float_parts.append(0.0)
        else:
            exact = False
            try:
                float_parts.append(float(text))
            except ValueError:
                raise InputError(f"bad coordinate {text!r}") from None
    if exact:
        return RealPoint.from_pi(pi_parts)
    return RealPoint.from_floats(float_parts)


def point_json(x: RealPoint) -> list[str]:
    if x.pi_coords is not None:
        return [f"{ratio_str(f)} pi" for f in x.pi_coords]
    return [repr(c) for c in x.coords]


def parse_matrix_arg(text: str) -> DilationMatrix:
    """Inline JSON like [[2]] or a path to a JSON file holding the rows."""
    raw = text.strip()
    if raw.startswith("["):
        try:
            rows = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad matrix JSON: {exc}") from None
    else:
        rows = load_json(raw)
    try:
        return validate_dilation(rows)
    except InputError:
        raise
    except Exception as exc:  # rejection of the matrix argument is a usage error
        raise InputError(f"bad matrix: {exc}") from None


def parse_group_element(data: dict, A: DilationMatrix) -> GroupElement:
    try:
        v = [int(x) for x in data["v"]]
        j = int(data.get("j", 0))
        m = int(data.get("m", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed group element: {exc}") from None
    return GroupElement(AdicVector.of(A, v, j), m)


def parse_mbs(data: dict, A: DilationMatrix) -> ModulatedBoxSum:
    try:
        terms = []
        for entry in data["terms"]:
            coef = complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
            beta_data = entry.get("beta", {"v": [0] * A.n, "j": 0})
            beta = AdicVector.of(
                A, [int(x) for x in beta_data["v"]], int(beta_data.get("j", 0))
            )
            lo = tuple(parse_ratio(x) for x in entry["box"]["lo"])
            hi = tuple(parse_ratio(x) for x in entry["box"]["hi"])
            terms.append(Term(coef, beta, Box(lo, hi)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed function definition: {exc}") from None
    return ModulatedBoxSum(A, tuple(terms))


def mbs_json(f: ModulatedBoxSum) -> dict:
    return {
        "terms": [
            {
                "re": t.coef.real,
                "im": t.coef.imag,
                "beta": {"v": list(t.beta.v), "j": t.beta.j},
                "box": {
                    "lo": [ratio_str(x) for x in t.box.lo],
                    "hi": [ratio_str(x) for x in t.box.hi],
                },
            }
            for t in f.terms
        ]
    }


def load_json(path: str):
    p = Path(path)
    if not p.exists():
        raise InputError(f"file not found: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
