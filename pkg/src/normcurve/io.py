"""Curve files and report serialisation.

Curve file (JSON)::

    {"field": "rational" | {"prime": p}, "n": 3, "d": 3,
     "forms": [["1", "0", "0", "0"], ...]}

Rational scalars are "num/den" strings (plain integers are accepted);
prime-field scalars are integers.  A t-file has the same shape without "n".
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Sequence

from .binform import BinForm
from .curve import ParamCurve
from .exactfield import FieldSpec


class CurveFileError(ValueError):
    pass


def parse_field(raw: Any) -> FieldSpec:
    if raw in ("rational", "rationals", "Q"):
        return FieldSpec.rationals()
    if isinstance(raw, dict) and set(raw) == {"prime"}:
        p = raw["prime"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise CurveFileError("prime modulus must be an integer")
        try:
            return FieldSpec.prime(p)
        except ValueError as exc:
            raise CurveFileError(str(exc)) from exc
    raise CurveFileError(f"unrecognised field {raw!r}")


def format_scalar(x, field: FieldSpec):
    if field.is_prime_field:
        return int(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_scalar(raw, field: FieldSpec):
    if isinstance(raw, bool):
        raise CurveFileError(f"bad scalar {raw!r}")
    if field.is_prime_field:
        if not isinstance(raw, int):
            raise CurveFileError(f"prime-field scalars must be integers, got {raw!r}")
        return field(raw)
    if isinstance(raw, int):
        return field(raw)
    if not isinstance(raw, str):
        raise CurveFileError(f"rational scalars must be strings, got {raw!r}")
    try:
        return field(Fraction(raw.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise CurveFileError(f"bad rational {raw!r}: {exc}") from exc


def _parse_forms(rows: Any, d: int, field: FieldSpec) -> tuple[BinForm, ...]:
    if not isinstance(rows, list) or not rows:
        raise CurveFileError("'forms' must be a non-empty array")
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != d + 1:
            raise CurveFileError(f"each form needs d+1 = {d + 1} coefficients")
        out.append(BinForm(tuple(_parse_scalar(x, field) for x in row), field))
    return tuple(out)


def _int_field(data: dict, key: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise CurveFileError(f"'{key}' must be an integer")
    return v


def curve_from_json(data: Any) -> ParamCurve:
    if not isinstance(data, dict):
        raise CurveFileError("curve file must hold a JSON object")
    field = parse_field(data.get("field"))
    n, d = _int_field(data, "n"), _int_field(data, "d")
    if n < 2 or d < 1:
        raise CurveFileError("need n >= 2 and d >= 1")
    if field.is_prime_field and field.p <= 40 * d:
        raise CurveFileError(f"prime {field.p} not admissible for degree {d}")
    forms = _parse_forms(data.get("forms"), d, field)
    if len(forms) != n + 1:
        raise CurveFileError(f"expected n+1 = {n + 1} forms, got {len(forms)}")
    try:
        return ParamCurve(forms, field)
    except ValueError as exc:
        raise CurveFileError(str(exc)) from exc


def curve_to_json(c: ParamCurve) -> dict:
    return {
        "field": c.field.to_json(),
        "n": c.n,
        "d": c.d,
        "forms": [[format_scalar(x, c.field) for x in f.coeffs] for f in c.forms],
    }


def forms_from_json(data: Any, field: FieldSpec, d: int) -> tuple[BinForm, ...]:
    if not isinstance(data, dict):
        raise CurveFileError("forms file must hold a JSON object")
    if "field" in data and parse_field(data["field"]) != field:
        raise CurveFileError("forms file field differs from the base curve field")
    if "d" in data and _int_field(data, "d") != d:
        raise CurveFileError(f"forms file degree differs from base degree {d}")
    return _parse_forms(data.get("forms"), d, field)


def load_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise CurveFileError(f"{path}: {exc}") from exc


def read_curve(path: str) -> ParamCurve:
    return curve_from_json(load_json(path))


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str] | None = None) -> str:
    if columns is None:
        columns = []
        for row in rows:
            for k in row:
                if k not in columns:
                    columns.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row.get(k) for k in columns})
    return buf.getvalue()
