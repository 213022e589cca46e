"""Line-oriented text formats.

q-expansion files (``format: qexp/1``)::

    # comment
    format: qexp/1
    field: rational | cyclotomic | finite ell=5 modulus=[2,0,1]
    weight: 4
    level: 1
    character: modulus=1 images=[]
    precision: 3
    0: 1/120
    1: 2
    2: 18

Coefficients are rationals ``num/den``, cyclotomic coordinate lists
``[c0,c1,...]@m`` or finite-field coordinate lists ``[r0,...,r_{k-1}]``.
Every index below the precision appears exactly once.

Representation files (``format: repr/1``) carry ``kind: eigenform`` with
weight, level, character, field, optional ``max_prime`` and ``p: a_p`` lines,
or ``kind: reducible`` with ell, psi, phi, a and b.  Character files
(``format: char/1``) hold a single ``character:`` line.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction
from pathlib import Path

from sympy import sieve

from .arith import CycloElement, FieldDescriptor, FieldElement
from .characters import DirichletCharacter, parse_character
from .qexp import QExpansion
from .representations import Eigenform, Reducible, ReprSource


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# fields and coefficients

def format_field(field: FieldDescriptor | str) -> str:
    if isinstance(field, str):
        return field
    if field.degree == 1:
        return f"finite ell={field.ell}"
    return f"finite ell={field.ell} modulus=[{','.join(map(str, field.modulus))}]"


_FINITE = re.compile(r"^finite\s+ell=(\d+)(?:\s+modulus=(\[[\d,\s]*\]))?$")


def parse_field(text: str) -> FieldDescriptor | str:
    text = text.strip()
    if text in ("rational", "cyclotomic"):
        return text
    m = _FINITE.match(text)
    if not m:
        raise FormatError(f"unknown field {text!r}")
    ell = int(m.group(1))
    if m.group(2) is None:
        return FieldDescriptor(ell)
    modulus = tuple(ast.literal_eval(m.group(2)))
    return FieldDescriptor(ell, len(modulus) - 1, modulus)


def _field_of(x) -> FieldDescriptor | str:
    if isinstance(x, FieldElement):
        return x.descriptor
    if isinstance(x, CycloElement):
        return "cyclotomic"
    return "rational"


def format_coefficient(x) -> str:
    if isinstance(x, FieldElement):
        return "[" + ",".join(map(str, x.coords)) + "]"
    if isinstance(x, CycloElement):
        return "[" + ",".join(map(str, x.coeffs)) + f"]@{x.order}"
    return str(Fraction(x))


def parse_coefficient(text: str, field: FieldDescriptor | str):
    text = text.strip()
    try:
        if isinstance(field, FieldDescriptor):
            coords = ast.literal_eval(text) if text.startswith("[") else [int(text)]
            if len(coords) != field.degree:
                raise FormatError(f"expected {field.degree} coordinates: {text!r}")
            return field.coerce(list(coords))
        if field == "cyclotomic":
            body, _, order = text.rpartition("@")
            if not body.startswith("["):
                return CycloElement.from_rational(Fraction(text))
            parts = [p for p in body.strip("[]").split(",") if p.strip()]
            return CycloElement(int(order), tuple(Fraction(p.strip()) for p in parts))
        return Fraction(text)
    except (ValueError, SyntaxError, ZeroDivisionError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad coefficient {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# generic header/body parsing

def _split(text: str) -> tuple[dict[str, str], list[tuple[int, str]]]:
    header: dict[str, str] = {}
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        if key.isdigit():
            body.append((int(key), value.strip()))
        else:
            if key in header:
                raise FormatError(f"line {lineno}: duplicate key {key!r}")
            header[key] = value.strip()
    return header, body


def _need(header: dict, key: str) -> str:
    try:
        return header[key]
    except KeyError:
        raise FormatError(f"missing header key {key!r}") from None


def _bool(text: str) -> bool:
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise FormatError(f"not a boolean: {text!r}")


# ---------------------------------------------------------------------------
# q-expansion files

def dumps_qexp(f: QExpansion) -> str:
    lines = [
        "format: qexp/1",
        f"field: {format_field(_field_of(f[0]))}",
        f"weight: {f.weight}",
        f"level: {f.level}",
        f"character: {f.character.serialize()}",
        f"precision: {f.precision}",
    ]
    if f.mixed_weight:
        lines.append("mixed_weight: true")
    lines += [f"{n}: {format_coefficient(c)}" for n, c in enumerate(f.coeffs)]
    return "\n".join(lines) + "\n"


def loads_qexp(text: str) -> QExpansion:
    header, body = _split(text)
    if _need(header, "format") != "qexp/1":
        raise FormatError(f"not a qexp/1 file: format {header['format']!r}")
    field = parse_field(_need(header, "field"))
    B = int(_need(header, "precision"))
    if B < 1:
        raise FormatError("precision must be at least 1")
    coeffs: dict[int, object] = {}
    for n, value in body:
        if n in coeffs:
            raise FormatError(f"index {n} appears twice")
        if n >= B:
            raise FormatError(f"index {n} beyond precision {B}")
        coeffs[n] = parse_coefficient(value, field)
    missing = [n for n in range(B) if n not in coeffs]
    if missing:
        raise FormatError(f"missing coefficient index {missing[0]}")
    return QExpansion(
        tuple(coeffs[n] for n in range(B)),
        int(_need(header, "weight")),
        int(_need(header, "level")),
        parse_character(_need(header, "character")),
        _bool(header.get("mixed_weight", "false")),
    )


# ---------------------------------------------------------------------------
# representation files

def dumps_repr(src: ReprSource, max_prime: int | None = None) -> str:
    if isinstance(src, Reducible):
        return "\n".join([
            "format: repr/1",
            "kind: reducible",
            f"ell: {src.ell}",
            f"psi: {src.psi.serialize()}",
            f"phi: {src.phi.serialize()}",
            f"a: {src.a}",
            f"b: {src.b}",
        ]) + "\n"
    values = list(src.ap_table.values())
    field = src.field or (_field_of(values[0]) if values else "rational")
    if any(isinstance(v, CycloElement) for v in values):
        field = "cyclotomic"
    lines = [
        "format: repr/1",
        "kind: eigenform",
        f"ell: {src.ell}",
        f"weight: {src.weight}",
        f"level: {src.level}",
        f"character: {src.character.serialize()}",
        f"field: {format_field(field)}",
    ]
    if max_prime is not None:
        lines.append(f"max_prime: {max_prime}")
    if src.serre_minimal:
        lines.append("serre_minimal: true")
    lines += [f"{p}: {format_coefficient(src.ap_table[p])}" for p in sorted(src.ap_table)]
    return "\n".join(lines) + "\n"


def loads_repr(text: str) -> ReprSource:
    header, body = _split(text)
    if _need(header, "format") != "repr/1":
        raise FormatError(f"not a repr/1 file: format {header['format']!r}")
    kind = _need(header, "kind")
    ell = int(_need(header, "ell"))
    if kind == "reducible":
        if body:
            raise FormatError("reducible sources take no coefficient lines")
        a, b = int(_need(header, "a")), int(_need(header, "b"))
        top = max(ell - 2, 0)
        if not (0 <= a <= top and 0 <= b <= top):
            raise FormatError(f"exponents must lie in [0, {top}]")
        return Reducible(parse_character(_need(header, "psi")), parse_character(_need(header, "phi")), a, b, ell)
    if kind != "eigenform":
        raise FormatError(f"unknown kind {kind!r}")
    field = parse_field(_need(header, "field"))
    level = int(_need(header, "level"))
    table: dict[int, object] = {}
    for p, value in body:
        if p in table:
            raise FormatError(f"prime {p} appears twice")
        table[p] = parse_coefficient(value, field)
    if "max_prime" in header:
        top = int(header["max_prime"])
        absent = [p for p in sieve.primerange(2, top + 1) if p not in table and (ell * level) % p]
        if absent:
            raise FormatError(f"table does not cover prime {absent[0]} <= max_prime {top}")
    return Eigenform(
        level,
        int(_need(header, "weight")),
        parse_character(_need(header, "character")),
        table,
        ell,
        field if isinstance(field, FieldDescriptor) else None,
        _bool(header.get("serre_minimal", "false")),
    )


# ---------------------------------------------------------------------------
# character files

def dumps_char(chi: DirichletCharacter) -> str:
    return f"format: char/1\ncharacter: {chi.serialize()}\n"


def loads_char(text: str) -> DirichletCharacter:
    header, body = _split(text)
    if header.get("format", "char/1") != "char/1" or body:
        raise FormatError("not a char/1 file")
    return parse_character(_need(header, "character"))


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | Path, text: str):
    Path(path).write_text(text, encoding="utf-8")
