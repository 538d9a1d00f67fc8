#!/usr/bin/env python3
"""
Input Parsing
Text formats accepted on the command line:
    matrix  "a,b;c,d"
    digits  "x1,y1;x2,y2;x3,y3"
    box     "x0,x1,y0,y1"
Whitespace around tokens is ignored. Errors carry the 0-based position of the
offending character.
"""

import re

from app.errors import ParseError
from app.modules.exactalg import IMat2, IVec2

INTEGER = re.compile(r"[+-]?\d+")
NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")


def _tokens(text: str, separator: str, start: int = 0):
    """Yields (token, position of its first non-space character)."""
    offset = start
    for chunk in text.split(separator):
        stripped = chunk.strip()
        lead = len(chunk) - len(chunk.lstrip())
        yield stripped, offset + (lead if stripped else 0)
        offset += len(chunk) + 1


def _integer_rows(text: str, rows: int, what: str) -> list[list[int]]:
    if not text.strip():
        raise ParseError(f"empty {what}", text, 0)

    parsed = []
    row_chunks = text.split(";")
    if len(row_chunks) != rows:
        raise ParseError(f"{what} needs {rows} rows separated by ';', got {len(row_chunks)}", text, len(text))

    offset = 0
    for chunk in row_chunks:
        row = []
        cells = list(_tokens(chunk, ",", offset))
        if len(cells) != 2:
            raise ParseError(f"{what} row needs 2 entries, got {len(cells)}", text, offset + len(chunk))
        for token, position in cells:
            if not INTEGER.fullmatch(token):
                raise ParseError(f"expected an integer, got {token!r}", text, position)
            row.append(int(token))
        parsed.append(row)
        offset += len(chunk) + 1
    return parsed


def parse_matrix(text: str) -> IMat2:
    return IMat2.from_rows(_integer_rows(text, 2, "matrix"))


def parse_digits(text: str) -> tuple[IVec2, IVec2, IVec2]:
    return tuple(IVec2(x, y) for x, y in _integer_rows(text, 3, "digit set"))


def parse_points(text: str, count: int = 3) -> tuple[IVec2, ...]:
    return tuple(IVec2(x, y) for x, y in _integer_rows(text, count, "point set"))


def parse_box(text: str) -> tuple[float, float, float, float]:
    values = []
    for token, position in _tokens(text, ","):
        if not NUMBER.fullmatch(token):
            raise ParseError(f"expected a number, got {token!r}", text, position)
        values.append(float(token))
    if len(values) != 4:
        raise ParseError(f"box needs 4 numbers x0,x1,y0,y1, got {len(values)}", text, len(text))

    x0, x1, y0, y1 = values
    if x0 >= x1 or y0 >= y1:
        raise ParseError("box must satisfy x0 < x1 and y0 < y1", text, 0)
    return x0, x1, y0, y1
