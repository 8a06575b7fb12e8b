"""Reading and writing relations as CSV or JSON files.

CSV: the first line lists attribute names, each following line one row.
An unquoted field made of digits (optionally with a leading ``-``) is an
integer, ``true``/``false`` are booleans, and anything else, or any
double-quoted field, is text.

JSON: ``{"header": [...], "rows": [[...], ...]}`` with row values matched
positionally to the header.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import HeaderMismatch, ParseError
from .relation import Relation, Value, check_user_attribute, make_relation

_INT_RE = re.compile(r"-?[0-9]+\Z")


def _split_csv_line(line: str, lineno: int) -> list[tuple[str, bool]]:
    # The csv module cannot report whether a field was quoted, and quoting
    # decides between text and int/bool here.
    fields: list[tuple[str, bool]] = []
    i, n = 0, len(line)
    while True:
        while i < n and line[i] in " \t":
            i += 1
        if i < n and line[i] == '"':
            i += 1
            buf = []
            while True:
                if i >= n:
                    raise ParseError("unterminated quoted field", lineno, i + 1)
                ch = line[i]
                if ch == '"':
                    if i + 1 < n and line[i + 1] == '"':
                        buf.append('"')
                        i += 2
                        continue
                    i += 1
                    break
                buf.append(ch)
                i += 1
            while i < n and line[i] in " \t":
                i += 1
            if i < n and line[i] != ",":
                raise ParseError("unexpected character after quoted field", lineno, i + 1)
            fields.append(("".join(buf), True))
        else:
            j = line.find(",", i)
            end = n if j < 0 else j
            fields.append((line[i:end].strip(), False))
            i = end
        if i >= n:
            return fields
        i += 1  # skip the comma


def parse_value(text: str, quoted: bool = False) -> Value:
    if quoted:
        return text
    if _INT_RE.match(text):
        return int(text)
    if text == "true":
        return True
    if text == "false":
        return False
    return text


def format_value(value: Value) -> str:
    """Inverse of :func:`parse_value` for CSV output."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if _INT_RE.match(value) or value in ("true", "false") or any(
        ch in value for ch in ',"'
    ) or value != value.strip() or value == "":
        return '"' + value.replace('"', '""') + '"'
    return value


def parse_csv(text: str) -> Relation:
    lines = [(n, ln) for n, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise ParseError("empty CSV input: a header line naming attributes is required", 1, 1)
    head_no, head = lines[0]
    header = [name for name, _ in _split_csv_line(head, head_no)]
    try:
        for a in header:
            check_user_attribute(a)
    except ValueError as exc:
        raise ParseError(str(exc), head_no, 1) from None
    rows = []
    for lineno, line in lines[1:]:
        fields = _split_csv_line(line, lineno)
        if len(fields) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, found {len(fields)}", lineno, 1
            )
        rows.append(tuple(parse_value(t, q) for t, q in fields))
    try:
        return make_relation(header, rows)
    except HeaderMismatch as exc:
        raise ParseError(str(exc), 1, 1) from None


def to_csv(rel: Relation) -> str:
    if not rel.attrs:
        raise ValueError("CSV cannot represent a nullary relation; use JSON")
    lines = [",".join(rel.attrs)]
    for t in rel.tuples():
        lines.append(",".join(format_value(v) for v in t))
    return "\n".join(lines) + "\n"


def parse_json(text: str) -> Relation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "header" not in doc or "rows" not in doc:
        raise ParseError('JSON relation must be an object with "header" and "rows"')
    header = doc["header"]
    try:
        for a in header:
            check_user_attribute(a)
        return make_relation(list(header), [tuple(r) for r in doc["rows"]])
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from None


def to_json(rel: Relation) -> str:
    return json.dumps({"header": list(rel.attrs), "rows": [list(t) for t in rel.tuples()]})


def load_relation(path: str | Path) -> Relation:
    """Load a relation, choosing the format by file extension (``.json`` or CSV)."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        return parse_json(text)
    return parse_csv(text)
