"""Pure-Python Turtle tokenizer.

Fallback twin of the compiled scanner in ``_scan_c``; both must produce
identical token streams and identical errors for every input. Keep the two
files in lockstep (the parity test suite enforces this).
"""

from __future__ import annotations

from patchrepo.rdf._tokens import (
    ATNAME,
    BLANK,
    CARETS,
    COMMA,
    DOT,
    EOF,
    IRIREF,
    KW_A,
    LBRACK,
    PNAME,
    RBRACK,
    SEMI,
    STRING,
)
from patchrepo.rdf.errors import TurtleParseError

BACKEND = "python"

_HEX = "0123456789abcdefABCDEF"
_STRING_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


def _is_name_start(c: str) -> bool:
    return c == "_" or ("A" <= c <= "Z") or ("a" <= c <= "z")


def _is_name_char(c: str) -> bool:
    return (
        ("A" <= c <= "Z")
        or ("a" <= c <= "z")
        or ("0" <= c <= "9")
        or c == "_"
        or c == "-"
    )


def _unescape_codepoint(text: str, i: int, width: int, line: int, col: int) -> tuple[str, int]:
    """Decode \\uXXXX / \\UXXXXXXXX starting after the marker letter."""
    end = i + width
    if end > len(text):
        raise TurtleParseError("truncated unicode escape", line, col)
    digits = text[i:end]
    for d in digits:
        if d not in _HEX:
            raise TurtleParseError("bad unicode escape digit", line, col, digits)
    code = int(digits, 16)
    if code > 0x10FFFF or 0xD800 <= code <= 0xDFFF:
        raise TurtleParseError("unicode escape out of range", line, col, digits)
    return chr(code), end


def tokenize(text: str) -> list[tuple]:
    """Scan a Turtle document into (kind, value, line, column) tuples.

    Raises TurtleParseError with a 1-based position on any lexical fault;
    the returned list always ends with an EOF token.
    """
    toks: list[tuple] = []
    i = 0
    n = len(text)
    line = 1
    line_start = 0

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            line_start = i
            continue
        if c == " " or c == "\t" or c == "\r":
            i += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue

        col = i - line_start + 1

        if c == "<":
            i += 1
            buf: list[str] = []
            while True:
                if i >= n:
                    raise TurtleParseError("unterminated IRI", line, col)
                ch = text[i]
                if ch == ">":
                    i += 1
                    break
                if ch == "\\":
                    marker = text[i + 1] if i + 1 < n else ""
                    if marker == "u":
                        decoded, i = _unescape_codepoint(text, i + 2, 4, line, col)
                    elif marker == "U":
                        decoded, i = _unescape_codepoint(text, i + 2, 8, line, col)
                    else:
                        raise TurtleParseError("illegal escape in IRI", line, col, marker)
                    buf.append(decoded)
                    continue
                if ch in '<"{}|^`' or ord(ch) <= 0x20:
                    raise TurtleParseError("illegal character in IRI", line, col, ch)
                buf.append(ch)
                i += 1
            toks.append((IRIREF, "".join(buf), line, col))
        elif c == '"':
            i += 1
            buf = []
            while True:
                if i >= n:
                    raise TurtleParseError("unterminated string", line, col)
                ch = text[i]
                if ch == '"':
                    i += 1
                    break
                if ch == "\n" or ch == "\r":
                    raise TurtleParseError("newline in string", line, col)
                if ch == "\\":
                    marker = text[i + 1] if i + 1 < n else ""
                    if marker in _STRING_ESCAPES:
                        buf.append(_STRING_ESCAPES[marker])
                        i += 2
                        continue
                    if marker == "u":
                        decoded, i = _unescape_codepoint(text, i + 2, 4, line, col)
                    elif marker == "U":
                        decoded, i = _unescape_codepoint(text, i + 2, 8, line, col)
                    else:
                        raise TurtleParseError("illegal string escape", line, col, marker)
                    buf.append(decoded)
                    continue
                buf.append(ch)
                i += 1
            toks.append((STRING, "".join(buf), line, col))
        elif c == "@":
            i += 1
            start = i
            while i < n:
                ch = text[i]
                if ("A" <= ch <= "Z") or ("a" <= ch <= "z") or ("0" <= ch <= "9") or ch == "-":
                    i += 1
                else:
                    break
            if i == start:
                raise TurtleParseError("bare '@'", line, col)
            toks.append((ATNAME, text[start:i], line, col))
        elif c == "^":
            if i + 1 < n and text[i + 1] == "^":
                toks.append((CARETS, "^^", line, col))
                i += 2
            else:
                raise TurtleParseError("expected '^^'", line, col, c)
        elif c == ".":
            toks.append((DOT, ".", line, col))
            i += 1
        elif c == ";":
            toks.append((SEMI, ";", line, col))
            i += 1
        elif c == ",":
            toks.append((COMMA, ",", line, col))
            i += 1
        elif c == "[":
            toks.append((LBRACK, "[", line, col))
            i += 1
        elif c == "]":
            toks.append((RBRACK, "]", line, col))
            i += 1
        elif c == ":" or _is_name_start(c):
            if c == "_":
                # Only the '_:label' form may start with an underscore.
                if i + 1 >= n or text[i + 1] != ":":
                    raise TurtleParseError("expected ':' after '_'", line, col)
                i += 2
                start = i
                while i < n:
                    ch = text[i]
                    if ("A" <= ch <= "Z") or ("a" <= ch <= "z") or ("0" <= ch <= "9") or ch == "_":
                        i += 1
                    else:
                        break
                if i == start:
                    raise TurtleParseError("missing blank node label", line, col)
                toks.append((BLANK, text[start:i], line, col))
            else:
                start = i
                if c != ":":
                    i += 1
                    while i < n:
                        ch = text[i]
                        if _is_name_char(ch) or ch == ".":
                            i += 1
                        else:
                            break
                    while i > start and text[i - 1] == ".":
                        i -= 1
                prefix = text[start:i]
                if i < n and text[i] == ":":
                    i += 1
                    lstart = i
                    while i < n:
                        ch = text[i]
                        if _is_name_char(ch) or ch == ".":
                            i += 1
                        elif ch == "%":
                            if (
                                i + 2 < n
                                and text[i + 1] in _HEX
                                and text[i + 2] in _HEX
                            ):
                                i += 3
                            else:
                                raise TurtleParseError(
                                    "bad percent escape in local name", line, col
                                )
                        else:
                            break
                    while i > lstart and text[i - 1] == ".":
                        i -= 1
                    toks.append((PNAME, (prefix, text[lstart:i]), line, col))
                elif prefix == "a":
                    toks.append((KW_A, "a", line, col))
                else:
                    raise TurtleParseError("unexpected word", line, col, prefix)
        else:
            raise TurtleParseError("unexpected character", line, col, c)

    toks.append((EOF, "", line, n - line_start + 1))
    return toks
