# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Turtle tokenizer.

Twin of ``_scan_py``; both must produce identical token streams and
identical errors for every input. Keep the two files in lockstep (the
parity test suite enforces this).
"""

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

BACKEND = "compiled"


cdef inline bint _is_hex(Py_UCS4 c):
    return (u"0" <= c <= u"9") or (u"a" <= c <= u"f") or (u"A" <= c <= u"F")


cdef inline bint _is_name_start(Py_UCS4 c):
    return c == u"_" or (u"A" <= c <= u"Z") or (u"a" <= c <= u"z")


cdef inline bint _is_name_char(Py_UCS4 c):
    return (
        (u"A" <= c <= u"Z")
        or (u"a" <= c <= u"z")
        or (u"0" <= c <= u"9")
        or c == u"_"
        or c == u"-"
    )


cdef inline bint _is_string_escape(Py_UCS4 c):
    return (
        c == u"t" or c == u"b" or c == u"n" or c == u"r" or c == u"f"
        or c == u'"' or c == u"'" or c == u"\\"
    )


cdef inline Py_UCS4 _escape_value(Py_UCS4 marker):
    # quote, apostrophe, and backslash map to themselves
    if marker == u"t":
        return u"\t"
    if marker == u"b":
        return u"\b"
    if marker == u"n":
        return u"\n"
    if marker == u"r":
        return u"\r"
    if marker == u"f":
        return u"\f"
    return marker


cdef tuple _unescape_codepoint(
    str text, Py_ssize_t i, Py_ssize_t width, Py_ssize_t line, Py_ssize_t col
):
    """Decode \\uXXXX / \\UXXXXXXXX starting after the marker letter."""
    cdef Py_ssize_t end = i + width
    cdef Py_ssize_t k
    cdef str digits
    cdef long long code
    if end > len(text):
        raise TurtleParseError("truncated unicode escape", line, col)
    digits = text[i:end]
    for k in range(width):
        if not _is_hex(<Py_UCS4> digits[k]):
            raise TurtleParseError("bad unicode escape digit", line, col, digits)
    code = int(digits, 16)
    if code > 0x10FFFF or 0xD800 <= code <= 0xDFFF:
        raise TurtleParseError("unicode escape out of range", line, col, digits)
    return chr(code), end


def tokenize(str text):
    """Scan a Turtle document into (kind, value, line, column) tuples.

    Raises TurtleParseError with a 1-based position on any lexical fault;
    the returned list always ends with an EOF token.
    """
    cdef list toks = []
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t n = len(text)
    cdef Py_ssize_t line = 1
    cdef Py_ssize_t line_start = 0
    cdef Py_ssize_t col, start, lstart
    cdef Py_UCS4 c, ch, marker
    cdef bint has_marker
    cdef list buf
    cdef str value, prefix, decoded

    while i < n:
        c = text[i]
        if c == u"\n":
            i += 1
            line += 1
            line_start = i
            continue
        if c == u" " or c == u"\t" or c == u"\r":
            i += 1
            continue
        if c == u"#":
            while i < n and text[i] != u"\n":
                i += 1
            continue

        col = i - line_start + 1

        if c == u"<":
            i += 1
            start = i
            # slice directly unless an escape forces a rebuild
            buf = None
            while True:
                if i >= n:
                    raise TurtleParseError("unterminated IRI", line, col)
                ch = text[i]
                if ch == u">":
                    i += 1
                    break
                if ch == u"\\":
                    if buf is None:
                        buf = list(text[start:i])
                    has_marker = i + 1 < n
                    marker = text[i + 1] if has_marker else u" "
                    if has_marker and marker == u"u":
                        decoded, i = _unescape_codepoint(text, i + 2, 4, line, col)
                    elif has_marker and marker == u"U":
                        decoded, i = _unescape_codepoint(text, i + 2, 8, line, col)
                    else:
                        raise TurtleParseError(
                            "illegal escape in IRI",
                            line,
                            col,
                            chr(marker) if has_marker else "",
                        )
                    buf.append(decoded)
                    continue
                if (
                    ch == u"<" or ch == u'"' or ch == u"{" or ch == u"}"
                    or ch == u"|" or ch == u"^" or ch == u"`" or ch <= 0x20
                ):
                    raise TurtleParseError("illegal character in IRI", line, col, chr(ch))
                if buf is not None:
                    buf.append(chr(ch))
                i += 1
            value = text[start : i - 1] if buf is None else "".join(buf)
            toks.append((IRIREF, value, line, col))
        elif c == u'"':
            i += 1
            start = i
            buf = None
            while True:
                if i >= n:
                    raise TurtleParseError("unterminated string", line, col)
                ch = text[i]
                if ch == u'"':
                    i += 1
                    break
                if ch == u"\n" or ch == u"\r":
                    raise TurtleParseError("newline in string", line, col)
                if ch == u"\\":
                    if buf is None:
                        buf = list(text[start:i])
                    has_marker = i + 1 < n
                    marker = text[i + 1] if has_marker else u" "
                    if has_marker and _is_string_escape(marker):
                        buf.append(chr(_escape_value(marker)))
                        i += 2
                        continue
                    if has_marker and marker == u"u":
                        decoded, i = _unescape_codepoint(text, i + 2, 4, line, col)
                    elif has_marker and marker == u"U":
                        decoded, i = _unescape_codepoint(text, i + 2, 8, line, col)
                    else:
                        raise TurtleParseError(
                            "illegal string escape",
                            line,
                            col,
                            chr(marker) if has_marker else "",
                        )
                    buf.append(decoded)
                    continue
                if buf is not None:
                    buf.append(chr(ch))
                i += 1
            value = text[start : i - 1] if buf is None else "".join(buf)
            toks.append((STRING, value, line, col))
        elif c == u"@":
            i += 1
            start = i
            while i < n:
                ch = text[i]
                if (
                    (u"A" <= ch <= u"Z") or (u"a" <= ch <= u"z")
                    or (u"0" <= ch <= u"9") or ch == u"-"
                ):
                    i += 1
                else:
                    break
            if i == start:
                raise TurtleParseError("bare '@'", line, col)
            toks.append((ATNAME, text[start:i], line, col))
        elif c == u"^":
            if i + 1 < n and text[i + 1] == u"^":
                toks.append((CARETS, "^^", line, col))
                i += 2
            else:
                raise TurtleParseError("expected '^^'", line, col, chr(c))
        elif c == u".":
            toks.append((DOT, ".", line, col))
            i += 1
        elif c == u";":
            toks.append((SEMI, ";", line, col))
            i += 1
        elif c == u",":
            toks.append((COMMA, ",", line, col))
            i += 1
        elif c == u"[":
            toks.append((LBRACK, "[", line, col))
            i += 1
        elif c == u"]":
            toks.append((RBRACK, "]", line, col))
            i += 1
        elif c == u":" or _is_name_start(c):
            if c == u"_":
                # Only the '_:label' form may start with an underscore.
                if i + 1 >= n or text[i + 1] != u":":
                    raise TurtleParseError("expected ':' after '_'", line, col)
                i += 2
                start = i
                while i < n:
                    ch = text[i]
                    if (
                        (u"A" <= ch <= u"Z") or (u"a" <= ch <= u"z")
                        or (u"0" <= ch <= u"9") or ch == u"_"
                    ):
                        i += 1
                    else:
                        break
                if i == start:
                    raise TurtleParseError("missing blank node label", line, col)
                toks.append((BLANK, text[start:i], line, col))
            else:
                start = i
                if c != u":":
                    i += 1
                    while i < n:
                        ch = text[i]
                        if _is_name_char(ch) or ch == u".":
                            i += 1
                        else:
                            break
                    while i > start and text[i - 1] == u".":
                        i -= 1
                prefix = text[start:i]
                if i < n and text[i] == u":":
                    i += 1
                    lstart = i
                    while i < n:
                        ch = text[i]
                        if _is_name_char(ch) or ch == u".":
                            i += 1
                        elif ch == u"%":
                            if (
                                i + 2 < n
                                and _is_hex(<Py_UCS4> text[i + 1])
                                and _is_hex(<Py_UCS4> text[i + 2])
                            ):
                                i += 3
                            else:
                                raise TurtleParseError(
                                    "bad percent escape in local name", line, col
                                )
                        else:
                            break
                    while i > lstart and text[i - 1] == u".":
                        i -= 1
                    toks.append((PNAME, (prefix, text[lstart:i]), line, col))
                elif prefix == "a":
                    toks.append((KW_A, "a", line, col))
                else:
                    raise TurtleParseError("unexpected word", line, col, prefix)
        else:
            raise TurtleParseError("unexpected character", line, col, chr(c))

    toks.append((EOF, "", line, n - line_start + 1))
    return toks
