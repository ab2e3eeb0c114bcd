"""Token kind constants shared by the scanner backends.

Both the compiled and the pure-Python scanner emit (kind, value, line, column)
tuples using these codes; the parser and the parity tests rely on the exact
numbering, so treat it as frozen.
"""

EOF = 0
IRIREF = 1      # value: IRI text with \u escapes decoded, brackets stripped
PNAME = 2       # value: (prefix_label, local_name)
BLANK = 3       # value: blank node label without the leading '_:'
STRING = 4      # value: decoded string body
ATNAME = 5      # value: word after '@' ('prefix', 'base', or a language tag)
CARETS = 6      # '^^'
DOT = 7
SEMI = 8
COMMA = 9
LBRACK = 10
RBRACK = 11
KW_A = 12

NAMES = {
    EOF: "end of input",
    IRIREF: "IRI",
    PNAME: "prefixed name",
    BLANK: "blank node",
    STRING: "string",
    ATNAME: "@-word",
    CARETS: "'^^'",
    DOT: "'.'",
    SEMI: "';'",
    COMMA: "','",
    LBRACK: "'['",
    RBRACK: "']'",
    KW_A: "'a'",
}
