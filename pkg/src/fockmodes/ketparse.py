"""Parse bra-ket text into states, render states back, and read unitary files.

Grammar (whitespace insignificant, offsets reported in errors are byte
positions into the input)::

    state  := ['+'|'-'] term (('+'|'-') term)*
    term   := [coef '*']? ket
    ket    := '|' digit+ '>'            one digit per mode, counts 0-9
            | '|' uint (',' uint)* '>'  comma form, arbitrary counts
    coef   := additive expression over decimal literals, 'i',
              'sqrt(<unsigned int>)', unary '-', binary '*' '/' '+' '-',
              and parentheses; a decimal literal immediately followed by
              'i' (as in '0.5i') is an imaginary literal.

Like kets merge by summing coefficients.  The result is normalized unless
``raw=True``.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .errors import KetParseError, UnitaryFileError
from .fock import Occupation, PureState, canonicalize_phase, require_normalized
from .transform import ModeUnitary, validate_unitary

_NUMBER_RE = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_]\w*")

# Token kinds: NUMBER, I, SQRT, KET, and the single-char operators.
_OPS = {"+", "-", "*", "/", "(", ")"}


class _Token:
    __slots__ = ("kind", "text", "pos", "value")

    def __init__(self, kind: str, text: str, pos: int, value=None):
        self.kind = kind
        self.text = text
        self.pos = pos
        self.value = value

    def __repr__(self):
        return f"_Token({self.kind}, {self.text!r}, {self.pos})"


def _scan_ket(text: str, start: int) -> _Token:
    end = text.find(">", start)
    if end < 0:
        raise KetParseError("unterminated ket, missing '>'", start)
    body = text[start + 1 : end]

    def is_uint(token: str) -> bool:
        return token.isascii() and token.isdigit()

    if "," in body:
        counts = []
        offset = start + 1
        for part in body.split(","):
            stripped = part.strip()
            if not is_uint(stripped):
                raise KetParseError(
                    f"expected an unsigned integer mode count, got {stripped!r}",
                    offset,
                )
            counts.append(int(stripped))
            offset += len(part) + 1
    else:
        compact = body.replace(" ", "").replace("\t", "")
        if not compact:
            raise KetParseError("empty ket", start)
        if not is_uint(compact):
            bad = next(
                i for i, ch in enumerate(body) if not (is_uint(ch) or ch.isspace())
            )
            raise KetParseError(
                f"unexpected character {body[bad]!r} inside ket", start + 1 + bad
            )
        counts = [int(ch) for ch in compact]
    return _Token("KET", text[start : end + 1], start, tuple(counts))


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, pos))
            pos += 1
            continue
        if ch == "|":
            tok = _scan_ket(text, pos)
            tokens.append(tok)
            pos += len(tok.text)
            continue
        m = _NUMBER_RE.match(text, pos)
        if m:
            tokens.append(_Token("NUMBER", m.group(), pos, float(m.group())))
            pos = m.end()
            continue
        m = _IDENT_RE.match(text, pos)
        if m:
            name = m.group()
            if name == "i":
                tokens.append(_Token("I", name, pos))
            elif name == "sqrt":
                tokens.append(_Token("SQRT", name, pos))
            else:
                raise KetParseError(f"unknown identifier {name!r}", pos)
            pos = m.end()
            continue
        raise KetParseError(f"unexpected character {ch!r}", pos)
    tokens.append(_Token("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.idx = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.idx + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.idx]
        if tok.kind != "EOF":
            self.idx += 1
        return tok

    def parse_state(self) -> list[tuple[complex, Occupation, int]]:
        terms = []
        sign = 1.0
        if self.peek().kind in ("+", "-"):
            if self.advance().kind == "-":
                sign = -1.0
        terms.append(self.parse_term(sign))
        while self.peek().kind in ("+", "-"):
            sign = 1.0 if self.advance().kind == "+" else -1.0
            terms.append(self.parse_term(sign))
        tok = self.peek()
        if tok.kind != "EOF":
            raise KetParseError(f"unexpected {tok.text!r}", tok.pos)
        return terms

    def parse_term(self, sign: float) -> tuple[complex, Occupation, int]:
        tok = self.peek()
        if tok.kind == "KET":
            self.advance()
            return complex(sign), tok.value, tok.pos
        coeff = self.parse_additive()
        star = self.peek()
        if star.kind != "*":
            raise KetParseError("expected '*' between coefficient and ket", star.pos)
        self.advance()
        ket = self.peek()
        if ket.kind != "KET":
            raise KetParseError("expected a ket after '*'", ket.pos)
        self.advance()
        return sign * coeff, ket.value, ket.pos

    def parse_additive(self) -> complex:
        value = self.parse_multiplicative()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.parse_multiplicative()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def parse_multiplicative(self) -> complex:
        value = self.parse_unary()
        while True:
            tok = self.peek()
            if tok.kind == "*" and self.peek(1).kind == "KET":
                # This '*' binds the whole coefficient to the ket.
                return value
            if tok.kind not in ("*", "/"):
                return value
            self.advance()
            rhs = self.parse_unary()
            if tok.kind == "*":
                value = value * rhs
            else:
                if rhs == 0:
                    raise KetParseError("division by zero in coefficient", tok.pos)
                value = value / rhs

    def parse_unary(self) -> complex:
        sign = 1.0
        while self.peek().kind == "-":
            self.advance()
            sign = -sign
        return sign * self.parse_atom()

    def parse_atom(self) -> complex:
        tok = self.advance()
        if tok.kind == "NUMBER":
            nxt = self.peek()
            if nxt.kind == "I" and nxt.pos == tok.pos + len(tok.text):
                self.advance()
                return complex(0.0, tok.value)
            return complex(tok.value)
        if tok.kind == "I":
            return 1j
        if tok.kind == "SQRT":
            if self.peek().kind != "(":
                raise KetParseError("expected '(' after sqrt", self.peek().pos)
            self.advance()
            arg = self.peek()
            if arg.kind != "NUMBER" or "." in arg.text or "e" in arg.text.lower():
                raise KetParseError(
                    "sqrt takes an unsigned integer literal", arg.pos
                )
            self.advance()
            if self.peek().kind != ")":
                raise KetParseError("expected ')' to close sqrt", self.peek().pos)
            self.advance()
            return complex(np.sqrt(arg.value))
        if tok.kind == "(":
            value = self.parse_additive()
            closing = self.peek()
            if closing.kind != ")":
                raise KetParseError("expected ')'", closing.pos)
            self.advance()
            return value
        raise KetParseError(
            f"expected a number, 'i', sqrt(...), '(' or a ket, got {tok.text!r}",
            tok.pos,
        )


def parse_state(text: str, *, raw: bool = False) -> PureState:
    """Parse a ket expression into a PureState (normalized unless raw)."""
    terms = _Parser(_tokenize(text)).parse_state()
    mode_count = len(terms[0][1])
    first_pos = terms[0][2]
    merged: dict[Occupation, complex] = {}
    for coeff, occ, pos in terms:
        if len(occ) != mode_count:
            raise KetParseError(
                f"ket has {len(occ)} modes but earlier kets have {mode_count}", pos
            )
        merged[occ] = merged.get(occ, 0j) + coeff
    state = PureState(mode_count, merged)
    if not state.amplitudes:
        raise KetParseError("state is zero after merging like terms", first_pos)
    if raw:
        return state
    nrm = state.norm()
    return PureState(
        mode_count, {occ: amp / nrm for occ, amp in state.amplitudes.items()}
    )


def _format_real(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def format_state(state: PureState, precision: int = 7) -> str:
    """Render a normalized state in canonical order.

    The global phase is canonicalized so the leading amplitude is real and
    positive.  The output parses back to the same state within
    10^(1-precision) per amplitude.
    """
    require_normalized(state)
    canon = canonicalize_phase(state)
    eps = 0.5 * 10.0 ** (-precision)
    comma_form = any(c > 9 for occ in canon.amplitudes for c in occ)

    def render_ket(occ: Occupation) -> str:
        if comma_form:
            return "|" + ",".join(map(str, occ)) + ">"
        return "|" + "".join(map(str, occ)) + ">"

    pieces: list[str] = []
    for occ in canon.support():
        amp = canon.amplitudes[occ]
        ket = render_ket(occ)
        if abs(amp.imag) < eps:
            magnitude = abs(amp.real)
            joiner = "+" if amp.real >= 0 else "-"
            if abs(magnitude - 1.0) < eps:
                body = ket
            else:
                body = f"{_format_real(magnitude, precision)}*{ket}"
        else:
            joiner = "+"
            im_sign = "+" if amp.imag >= 0 else "-"
            body = (
                f"({_format_real(amp.real, precision)}{im_sign}"
                f"{_format_real(abs(amp.imag), precision)}i)*{ket}"
            )
        if not pieces:
            pieces.append(body if joiner == "+" else f"-{body}")
        else:
            pieces.append(f" {joiner} {body}")
    return "".join(pieces)


def parse_unitary_file(content: bytes | str) -> ModeUnitary:
    """Read the unitary JSON document {"dim": M, "rows": [[[re, im], ..], ..]}."""
    if isinstance(content, bytes):
        try:
            content = content.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise UnitaryFileError(f"not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(content)
    except json.JSONDecodeError as exc:
        raise UnitaryFileError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise UnitaryFileError("top-level JSON value must be an object")
    if "dim" not in doc or "rows" not in doc:
        raise UnitaryFileError("document must have 'dim' and 'rows' fields")
    dim = doc["dim"]
    rows = doc["rows"]
    if not isinstance(dim, int) or dim < 1:
        raise UnitaryFileError(f"'dim' must be a positive integer, got {dim!r}")
    if not isinstance(rows, list) or len(rows) != dim:
        raise UnitaryFileError(f"'rows' must be a list of {dim} rows")
    matrix = np.zeros((dim, dim), dtype=complex)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise UnitaryFileError(f"row {r} must be a list of {dim} entries")
        for c, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) for x in entry)
            ):
                raise UnitaryFileError(
                    f"entry ({r}, {c}) must be a [re, im] pair of numbers"
                )
            matrix[r, c] = complex(entry[0], entry[1])
    return validate_unitary(matrix, tol=1e-8)


def format_unitary_file(unitary: ModeUnitary) -> str:
    """Serialize a ModeUnitary to the JSON document format."""
    rows = [
        [[float(z.real), float(z.imag)] for z in row] for row in unitary.matrix
    ]
    return json.dumps({"dim": unitary.dim, "rows": rows})
