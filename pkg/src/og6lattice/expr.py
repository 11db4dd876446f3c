"""Textual lattice expressions such as ``U^2 + [-2]^3`` or ``U(2) + D(4)``.

Grammar::

    expr    := term (("+" | "⊕") term)*
    term    := postfix ("^" int)?
    postfix := atom ("(" int ")")*
    atom    := name | "[" int "]" | "(" expr ")"

For ``A``, ``D`` and ``E`` the first parenthesized integer is the index and
any further ones are twists; for every other atom a parenthesized integer is
a twist, so ``U(2)`` and ``A(2)(-1)`` read as in the usual notation.  Error
offsets are byte offsets into the UTF-8 source.
"""

from dataclasses import dataclass, field

from .errors import ExprSyntaxError, LatticeError
from .lattice import direct_sum_all, make_named, twist

NAMES = ("U", "A", "D", "E", "h5", "K7", "OG6", "Mukai", "Lambda8", "Lambda10")
INDEXED = ("A", "D", "E")
_MINUS = ("-", "−")


@dataclass(frozen=True)
class Name:
    name: str
    index: int = None
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Bracket:
    value: int
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Twist:
    base: object
    factor: int
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sum:
    terms: tuple
    offset: int = field(default=0, compare=False)


LatticeExpr = (Name, Bracket, Twist, Power, Sum)


class _Parser:
    def __init__(self, src):
        self.src = src
        self.i = 0

    def offset(self, i=None):
        return len(self.src[:self.i if i is None else i].encode("utf-8"))

    def fail(self, msg, i=None):
        raise ExprSyntaxError(msg, self.offset(i))

    def skip(self):
        while self.i < len(self.src) and self.src[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.src[self.i] if self.i < len(self.src) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.fail(f"expected {ch!r}, found {found}")
        self.i += 1

    def integer(self, signed):
        self.skip()
        start = self.i
        if signed and self.peek() in _MINUS:
            self.i += 1
        digits = self.i
        while self.i < len(self.src) and self.src[self.i].isdigit():
            self.i += 1
        if self.i == digits:
            self.fail("expected an integer", start)
        text = self.src[digits:self.i]
        value = int(text)
        return -value if digits > start else value

    def parse(self):
        node = self.expr()
        if self.peek():
            self.fail(f"unexpected {self.peek()!r}")
        return node

    def expr(self):
        start = self.offset()
        terms = [self.term()]
        while self.peek() in ("+", "⊕"):
            self.i += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms), start)

    def term(self):
        node = self.postfix()
        if self.peek() == "^":
            at = self.offset()
            self.i += 1
            self.skip()
            k_at = self.i
            k = self.integer(signed=False)
            if k < 1:
                self.fail("exponent must be at least 1", k_at)
            node = Power(node, k, at)
        return node

    def postfix(self):
        node = self.atom()
        while self.peek() == "(":
            at = self.offset()
            self.i += 1
            n = self.integer(signed=True)
            self.expect(")")
            if isinstance(node, Name) and node.name in INDEXED and node.index is None:
                node = Name(node.name, n, node.offset)
            else:
                node = Twist(node, n, at)
        if isinstance(node, Name) and node.name in INDEXED and node.index is None:
            self.fail(f"{node.name} needs an index, e.g. {node.name}(4)")
        return node

    def atom(self):
        ch = self.peek()
        at = self.offset()
        if ch == "[":
            self.i += 1
            m = self.integer(signed=True)
            self.expect("]")
            return Bracket(m, at)
        if ch == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch.isalpha():
            start = self.i
            while self.i < len(self.src) and self.src[self.i].isalnum():
                self.i += 1
            word = self.src[start:self.i]
            if word not in NAMES:
                self.fail(f"unknown lattice name {word!r}", start)
            return Name(word, None, at)
        self.fail("expected a lattice" + (f", found {ch!r}" if ch else " before end of input"))


def parse_lattice(src):
    """Parse a lattice expression into its syntax tree."""
    return _Parser(src).parse()


def _paren(node):
    text = to_text(node)
    return f"({text})" if isinstance(node, (Sum, Power)) else text


def to_text(node):
    """Canonical text for a syntax tree; ``parse_lattice(to_text(t)) == t``."""
    if isinstance(node, Name):
        return node.name if node.index is None else f"{node.name}({node.index})"
    if isinstance(node, Bracket):
        return f"[{node.value}]"
    if isinstance(node, Twist):
        base = node.base
        text = _paren(base)
        # an index-free atom followed by "(n)" would be read back as an index
        if isinstance(base, Name) and base.name in INDEXED and base.index is None:
            text = f"({text})"
        return f"{text}({node.factor})"
    if isinstance(node, Power):
        base = node.base
        text = f"({to_text(base)})" if isinstance(base, (Sum, Power)) else to_text(base)
        return f"{text}^{node.exponent}"
    if isinstance(node, Sum):
        return " + ".join(to_text(t) for t in node.terms)
    raise TypeError(f"not a lattice expression: {node!r}")


def elaborate(node):
    """Build the :class:`Lattice` for a syntax tree."""
    try:
        if isinstance(node, Name):
            if node.name in INDEXED:
                return make_named(node.name, node.index)
            return make_named(node.name)
        if isinstance(node, Bracket):
            if node.value % 2:
                raise ExprSyntaxError(f"[{node.value}] has odd diagonal; lattices must be even",
                                      node.offset)
            return make_named("rank1", node.value)
        if isinstance(node, Twist):
            base = elaborate(node.base)
            if node.factor == 0:
                raise ExprSyntaxError("twist by 0 gives a degenerate lattice", node.offset)
            return twist(base, node.factor)
        if isinstance(node, Power):
            return direct_sum_all([elaborate(node.base)] * node.exponent)
        if isinstance(node, Sum):
            return direct_sum_all(elaborate(t) for t in node.terms)
    except ExprSyntaxError:
        raise
    except LatticeError as exc:
        raise ExprSyntaxError(str(exc), node.offset) from None
    raise TypeError(f"not a lattice expression: {node!r}")


def lattice_from_text(src):
    """Parse and elaborate; the result is labelled with the canonical text."""
    node = parse_lattice(src)
    lat = elaborate(node)
    return type(lat)(lat.gram, to_text(node))
