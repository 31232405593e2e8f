import codecs
import logging
import re
from collections import namedtuple

from .Error import SystemDefinitionError
from .Monomial import Monomial, MonomialSystem

"""
Reader and writer for the text format of a monomial system.  The format is
one definition per line:

    # Comment lines and blank lines are ignored
    n = 4
    f1 = x3
    f2 = x1 * x4
    f3 = x4
    f4 = x1

The header "n = <int>" must come first.  Each coordinate f1..fn must be
defined exactly once, in any order, as 0, 1, or a product of variables
x1..xn.  Whitespace between tokens is not significant.  Repeated variables
in a product are absorbed (x^2 = x).
"""


class SourceSpan(namedtuple("SourceSpan", "line column")):
    __slots__ = ()

    def __str__(self):
        return "line " + str(self.line) + " column " + str(self.column)


_tokenre = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<name>[nfx])|(?P<op>[=*])|(?P<bad>\S))")

Token = namedtuple("Token", "kind text span")


def _tokenize(line, lineno):
    tokens = []
    pos = 0
    line = line.rstrip()
    while pos < len(line):
        m = _tokenre.match(line, pos)
        kind = m.lastgroup
        span = SourceSpan(lineno, m.start(kind) + 1)
        if kind == "bad":
            raise SystemDefinitionError("Invalid character " + repr(m.group(kind)), span)
        tokens.append(Token(kind, m.group(kind), span))
        pos = m.end()
    return tokens


class _LineParser(object):
    """
    Consumes the tokens of one line
    """

    def __init__(self, tokens, lineno, linelength):
        self._tokens = tokens
        self._pos = 0
        self._end = SourceSpan(lineno, linelength + 1)

    def atEnd(self):
        return self._pos >= len(self._tokens)

    def span(self):
        if self.atEnd():
            return self._end
        return self._tokens[self._pos].span

    def expect(self, kind, text=None, what=None):
        if what is None:
            what = repr(text) if text else kind
        if self.atEnd():
            raise SystemDefinitionError("Expected " + what + " but found end of line", self._end)
        token = self._tokens[self._pos]
        if token.kind != kind or (text is not None and token.text != text):
            raise SystemDefinitionError("Expected " + what + " but found " + repr(token.text), token.span)
        self._pos += 1
        return token

    def peekKind(self):
        return None if self.atEnd() else self._tokens[self._pos].kind

    def expectEnd(self):
        if not self.atEnd():
            token = self._tokens[self._pos]
            raise SystemDefinitionError("Unexpected " + repr(token.text), token.span)


def parseSystem(text, maxDimension=None):
    """
    Parse the text definition of a monomial system.  Returns a MonomialSystem.
    Any deviation from the format raises a SystemDefinitionError identifying
    the line and column of the problem.
    """
    limit = maxDimension if maxDimension is not None else MonomialSystem.maxDimension
    n = None
    definitions = {}
    lines = text.splitlines()
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if stripped == "" or stripped.startswith("#"):
            continue
        parser = _LineParser(_tokenize(line, lineno), lineno, len(line.rstrip()))
        first = parser.span()
        if n is None:
            parser.expect("name", "n", 'header "n = <int>"')
            parser.expect("op", "=")
            value = parser.expect("int", what="system dimension")
            parser.expectEnd()
            n = int(value.text)
            if n < 1:
                raise SystemDefinitionError("Invalid system dimension " + value.text, value.span)
            if n > limit:
                raise SystemDefinitionError(
                    "System dimension " + value.text + " exceeds the maximum dimension " + str(limit),
                    value.span,
                )
            continue

        parser.expect("name", "f", "definition f<i> = ...")
        index = parser.expect("int", what="coordinate index")
        i = int(index.text)
        if i < 1 or i > n:
            raise SystemDefinitionError("Coordinate index f" + index.text + " is not in 1.." + str(n), index.span)
        if i in definitions:
            raise SystemDefinitionError(
                "Coordinate f" + str(i) + " is already defined at " + str(definitions[i][1]), first
            )
        parser.expect("op", "=")

        if parser.peekKind() == "int":
            constant = parser.expect("int")
            if constant.text not in ("0", "1"):
                raise SystemDefinitionError("Invalid constant " + repr(constant.text) + ", must be 0 or 1", constant.span)
            parser.expectEnd()
            monomial = Monomial.one() if constant.text == "1" else Monomial.zero()
        else:
            indices = []
            while True:
                parser.expect("name", "x", "variable x<j>")
                var = parser.expect("int", what="variable index")
                j = int(var.text)
                if j < 1 or j > n:
                    raise SystemDefinitionError("Variable x" + var.text + " is not in x1..x" + str(n), var.span)
                indices.append(j - 1)
                if parser.atEnd():
                    break
                parser.expect("op", "*")
            monomial = Monomial.product(indices)
        definitions[i] = (monomial, first)

    if n is None:
        raise SystemDefinitionError('Missing header "n = <int>"', SourceSpan(len(lines) + 1, 1))
    missing = [i for i in range(1, n + 1) if i not in definitions]
    if missing:
        raise SystemDefinitionError(
            "Missing definition of " + ", ".join("f" + str(i) for i in missing),
            SourceSpan(len(lines) + 1, 1),
        )
    return MonomialSystem([definitions[i][0] for i in range(1, n + 1)], maxDimension=limit)


def formatSystem(system):
    """
    Returns the canonical text of a system: the header and then f1..fn in
    order, variables ascending, single spaces around "=" and "*".
    """
    lines = ["n = " + str(system.n())]
    for i, c in enumerate(system.components()):
        lines.append("f" + str(i + 1) + " = " + str(c).replace("*", " * "))
    return "\n".join(lines) + "\n"


def readSystem(filename, maxDimension=None):
    logging.info("Reading monomial system from %s", filename)
    with codecs.open(filename, encoding="ascii") as f:
        text = f.read()
    try:
        return parseSystem(text, maxDimension=maxDimension)
    except SystemDefinitionError as e:
        error = SystemDefinitionError(str(e) + " in " + filename)
        error.span = e.span
        raise error


def writeSystem(system, filename):
    with open(filename, "w") as f:
        f.write(formatSystem(system))
