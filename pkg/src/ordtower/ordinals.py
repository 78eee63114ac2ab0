"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a finite sum  w^e1*c1 + ... + w^ek*ck  with strictly
decreasing ordinal exponents and positive integer coefficients; the empty
sum is 0.  Values are immutable and hashable, so they can serve as dict
keys for the memoized structures built on top of them.

The literal grammar (used by both the parser and ``str``):

    ordinal := term ("+" term)*
    term    := "w" ("^" atom)? ("*" nat)? | nat
    atom    := nat | "w" | "(" ordinal ")"

``str`` always emits the canonical form: decreasing exponents, ``*c``
omitted when c == 1, ``^e`` omitted when e == 1, finite parts printed as
plain naturals.  The parser accepts non-canonical input ("w+w", "1+w")
and normalizes it through ordinal addition.
"""

from __future__ import annotations

from itertools import count
from typing import Iterable, Iterator, Tuple

from .errors import DomainError, NotALimitError, OrdinalSyntaxError

Term = Tuple["Ordinal", int]


class Ordinal:
    __slots__ = ("_terms", "_key", "_hash")

    def __init__(self, terms: Tuple[Term, ...] = ()):
        self._terms = terms
        # nested-tuple image of the CNF; tuple order coincides with ordinal order
        self._key = tuple((e._key, c) for e, c in terms)
        self._hash = hash(terms)

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    @staticmethod
    def from_terms(terms: Iterable[Term]) -> "Ordinal":
        """Build from explicit (exponent, coefficient) pairs, validating CNF."""
        ts = tuple((_as_ord(e), int(c)) for e, c in terms)
        for e, c in ts:
            if c < 1:
                raise DomainError(f"coefficient must be >= 1, got {c}")
        for (e1, _), (e2, _) in zip(ts, ts[1:]):
            if not e1 > e2:
                raise DomainError("exponents must be strictly decreasing")
        return Ordinal(ts)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_natural(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0]._terms == ())

    def natural(self) -> int:
        if not self._terms:
            return 0
        if self.is_natural():
            return self._terms[0][1]
        raise DomainError(f"{self} is not a natural number")

    def split(self) -> Tuple["Ordinal", int]:
        """Decompose as lam + m with lam limit-or-zero and m natural."""
        if self._terms and self._terms[-1][0].is_zero():
            return Ordinal(self._terms[:-1]), self._terms[-1][1]
        return self, 0

    def is_limit(self) -> bool:
        return bool(self._terms) and not self._terms[-1][0].is_zero()

    def is_successor(self) -> bool:
        return bool(self._terms) and self._terms[-1][0].is_zero()

    def succ(self) -> "Ordinal":
        return add(self, ONE)

    def pred(self) -> "Ordinal":
        if not self.is_successor():
            raise DomainError(f"{self} is not a successor")
        lam, m = self.split()
        return add(lam, ordinal(m - 1))

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if type(other) is Ordinal:
            return self._terms == other._terms
        other = _maybe_ord(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __lt__(self, other) -> bool:
        if type(other) is Ordinal:
            return self._key < other._key
        other = _maybe_ord(other)
        if other is None:
            return NotImplemented
        return self._key < other._key

    def __le__(self, other) -> bool:
        if type(other) is Ordinal:
            return self._key <= other._key
        other = _maybe_ord(other)
        if other is None:
            return NotImplemented
        return self._key <= other._key

    def __gt__(self, other) -> bool:
        if type(other) is Ordinal:
            return self._key > other._key
        other = _maybe_ord(other)
        if other is None:
            return NotImplemented
        return self._key > other._key

    def __ge__(self, other) -> bool:
        if type(other) is Ordinal:
            return self._key >= other._key
        other = _maybe_ord(other)
        if other is None:
            return NotImplemented
        return self._key >= other._key

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other) -> "Ordinal":
        other = _maybe_ord(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    def __radd__(self, other) -> "Ordinal":
        other = _maybe_ord(other)
        if other is None:
            return NotImplemented
        return add(other, self)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return "+".join(_term_str(e, c) for e, c in self._terms)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"


def _term_str(e: Ordinal, c: int) -> str:
    if e.is_zero():
        return str(c)
    s = "w"
    if e != ONE:
        if e.is_natural() or e == W:
            s += "^" + str(e)
        else:
            s += "^(" + str(e) + ")"
    if c != 1:
        s += "*" + str(c)
    return s


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
W = Ordinal(((ONE, 1),))

_NATS = {0: ZERO, 1: ONE}


def ordinal(n: int) -> Ordinal:
    """The finite ordinal n."""
    if isinstance(n, Ordinal):
        return n
    if n < 0:
        raise DomainError(f"ordinals are non-negative, got {n}")
    o = _NATS.get(n)
    if o is None:
        o = Ordinal(((ZERO, n),))
        if n < 4096:
            _NATS[n] = o
    return o


def _maybe_ord(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return ordinal(x)
    return None


def _as_ord(x) -> Ordinal:
    o = _maybe_ord(x)
    if o is None:
        raise DomainError(f"not an ordinal: {x!r}")
    return o


def compare(a, b) -> int:
    """-1, 0 or 1 as a <, == or > b."""
    ka, kb = _as_ord(a)._key, _as_ord(b)._key
    if ka < kb:
        return -1
    return 1 if ka > kb else 0


def add(a, b) -> Ordinal:
    """Ordinal addition: terms of a below b's leading exponent are absorbed."""
    a, b = _as_ord(a), _as_ord(b)
    if not b._terms:
        return a
    if not a._terms:
        return b
    e0, c0 = b._terms[0]
    i = 0
    ts = a._terms
    while i < len(ts) and compare(ts[i][0], e0) > 0:
        i += 1
    if i < len(ts) and ts[i][0] == e0:
        head = ts[:i] + ((e0, ts[i][1] + c0),)
    else:
        head = ts[:i] + ((e0, c0),)
    return Ordinal(head + b._terms[1:])


def difference(a, b) -> Ordinal:
    """The unique d with b + d == a; requires b <= a."""
    a, b = _as_ord(a), _as_ord(b)
    i = 0
    while i < len(a._terms) and i < len(b._terms) and a._terms[i] == b._terms[i]:
        i += 1
    if i == len(b._terms):
        return Ordinal(a._terms[i:])
    if i == len(a._terms):
        raise DomainError(f"cannot subtract: {b} > {a}")
    (ea, ca), (eb, cb) = a._terms[i], b._terms[i]
    c = compare(ea, eb)
    if c > 0:
        return Ordinal(a._terms[i:])
    if c == 0 and ca > cb:
        return Ordinal(((ea, ca - cb),) + a._terms[i + 1:])
    raise DomainError(f"cannot subtract: {b} > {a}")


def fund_seq(lam, n: int) -> Ordinal:
    """n-th element of the canonical fundamental sequence of the limit lam.

    lam = P + w^e*c.  For e = e'+1 the sequence steps by w^e' below
    P + w^e*(c-1); for e a limit it lifts e's own sequence into the
    exponent.  Strictly increasing in n with supremum lam.
    """
    lam = _as_ord(lam)
    if not lam.is_limit():
        raise NotALimitError(f"{lam} is not a limit ordinal")
    if n < 0:
        raise DomainError(f"index must be >= 0, got {n}")
    e, c = lam._terms[-1]
    parts = list(lam._terms[:-1])
    if c > 1:
        parts.append((e, c - 1))
    if e.is_successor():
        if n > 0:
            parts.append((e.pred(), n))
    else:
        parts.append((fund_seq(e, n), 1))
    return Ordinal(tuple(parts))


# -- canonical enumeration of {gamma < eta} --------------------------------
#
# Successors peel the top element first; at a limit the interval blocks
# [fund_seq(eta,i-1), fund_seq(eta,i)) are dovetailed along diagonals
# i+j = d, skipping pairs whose block is already exhausted.  The walk is
# memoized per limit so repeated queries only pay for the unseen prefix.

_enum_lists: dict[Ordinal, list] = {}
_enum_gens: dict[Ordinal, Iterator[Ordinal]] = {}


def enum_below(eta, n: int) -> Ordinal:
    """n-th value of the canonical enumeration of {gamma < eta}.

    Surjective onto the predecessors of eta; injective unless eta is a
    finite ordinal (indices past eta-1 then repeat 0).
    """
    eta = _as_ord(eta)
    if n < 0:
        raise DomainError(f"index must be >= 0, got {n}")
    while True:
        if eta.is_zero():
            raise DomainError("enum_below requires eta > 0")
        if eta.is_limit():
            return _limit_enum(eta, n)
        prev = eta.pred()
        if n == 0:
            return prev
        if prev.is_zero():
            return ZERO
        eta, n = prev, n - 1


def _limit_enum(eta: Ordinal, n: int) -> Ordinal:
    got = _enum_lists.get(eta)
    if got is None:
        got = _enum_lists[eta] = []
        _enum_gens[eta] = _limit_enum_gen(eta)
    gen = _enum_gens[eta]
    while len(got) <= n:
        got.append(next(gen))
    return got[n]


def _limit_enum_gen(eta: Ordinal) -> Iterator[Ordinal]:
    starts: list[Ordinal] = []
    diffs: list[Ordinal] = []

    def ensure(i: int) -> None:
        while len(starts) <= i:
            k = len(starts)
            lo = ZERO if k == 0 else fund_seq(eta, k - 1)
            hi = fund_seq(eta, k)
            starts.append(lo)
            diffs.append(difference(hi, lo))

    for d in count(0):
        for i in range(d + 1):
            j = d - i
            ensure(i)
            diff = diffs[i]
            if diff.is_zero():
                continue
            if diff.is_natural() and j >= diff.natural():
                continue
            yield add(starts[i], enum_below(diff, j))


def enum_prefix(eta, n: int) -> list:
    """First n enumeration values of {gamma < eta} as a list."""
    return [enum_below(eta, i) for i in range(n)]


# -- literals ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> OrdinalSyntaxError:
        return OrdinalSyntaxError(f"{msg} in {self.text!r}", self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def ordinal_expr(self) -> Ordinal:
        total = self.term()
        while self.peek() == "+":
            self.pos += 1
            total = add(total, self.term())
        return total

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch == "w":
            self.pos += 1
            e = ONE
            if self.peek() == "^":
                self.pos += 1
                e = self.atom()
            c = 1
            if self.peek() == "*":
                self.pos += 1
                c = self.nat()
            if c == 0:
                return ZERO
            return Ordinal(((e, c),))
        if ch.isdigit():
            return ordinal(self.nat())
        raise self.error("expected a term")

    def atom(self) -> Ordinal:
        ch = self.peek()
        if ch == "w":
            self.pos += 1
            return W
        if ch == "(":
            self.pos += 1
            o = self.ordinal_expr()
            self.expect(")")
            return o
        if ch.isdigit():
            return ordinal(self.nat())
        raise self.error("expected a number, 'w' or parenthesized ordinal")


def parse_ordinal(text: str) -> Ordinal:
    """Parse an ordinal literal; non-canonical input is normalized via addition."""
    p = _Parser(text)
    o = p.ordinal_expr()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("unexpected trailing input")
    return o


def oset(items) -> Tuple[Ordinal, ...]:
    """Normalize an iterable of ordinals to a sorted duplicate-free tuple."""
    return tuple(sorted({_as_ord(x) for x in items}))
