"""
Free-group words over a finite alphabet.

Words are stored freely reduced; reduction happens eagerly at construction so
that equality of Word objects is equality in the free group. A Word remembers
its Alphabet, whose symbol order is the single source of truth for every
deterministic enumeration and tie-break in this package.

Text syntax accepted by :func:`parse_word`:

    generators      ASCII identifiers (``w``, ``A23``, ``x1`` ...)
    inverse         ``x^-1`` or ``x'``
    powers          ``x^3``, ``(w A23)^2``
    juxtaposition   whitespace or ``*``
    commutator      ``[u, v]``  meaning  u^-1 v^-1 u v
    identity        ``1``

Emitted form always uses ``^-1`` and ``*``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Letter = tuple[str, int]  # (symbol, sign), sign in {+1, -1}


class AlphabetError(ValueError):
    """A symbol is missing from, or duplicated in, an alphabet."""


class WordSyntaxError(ValueError):
    """Malformed word text."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of generator names; the order is used for shortlex."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise AlphabetError(f"duplicate symbols in alphabet {self.symbols}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @staticmethod
    def of(*symbols: str) -> Alphabet:
        return Alphabet(tuple(symbols))

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def restrict(self, keep: Iterable[str]) -> Alphabet:
        """Sub-alphabet in the same order."""
        keep = set(keep)
        for s in keep:
            if s not in self:
                raise AlphabetError(f"symbol {s!r} not in alphabet {self.symbols}")
        return Alphabet(tuple(s for s in self.symbols if s in keep))

    def letter_key(self, letter: Letter) -> tuple[int, int]:
        """Order on signed letters: by symbol, positive before negative."""
        sym, sign = letter
        return (self.index(sym), 0 if sign > 0 else 1)


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for sym, sign in letters:
        if out and out[-1][0] == sym and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((sym, sign))
    return tuple(out)


class Word:
    """A freely reduced word. Immutable; supports *, ** and inversion."""

    __slots__ = ("alphabet", "letters", "_hash")

    def __init__(self, alphabet: Alphabet, letters: Iterable[Letter] = ()):
        letters = tuple(letters)
        for sym, sign in letters:
            if sym not in alphabet:
                raise AlphabetError(f"symbol {sym!r} not in alphabet {alphabet.symbols}")
            if sign not in (1, -1):
                raise ValueError(f"bad sign {sign!r}")
        self.alphabet = alphabet
        self.letters = _reduce(letters)
        self._hash = hash((alphabet, self.letters))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(alphabet: Alphabet) -> Word:
        return Word(alphabet, ())

    @staticmethod
    def gen(alphabet: Alphabet, symbol: str, power: int = 1) -> Word:
        sign = 1 if power >= 0 else -1
        return Word(alphabet, ((symbol, sign),) * abs(power))

    # -- group operations --------------------------------------------------

    def __mul__(self, other: Word) -> Word:
        self._check_same_alphabet(other)
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(self.alphabet, tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(self.alphabet, base.letters * abs(n))

    def conjugate_by(self, c: Word) -> Word:
        """c * self * c^-1."""
        return c * self * c.inverse()

    # -- queries -----------------------------------------------------------

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sum(self, symbol: str) -> int:
        self.alphabet.index(symbol)
        return sum(sign for sym, sign in self.letters if sym == symbol)

    def symbols_used(self) -> set[str]:
        return {sym for sym, _ in self.letters}

    def shortlex_key(self) -> tuple:
        return (len(self.letters), tuple(self.alphabet.letter_key(l) for l in self.letters))

    def _check_same_alphabet(self, other: Word) -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetError(
                f"alphabet mismatch: {self.alphabet.symbols} vs {other.alphabet.symbols}"
            )

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


def reduce_letters(alphabet: Alphabet, letters: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence into a Word. Idempotent."""
    return Word(alphabet, letters)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v."""
    u._check_same_alphabet(v)
    return u.inverse() * v.inverse() * u * v


@dataclass(frozen=True)
class FreeHom:
    """Homomorphism between free groups given by images of the source generators."""

    source: Alphabet
    target: Alphabet
    images: dict[str, Word]

    def __post_init__(self):
        missing = [s for s in self.source if s not in self.images]
        if missing:
            raise AlphabetError(f"no image for generators {missing}")
        for s, img in self.images.items():
            if s not in self.source:
                raise AlphabetError(f"image given for unknown generator {s!r}")
            if img.alphabet != self.target:
                raise AlphabetError(f"image of {s!r} is not over the target alphabet")

    def __call__(self, w: Word) -> Word:
        return apply_hom(self, w)

    @staticmethod
    def projection(source: Alphabet, kept: Iterable[str]) -> FreeHom:
        """The projection F(source) -> F(kept) fixing `kept` and killing the rest."""
        target = source.restrict(kept)
        images = {
            s: (Word.gen(target, s) if s in target else Word.identity(target)) for s in source
        }
        return FreeHom(source, target, images)


def apply_hom(h: FreeHom, w: Word) -> Word:
    """Image of w under h, reduced."""
    if w.alphabet != h.source:
        raise AlphabetError("word is not over the source alphabet")
    letters: list[Letter] = []
    for sym, sign in w.letters:
        img = h.images[sym]
        letters.extend(img.letters if sign > 0 else img.inverse().letters)
    return Word(h.target, letters)


def cyclic_kernel_basis(alphabet: Alphabet, x: str, q: int) -> list[Word]:
    """
    Free basis of the kernel of F(alphabet) -> Z/q sending x to the cyclic
    generator and every other symbol to 0:

        { x^q }  u  { y : y != x }  u  { [y, x^j] : y != x, 1 <= j <= q-1 }

    ordered with x^q first, then the plain generators in alphabet order, then
    the commutators ordered by (y, j).
    """
    if x not in alphabet:
        raise AlphabetError(f"symbol {x!r} not in alphabet {alphabet.symbols}")
    if q < 1:
        raise ValueError("q must be >= 1")
    others = [y for y in alphabet if y != x]
    xw = Word.gen(alphabet, x)
    basis = [xw**q]
    basis.extend(Word.gen(alphabet, y) for y in others)
    for y in others:
        yw = Word.gen(alphabet, y)
        for j in range(1, q):
            basis.append(commutator(yw, xw**j))
    return basis


def enumerate_reduced_words(alphabet: Alphabet, max_len: int) -> Iterator[Word]:
    """All reduced words of length <= max_len, in shortlex order."""
    signed = [(s, e) for s in alphabet for e in (1, -1)]
    yield Word.identity(alphabet)
    level: list[tuple[Letter, ...]] = [()]
    for _ in range(max_len):
        nxt: list[tuple[Letter, ...]] = []
        for prefix in level:
            for sym, sign in signed:
                if prefix and prefix[-1][0] == sym and prefix[-1][1] == -sign:
                    continue
                nxt.append(prefix + ((sym, sign),))
        for letters in nxt:
            yield Word(alphabet, letters)
        level = nxt


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

_TOKEN_CHARS = set("*[](),^'=")


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in _TOKEN_CHARS:
            tokens.append(c)
            i += 1
        elif c == "-" or c.isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif c.isalnum() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise WordSyntaxError(f"unexpected character {c!r} in {text!r}")
    return tokens


class _WordParser:
    """Recursive descent over: expr := term+ ; term := atom ['](^int)?."""

    def __init__(self, tokens: list[str], alphabet: Alphabet):
        self.tokens = tokens
        self.pos = 0
        self.alphabet = alphabet

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise WordSyntaxError("unexpected end of word")
        if expect is not None and tok != expect:
            raise WordSyntaxError(f"expected {expect!r}, found {tok!r}")
        self.pos += 1
        return tok

    def parse_expr(self, stop: tuple[str, ...] = ()) -> Word:
        result = Word.identity(self.alphabet)
        while True:
            tok = self.peek()
            if tok is None or tok in stop:
                return result
            if tok == "*":
                self.take()
                continue
            result = result * self.parse_term(stop)

    def parse_term(self, stop: tuple[str, ...]) -> Word:
        atom = self.parse_atom(stop)
        while self.peek() == "'":
            self.take()
            atom = atom.inverse()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            try:
                n = int(tok)
            except ValueError:
                raise WordSyntaxError(f"bad exponent {tok!r}") from None
            atom = atom**n
        return atom

    def parse_atom(self, stop: tuple[str, ...]) -> Word:
        tok = self.take()
        if tok == "(":
            inner = self.parse_expr(stop=(")",))
            self.take(")")
            return inner
        if tok == "[":
            u = self.parse_expr(stop=(",",))
            self.take(",")
            v = self.parse_expr(stop=("]",))
            self.take("]")
            return commutator(u, v)
        if tok == "1":
            return Word.identity(self.alphabet)
        if tok in self.alphabet:
            return Word.gen(self.alphabet, tok)
        raise WordSyntaxError(f"unknown generator {tok!r}")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse the package word syntax against a fixed alphabet."""
    parser = _WordParser(_tokenize(text), alphabet)
    word = parser.parse_expr()
    if parser.peek() is not None:
        raise WordSyntaxError(f"trailing input at token {parser.peek()!r}")
    return word


def format_word(w: Word) -> str:
    """Render with ^k powers collapsed; the identity prints as '1'."""
    if w.is_identity():
        return "1"
    parts: list[str] = []
    for sym, group in itertools.groupby(w.letters):
        n = sum(1 for _ in group)
        power = n * sym[1]
        name = sym[0]
        parts.append(name if power == 1 else f"{name}^{power}")
    return "*".join(parts)


def format_words(ws: Sequence[Word]) -> list[str]:
    return [format_word(w) for w in ws]
