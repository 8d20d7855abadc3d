"""
Artin braids on the disk: word problem, strand removal and insertion,
Brunnian testing, and the James-Hopf product of coface images.

Equality of braid words is decided by the left Garside normal form
Delta^p . f1 ... fm, where the canonical factors are permutation braids. A
permutation braid is stored as the array mapping each starting position to
its ending position; the factor pair (x, y) is left-weighted when the
starting set of y is contained in the finishing set of x, and normalization
slides crossings leftward until every adjacent pair is left-weighted. No
factor tables are built, so strand counts up to 8 or so stay cheap.

Pure braids additionally support words in the band generators A[i,j] (the
j-th strand looping around the i-th): strand removal and insertion act on
those letter-by-letter, and a pure braid word in the sigma letters can be
rewritten into band letters (`pure_to_bands`), certified by a normal-form
equality check.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass

from .words import Alphabet, Word, WordSyntaxError, parse_word

Perm = tuple[int, ...]  # p[i] = image of position i, 0-based


class StrandError(ValueError):
    """Strand index out of range or strand counts disagree."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the n-strand braid group."""

    n: int
    letters: tuple[tuple[int, int], ...]  # (generator index 1..n-1, sign)

    def __post_init__(self):
        for i, sign in self.letters:
            if not 1 <= i <= self.n - 1:
                raise StrandError(f"generator s{i} needs {i + 1} strands, braid has {self.n}")
            if sign not in (1, -1):
                raise ValueError(f"bad sign {sign}")

    @staticmethod
    def identity(n: int) -> BraidWord:
        return BraidWord(n, ())

    @staticmethod
    def sigma(n: int, i: int, sign: int = 1) -> BraidWord:
        return BraidWord(n, ((i, sign),))

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.n != other.n:
            raise StrandError(f"strand counts differ: {self.n} vs {other.n}")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple((i, -s) for i, s in reversed(self.letters)))

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for i, s in self.letters:
            parts.append(f"s{i}" if s > 0 else f"s{i}^-1")
        return " ".join(parts)


def permutation(b: BraidWord) -> tuple[int, ...]:
    """Image in the symmetric group: entry i-1 is where strand i ends (1-based)."""
    out = []
    for start in range(1, b.n + 1):
        cur = start
        for j, _ in b.letters:
            if cur == j:
                cur = j + 1
            elif cur == j + 1:
                cur = j
        out.append(cur)
    return tuple(out)


def is_pure(b: BraidWord) -> bool:
    return permutation(b) == tuple(range(1, b.n + 1))


def exponent_sum(b: BraidWord) -> int:
    return sum(s for _, s in b.letters)


# ---------------------------------------------------------------------------
# Garside normal form
# ---------------------------------------------------------------------------


def _ident(n: int) -> Perm:
    return tuple(range(n))


def _delta_perm(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def _mul_values(p: Perm, k: int) -> Perm:
    """p followed by the crossing at positions k, k+1 (swap the values)."""
    return tuple(k + 1 if v == k else k if v == k + 1 else v for v in p)


def _mul_entries(p: Perm, k: int) -> Perm:
    """The crossing at positions k, k+1 followed by p (swap the entries)."""
    q = list(p)
    q[k], q[k + 1] = q[k + 1], q[k]
    return tuple(q)


def _starting_set(p: Perm) -> int:
    """Bitmask of k where the strands starting at k, k+1 cross."""
    mask = 0
    for k in range(len(p) - 1):
        if p[k] > p[k + 1]:
            mask |= 1 << k
    return mask


def _finishing_set(p: Perm) -> int:
    """Bitmask of k where the strands ending at k, k+1 have crossed."""
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    mask = 0
    for k in range(len(p) - 1):
        if inv[k] > inv[k + 1]:
            mask |= 1 << k
    return mask


def _tau(p: Perm) -> Perm:
    """Conjugation by the half twist."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - i] for i in range(n))


def _slide(x: Perm, y: Perm) -> tuple[Perm, Perm, bool]:
    """Move crossings from y to x until the pair is left-weighted."""
    moved = False
    while True:
        free = _starting_set(y) & ~_finishing_set(x)
        if not free:
            return x, y, moved
        k = (free & -free).bit_length() - 1
        x = _mul_values(x, k)
        y = _mul_entries(y, k)
        moved = True


def _normalize_factors(n: int, factors: list[Perm]) -> tuple[int, tuple[Perm, ...]]:
    """Left-weight a factor sequence; returns (delta power moved out, factors)."""
    ident = _ident(n)
    delta = _delta_perm(n)
    fs = [f for f in factors if f != ident]
    for i in range(len(fs) - 1):
        j = i
        while j >= 0:
            x, y, moved = _slide(fs[j], fs[j + 1])
            if not moved:
                break
            fs[j], fs[j + 1] = x, y
            j -= 1
    lo = 0
    hi = len(fs)
    while lo < hi and fs[lo] == delta:
        lo += 1
    while hi > lo and fs[hi - 1] == ident:
        hi -= 1
    out = tuple(fs[lo:hi])
    for a, b in zip(out, out[1:]):
        assert not (_starting_set(b) & ~_finishing_set(a)), "normalization failed"
    return lo, out


@functools.lru_cache(maxsize=200000)
def normal_form(b: BraidWord) -> tuple[int, tuple[Perm, ...]]:
    """Left Garside normal form (infimum, canonical factors)."""
    n = b.n
    delta = _delta_perm(n)
    factors: list[Perm] = []
    powers: list[int] = []
    for i, sign in b.letters:
        k = i - 1
        if sign > 0:
            factors.append(_mul_entries(_ident(n), k))
            powers.append(0)
        else:
            # s_k^-1 = Delta^-1 . (Delta with the final crossing removed)
            factors.append(_mul_values(delta, k))
            powers.append(-1)
    shift = 0
    for idx in range(len(factors) - 1, -1, -1):
        if shift % 2:
            factors[idx] = _tau(factors[idx])
        shift += powers[idx]
    extra, canon = _normalize_factors(n, factors)
    return shift + extra, canon


def equal(b1: BraidWord, b2: BraidWord) -> bool:
    """Word problem via identical normal forms."""
    if b1.n != b2.n:
        raise StrandError(f"strand counts differ: {b1.n} vs {b2.n}")
    return normal_form(b1) == normal_form(b2)


def is_trivial(b: BraidWord) -> bool:
    return normal_form(b) == (0, ())


# ---------------------------------------------------------------------------
# strand removal, generators, Brunnian test
# ---------------------------------------------------------------------------


def remove_strand(b: BraidWord, i: int) -> BraidWord:
    """
    Forget the strand starting at position i and reglue. The removed strand's
    current position is tracked through the word: a crossing involving it is
    dropped, crossings above it shift down.
    """
    if not 1 <= i <= b.n:
        raise StrandError(f"no strand {i} in a {b.n}-strand braid")
    if b.n == 1:
        return BraidWord.identity(1)
    pos = i
    letters: list[tuple[int, int]] = []
    for j, sign in b.letters:
        if pos == j:
            pos = j + 1
        elif pos == j + 1:
            pos = j
        elif pos < j:
            letters.append((j - 1, sign))
        else:
            letters.append((j, sign))
    return BraidWord(b.n - 1, tuple(letters))


def a_generator(i: int, j: int, n: int) -> BraidWord:
    """Band generator A[i,j] = s_{j-1}...s_{i+1} s_i^2 s_{i+1}^-1...s_{j-1}^-1."""
    if not 1 <= i < j <= n:
        raise StrandError(f"need 1 <= i < j <= n, got ({i}, {j}) with n={n}")
    head = [(k, 1) for k in range(j - 1, i, -1)]
    tail = [(k, -1) for k in range(i + 1, j)]
    return BraidWord(n, tuple(head + [(i, 1), (i, 1)] + tail))


def half_twist(n: int) -> BraidWord:
    """Delta_n = (s1 s2 ... s_{n-1})(s1 ... s_{n-2}) ... (s1 s2) s1."""
    if n < 1:
        raise StrandError("need n >= 1")
    letters = []
    for top in range(n - 1, 0, -1):
        letters.extend((k, 1) for k in range(1, top + 1))
    return BraidWord(n, tuple(letters))


def is_brunnian(b: BraidWord) -> bool:
    """True iff removing any one strand leaves the trivial braid."""
    return all(is_trivial(remove_strand(b, i)) for i in range(1, b.n + 1))


# ---------------------------------------------------------------------------
# band-generator words on pure braids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BandWord:
    """A word in the band generators A[i,j] of the pure braid group."""

    n: int
    letters: tuple[tuple[int, int, int], ...]  # (i, j, sign) with i < j

    def __post_init__(self):
        for i, j, sign in self.letters:
            if not 1 <= i < j <= self.n:
                raise StrandError(f"A[{i},{j}] out of range for n={self.n}")
            if sign not in (1, -1):
                raise ValueError(f"bad sign {sign}")

    @staticmethod
    def identity(n: int) -> BandWord:
        return BandWord(n, ())

    def __mul__(self, other: BandWord) -> BandWord:
        if self.n != other.n:
            raise StrandError(f"strand counts differ: {self.n} vs {other.n}")
        return BandWord(self.n, self.letters + other.letters)

    def inverse(self) -> BandWord:
        return BandWord(self.n, tuple((i, j, -s) for i, j, s in reversed(self.letters)))

    def expand(self) -> BraidWord:
        out = BraidWord.identity(self.n)
        for i, j, sign in self.letters:
            g = a_generator(i, j, self.n)
            out = out * (g if sign > 0 else g.inverse())
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(
            f"A[{i},{j}]" if s > 0 else f"A[{i},{j}]^-1" for i, j, s in self.letters
        )


def band_face(w: BandWord, k: int) -> BandWord:
    """Strand removal on band letters: drop bands at k, shift the rest down."""
    if not 1 <= k <= w.n:
        raise StrandError(f"no strand {k} in a {w.n}-strand braid")
    letters = []
    for i, j, sign in w.letters:
        if k in (i, j):
            continue
        letters.append((i - (i > k), j - (j > k), sign))
    return BandWord(w.n - 1, tuple(letters))


def band_coface(w: BandWord, k: int) -> BandWord:
    """Insert a trivial strand at position k (1 <= k <= n+1)."""
    if not 1 <= k <= w.n + 1:
        raise StrandError(f"cannot insert at position {k} in a {w.n}-strand braid")
    letters = [(i + (i >= k), j + (j >= k), sign) for i, j, sign in w.letters]
    return BandWord(w.n + 1, tuple(letters))


# ---------------------------------------------------------------------------
# rewriting pure sigma-words into band words
# ---------------------------------------------------------------------------

# A braid whose last strand can be removed trivially is determined by the
# loop that strand traces in the disk punctured at the other strands. The
# reader below walks the word tracking the moving strand; each time the
# strand crosses in the emitting direction it picks up a loop around the
# crossed puncture, transported back to the fixed starting configuration by
# the inverse motion of the other strands (their Artin action on the free
# group of puncture loops). Substituting A[i,n] for the i-th puncture loop
# recovers the braid; the reading is certified by a normal-form comparison.


def _free_alphabet(n: int) -> Alphabet:
    return Alphabet(tuple(f"x{i}" for i in range(1, n + 1)))


def _act_letter(w: Word, k: int, sign: int, alphabet: Alphabet) -> Word:
    xk = Word.gen(alphabet, f"x{k}")
    xk1 = Word.gen(alphabet, f"x{k + 1}")
    if sign > 0:
        images = {f"x{k}": xk * xk1 * xk.inverse(), f"x{k + 1}": xk}
    else:
        images = {f"x{k}": xk1, f"x{k + 1}": xk1.inverse() * xk * xk1}
    out: list[tuple[str, int]] = []
    for sym, e in w.letters:
        img = images.get(sym)
        if img is None:
            out.append((sym, e))
        else:
            out.extend(img.letters if e > 0 else img.inverse().letters)
    return Word(alphabet, out)


def braid_action(b: BraidWord, w: Word) -> Word:
    """Action of a braid word on the free group on the puncture loops."""
    alphabet = _free_alphabet(b.n)
    if w.alphabet != alphabet:
        raise ValueError("word is not over the puncture alphabet")
    for k, sign in b.letters:
        w = _act_letter(w, k, sign, alphabet)
    return w


def _express_kernel_word(b: BraidWord) -> list[tuple[int, int, int]]:
    """Band letters for b, valid when remove_strand(b, n) is trivial."""
    n = b.n
    alphabet = _free_alphabet(n - 1)
    p = n
    others: list[tuple[int, int]] = []  # motion of the other strands so far
    acc = Word.identity(alphabet)
    for j, e in b.letters:
        emit = 0
        if p == j and e == 1:
            emit = 1
        elif p == j + 1 and e == -1:
            emit = -1
        elif p < j:
            others.append((j - 1, e))
        elif p > j + 1:
            others.append((j, e))
        if emit:
            # crossed puncture sits at position j once the strand is removed
            transport = BraidWord(n - 1, tuple(others)).inverse()
            g = braid_action(transport, Word.gen(alphabet, f"x{j}"))
            acc = acc * (g if emit > 0 else g.inverse())
        if p == j:
            p = j + 1
        elif p == j + 1:
            p = j
    letters = tuple((int(sym[1:]), n, sign) for sym, sign in acc.letters)
    candidate = BandWord(n, letters)
    if not equal(candidate.expand(), b):
        raise AssertionError(f"band reading failed to verify for {b}")
    return list(letters)


def pure_to_bands(b: BraidWord) -> BandWord:
    """
    Rewrite a pure braid word into band generators by peeling one strand at
    a time: split off the part that fixes the last strand, express the
    complement over A[i,n], and recurse. The result is certified against the
    input by a normal-form equality check.
    """
    if not is_pure(b):
        raise StrandError("only pure braids have band-generator words")
    letters: list[tuple[int, int, int]] = []
    current = b
    while current.n > 1:
        n = current.n
        lower = remove_strand(current, n)
        embedded = BraidWord(n, lower.letters)
        kernel_part = current * embedded.inverse()
        letters.extend(_express_kernel_word(kernel_part))
        current = lower
    out = BandWord(b.n, tuple(letters))
    if not equal(out.expand(), b):
        raise AssertionError(f"band rewriting failed to verify for {b}")
    return out


# ---------------------------------------------------------------------------
# James-Hopf products
# ---------------------------------------------------------------------------

HOPF_FACTOR_ORDER = "colex"  # subsets ordered lexicographically from the right


def _insertion_subsets(k: int, n: int) -> list[tuple[int, ...]]:
    import itertools

    subsets = list(itertools.combinations(range(1, n + 1), n - k))
    if HOPF_FACTOR_ORDER == "colex":
        subsets.sort(key=lambda t: tuple(reversed(t)))
    else:
        subsets.sort()
    return subsets


def james_hopf(b: BandWord | BraidWord, n: int) -> BandWord:
    """
    H_{k,n}: the ordered product over all (n-k)-element position sets of the
    corresponding coface images of a k-strand Brunnian braid.
    """
    if isinstance(b, BraidWord):
        if not is_brunnian(b):
            raise StrandError("James-Hopf input must be Brunnian")
        band = pure_to_bands(b)
    else:
        band = b
        if not is_brunnian(band.expand()):
            raise StrandError("James-Hopf input must be Brunnian")
    k = band.n
    if k > n:
        raise StrandError(f"target strand count {n} below input {k}")
    if k == n:
        return band
    out = BandWord.identity(n)
    for subset in _insertion_subsets(k, n):
        factor = band
        for pos in subset:
            factor = band_coface(factor, pos)
        out = out * factor
    return out


# ---------------------------------------------------------------------------
# Brunnian generators on the disk
# ---------------------------------------------------------------------------


def sigma_alphabet(n: int) -> Alphabet:
    return Alphabet(tuple(f"s{i}" for i in range(1, n)))


def word_to_braid(w: Word, n: int) -> BraidWord:
    letters = tuple((int(sym[1:]), sign) for sym, sign in w.letters)
    return BraidWord(n, letters)


def braid_to_word(b: BraidWord) -> Word:
    alphabet = sigma_alphabet(b.n)
    return Word(alphabet, tuple((f"s{i}", sign) for i, sign in b.letters))


def brunnian_generators(n: int, conj_len: int) -> list[BraidWord]:
    """
    Bounded generating sample of the n-strand Brunnian braids on the disk:
    left-normed commutators, over all orders, of conjugates of the band
    generators A[1,n]..A[n-1,n], with conjugators all braid words of length
    at most conj_len. Every output is checked to be Brunnian.
    """
    from .kernels import symmetric_commutator_generators
    from .words import enumerate_reduced_words

    if n < 3:
        raise StrandError("need n >= 3")
    alphabet = sigma_alphabet(n)
    families = [braid_to_word(a_generator(k, n, n)) for k in range(1, n)]
    pool = list(enumerate_reduced_words(alphabet, conj_len))
    words = symmetric_commutator_generators(families, pool)
    out = []
    for w in words:
        braid = word_to_braid(w, n)
        if not is_brunnian(braid):
            raise AssertionError(f"generator {w} is not Brunnian")
        out.append(braid)
    return out


# ---------------------------------------------------------------------------
# braid word text syntax
# ---------------------------------------------------------------------------

_BAND_RE = re.compile(r"A\[\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_braid(text: str, n: int) -> BraidWord:
    """Parse `s1 s2^-1 (s1 s2)^3` style words; A[i,j] letters are expanded."""

    def band_sub(m: re.Match) -> str:
        i, j = int(m.group(1)), int(m.group(2))
        return "( " + str(a_generator(i, j, n)) + " )"

    text = _BAND_RE.sub(band_sub, text)
    try:
        w = parse_word(text, sigma_alphabet(n))
    except WordSyntaxError as exc:
        raise WordSyntaxError(f"in braid word {text!r}: {exc}") from None
    return word_to_braid(w, n)


def parse_band_word(text: str, n: int) -> BandWord:
    """Parse a word whose letters are all A[i,j]."""
    names: dict[str, tuple[int, int]] = {}

    def band_sub(m: re.Match) -> str:
        i, j = int(m.group(1)), int(m.group(2))
        name = f"A_{i}_{j}"
        names[name] = (i, j)
        return name

    text2 = _BAND_RE.sub(band_sub, text)
    if not names:
        if text2.strip() in ("", "1"):
            return BandWord.identity(n)
    alphabet = Alphabet(tuple(f"A_{i}_{j}" for i in range(1, n) for j in range(i + 1, n + 1)))
    w = parse_word(text2, alphabet)
    letters = []
    for sym, sign in w.letters:
        _, i, j = sym.split("_")
        letters.append((int(i), int(j), sign))
    return BandWord(n, tuple(letters))
