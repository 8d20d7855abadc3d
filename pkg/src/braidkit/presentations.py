"""
Finitely presented groups: coset enumeration and finite-group fingerprints.

The enumerator is the classical relator-based (HLT) strategy with immediate
coincidence processing: working coset 0 is the subgroup, each live coset is
scanned against every relator, definitions fill gaps, and a union-find keeps
the table involutive through coincidences. Coset numbering is by first
appearance, which makes runs deterministic.

Enumeration that hits the coset cap returns a DidNotClose value rather than
raising: the catalog contains infinite groups and "did not close" is an
ordinary answer for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .words import Alphabet, Word, WordSyntaxError, parse_word

DEFAULT_COSET_CAP = 10**6


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators; a relation r = s is stored as r s^-1."""

    generators: Alphabet
    relators: tuple[Word, ...]

    def __post_init__(self):
        if not len(self.generators):
            raise ValueError("empty generator list")
        for r in self.relators:
            if r.alphabet != self.generators:
                raise ValueError(f"relator {r} not over the generator alphabet")

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def with_relators(self, extra: Iterable[Word | str]) -> Presentation:
        new = list(self.relators)
        for r in extra:
            if isinstance(r, str):
                if "=" in r:
                    lhs, rhs = r.split("=", 1)
                    r = self.word(lhs) * self.word(rhs).inverse()
                else:
                    r = self.word(r)
            new.append(r)
        return Presentation(self.generators, tuple(new))


def parse_presentation(text: str) -> Presentation:
    """
    Read the presentation file format:

        # comment
        gens: a b w A23
        rel: a^4
        rel: b^-1 a b = a^-1
    """
    gens: Alphabet | None = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            if gens is not None:
                raise WordSyntaxError(f"line {lineno}: duplicate gens line")
            gens = Alphabet(tuple(line[len("gens:") :].split()))
        elif line.startswith("rel:"):
            if gens is None:
                raise WordSyntaxError(f"line {lineno}: rel before gens")
            body = line[len("rel:") :]
            try:
                if "=" in body:
                    lhs, rhs = body.split("=", 1)
                    relators.append(parse_word(lhs, gens) * parse_word(rhs, gens).inverse())
                else:
                    relators.append(parse_word(body, gens))
            except WordSyntaxError as exc:
                raise WordSyntaxError(f"line {lineno}: {exc}") from None
        else:
            raise WordSyntaxError(f"line {lineno}: expected 'gens:' or 'rel:'")
    if gens is None:
        raise WordSyntaxError("missing gens line")
    return Presentation(gens, tuple(relators))


def format_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators.symbols)]
    lines.extend(f"rel: {r}" for r in p.relators)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Todd-Coxeter
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DidNotClose:
    """Enumeration exceeded the coset cap; not an error."""

    cosets_defined: int
    limit: int

    def __bool__(self) -> bool:
        return False


class _Overflow(Exception):
    pass


class _Enumerator:
    def __init__(self, ngens: int, limit: int):
        self.ncols = 2 * ngens
        self.limit = limit
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p: list[int] = [0]

    def rep(self, k: int) -> int:
        l = k
        p = self.p
        while p[l] != l:
            l = p[l]
        while p[k] != l:
            p[k], k = l, p[k]
        return l

    def define(self, alpha: int, x: int) -> None:
        if len(self.table) >= self.limit:
            raise _Overflow
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.table[alpha][x] = beta
        self.table[beta][x ^ 1] = alpha

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k != l:
            mu, nu = min(k, l), max(k, l)
            self.p[nu] = mu
            queue.append(nu)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            for x in range(self.ncols):
                delta = table[gamma][x]
                if delta is None:
                    continue
                table[delta][x ^ 1] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][x] is not None:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self._merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(self, alpha: int, w: Sequence[int]) -> None:
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])


def _columns(w: Word, gens: Alphabet) -> tuple[int, ...]:
    return tuple(2 * gens.index(sym) + (0 if sign > 0 else 1) for sym, sign in w.letters)


@dataclass(frozen=True)
class CosetTable:
    """Completed coset action; for the trivial subgroup this is the group."""

    generators: Alphabet
    forward: tuple[tuple[int, ...], ...]  # action of each generator
    backward: tuple[tuple[int, ...], ...]  # action of each inverse
    reps: tuple[Word, ...]

    @property
    def count(self) -> int:
        return len(self.reps)

    def evaluate(self, w: Word, start: int = 0) -> int:
        if w.alphabet != self.generators:
            raise ValueError("word over a different alphabet")
        c = start
        for sym, sign in w.letters:
            g = self.generators.index(sym)
            c = self.forward[g][c] if sign > 0 else self.backward[g][c]
        return c

    def mult(self, i: int, j: int) -> int:
        """Product of elements i and j (trivial-subgroup tables)."""
        return self.evaluate(self.reps[j], start=i)

    def inverse_element(self, i: int) -> int:
        return self.evaluate(self.reps[i].inverse())

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mult(x, i)
            k += 1
            if k > self.count:
                raise AssertionError("order exceeds group order; corrupt table")
        return k

    @cached_property
    def _orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(i) for i in range(self.count))

    def order_profile(self) -> dict[int, int]:
        """Multiset of element orders, as {order: count}."""
        profile: dict[int, int] = {}
        for o in self._orders:
            profile[o] = profile.get(o, 0) + 1
        return dict(sorted(profile.items()))

    def subgroup_closure(self, elements: Iterable[int]) -> frozenset[int]:
        gens = sorted(set(elements))
        seen = {0}
        frontier = [0]
        while frontier:
            e = frontier.pop()
            for s in gens:
                f = self.mult(e, s)
                if f not in seen:
                    seen.add(f)
                    frontier.append(f)
        return frozenset(seen)

    def normal_closure(self, words: Iterable[Word]) -> frozenset[int]:
        """Smallest normal subgroup containing the images of the words."""
        core = {self.evaluate(w) for w in words}
        core.discard(0)
        conj_closed = set(core)
        frontier = list(core)
        letters = [Word.gen(self.generators, s, e) for s in self.generators for e in (1, -1)]
        while frontier:
            x = frontier.pop()
            for g in letters:
                y = self.evaluate(g * self.reps[x] * g.inverse())
                if y not in conj_closed:
                    conj_closed.add(y)
                    frontier.append(y)
        return self.subgroup_closure(conj_closed)


def todd_coxeter(
    p: Presentation,
    subgroup_gens: Sequence[Word | str] = (),
    limit: int = DEFAULT_COSET_CAP,
) -> CosetTable | DidNotClose:
    """
    Enumerate cosets of the subgroup generated by `subgroup_gens` (the whole
    group for the empty list). Returns a closed CosetTable, or DidNotClose if
    more than `limit` cosets would be defined.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    gens = p.generators
    sub = tuple(p.word(w) if isinstance(w, str) else w for w in subgroup_gens)
    relator_cols = [_columns(r, gens) for r in p.relators if not r.is_identity()]
    enum = _Enumerator(len(gens), limit)
    try:
        for w in sub:
            enum.scan_and_fill(0, _columns(w, gens))
        alpha = 0
        while alpha < len(enum.table):
            if enum.p[alpha] == alpha:
                for cols in relator_cols:
                    enum.scan_and_fill(alpha, cols)
                    if enum.p[alpha] != alpha:
                        break
                if enum.p[alpha] == alpha:
                    for x in range(enum.ncols):
                        if enum.table[alpha][x] is None:
                            enum.define(alpha, x)
            alpha += 1
    except _Overflow:
        return DidNotClose(cosets_defined=len(enum.table), limit=limit)

    live = [k for k in range(len(enum.table)) if enum.p[k] == k]
    remap = {old: new for new, old in enumerate(live)}
    forward = []
    backward = []
    for g in range(len(gens)):
        fwd = tuple(remap[enum.rep(enum.table[old][2 * g])] for old in live)
        bwd = tuple(remap[enum.rep(enum.table[old][2 * g + 1])] for old in live)
        forward.append(fwd)
        backward.append(bwd)

    # representative words by breadth-first search in generator order
    reps: list[Word | None] = [None] * len(live)
    reps[0] = Word.identity(gens)
    queue = [0]
    qi = 0
    while qi < len(queue):
        c = queue[qi]
        qi += 1
        for g, sym in enumerate(gens):
            for sign, row in ((1, forward[g]), (-1, backward[g])):
                nxt = row[c]
                if reps[nxt] is None:
                    reps[nxt] = reps[c] * Word.gen(gens, sym, sign)
                    queue.append(nxt)
    assert all(r is not None for r in reps), "coset table not transitive"

    table = CosetTable(gens, tuple(forward), tuple(backward), tuple(reps))  # type: ignore[arg-type]
    for r in p.relators:
        cols = _columns(r, gens)
        for c in range(table.count):
            x = c
            for col in cols:
                row = forward[col // 2] if col % 2 == 0 else backward[col // 2]
                x = row[x]
            assert x == c, f"relator {r} does not act trivially"
    return table


# ---------------------------------------------------------------------------
# abelianization
# ---------------------------------------------------------------------------


def _smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (non-negative, d1 | d2 | ...)."""
    a = [row[:] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    t = 0
    diag: list[int] = []
    while t < min(nrows, ncols):
        # find smallest nonzero entry in the remaining block
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        # clear row and column t; restart if a remainder creates a smaller entry
        clean = True
        for i in range(t + 1, nrows):
            q = a[i][t] // a[t][t]
            if q:
                for j in range(t, ncols):
                    a[i][j] -= q * a[t][j]
            if a[i][t] != 0:
                clean = False
        for j in range(t + 1, ncols):
            q = a[t][j] // a[t][t]
            if q:
                for i in range(t, nrows):
                    a[i][j] -= q * a[i][t]
            if a[t][j] != 0:
                clean = False
        if not clean:
            continue
        # enforce divisibility of the remaining block by the pivot
        d = a[t][t]
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, ncols):
                a[t][j] += a[offender][j]
            continue
        diag.append(abs(d))
        t += 1
    return diag


def abelianization(p: Presentation) -> tuple[int, ...]:
    """
    Invariant factors of the abelianized group: nontrivial torsion factors in
    descending order, then one 0 per free factor.
    """
    gens = list(p.generators)
    matrix = [[r.exponent_sum(g) for g in gens] for r in p.relators]
    if not matrix:
        matrix = [[0] * len(gens)]
    diag = _smith_diagonal(matrix)
    torsion = sorted((d for d in diag if d not in (0, 1)), reverse=True)
    rank = sum(1 for d in diag if d != 0)
    free = len(gens) - rank
    return tuple(torsion) + (0,) * free


def gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
