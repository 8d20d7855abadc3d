"""
Free bases for intersections of projection kernels, by commutator recursion.

A projection homomorphism F(S) -> F(T) fixes a sub-alphabet T and kills the
remaining generators. The kernel of a single projection has a free basis of
nested commutators mu(x, y) = [...[[x, z1], z2]...], obtained by commutating
a killed generator x with the letters of a word y over T. Iterating the
construction over several sub-alphabets T1, ..., Tk gives a free basis of the
intersection of all k kernels; the y-words of stage k are drawn from the free
group on the stage-(k-1) elements whose entries all lie in Tk.

The index sets are infinite, so :func:`intersection_basis` truncates by the
length of the y-words (`y_bound`), which keeps the truncation monotone in a
single parameter. Every emitted element is checked to lie in all k kernels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .words import Alphabet, AlphabetError, FreeHom, Word, commutator


@dataclass(frozen=True)
class ProjectionFamily:
    """Sub-alphabets T1..Tn of S with the projections F(S) -> F(Ti)."""

    alphabet: Alphabet
    kept: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        for t in self.kept:
            tset = set(t)
            for s in tset:
                if s not in self.alphabet:
                    raise AlphabetError(f"{s!r} not in {self.alphabet.symbols}")
            if tset == set(self.alphabet.symbols):
                raise ValueError("each kept set must be a proper subset")

    @staticmethod
    def deleting_one(alphabet: Alphabet, killed: Sequence[str]) -> ProjectionFamily:
        """Family with T_i = S minus the i-th killed generator."""
        kept = tuple(tuple(s for s in alphabet if s != x) for x in killed)
        return ProjectionFamily(alphabet, kept)

    def projection(self, i: int) -> FreeHom:
        return FreeHom.projection(self.alphabet, self.kept[i])

    def __len__(self) -> int:
        return len(self.kept)


@dataclass(frozen=True)
class BasisElement:
    """A word together with its mu-derivation.

    An element is either an atom (a single generator; `seed` is None) or
    mu(seed, tail): the nested commutator of `seed` with the signed elements
    of `tail` in order.
    """

    word: Word
    seed: BasisElement | None
    tail: tuple[tuple[BasisElement, int], ...]

    @staticmethod
    def atom(w: Word) -> BasisElement:
        if len(w) != 1:
            raise ValueError("atoms are single generators")
        return BasisElement(w, None, ())

    @cached_property
    def entry_symbols(self) -> frozenset[str]:
        """Generators appearing as entries of the iterated commutator."""
        if self.seed is None:
            return frozenset(self.word.symbols_used())
        out = set(self.seed.entry_symbols)
        for el, _ in self.tail:
            out |= el.entry_symbols
        return frozenset(out)

    def expand(self) -> Word:
        """Re-evaluate the derivation; must reproduce `word`."""
        if self.seed is None:
            return self.word
        w = self.seed.expand()
        for el, sign in self.tail:
            z = el.expand()
            w = commutator(w, z if sign > 0 else z.inverse())
        return w

    def derivation_json(self) -> dict:
        if self.seed is None:
            return {"atom": str(self.word)}
        return {
            "word": str(self.word),
            "x": self.seed.derivation_json(),
            "y": [[el.derivation_json(), sign] for el, sign in self.tail],
        }


def nested_commutator(x: Word, y: Word, sub: Iterable[str] | None = None) -> Word:
    """
    mu(x, y): x for empty y, else [mu(x, y'), z] where y = y'z.

    If `sub` is given, every symbol of y must belong to it.
    """
    if sub is not None:
        allowed = set(sub)
        bad = y.symbols_used() - allowed
        if bad:
            raise AlphabetError(f"y uses symbols outside the sub-alphabet: {sorted(bad)}")
    w = x
    for sym, sign in y.letters:
        w = commutator(w, Word.gen(x.alphabet, sym, sign))
    return w


def _mu_element(x: BasisElement, tail: tuple[tuple[BasisElement, int], ...]) -> BasisElement:
    w = x.word
    for el, sign in tail:
        w = commutator(w, el.word if sign > 0 else el.word.inverse())
    return BasisElement(w, x, tail)


def _reduced_sequences(count: int, bound: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Reduced sequences over `count` formal letters, shortlex, length <= bound."""
    signed = [(i, e) for i in range(count) for e in (1, -1)]
    level: list[tuple[tuple[int, int], ...]] = [()]
    yield ()
    for _ in range(bound):
        nxt = []
        for prefix in level:
            for i, e in signed:
                if prefix and prefix[-1][0] == i and prefix[-1][1] == -e:
                    continue
                nxt.append(prefix + ((i, e),))
        yield from nxt
        level = nxt


def nested_commutator_set(
    V: Sequence[Word], W: Sequence[Word], sub: Iterable[str] | None = None
) -> list[BasisElement]:
    """
    All mu(x, y) for x in V, y in W, deduplicated by reduced word; the first
    derivation in (x, y) shortlex order is kept.
    """
    if not V:
        return []
    alphabet = V[0].alphabet
    pairs = sorted(
        itertools.product(V, W), key=lambda p: (p[0].shortlex_key(), p[1].shortlex_key())
    )
    out: list[BasisElement] = []
    seen: set[Word] = set()
    for x, y in pairs:
        tail = tuple((BasisElement.atom(Word.gen(alphabet, sym)), sign) for sym, sign in y.letters)
        el = _mu_element(BasisElement.atom(x) if len(x) == 1 else BasisElement(x, None, ()), tail)
        if el.word in seen:
            continue
        seen.add(el.word)
        out.append(el)
    return out


def in_projection_kernels(
    w: Word, family: ProjectionFamily, indices: Iterable[int] | None = None
) -> bool:
    """True iff every chosen projection sends w to the identity."""
    if indices is None:
        indices = range(len(family))
    return all(family.projection(i)(w).is_identity() for i in indices)


def intersection_basis(
    alphabet: Alphabet,
    kept_sets: Sequence[Iterable[str]],
    y_bound: int,
) -> list[BasisElement]:
    """
    Truncated free basis for the intersection of the kernels of the
    projections F(S) -> F(T_i), T_i the i-th kept set.

    Stage 1 takes the killed generators commutated against words over T_1 of
    length <= y_bound. Stage k >= 2 splits the previous elements by whether
    all their entries lie in T_k: those that do play the role of the new
    sub-alphabet (they survive the k-th projection), the rest are the new
    seeds, commutated against words over the survivors of length <= y_bound.
    Identity words produced by the truncation are dropped. Every output is
    verified to lie in the first k kernels.
    """
    family = ProjectionFamily(alphabet, tuple(tuple(t) for t in kept_sets))
    elems: list[BasisElement] = []
    for k in range(len(family)):
        kept = family.kept[k]
        if k == 0:
            killed = [s for s in alphabet if s not in set(kept)]
            seeds = [BasisElement.atom(Word.gen(alphabet, s)) for s in killed]
            letters = [BasisElement.atom(Word.gen(alphabet, s)) for s in kept]
        else:
            tk = set(kept)
            seeds = [el for el in elems if not el.entry_symbols <= tk]
            letters = [el for el in elems if el.entry_symbols <= tk]
        nxt: list[BasisElement] = []
        seen: set[Word] = set()
        for x in seeds:
            for seq in _reduced_sequences(len(letters), y_bound):
                tail = tuple((letters[i], sign) for i, sign in seq)
                el = _mu_element(x, tail)
                if el.word.is_identity() or el.word in seen:
                    continue
                seen.add(el.word)
                nxt.append(el)
        elems = nxt
        for el in elems:
            if not in_projection_kernels(el.word, family, range(k + 1)):
                raise AssertionError(f"basis element {el.word} escapes a kernel at stage {k + 1}")
    return elems


def commutator_normal_generators(A: Sequence[Word], B: Sequence[Word]) -> list[Word]:
    """Normal generators [a_i, b_j] of [R1, R2] from normal generators of R1
    and plain generators of R2."""
    return [commutator(a, b) for a in A for b in B]


def symmetric_commutator_generators(
    families: Sequence[Word], pool: Sequence[Word]
) -> list[Word]:
    """
    Bounded generating set for the symmetric commutator subgroup of the
    normal closures of the given elements: for every permutation of the
    families and every tuple of conjugators from the pool, form the
    left-normed commutator of the conjugated elements. Signed conjugates are
    not needed since normal closures are inverse-closed; the pool should
    contain the identity to recover the plain commutators.
    """
    out: list[Word] = []
    seen: set[Word] = set()
    n = len(families)
    for perm in itertools.permutations(range(n)):
        for conjs in itertools.product(pool, repeat=n):
            w = families[perm[0]].conjugate_by(conjs[0])
            for j in range(1, n):
                w = commutator(w, families[perm[j]].conjugate_by(conjs[j]))
            if w.is_identity() or w in seen:
                continue
            seen.add(w)
            out.append(w)
    return out
