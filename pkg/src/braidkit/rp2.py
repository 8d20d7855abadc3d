"""
Exact arithmetic in the 3-strand pure braid group of the projective plane.

The group splits as U3 x| Q8: a free group on {w, A23} (the third-strand
loops) extended by the 2-strand group Q8 = <a, b>. An element is stored in
the normal form (upart, qpart); multiplication pushes Q8 letters through
free letters with the catalog conjugation rules. The Q8 arithmetic is not
hand-coded: it is the coset table of the rho,u presentation, carried over
to canonical pairs a^s b^t through an isomorphism that is verified
exhaustively at load time.

Strand removal maps d1, d2, d3 land in Q8 and decide Brunnian-ness; the
2-strand case is enumerated exhaustively inside the 16-element group.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .catalog import builtin
from .presentations import CosetTable, todd_coxeter
from .words import Alphabet, FreeHom, Word, commutator, parse_word

U3_ALPHABET = Alphabet.of("w", "A23")
MIXED_ALPHABET = Alphabet.of("rho", "u", "w", "A23", "a", "b", "A13")
_Q8_PAIRS = tuple((s, t) for s in range(4) for t in range(2))


@functools.lru_cache(maxsize=1)
def _q8_model():
    """
    Coset tables of the rho,u presentation and the standard quaternion
    presentation, the isomorphism rho -> a, u -> b between them (verified as
    a bijective homomorphism), and the canonical-pair indexing a^s b^t.
    """
    tp2 = todd_coxeter(builtin("P2_RP2"))
    tq8 = todd_coxeter(builtin("Q8"))
    assert isinstance(tp2, CosetTable) and isinstance(tq8, CosetTable)
    assert tp2.count == 8 and tq8.count == 8

    qgens = tq8.generators
    sub = FreeHom(
        tp2.generators, qgens, {"rho": Word.gen(qgens, "a"), "u": Word.gen(qgens, "b")}
    )
    phi = tuple(tq8.evaluate(sub(tp2.reps[e])) for e in range(8))
    assert sorted(phi) == list(range(8)), "rho->a, u->b is not a bijection"
    for x in range(8):
        for y in range(8):
            assert phi[tp2.mult(x, y)] == tq8.mult(phi[x], phi[y]), "not a homomorphism"

    id_of_pair = {}
    pair_of_id = {}
    for s, t in _Q8_PAIRS:
        e = tq8.evaluate(Word.gen(qgens, "a", s) * Word.gen(qgens, "b", t))
        id_of_pair[(s, t)] = e
        pair_of_id[e] = (s, t)
    assert len(pair_of_id) == 8, "a^s b^t does not enumerate the group"
    return tp2, tq8, phi, id_of_pair, pair_of_id


@dataclass(frozen=True)
class Q8Element:
    """Canonical pair (s, t) for a^s b^t, multiplied through the coset table."""

    s: int
    t: int

    def __post_init__(self):
        if not (0 <= self.s < 4 and 0 <= self.t < 2):
            raise ValueError(f"non-canonical pair ({self.s}, {self.t})")

    @staticmethod
    def identity() -> Q8Element:
        return Q8Element(0, 0)

    @staticmethod
    def from_table_id(e: int) -> Q8Element:
        pair = _q8_model()[4][e]
        return Q8Element(*pair)

    def table_id(self) -> int:
        return _q8_model()[3][(self.s, self.t)]

    def __mul__(self, other: Q8Element) -> Q8Element:
        _, tq8, _, _, _ = _q8_model()
        return Q8Element.from_table_id(tq8.mult(self.table_id(), other.table_id()))

    def inverse(self) -> Q8Element:
        _, tq8, _, _, _ = _q8_model()
        return Q8Element.from_table_id(tq8.inverse_element(self.table_id()))

    def is_identity(self) -> bool:
        return self.s == 0 and self.t == 0

    def order(self) -> int:
        _, tq8, _, _, _ = _q8_model()
        return tq8.element_order(self.table_id())

    def __str__(self) -> str:
        if self.is_identity():
            return "1"
        parts = []
        if self.s:
            parts.append("a" if self.s == 1 else f"a^{self.s}")
        if self.t:
            parts.append("b")
        return "*".join(parts)

    def p2_representative(self) -> str:
        """The same element spelled over rho, u."""
        tp2, _, phi, _, _ = _q8_model()
        e = self.table_id()
        return str(tp2.reps[phi.index(e)])


def q8_mul(x: Q8Element, y: Q8Element) -> Q8Element:
    return x * y


def q8_of_p2_word(text_or_word: str | Word) -> Q8Element:
    """Evaluate a rho,u word in the 2-strand group, as a canonical pair."""
    tp2, _, phi, _, _ = _q8_model()
    w = parse_word(text_or_word, tp2.generators) if isinstance(text_or_word, str) else text_or_word
    return Q8Element.from_table_id(phi[tp2.evaluate(w)])


# ---------------------------------------------------------------------------
# the semidirect normal form
# ---------------------------------------------------------------------------

_W = Word.gen(U3_ALPHABET, "w")
_A = Word.gen(U3_ALPHABET, "A23")

# conjugation of the free part by a and by b
_ACT_A = FreeHom(
    U3_ALPHABET,
    U3_ALPHABET,
    {"w": _W.inverse() * _A, "A23": _W.inverse() * _A * _W},
)
_ACT_B = FreeHom(
    U3_ALPHABET,
    U3_ALPHABET,
    {"w": _A.inverse() * _W, "A23": _A.inverse()},
)


def conjugate_free_part(q: Q8Element, u: Word) -> Word:
    """(a^s b^t) u (a^s b^t)^-1 via the conjugation rules."""
    for _ in range(q.t):
        u = _ACT_B(u)
    for _ in range(q.s):
        u = _ACT_A(u)
    return u


@dataclass(frozen=True)
class Rp2Element:
    """Normal form upart * qpart with upart free on {w, A23}, qpart in Q8."""

    upart: Word
    qpart: Q8Element

    @staticmethod
    def identity() -> Rp2Element:
        return Rp2Element(Word.identity(U3_ALPHABET), Q8Element.identity())

    def __mul__(self, other: Rp2Element) -> Rp2Element:
        return Rp2Element(
            self.upart * conjugate_free_part(self.qpart, other.upart),
            self.qpart * other.qpart,
        )

    def inverse(self) -> Rp2Element:
        qinv = self.qpart.inverse()
        return Rp2Element(conjugate_free_part(qinv, self.upart.inverse()), qinv)

    def is_identity(self) -> bool:
        return self.upart.is_identity() and self.qpart.is_identity()

    def __str__(self) -> str:
        return f"({self.upart}, {self.qpart})"


def mixed_word(text: str) -> Word:
    """Parse a word over rho, u, w, A23, a, b (A13 accepted)."""
    return parse_word(text, MIXED_ALPHABET)


_TRANSLATE = {
    # rho = a w^-1 and u = w^-1 b invert the definitions a = rho w, b = w u;
    # A13 is eliminated by the surface relation A13 A23 = w^2.
    "rho": (("a", 1), ("w", -1)),
    "u": (("w", -1), ("b", 1)),
    "A13": (("w", 1), ("w", 1), ("A23", -1)),
    "w": (("w", 1),),
    "A23": (("A23", 1),),
    "a": (("a", 1),),
    "b": (("b", 1),),
}


def _core_letters(g: Word | str) -> list[tuple[str, int]]:
    if isinstance(g, str):
        g = mixed_word(g)
    if g.alphabet == U3_ALPHABET:
        return list(g.letters)
    if g.alphabet != MIXED_ALPHABET:
        raise ValueError(f"word over unexpected alphabet {g.alphabet.symbols}")
    out: list[tuple[str, int]] = []
    for sym, sign in g.letters:
        image = _TRANSLATE[sym]
        out.extend(image if sign > 0 else [(s, -e) for s, e in reversed(image)])
    return out


def normal_form(g: Word | str) -> Rp2Element:
    """Push a, b letters right through w, A23 letters; unique by the split."""
    upart = Word.identity(U3_ALPHABET)
    qpart = Q8Element.identity()
    q_letter = {("a", 1): Q8Element(1, 0), ("b", 1): Q8Element(0, 1)}
    q_letter[("a", -1)] = q_letter[("a", 1)].inverse()
    q_letter[("b", -1)] = q_letter[("b", 1)].inverse()
    for sym, sign in _core_letters(g):
        if sym in ("w", "A23"):
            upart = upart * conjugate_free_part(qpart, Word.gen(U3_ALPHABET, sym, sign))
        else:
            qpart = qpart * q_letter[(sym, sign)]
    return Rp2Element(upart, qpart)


def equal3(g1: Word | str, g2: Word | str) -> bool:
    """Equality in the 3-strand pure group via identical normal forms."""
    return normal_form(g1) == normal_form(g2)


# ---------------------------------------------------------------------------
# strand removal into Q8
# ---------------------------------------------------------------------------

# images of the core generators under removing strand 1, 2, 3, as rho,u words
_D_TABLES = {
    1: {"a": "u", "b": "u rho", "A23": "rho^2", "w": "u"},
    2: {"a": "rho u", "b": "u", "A23": "1", "w": "u"},
    3: {"a": "rho", "b": "u", "A23": "1", "w": "1"},
}


@functools.lru_cache(maxsize=8)
def _d_letter_images(i: int) -> dict[str, Q8Element]:
    return {sym: q8_of_p2_word(text) for sym, text in _D_TABLES[i].items()}


def d_map(g: Word | str, i: int) -> Q8Element:
    """Image in the 2-strand group after removing strand i."""
    if i not in (1, 2, 3):
        raise ValueError("strand index must be 1, 2 or 3")
    images = _d_letter_images(i)
    out = Q8Element.identity()
    for sym, sign in _core_letters(g):
        img = images[sym]
        out = out * (img if sign > 0 else img.inverse())
    return out


def d_images(g: Word | str) -> tuple[Q8Element, Q8Element, Q8Element]:
    return (d_map(g, 1), d_map(g, 2), d_map(g, 3))


def is_brunnian3(g: Word | str) -> bool:
    """Brunnian = pure part only (trivial Q8 component) and all d-images trivial."""
    if not normal_form(g).qpart.is_identity():
        return False
    return all(q.is_identity() for q in d_images(g))


def brun3_basis() -> list[Word]:
    """The nine-element free basis of the 3-strand Brunnian braids, over {w, A23}."""
    x1, x2 = _W, _A
    return [
        x2**2,
        x1**4,
        commutator(x1**4, x2),
        commutator(x2, x1),
        commutator(commutator(x2, x1), x2),
        commutator(x2, x1**2),
        commutator(commutator(x2, x1**2), x2),
        commutator(x2, x1**3),
        commutator(commutator(x2, x1**3), x2),
    ]


# ---------------------------------------------------------------------------
# the 2-strand case, exhaustively
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=1)
def b2_table() -> CosetTable:
    t = todd_coxeter(builtin("Bn_RP2", 2))
    assert isinstance(t, CosetTable) and t.count == 16
    return t


def b2_removal_images(w: Word) -> tuple[int, int]:
    """
    (d1, d2) images in Z/2 of a word over s1, rho: a rho letter contributes
    when the tracked strand is away from position 1, crossings contribute
    nothing but flip the tracked position.
    """
    images = []
    for start in (1, 2):
        cur = start
        val = 0
        for sym, _ in w.letters:
            if sym == "rho":
                if cur == 2:
                    val ^= 1
            else:
                cur = 3 - cur
        images.append(val)
    return images[0], images[1]


@dataclass(frozen=True)
class Brun2Result:
    brunnian: frozenset[int]
    pure: frozenset[int]
    pure_brunnian: frozenset[int]
    closure_of_a12: frozenset[int]


def brun2_enumerate() -> Brun2Result:
    """All Brunnian elements of the 16-element 2-strand group."""
    t = b2_table()
    brunnian = frozenset(
        e for e in range(t.count) if b2_removal_images(t.reps[e]) == (0, 0)
    )
    pure = frozenset(
        e
        for e in range(t.count)
        if sum(1 for sym, _ in t.reps[e].letters if sym == "s1") % 2 == 0
    )
    closure = t.normal_closure([parse_word("s1^2", t.generators)])
    return Brun2Result(brunnian, pure, brunnian & pure, closure)


def b2_representative_independence(max_len: int = 6) -> int:
    """
    Check that every word of length <= max_len yields the same removal
    images as every other word for the same group element; returns the
    number of words checked.
    """
    t = b2_table()
    seen: dict[int, tuple[int, int]] = {}
    count = 0
    letters = [(sym, sign) for sym in t.generators for sign in (1, -1)]
    words: list[Word] = [Word.identity(t.generators)]
    for _ in range(max_len):
        words = [
            w * Word.gen(t.generators, sym, sign)
            for w in words
            for sym, sign in letters
        ]
        for w in words:
            e = t.evaluate(w)
            img = b2_removal_images(w)
            if e in seen:
                if seen[e] != img:
                    raise AssertionError(f"representative dependence at {w}")
            else:
                seen[e] = img
            count += 1
    return count


# ---------------------------------------------------------------------------
# consistency checks used by the test suite
# ---------------------------------------------------------------------------


def action_respects_q8_relators() -> bool:
    """The Q8 relators act trivially on the free part."""
    relator_pairs = [
        [("a", 1)] * 4,
        [("a", 1), ("a", 1), ("b", -1), ("b", -1)],
        [("b", -1), ("a", 1), ("b", 1), ("a", 1)],
    ]
    act = {
        ("a", 1): _ACT_A,
        ("a", -1): _ACT_A,  # the a-action is an involution on the free part
        ("b", 1): _ACT_B,
        ("b", -1): _ACT_B,
    }
    for target in (_W, _A):
        for rel in relator_pairs:
            out = target
            for letter in reversed(rel):
                out = act[letter](out)
            if out != target:
                return False
    return True


def presentation_relators_hold() -> bool:
    """Both 3-strand presentations' relators are identities in the model."""
    from .catalog import builtin as cat

    for key in ("P3_RP2_rho", "P3_RP2_ab"):
        pres = cat(key)
        for rel in pres.relators:
            lifted = Word(MIXED_ALPHABET, rel.letters)
            if not normal_form(lifted).is_identity():
                return False
    return True


def spellings_agree(words: list[str]) -> bool:
    """All given spellings define the same element and the same d-images."""
    forms = [normal_form(w) for w in words]
    imgs = [d_images(w) for w in words]
    return all(f == forms[0] for f in forms) and all(im == imgs[0] for im in imgs)
