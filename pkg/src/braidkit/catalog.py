"""
Catalog of the finitely presented groups used by the toolkit.

Fixed presentations are transcribed once into data files in the package (the
presentation file format of :mod:`braidkit.presentations`); parameterized
families are generated. Keys:

    P2_RP2          2-strand pure braids on the projective plane (order 8)
    Q8              quaternion group, standard presentation
    P3_RP2_rho      P3 of the projective plane on rho, u, w, A23
    P3_RP2_ab       same group on a, b, w, A23
    U3_mod_Brun3    free normal subgroup U3 mod Brunnian braids (Z4 + Z2)
    P3_mod_Brun3    P3 mod Brunnian braids (order 64)
    B3_RP2          full 3-strand braid group of the projective plane
    B3_mod_Brun3    B3 mod Brunnian braids (order 384)
    Bn_RP2 n        braid group of the projective plane, reduced generators
    VanBuskirk_Bn_RP2 n   the same group on sigma_i and rho_1..rho_n
    Artin_Bn n      Artin braid group of the disk
    Bn_S2 n         sphere braid group (standard background presentation,
                    present only for a cross-check; not specific to this
                    toolkit's main constructions)
"""

from __future__ import annotations

from importlib import resources

from .presentations import Presentation, parse_presentation

_FILE_KEYS = {
    "P2_RP2": "p2_rp2.pres",
    "Q8": "q8.pres",
    "P3_RP2_rho": "p3_rp2_rho.pres",
    "P3_RP2_ab": "p3_rp2_ab.pres",
    "U3_mod_Brun3": "u3_mod_brun3.pres",
    "P3_mod_Brun3": "p3_mod_brun3.pres",
    "B3_RP2": "b3_rp2.pres",
    "B3_mod_Brun3": "b3_mod_brun3.pres",
}

_PRIMED_FILES = {
    "P3_RP2_rho": "p3_rp2_rho_primed.pres",
    "P3_RP2_ab": "p3_rp2_ab_primed.pres",
}

_PARAM_KEYS = ("Bn_RP2", "VanBuskirk_Bn_RP2", "Artin_Bn", "Bn_S2")


class UnknownPresentation(KeyError):
    pass


def _load(filename: str) -> Presentation:
    text = resources.files("braidkit.data").joinpath(filename).read_text()
    return parse_presentation(text)


def _sigma_names(n: int) -> list[str]:
    return [f"s{i}" for i in range(1, n)]


def _artin_relation_lines(n: int) -> list[str]:
    lines = [f"rel: s{i} s{i + 1} s{i} = s{i + 1} s{i} s{i + 1}" for i in range(1, n - 1)]
    for i in range(1, n - 1):
        for j in range(i + 2, n):
            lines.append(f"rel: s{i} s{j} = s{j} s{i}")
    return lines


def _twist_word(n: int) -> str:
    """s1 s2 ... s(n-2) s(n-1)^2 s(n-2) ... s2 s1 (just s1^2 when n = 2)."""
    up = " ".join(f"s{i}" for i in range(1, n - 1))
    down = " ".join(f"s{i}" for i in range(n - 2, 0, -1))
    middle = f"s{n - 1}^2"
    return " ".join(x for x in (up, middle, down) if x)


def _artin_bn(n: int) -> Presentation:
    if n < 2:
        raise ValueError("Artin_Bn needs n >= 2")
    lines = ["gens: " + " ".join(_sigma_names(n))] + _artin_relation_lines(n)
    return parse_presentation("\n".join(lines))


def _bn_s2(n: int) -> Presentation:
    if n < 2:
        raise ValueError("Bn_S2 needs n >= 2")
    lines = ["gens: " + " ".join(_sigma_names(n))] + _artin_relation_lines(n)
    lines.append(f"rel: {_twist_word(n)}")
    return parse_presentation("\n".join(lines))


def _bn_rp2(n: int) -> Presentation:
    if n < 1:
        raise ValueError("Bn_RP2 needs n >= 1")
    if n == 1:
        return parse_presentation("gens: rho\nrel: rho^2")
    lines = ["gens: " + " ".join(_sigma_names(n) + ["rho"])]
    lines += _artin_relation_lines(n)
    for i in range(2, n):
        lines.append(f"rel: rho s{i} = s{i} rho")
    lines.append("rel: s1^-1 rho s1^-1 rho = rho s1^-1 rho s1")
    lines.append(f"rel: rho^2 = {_twist_word(n)}")
    return parse_presentation("\n".join(lines))


def _van_buskirk(n: int) -> Presentation:
    if n < 2:
        raise ValueError("VanBuskirk_Bn_RP2 needs n >= 2")
    rho = [f"rho{i}" for i in range(1, n + 1)]
    lines = ["gens: " + " ".join(_sigma_names(n) + rho)]
    lines += _artin_relation_lines(n)
    for j in range(1, n + 1):
        for i in range(1, n):
            if j not in (i, i + 1):
                lines.append(f"rel: rho{j} s{i} = s{i} rho{j}")
    for i in range(1, n):
        lines.append(f"rel: rho{i} = s{i} rho{i + 1} s{i}")
    for i in range(1, n):
        lines.append(f"rel: rho{i + 1}^-1 rho{i}^-1 rho{i + 1} rho{i} = s{i}^2")
    lines.append(f"rel: rho1^2 = {_twist_word(n)}")
    return parse_presentation("\n".join(lines))


def builtin(name: str, n: int | None = None) -> Presentation:
    """Look up a catalog presentation; parameterized keys need n."""
    if name in _FILE_KEYS:
        if n is not None:
            raise ValueError(f"{name} takes no parameter")
        return _load(_FILE_KEYS[name])
    if name in _PARAM_KEYS:
        if n is None:
            raise ValueError(f"{name} needs a strand count")
        return {
            "Bn_RP2": _bn_rp2,
            "VanBuskirk_Bn_RP2": _van_buskirk,
            "Artin_Bn": _artin_bn,
            "Bn_S2": _bn_s2,
        }[name](n)
    raise UnknownPresentation(name)


def primed_relators(name: str) -> Presentation:
    """Companion relations kept out of the defining relator lists."""
    if name not in _PRIMED_FILES:
        raise UnknownPresentation(name)
    return _load(_PRIMED_FILES[name])


def catalog_keys() -> list[str]:
    return sorted(_FILE_KEYS) + [f"{k} <n>" for k in _PARAM_KEYS]
