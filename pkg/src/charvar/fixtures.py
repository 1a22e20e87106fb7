"""Loaders for the bundled data files."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .arrangements import parse_line_file, presentation_from_lines
from .covers import fermat_group
from .orbifold import Orbicurve, PencilData, lift_pencil, orbifold_group
from .words import Character, GroupHom, GroupPresentation, Word


def data_text(name: str) -> str:
    return resources.files("charvar").joinpath("data").joinpath(name).read_text()


def data_json(name: str) -> dict:
    return json.loads(data_text(name))


@lru_cache(maxsize=None)
def arrangement_lines(k: int):
    """The first k lines of the extended Ceva family (k = 6..9)."""
    return tuple(parse_line_file(data_text(f"c{k}.lines")))


@lru_cache(maxsize=None)
def arrangement_group(k: int) -> GroupPresentation:
    return presentation_from_lines(arrangement_lines(k))


def named_characters() -> dict[str, Character]:
    """Order-two characters on C7, C8, C9, given by signs in line order."""
    signs = {
        "chi7": (1, -1, -1, 1, -1, -1, 1),
        "chi8_1": (1, -1, -1, 1, -1, -1, 1, 1),
        "chi8_2": (-1, 1, -1, -1, 1, -1, 1, 1),
        "chi9_1": (-1, -1, 1, -1, -1, 1, 1, 1, 1),
        "chi9_2": (-1, 1, -1, -1, 1, -1, 1, 1, 1),
        "chi9_3": (1, -1, -1, 1, -1, -1, 1, 1, 1),
    }
    return {k: Character.from_signs(v) for k, v in signs.items()}


def sc_pencils() -> list[tuple[PencilData, list[int], Character, dict]]:
    """(pencil, cocycle, expected character, raw entry) for every pencil of the C7-C9 table."""
    data = data_json("sc_pencils.json")
    out = []
    for entry in data["pencils"]:
        k = len(entry["types"])
        P = arrangement_group(k)
        p, cocycle = lift_pencil(P, entry["types"], entry["name"])
        chi = Character.from_signs(entry["character"])
        out.append((p, cocycle, chi, entry))
    return out


def sc_marking() -> Character:
    return Character.from_signs(data_json("sc_pencils.json")["marking"])


def fermat_pencils(n: int, P: GroupPresentation | None = None) -> tuple[list[PencilData], dict]:
    """Pencils psi_1..psi_3 on the Fermat complement, with the raw fixture."""
    data = data_json(f"fermat_pencils_n{n}.json")
    P = P if P is not None else fermat_group(n)
    C = Orbicurve(tuple(data["target"]["labels"]), data["target"]["punctures"])
    T = orbifold_group(C)
    pencils = []
    for entry in data["pencils"]:
        images = []
        for name in P.names:
            w = entry["images"].get(name)
            images.append(Word.gen(T.index(w)) if w else Word())
        hom = GroupHom(P, T, tuple(images))
        eq = {g: tuple(v) for g, v in entry["equivariant"].items()}
        orbits = [(base, list(members)) for base, members in entry["orbits"]]
        pencils.append(PencilData(entry["name"], hom, C, n, eq, orbits))
    return pencils, data


def quasitoric_identities() -> list[dict]:
    return data_json("quasitoric.json")["identities"]


__all__ = [
    "data_text", "data_json", "arrangement_lines", "arrangement_group", "named_characters",
    "sc_pencils", "sc_marking", "fermat_pencils", "quasitoric_identities",
]
