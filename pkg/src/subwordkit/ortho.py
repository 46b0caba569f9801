"""Orthographic syllabification.

An orthographic syllable is a run of consonants followed by a vowel. For
alphabets that is ``C*V+`` over plain letters; for Indic abugidas the unit
is an akshara-like cluster (consonants joined by virama, a vowel sign, and
any trailing anusvara/visarga).

Character classes come from :class:`ScriptSpec` data files shipped in
``subwordkit/scripts``.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from subwordkit.errors import ModelFormatError


class CharClass(str, enum.Enum):
    VOWEL = "vowel"
    CONSONANT = "consonant"
    COMBINING = "combining"
    OTHER = "other"


@dataclass(frozen=True)
class ScriptSpec:
    name: str
    kind: str
    vowels: frozenset
    consonants: frozenset
    combining: frozenset = frozenset()
    block_base: int | None = None
    virama: str | None = None
    nukta: str | None = None

    def __post_init__(self):
        if self.kind not in ("alphabet", "abugida"):
            raise ValueError(f"unknown script kind {self.kind!r}")
        for attr in ("vowels", "consonants", "combining"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        if self.vowels & self.consonants:
            raise ValueError(f"{self.name}: characters both vowel and consonant: {sorted(self.vowels & self.consonants)}")
        if self.combining & (self.vowels | self.consonants):
            raise ValueError(f"{self.name}: combining characters overlap letters")
        for sign in (self.virama, self.nukta):
            if sign is not None and sign not in self.combining:
                raise ValueError(f"{self.name}: {sign!r} must be listed under [combining]")

    def classify(self, char: str) -> CharClass:
        if char in self.vowels:
            return CharClass.VOWEL
        if char in self.consonants:
            return CharClass.CONSONANT
        if char in self.combining:
            return CharClass.COMBINING
        return CharClass.OTHER


def classify(char: str, spec: ScriptSpec) -> CharClass:
    return spec.classify(char)


def _parse_char(token: str, where: str) -> str:
    if token.upper().startswith("U+"):
        try:
            return chr(int(token[2:], 16))
        except ValueError:
            raise ModelFormatError(f"{where}: bad code point {token!r}") from None
    if len(token) != 1:
        raise ModelFormatError(f"{where}: expected one character, got {token!r}")
    return token


def parse_script_spec(text: str, source: str = "<spec>") -> ScriptSpec:
    """Parse the sectioned text format (``[meta]``, ``[vowels]``, ...).

    Character sections hold whitespace-separated entries, each either a
    literal character or ``U+XXXX``. ``#`` starts a comment line.
    """
    sections: dict[str, list] = {"meta": [], "vowels": [], "consonants": [], "combining": []}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in sections:
                raise ModelFormatError(f"{source}:{lineno}: unknown section [{current}]")
            continue
        if current is None:
            raise ModelFormatError(f"{source}:{lineno}: content before first section")
        if current == "meta":
            if "=" not in line:
                raise ModelFormatError(f"{source}:{lineno}: expected key = value")
            key, value = (p.strip() for p in line.split("=", 1))
            sections["meta"].append((key, value))
        else:
            sections[current].extend(_parse_char(t, f"{source}:{lineno}") for t in line.split())

    meta = dict(sections["meta"])
    if "kind" not in meta:
        raise ModelFormatError(f"{source}: [meta] needs kind")

    def hexchar(key):
        return chr(int(meta[key], 16)) if key in meta else None

    try:
        return ScriptSpec(
            name=meta.get("name", Path(source).stem),
            kind=meta["kind"],
            vowels=frozenset(sections["vowels"]),
            consonants=frozenset(sections["consonants"]),
            combining=frozenset(sections["combining"]),
            block_base=int(meta["block_base"], 16) if "block_base" in meta else None,
            virama=hexchar("virama"),
            nukta=hexchar("nukta"),
        )
    except ValueError as exc:
        raise ModelFormatError(f"{source}: {exc}") from exc


def format_script_spec(spec: ScriptSpec) -> str:
    def chars(cs):
        return "\n".join(f"U+{ord(c):04X}" for c in sorted(cs))

    meta = [f"name = {spec.name}", f"kind = {spec.kind}"]
    if spec.block_base is not None:
        meta.append(f"block_base = {spec.block_base:04X}")
    if spec.virama:
        meta.append(f"virama = {ord(spec.virama):04X}")
    if spec.nukta:
        meta.append(f"nukta = {ord(spec.nukta):04X}")
    return "\n".join([
        "[meta]", *meta,
        "[vowels]", chars(spec.vowels),
        "[consonants]", chars(spec.consonants),
        "[combining]", chars(spec.combining),
    ]) + "\n"


ALIASES = {
    "hindi": "devanagari",
    "marathi": "devanagari",
    "nepali": "devanagari",
    "konkani": "devanagari",
    "punjabi": "gurmukhi",
    "danish": "latin",
    "swedish": "latin",
    "malay": "latin",
    "indonesian": "latin",
    "bulgarian": "cyrillic",
    "macedonian": "cyrillic",
}


def builtin_scripts() -> list[str]:
    files = resources.files("subwordkit") / "scripts"
    return sorted(p.name[:-4] for p in files.iterdir() if p.name.endswith(".txt"))


_cache: dict[str, ScriptSpec] = {}


def load_script(name_or_path) -> ScriptSpec:
    """Built-in spec by name (or language alias), or a spec file path."""
    key = str(name_or_path)
    name = ALIASES.get(key.lower(), key.lower())
    if name in _cache:
        return _cache[name]
    res = resources.files("subwordkit") / "scripts" / f"{name}.txt"
    if res.is_file():
        spec = _cache[name] = parse_script_spec(res.read_text(encoding="utf-8"), f"{name}.txt")
        return spec
    path = Path(key)
    if path.is_file():
        return parse_script_spec(path.read_text(encoding="utf-8"), str(path))
    raise ModelFormatError(f"unknown script {key!r}; built-in: {', '.join(builtin_scripts())}")


def syllabify_alphabet(word: str, spec: ScriptSpec) -> list[str]:
    """Split into ``C*V+`` units.

    A consonant run not followed by a vowel (word end, or a digit or
    punctuation mark) is a unit of its own; characters of neither class are
    singletons.
    """
    if spec.kind != "alphabet":
        raise ValueError(f"{spec.name} is not an alphabet")
    cls = spec.classify
    units = []
    i, n = 0, len(word)
    while i < n:
        if cls(word[i]) is CharClass.OTHER:
            units.append(word[i])
            i += 1
            continue
        start = i
        while i < n and cls(word[i]) in (CharClass.CONSONANT, CharClass.COMBINING):
            i += 1
        while i < n and cls(word[i]) in (CharClass.VOWEL, CharClass.COMBINING):
            i += 1
        units.append(word[start:i])
    return units


def _is_dependent(ch: str) -> bool:
    return unicodedata.category(ch).startswith("M")


def _cluster_reaches_sign(word: str, j: int, spec: ScriptSpec) -> bool:
    # from j: (C [nukta] virama)* C [nukta] followed by a dependent vowel sign
    n = len(word)
    while True:
        if j >= n or word[j] not in spec.consonants:
            return False
        j += 1
        if j < n and word[j] == spec.nukta:
            j += 1
        if j < n and word[j] == spec.virama:
            j += 1
            continue
        return j < n and word[j] in spec.vowels and _is_dependent(word[j])


def syllabify_abugida(word: str, spec: ScriptSpec) -> list[str]:
    """Split an Indic-script word into orthographic syllables.

    * an independent vowel or a vowel sign ends the unit, together with any
      anusvara/visarga/candrabindu right after it;
    * consonant + virama joins the next consonant only when that cluster
      goes on to a vowel sign; otherwise the virama ends the unit;
    * a bare consonant (inherent vowel) ends before another consonant or
      at word end.
    """
    if spec.kind != "abugida":
        raise ValueError(f"{spec.name} is not an abugida")
    units: list[str] = []
    cur: list[str] = []
    # None: empty, "open": consonant cluster awaiting a vowel,
    # "chain": cluster ended in a joining virama, "closed": vowel seen
    state = None

    def flush():
        nonlocal cur, state
        if cur:
            units.append("".join(cur))
        cur, state = [], None

    for i, ch in enumerate(word):
        if spec.virama is not None and ch == spec.virama:
            cur.append(ch)
            if state == "open" and _cluster_reaches_sign(word, i + 1, spec):
                state = "chain"
            else:
                flush()
        elif spec.nukta is not None and ch == spec.nukta:
            cur.append(ch)
            if state is None:
                state = "closed"
        elif ch in spec.combining:
            cur.append(ch)
            state = "closed"
        elif ch in spec.consonants:
            if state != "chain":
                flush()
            cur.append(ch)
            state = "open"
        elif ch in spec.vowels:
            if _is_dependent(ch):
                cur.append(ch)
            else:
                flush()
                cur.append(ch)
            state = "closed"
        else:
            flush()
            units.append(ch)
    flush()
    return units


def syllabify(word: str, spec: ScriptSpec) -> list[str]:
    if spec.kind == "alphabet":
        return syllabify_alphabet(word, spec)
    return syllabify_abugida(word, spec)


class Syllabifier:
    """Word segmenter bound to one script, usable with :func:`codec.segment`."""

    def __init__(self, spec: ScriptSpec):
        self.spec = spec

    def __call__(self, word: str) -> list[str]:
        return syllabify(word, self.spec)
