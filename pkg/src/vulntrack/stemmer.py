"""English (Porter2) suffix stripper.

The text pipeline stems every keyword that is not a registered domain
term, so stem equality is what folds surface variants into a single
dictionary entry. Implemented in-package because no stemmer library is
available here; behavior follows the standard Snowball English
definition. Input is expected lowercase; words of one or two characters
pass through untouched.
"""

from __future__ import annotations

_VOWELS = "aeiouy"
_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_LI_ENDING = "cdeghkmnrt"

_STEP0 = ("'s'", "'s", "'")
_STEP1A = ("sses", "ied", "ies", "us", "ss", "s")
_STEP1B = ("eedly", "ingly", "edly", "eed", "ing", "ed")
_STEP2 = (
    "ization", "ational", "fulness", "ousness", "iveness", "tional",
    "biliti", "lessli", "entli", "ation", "alism", "aliti", "ousli",
    "iviti", "fulli", "enci", "anci", "abli", "izer", "ator", "alli",
    "bli", "ogi", "li",
)
_STEP3 = ("ational", "tional", "alize", "icate", "iciti", "ative", "ical", "ness", "ful")
_STEP4 = (
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent",
    "ism", "ate", "iti", "ous", "ive", "ize", "ion", "al", "er", "ic",
)

# Irregular forms, and words the suffix rules would mangle.
_SPECIAL = {
    "skis": "ski", "skies": "sky", "dying": "die", "lying": "lie",
    "tying": "tie", "idly": "idl", "gently": "gentl", "ugly": "ugli",
    "early": "earli", "only": "onli", "singly": "singl", "sky": "sky",
    "news": "news", "howe": "howe", "atlas": "atlas", "cosmos": "cosmos",
    "bias": "bias", "andes": "andes", "inning": "inning",
    "innings": "inning", "outing": "outing", "outings": "outing",
    "canning": "canning", "cannings": "canning", "herring": "herring",
    "herrings": "herring", "earring": "earring", "earrings": "earring",
    "proceed": "proceed", "proceeds": "proceed", "proceeded": "proceed",
    "proceeding": "proceed", "exceed": "exceed", "exceeds": "exceed",
    "exceeded": "exceed", "exceeding": "exceed", "succeed": "succeed",
    "succeeds": "succeed", "succeeded": "succeed", "succeeding": "succeed",
}


def _region_after_boundary(s: str) -> str:
    """Suffix of s after the first non-vowel that follows a vowel."""
    for i in range(1, len(s)):
        if s[i] not in _VOWELS and s[i - 1] in _VOWELS:
            return s[i + 1:]
    return ""


def _regions(word: str) -> tuple[str, str]:
    # gener-, commun- and arsen- get a fixed R1 start.
    if word.startswith(("gener", "commun", "arsen")):
        r1 = word[6:] if word.startswith("commun") else word[5:]
        return r1, _region_after_boundary(r1)
    r1 = _region_after_boundary(word)
    return r1, _region_after_boundary(r1)


def _drop(word: str, r1: str, r2: str, n: int) -> tuple[str, str, str]:
    return word[:-n], r1[:-n], r2[:-n]


def _swap(word: str, r1: str, r2: str, suffix: str, new: str,
          r2_floor: str = "") -> tuple[str, str, str]:
    # r2_floor is what r2 collapses to when the region begins inside the
    # replaced suffix (it can retain the tail of the replacement).
    n = len(suffix)
    word = word[:-n] + new
    r1 = r1[:-n] + new if len(r1) >= n else ""
    r2 = r2[:-n] + new if len(r2) >= n else r2_floor
    return word, r1, r2


def _ends_short_syllable(word: str) -> bool:
    if len(word) >= 3:
        return (word[-1] not in _VOWELS and word[-1] not in "wxY"
                and word[-2] in _VOWELS and word[-3] not in _VOWELS)
    return len(word) == 2 and word[0] in _VOWELS and word[1] not in _VOWELS


def stem(word: str) -> str:
    """Return the Porter2 stem of an English word."""
    word = word.lower()
    if len(word) <= 2:
        return word
    if word in _SPECIAL:
        return _SPECIAL[word]

    word = (word.replace("’", "'")
                .replace("‘", "'")
                .replace("‛", "'"))
    if word.startswith("'"):
        word = word[1:]
    # Consonant y is marked Y so the vowel scans skip it.
    if word.startswith("y"):
        word = "Y" + word[1:]
    for i in range(1, len(word)):
        if word[i] == "y" and word[i - 1] in _VOWELS:
            word = word[:i] + "Y" + word[i + 1:]

    r1, r2 = _regions(word)

    for suffix in _STEP0:
        if word.endswith(suffix):
            word, r1, r2 = _drop(word, r1, r2, len(suffix))
            break

    for suffix in _STEP1A:
        if not word.endswith(suffix):
            continue
        if suffix == "sses":
            word, r1, r2 = _drop(word, r1, r2, 2)
        elif suffix in ("ied", "ies"):
            n = 2 if len(word) - len(suffix) > 1 else 1
            word, r1, r2 = _drop(word, r1, r2, n)
        elif suffix == "s":
            if any(c in _VOWELS for c in word[:-2]):
                word, r1, r2 = _drop(word, r1, r2, 1)
        break

    for suffix in _STEP1B:
        if not word.endswith(suffix):
            continue
        if suffix in ("eed", "eedly"):
            if r1.endswith(suffix):
                word, r1, r2 = _swap(word, r1, r2, suffix, "ee")
        elif any(c in _VOWELS for c in word[:-len(suffix)]):
            word, r1, r2 = _drop(word, r1, r2, len(suffix))
            if word.endswith(("at", "bl", "iz")):
                word += "e"
                r1 += "e"
                if len(word) > 5 or len(r1) >= 3:
                    r2 += "e"
            elif word.endswith(_DOUBLES):
                word, r1, r2 = _drop(word, r1, r2, 1)
            elif r1 == "" and _ends_short_syllable(word):
                word += "e"
        break

    if len(word) > 2 and word[-1] in "yY" and word[-2] not in _VOWELS:
        word = word[:-1] + "i"
        r1 = r1[:-1] + "i" if r1 else ""
        r2 = r2[:-1] + "i" if r2 else ""

    for suffix in _STEP2:
        if not word.endswith(suffix):
            continue
        if r1.endswith(suffix):
            if suffix == "tional":
                word, r1, r2 = _drop(word, r1, r2, 2)
            elif suffix in ("enci", "anci", "abli"):
                word, r1, r2 = _swap(word, r1, r2, suffix[-1], "e")
            elif suffix == "entli":
                word, r1, r2 = _drop(word, r1, r2, 2)
            elif suffix in ("izer", "ization"):
                word, r1, r2 = _swap(word, r1, r2, suffix, "ize")
            elif suffix in ("ational", "ation", "ator"):
                word, r1, r2 = _swap(word, r1, r2, suffix, "ate", r2_floor="e")
            elif suffix in ("alism", "aliti", "alli"):
                word, r1, r2 = _swap(word, r1, r2, suffix, "al")
            elif suffix == "fulness":
                word, r1, r2 = _drop(word, r1, r2, 4)
            elif suffix in ("ousli", "ousness"):
                word, r1, r2 = _swap(word, r1, r2, suffix, "ous")
            elif suffix in ("iveness", "iviti"):
                word, r1, r2 = _swap(word, r1, r2, suffix, "ive", r2_floor="e")
            elif suffix in ("biliti", "bli"):
                word, r1, r2 = _swap(word, r1, r2, suffix, "ble")
            elif suffix == "ogi" and word[-4] == "l":
                word, r1, r2 = _drop(word, r1, r2, 1)
            elif suffix in ("fulli", "lessli"):
                word, r1, r2 = _drop(word, r1, r2, 2)
            elif suffix == "li" and word[-3] in _LI_ENDING:
                word, r1, r2 = _drop(word, r1, r2, 2)
        break

    for suffix in _STEP3:
        if not word.endswith(suffix):
            continue
        if r1.endswith(suffix):
            if suffix == "tional":
                word, r1, r2 = _drop(word, r1, r2, 2)
            elif suffix == "ational":
                word, r1, r2 = _swap(word, r1, r2, suffix, "ate")
            elif suffix == "alize":
                word, r1, r2 = _drop(word, r1, r2, 3)
            elif suffix in ("icate", "iciti", "ical"):
                word, r1, r2 = _swap(word, r1, r2, suffix, "ic")
            elif suffix in ("ful", "ness"):
                word, r1, r2 = _drop(word, r1, r2, len(suffix))
            elif suffix == "ative" and r2.endswith(suffix):
                word, r1, r2 = _drop(word, r1, r2, 5)
        break

    for suffix in _STEP4:
        if not word.endswith(suffix):
            continue
        if r2.endswith(suffix):
            if suffix == "ion":
                if word[-4] in "st":
                    word, r1, r2 = _drop(word, r1, r2, 3)
            else:
                word, r1, r2 = _drop(word, r1, r2, len(suffix))
        break

    if r2.endswith("l") and word[-2] == "l":
        word = word[:-1]
    elif r2.endswith("e"):
        word = word[:-1]
    elif r1.endswith("e"):
        if len(word) >= 4 and (word[-2] in _VOWELS or word[-2] in "wxY"
                               or word[-3] not in _VOWELS
                               or word[-4] in _VOWELS):
            word = word[:-1]

    return word.replace("Y", "y")
