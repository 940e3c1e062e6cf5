"""Regenerate the bundled sample data under data/.

Deterministic: a fixed seed drives every draw, so the emitted files are
byte-stable across runs. The corpus imitates public vulnerability-feed
descriptions: short English sentences naming an invented product, an
attack vector, and an impact. Clusters get distinct date profiles so
year-level trends show visible rises (injection peaking mid-2000s,
mobile rising after 2010).

Run from the repository root:

    python3 tools/make_sample_corpus.py
"""

from __future__ import annotations

import json
import random
from pathlib import Path

SEED = 20160315
DOC_COUNT = 200

OUT_DIR = Path(__file__).resolve().parents[1] / "data"

# Invented product names; slots below mix them with components/params.
PHP_APPS = [
    "WebCart", "ForumOne", "PageBuilder", "ShopKit", "NewsDesk",
    "GuestTrack", "MailPortal", "WikiStone", "PollMaster", "BlogCore",
]
NATIVE_APPS = [
    "StreamServer", "NetRelay", "FileVault", "PrintSpool", "MediaCodec",
    "ArchiveTool", "TermProxy", "LogCollector", "ImageLib", "FontRender",
]
MOBILE_APPS = [
    "ChatLite", "PhotoShare", "TaskPad", "MapRunner", "PayWallet",
    "NoteSync", "RideHail", "ClipBoard", "VoiceDial", "GameHub",
]
PARAMS = ["id", "page", "user", "cat", "item", "query", "lang", "sort",
          "name", "key"]
COMPONENTS = ["login form", "search module", "comment handler",
              "admin panel", "upload handler", "profile page",
              "checkout module", "feedback form"]
NATIVE_PARTS = ["packet parser", "header parser", "decoder routine",
                "format handler", "request handler", "string routine"]
FILE_KINDS = ["PNG file", "ZIP archive", "TIFF image", "font file",
              "media file", "configuration file", "MP4 file", "PDF document"]


def weighted_year(rng: random.Random, profile: list[tuple[int, int, int]]) -> int:
    """profile: list of (year_lo, year_hi, weight) bands."""
    bands = []
    for lo, hi, w in profile:
        bands.extend((lo, hi) for _ in range(w))
    lo, hi = rng.choice(bands)
    return rng.randint(lo, hi)


def iso_date(rng: random.Random, year: int) -> str:
    month = rng.randint(1, 12)
    day = rng.randint(1, 28)
    return f"{year:04d}-{month:02d}-{day:02d}"


def sql_doc(rng: random.Random) -> tuple[str, str]:
    app = rng.choice(PHP_APPS)
    comp = rng.choice(COMPONENTS)
    param = rng.choice(PARAMS)
    variants = [
        f"SQL injection vulnerability in the {comp} in {app}, a PHP web "
        f"application, allows remote attackers to execute arbitrary SQL "
        f"commands via the {param} parameter.",
        f"Multiple SQL injection vulnerabilities in {app} allow remote "
        f"attackers to execute arbitrary SQL commands via the {param} "
        f"parameter to the {comp}.",
        f"SQL injection vulnerability in {app} allows remote attackers to "
        f"execute arbitrary SQL commands and disclose sensitive information "
        f"from the database via a crafted {param} parameter.",
        f"The {comp} in {app} does not properly sanitize user input, which "
        f"allows remote attackers to inject arbitrary SQL commands via the "
        f"{param} parameter.",
    ]
    year = weighted_year(rng, [(1999, 2003, 1), (2004, 2008, 6), (2009, 2016, 2)])
    return rng.choice(variants), iso_date(rng, year)


def xss_doc(rng: random.Random) -> tuple[str, str]:
    app = rng.choice(PHP_APPS)
    comp = rng.choice(COMPONENTS)
    param = rng.choice(PARAMS)
    variants = [
        f"Cross-site scripting vulnerability in the {comp} in {app} allows "
        f"remote attackers to inject arbitrary web script or HTML via the "
        f"{param} parameter.",
        f"Multiple cross-site scripting vulnerabilities in {app} allow "
        f"remote attackers to inject arbitrary web script via the {param} "
        f"parameter to the {comp}.",
        f"Cross-site scripting vulnerability in {app} allows remote "
        f"attackers to inject arbitrary JavaScript into the {comp} via a "
        f"crafted {param} parameter.",
    ]
    year = weighted_year(rng, [(1999, 2004, 1), (2005, 2010, 4), (2011, 2016, 3)])
    return rng.choice(variants), iso_date(rng, year)


def overflow_doc(rng: random.Random) -> tuple[str, str]:
    app = rng.choice(NATIVE_APPS)
    part = rng.choice(NATIVE_PARTS)
    kind = rng.choice(FILE_KINDS)
    variants = [
        f"Buffer overflow in the {part} in {app} allows remote attackers "
        f"to execute arbitrary code via a crafted {kind}.",
        f"Stack-based buffer overflow in {app} allows remote attackers to "
        f"execute arbitrary code or cause a denial of service via a long "
        f"string in a crafted {kind}.",
        f"Heap-based buffer overflow in the {part} in {app} allows local "
        f"users to gain privileges and execute arbitrary code via a "
        f"malformed {kind}.",
        f"Integer overflow in the {part} in {app} allows remote attackers "
        f"to cause a denial of service or execute arbitrary code via a "
        f"crafted {kind}.",
    ]
    year = weighted_year(rng, [(1999, 2006, 4), (2007, 2016, 3)])
    return rng.choice(variants), iso_date(rng, year)


def mobile_doc(rng: random.Random) -> tuple[str, str]:
    app = rng.choice(MOBILE_APPS)
    variants = [
        f"The {app} application for Android allows remote attackers to "
        f"read sensitive information from the device via a crafted "
        f"message.",
        f"The {app} app for Android and iOS does not properly validate "
        f"server certificates, which allows remote attackers to spoof "
        f"servers and intercept messages.",
        f"Directory traversal vulnerability in the {app} application for "
        f"Android allows remote attackers to read arbitrary files via a "
        f"crafted APK archive.",
        f"The watsapp gateway bridge in {app} allows remote attackers to "
        f"send spoofed messages to whatsapp users via a crafted request.",
    ]
    year = weighted_year(rng, [(2007, 2010, 1), (2011, 2016, 6)])
    return rng.choice(variants), iso_date(rng, year)


def misc_doc(rng: random.Random) -> tuple[str, str]:
    app = rng.choice(NATIVE_APPS + PHP_APPS)
    param = rng.choice(PARAMS)
    variants = [
        f"{app} allows remote attackers to bypass authentication and gain "
        f"administrator access via a crafted session cookie.",
        f"Directory traversal vulnerability in {app} allows remote "
        f"attackers to read arbitrary files via a .. sequence in the "
        f"{param} parameter.",
        f"{app} stores the database password in a world-readable "
        f"configuration file, which allows local users to obtain sensitive "
        f"information.",
        f"Unspecified vulnerabilty in {app} allows remote authenticated "
        f"users to cause a denial of service via unknown vectors.",
        f"{app} does not properly check privileges, which allows remote "
        f"authenticated users to gain administrator privileges via the "
        f"{param} parameter.",
    ]
    year = weighted_year(rng, [(1999, 2016, 1)])
    return rng.choice(variants), iso_date(rng, year)


CLUSTERS = [
    (sql_doc, 50),
    (xss_doc, 45),
    (overflow_doc, 45),
    (mobile_doc, 35),
    (misc_doc, 25),
]

ENGLISH_WORDS = """\
access administrator allow allows and application archive arbitrary
attacker attackers authenticated authentication based bridge buffer bypass
cause certificate certificates check checkout code collector comment
commands configuration cookie corruption crafted crash cross database
denial device directory disclose does execute feedback file files font
form format gain gateway handler header heap image information inject
injection input integer intercept into item language license local long
malformed malicious message messages module multiple network obtain
overflow packet page panel parameter parser password privilege privileges
profile properly query read remote request routine sanitize search send
sensitive sequence server servers service session site spoof spoofed
stack stores string text traversal unknown unspecified upload user users
validate vectors via vulnerabilities vulnerability web which world
""".split()

DOMAIN_TERMS = """\
sql php html css xss csrf http https url uri cgi javascript json xml
android ios apk whatsapp mysql postgresql apache nginx windows linux
unix tcp udp dns smtp ftp ssh tls ssl pdf png zip tiff mp4
""".split()

CORRECTIONS = [
    ("watsapp", "whatsapp"),
    ("vulnerabilty", "vulnerability"),
    ("scritping", "scripting"),
]


def main() -> None:
    rng = random.Random(SEED)
    rows: list[tuple[str, str, str]] = []
    for maker, count in CLUSTERS:
        for _ in range(count):
            text, when = maker(rng)
            rows.append((when, text, ""))
    assert len(rows) == DOC_COUNT
    rows.sort(key=lambda r: r[0])
    OUT_DIR.mkdir(exist_ok=True)

    with (OUT_DIR / "sample_corpus.jsonl").open("w", encoding="utf-8") as out:
        for n, (when, text, _) in enumerate(rows, start=1):
            year = when[:4]
            record = {"id": f"CVE-{year}-{9000 + n}", "date": when,
                      "description": text}
            out.write(json.dumps(record) + "\n")

    (OUT_DIR / "english_words.txt").write_text(
        "\n".join(sorted(set(ENGLISH_WORDS))) + "\n", encoding="utf-8")
    (OUT_DIR / "domain_terms.txt").write_text(
        "\n".join(sorted(set(DOMAIN_TERMS))) + "\n", encoding="utf-8")
    (OUT_DIR / "corrections.tsv").write_text(
        "".join(f"{wrong}\t{right}\n" for wrong, right in CORRECTIONS),
        encoding="utf-8")
    print(f"wrote {DOC_COUNT} records and word lists to {OUT_DIR}")


if __name__ == "__main__":
    main()
