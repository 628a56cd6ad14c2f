"""Curated fixtures shared by pipeline and acceptance tests.

The five-row fixture encodes one real commercial-MT error per row, one per
detector: an untranslated unit, a currency swap, a dropped year, a truncated
translation (coverage, driven by a hand-built alignment file) and an
oscillating repeat. Each row must produce exactly one detection.
"""

from __future__ import annotations

import random

ROWS = [
    (
        "Teacher's hallway song and dance reminds students to stay 6 feet apart.",
        "Lehrer Flur Lied und Tanz erinnert die Schüler zu bleiben 6 Meter auseinander.",
        "physical-units",
    ),
    (
        "Floorpops Medina Self Adhesive Floor Tiles, £14 from Dunelm - buy now",
        "Floorpops Medina selbstklebende Bodenfliesen, 15 € von Dunelm günstig kaufen",
        "currencies",
    ),
    (
        "Kerridge has been an outspoken defender of his industry throughout 2020, "
        "but it was an angry Instagram post that may have made the most difference.",
        "Kerridge war das ganze Jahr über ein ausgesprochener Verteidiger seiner "
        "Branche, aber es war ein wütender Instagram-Post, der möglicherweise den "
        "größten Unterschied gemacht hat.",
        "numerical-values",
    ),
    (
        "Ben Cooper QC suggested it was unfair that the conspiracy theorist was "
        "arrested on May 30 while no arrests were made for breaches of lockdown "
        "restrictions at a Black Lives Matter protest taking place on the same day.",
        "Ben Cooper QC hielt es für unfair, dass der Verschwörungstheoretiker am 30.",
        "coverage",
    ),
    (
        "The Cougars are supposed to play No.",
        " ".join(["PA", ":"] * 12),
        "hallucination-oscillatory",
    ),
]

# Hand-built word alignment for the coverage row: the first clause aligns,
# everything after "arrested" is dropped by the truncated translation.
_ROW4_ALIGNMENT = "0-0 1-1 2-2 3-3 4-4 5-5 6-6 7-7 8-8 9-9 10-9 11-5 13-10 15-11"


def write_reference_fixture(directory) -> tuple[str, str]:
    """Write corpus.tsv and corpus.align; returns both paths."""
    corpus_path = str(directory / "corpus.tsv")
    align_path = str(directory / "corpus.align")
    with open(corpus_path, "w", encoding="utf-8") as stream:
        for source, target, _ in ROWS:
            stream.write(f"{source}\t{target}\n")
    with open(align_path, "w", encoding="utf-8") as stream:
        for row_no, (source, target, _) in enumerate(ROWS):
            if row_no == 3:
                stream.write(_ROW4_ALIGNMENT + "\n")
                continue
            tgt_len = len(target.split())
            links = " ".join(
                f"{i}-{min(i, tgt_len - 1)}" for i in range(len(source.split()))
            )
            stream.write(links + "\n")
    return corpus_path, align_path


EXPECTED_DETECTORS = [detector for _, _, detector in ROWS]


# --- synthetic corpora ----------------------------------------------------------

_EN_VOCAB = (
    "officials residents report local council budget school hospital traffic "
    "weather storm coast farmers harvest prices energy review committee vote "
    "measure street bridge repair project plan growth decline survey study "
    "research museum theatre festival season match coach players supporters "
    "ministry border trade exports imports talks summit agreement deal terms "
    "review inquiry evidence witness trial verdict appeal ruling court judge "
    "library garden river valley mountain village town mayor spokesman editor "
    "reporter article column readers viewers listeners audience broadcast "
    "channel network station program series episode interview statement quote "
    "response reaction criticism praise support opposition campaign election "
    "candidate ballot turnout results margin coalition cabinet minister leader "
    "strategy policy reform proposal amendment debate session hearing motion "
    "petition signature protest march rally crowd police barrier route detour "
    "closure opening ceremony anniversary celebration award prize winner jury"
).split()

_DE_VOCAB = (
    "beamte anwohner bericht lokal rat haushalt schule krankenhaus verkehr "
    "wetter sturm kueste bauern ernte preise energie pruefung ausschuss stimme "
    "massnahme strasse bruecke reparatur projekt plan wachstum rueckgang "
    "umfrage studie forschung museum theater festival saison spiel trainer "
    "spieler anhaenger ministerium grenze handel exporte importe gespraeche "
    "gipfel abkommen deal bedingungen untersuchung beweis zeuge prozess urteil "
    "berufung entscheidung gericht richter bibliothek garten fluss tal berg "
    "dorf stadt buergermeister sprecher redakteur reporter artikel kolumne "
    "leser zuschauer hoerer publikum sendung kanal netz sender programm serie "
    "folge interview erklaerung zitat antwort reaktion kritik lob zuspruch "
    "opposition kampagne wahl kandidat stimmzettel beteiligung ergebnisse "
    "vorsprung koalition kabinett minister chef strategie politik reform "
    "vorschlag aenderung debatte sitzung anhoerung antrag petition unterschrift "
    "protest marsch kundgebung menge polizei absperrung route umleitung "
    "schliessung eroeffnung zeremonie jubilaeum feier auszeichnung preis sieger"
).split()

BAD_KINDS = (
    "physical-units",
    "currencies",
    "large-numbers",
    "web-terms",
    "numerical-values",
    "hallucination-oscillatory",
)


def _clean_pair(rng: random.Random) -> tuple[str, str]:
    n_src = rng.randint(8, 24)
    src = [rng.choice(_EN_VOCAB) for _ in range(n_src)]
    tgt = [rng.choice(_DE_VOCAB) for _ in range(rng.randint(8, 24))]
    if rng.random() < 0.4:
        number = str(rng.randint(1, 99999))
        src.insert(rng.randrange(len(src) + 1), number)
        tgt.insert(rng.randrange(len(tgt) + 1), number)
    if rng.random() < 0.1:
        # a correctly carried-through unit exercises the acceptance path
        amount = str(rng.randint(2, 50))
        pos = rng.randrange(len(src))
        src[pos:pos] = [amount, "meters"]
        tgt_pos = rng.randrange(len(tgt) + 1)
        tgt[tgt_pos:tgt_pos] = [amount, "Meter"]
    return " ".join(src), " ".join(tgt)


def _bad_pair(rng: random.Random, kind: str) -> tuple[str, str]:
    n = rng.randint(2, 500)
    src = [rng.choice(_EN_VOCAB) for _ in range(rng.randint(5, 12))]
    tgt = [rng.choice(_DE_VOCAB) for _ in range(rng.randint(5, 12))]
    if kind == "physical-units":
        src.extend([str(n), "feet"])
        tgt.extend([str(n), "Meter"])
    elif kind == "currencies":
        src.extend([f"£{n}", "only"])
        tgt.extend([str(n), "€"])
    elif kind == "large-numbers":
        src.extend([str(n), "million"])
        tgt.extend([str(n), "Milliarden"])
    elif kind == "web-terms":
        src.append("www.example.en")
        tgt.append("www.example.de")
    elif kind == "numerical-values":
        src.extend(["paid", "24.70", "total"])
        tgt.extend(["zahlte", "2,470", "insgesamt"])
    elif kind == "hallucination-oscillatory":
        tgt = ["PA", ":"] * 12
    else:
        raise ValueError(kind)
    return " ".join(src), " ".join(tgt)


def write_synthetic_corpus(
    path: str, n_pairs: int, n_bad: int, seed: int = 20240815
) -> dict[int, str]:
    """A deterministic news-like TSV corpus with known-bad pairs spread
    evenly; returns {line number: expected detector} for the bad ones."""
    rng = random.Random(seed)
    bad_at: dict[int, str] = {}
    if n_bad:
        step = max(1, n_pairs // n_bad)
        kinds = 0
        for line in range(0, n_pairs, step):
            if len(bad_at) >= n_bad:
                break
            bad_at[line] = BAD_KINDS[kinds % len(BAD_KINDS)]
            kinds += 1
    with open(path, "w", encoding="utf-8") as stream:
        for line in range(n_pairs):
            if line in bad_at:
                source, target = _bad_pair(rng, bad_at[line])
            else:
                source, target = _clean_pair(rng)
            stream.write(f"{source}\t{target}\n")
    return bad_at
