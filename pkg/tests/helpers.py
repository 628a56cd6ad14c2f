"""Independent oracles and corpus builders shared across the test suite.

The oracles are deliberately naive re-implementations (quadratic scans, no
code shared with the engine) so they can arbitrate engine behavior. Random
text sticks to ASCII digits so both sides agree on what counts as a digit.
"""

from __future__ import annotations

import random

from mtlint.corpus import SentencePair
from mtlint.tables import TransformationEntry, TransformationTable

TRAILING = ".,;:!?)\"'"
FUSED_FILLER = set("0123456789.,:-/")

NUMBER_WORDS = {
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
    "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen",
    "seventeen", "eighteen", "nineteen", "twenty", "thirty", "forty", "fifty",
    "sixty", "seventy", "eighty", "ninety", "hundred", "thousand",
}


def _strip(token: str) -> str:
    while token and token[-1] in TRAILING:
        token = token[:-1]
    return token


def _token_offsets(text: str) -> list[tuple[int, str]]:
    out = []
    pos = 0
    for tok in text.split():
        start = text.index(tok, pos)
        out.append((start, tok))
        pos = start + len(tok)
    return out


def _is_symbol(trigger: str) -> bool:
    return not any(ch.isalnum() for ch in trigger)


def oracle_find_triggers(source: str, table: TransformationTable):
    """(entry, token_index, start, end) hits: whitespace-tokenize, strip
    trailing punctuation, lowercase and compare each token to each trigger;
    symbol triggers also match fused with digits."""
    hits = []
    for i, (start, tok) in enumerate(_token_offsets(source)):
        core = _strip(tok)
        if not core:
            continue
        low = core.lower()
        for entry in table.entries:
            key = _strip(entry.trigger) or entry.trigger
            key = key.lower()
            if low == key:
                hits.append((entry, i, start, start + len(core)))
            elif _is_symbol(entry.trigger) and len(low) > len(key):
                rest = begin = None
                if low.startswith(key):
                    rest, begin = low[len(key):], start
                elif low.endswith(key):
                    rest, begin = low[: -len(key)], start + len(core) - len(key)
                if (
                    rest
                    and any(c in "0123456789" for c in rest)
                    and all(c in FUSED_FILLER for c in rest)
                ):
                    hits.append((entry, i, begin, begin + len(key)))
    return hits


def oracle_numericish(token: str) -> bool:
    if any(c in "0123456789" for c in token):
        return True
    return _strip(token).lower() in NUMBER_WORDS


def oracle_guard(tokens: list[str], i: int, mode: str) -> bool:
    if mode == "none":
        return True
    if mode == "numeric-antecedent":
        return i > 0 and oracle_numericish(tokens[i - 1])
    if mode == "numeric-adjacent":
        if any(c in "0123456789" for c in tokens[i]):
            return True
        if i > 0 and oracle_numericish(tokens[i - 1]):
            return True
        return i + 1 < len(tokens) and oracle_numericish(tokens[i + 1])
    raise ValueError(mode)


def oracle_check_pair(pair: SentencePair, table: TransformationTable, mode: str):
    """(trigger, token_index, start, end) of every guarded trigger whose
    target forms (plus the trigger itself) all miss the target."""
    detections = []
    tokens = pair.source.split()
    target_lower = pair.target.lower()
    for entry, i, start, end in oracle_find_triggers(pair.source, table):
        guard = (
            "numeric-adjacent"
            if mode == "numeric-antecedent" and _is_symbol(entry.trigger)
            else mode
        )
        if not oracle_guard(tokens, i, guard):
            continue
        forms = [f.lower() for f in entry.targets] + [entry.trigger.lower()]
        if not any(f in target_lower for f in forms):
            detections.append((entry.trigger, i, start, end))
    return detections


# --- randomized inputs --------------------------------------------------------

FILLER_EN = (
    "the government said on tuesday that new rules will apply from next week "
    "officials report growth in local markets while critics argue the plan "
    "lacks detail residents near the river watched as crews worked overnight "
    "police confirmed no injuries and praised quick response from volunteers"
).split()

FILLER_DE = (
    "die regierung sagte am dienstag dass neue regeln ab kommender woche "
    "gelten beamte berichten von wachstum in lokalen maerkten waehrend "
    "kritiker bemaengeln dem plan fehle es an detail anwohner am fluss sahen "
    "zu wie teams ueber nacht arbeiteten polizei bestaetigte keine verletzten"
).split()

TRIGGER_POOL = (
    "blorf grinta maufel stent crego vasp wunder plim dractil sorn keelo "
    "brimp zandor felk quost hintra merrow gaulet nif parsec torvel usk "
    "vreen dalp shonk"
).split()

TARGET_POOL = (
    "Blorfen Grintel Maufelchen Stentor Cregon Vaspler Wunderung Plimmen "
    "Dractilen Sornig Keelonen Brimpf Zandoren Felken Quosten Hintrafen "
    "Merrowen Gauleten Niffen Parseken Torvelen Usken Vreenen Dalpen Shonken"
).split()

SYMBOLS = "$£€₹"


def random_table(rng: random.Random, n_entries: int = 10, with_symbols: bool = True):
    triggers = rng.sample(TRIGGER_POOL, min(n_entries, len(TRIGGER_POOL)))
    type_tags = ("alpha", "beta", "gamma")
    entries = []
    for trig in triggers:
        n_forms = rng.randint(1, 3)
        targets = tuple(rng.sample(TARGET_POOL, n_forms))
        entries.append(
            TransformationEntry(
                trigger=trig,
                targets=targets,
                type_tag=rng.choice(type_tags),
                category="physical-units",
            )
        )
    if with_symbols and rng.random() < 0.8:
        for sym in rng.sample(SYMBOLS, rng.randint(1, 2)):
            entries.append(
                TransformationEntry(
                    trigger=sym,
                    targets=(sym, rng.choice(TARGET_POOL)),
                    type_tag="sym",
                    category="physical-units",
                )
            )
    return TransformationTable(entries=tuple(entries), language_pair=("en", "de"))


def _mutate_case(rng: random.Random, word: str) -> str:
    r = rng.random()
    if r < 0.6:
        return word
    if r < 0.8:
        return word.capitalize()
    return word.upper()


def random_pair(rng: random.Random, table: TransformationTable, pair_id: int) -> SentencePair:
    """News-ish sentence pair seeded with triggers, numbers, punctuation and
    sometimes the matching target forms."""
    src_tokens = []
    planted = []
    for _ in range(rng.randint(4, 24)):
        r = rng.random()
        if r < 0.10:
            entry = rng.choice(table.entries)
            tok = _mutate_case(rng, entry.trigger)
            if _is_symbol(entry.trigger) and rng.random() < 0.5:
                tok = entry.trigger + str(rng.randint(1, 999))
            if rng.random() < 0.3:
                tok += rng.choice(TRAILING)
            src_tokens.append(tok)
            planted.append(entry)
        elif r < 0.20:
            src_tokens.append(str(rng.randint(0, 5000)))
        elif r < 0.25:
            src_tokens.append(rng.choice(sorted(NUMBER_WORDS)))
        elif r < 0.28:
            src_tokens.append(rng.choice(TRIGGER_POOL) + "ish")
        else:
            src_tokens.append(rng.choice(FILLER_EN))
    tgt_tokens = []
    for _ in range(rng.randint(4, 24)):
        tgt_tokens.append(rng.choice(FILLER_DE))
    for entry in planted:
        if rng.random() < 0.5:
            form = rng.choice(list(entry.targets) + [entry.trigger])
            form = _mutate_case(rng, form)
            if rng.random() < 0.3:
                form = form + rng.choice((".", ",", "s"))
            tgt_tokens.insert(rng.randrange(len(tgt_tokens) + 1), form)
    return SentencePair(pair_id, " ".join(src_tokens), " ".join(tgt_tokens))
