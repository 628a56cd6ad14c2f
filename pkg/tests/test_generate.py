import random

import pytest

from mtlint.corpus import SentencePair
from mtlint.generate import (
    PLACEHOLDER,
    locate_target_form,
    meta_corpus_generate,
    metamorphic_generate,
    templatize_pair,
)
from mtlint.tables import TransformationEntry, TransformationTable, builtin_tables
from mtlint.token_detectors import GUARD_ANTECEDENT, GuardPolicy, check_pair, find_triggers

from helpers import random_pair, random_table

ANTECEDENT = GuardPolicy(GUARD_ANTECEDENT)


@pytest.fixture(scope="module")
def units():
    return builtin_tables(("en", "de"))[0]


def _table(rows):
    return TransformationTable(
        entries=tuple(
            TransformationEntry(trigger, targets, type_tag, "physical-units")
            for trigger, targets, type_tag in rows
        ),
        language_pair=("en", "de"),
    )


# --- metamorphic generation -----------------------------------------------------

def test_substitutes_same_type_triggers(units):
    instances = metamorphic_generate("ran 5 meters today", units)
    sources = {i.new_source for i in instances}
    assert "ran 5 yards today" in sources
    assert all(i.substituted_from == "meters" for i in instances)
    assert all(i.type_tag == "dist" for i in instances)
    # same type only: no area/weight/volume/temperature triggers show up
    assert "ran 5 acres today" not in sources


def test_sentence_without_trigger_generates_nothing(units):
    assert metamorphic_generate("nothing interesting here", units) == []


def test_instance_count_matches_combinatorial_oracle():
    rng = random.Random(2024)
    for i in range(80):
        table = random_table(rng, with_symbols=False)
        pair = random_pair(rng, table, i)
        instances = metamorphic_generate(pair.source, table)
        by_type = {}
        for entry in table.entries:
            by_type[entry.type_tag] = by_type.get(entry.type_tag, 0) + 1
        expected = sum(
            by_type[m.entry.type_tag] - 1 for m in find_triggers(pair.source, table)
        )
        assert len(instances) == expected


def test_substituted_trigger_is_relocatable(units):
    for inst in metamorphic_generate("ran 5 meters today", units):
        matches = find_triggers(inst.new_source, units)
        assert any(m.entry.trigger == inst.substituted_to for m in matches)
        assert matches[0].token_index == 2


def test_casing_elsewhere_is_preserved(units):
    instances = metamorphic_generate("The Run: 5 meters Today!", units)
    assert all(i.new_source.startswith("The Run: 5 ") for i in instances)
    assert all(i.new_source.endswith(" Today!") for i in instances)


# --- templatization -------------------------------------------------------------

TABLE5_PAIR = SentencePair(
    0,
    "The plesiosaur teeth it self is about 43 mm long.",
    "Der Plesiosaurier Zahn selber misst etwa 43 mm.",
)


def test_templatization_excises_both_sides(units):
    template = templatize_pair(TABLE5_PAIR, units, ANTECEDENT)
    assert template is not None
    assert template.source_template == "The plesiosaur teeth it self is about 43 [VAL] long."
    assert template.target_template == "Der Plesiosaurier Zahn selber misst etwa 43 [VAL]."
    assert template.slot_entry.trigger == "mm"
    assert template.matched_target_form == "mm"


def test_template_reversibility(units):
    template = templatize_pair(TABLE5_PAIR, units, ANTECEDENT)
    assert template.revert() == (TABLE5_PAIR.source, TABLE5_PAIR.target)


def test_flagged_pair_is_skipped(units):
    skipped = {}
    bad = SentencePair(0, "stay 6 feet apart", "bleiben Sie 6 Meter entfernt")
    assert templatize_pair(bad, units, ANTECEDENT, skipped) is None
    assert skipped == {"flagged": 1}


def test_pair_with_two_triggers_is_skipped(units):
    skipped = {}
    pair = SentencePair(0, "run 5 km and 3 miles", "laufe 5 km und 3 Meilen")
    assert templatize_pair(pair, units, ANTECEDENT, skipped) is None
    assert skipped == {"multiple-triggers": 1}


def test_pair_without_trigger_is_skipped(units):
    skipped = {}
    pair = SentencePair(0, "hello there", "hallo")
    assert templatize_pair(pair, units, ANTECEDENT, skipped) is None
    assert skipped == {"no-trigger": 1}


def test_ambiguous_target_form_is_skipped(units):
    skipped = {}
    pair = SentencePair(0, "about 43 mm long", "43 mm oder 44 mm lang")
    assert templatize_pair(pair, units, ANTECEDENT, skipped) is None
    assert skipped == {"target-form-unlocatable": 1}


def test_longest_form_wins_at_same_start():
    table = _table([("mm", ("Millimeter", "Millimetern", "mm"), "dist")])
    span = locate_target_form("etwa 43 Millimetern lang", table.entries[0])
    assert span == (8, 19)


# --- meta-corpus generation ------------------------------------------------------

def test_meta_corpus_reproduces_known_instance(units):
    result = meta_corpus_generate([TABLE5_PAIR], units, ANTECEDENT)
    assert len(result.templates) == 1
    pairs = {(p.source, p.target) for p in result.pairs}
    assert (
        "The plesiosaur teeth it self is about 43 feet long.",
        "Der Plesiosaurier Zahn selber misst etwa 43 Fuß.",
    ) in pairs


def test_meta_corpus_counts_skips(units):
    corpus = [
        TABLE5_PAIR,
        SentencePair(1, "stay 6 feet apart", "bleiben Sie 6 Meter entfernt"),
        SentencePair(2, "run 5 km and 3 miles", "laufe 5 km und 3 Meilen"),
        SentencePair(3, "no units at all", "gar keine Einheiten"),
    ]
    result = meta_corpus_generate(corpus, units, ANTECEDENT)
    assert len(result.templates) == 1
    assert result.skipped == {"flagged": 1, "multiple-triggers": 1, "no-trigger": 1}


def test_meta_corpus_pairs_contain_no_placeholder(units):
    result = meta_corpus_generate([TABLE5_PAIR], units, ANTECEDENT)
    for mpair in result.pairs:
        assert PLACEHOLDER not in mpair.source
        assert PLACEHOLDER not in mpair.target


def test_meta_corpus_closure_under_detection(units):
    result = meta_corpus_generate([TABLE5_PAIR], units, ANTECEDENT)
    assert result.pairs
    for i, mpair in enumerate(result.pairs):
        synthetic = SentencePair(i, mpair.source, mpair.target)
        assert check_pair(synthetic, units, ANTECEDENT) == []


def test_meta_corpus_substitution_uses_same_type_only(units):
    result = meta_corpus_generate([TABLE5_PAIR], units, ANTECEDENT)
    dist_triggers = {e.trigger for e in units.entries if e.type_tag == "dist"}
    assert {p.provenance[1] for p in result.pairs} == dist_triggers


def test_meta_corpus_provenance_indexes_templates(units):
    corpus = [
        TABLE5_PAIR,
        SentencePair(1, "a wall of 3 meters height", "eine Wand von 3 Metern Höhe"),
    ]
    result = meta_corpus_generate(corpus, units, ANTECEDENT)
    assert len(result.templates) == 2
    assert {p.provenance[0] for p in result.pairs} == {0, 1}


def test_meta_corpus_closure_randomized():
    rng = random.Random(31337)
    for i in range(40):
        table = random_table(rng, with_symbols=False)
        corpus = [random_pair(rng, table, j) for j in range(10)]
        result = meta_corpus_generate(corpus, table, ANTECEDENT)
        for k, mpair in enumerate(result.pairs):
            synthetic = SentencePair(k, mpair.source, mpair.target)
            assert check_pair(synthetic, table, ANTECEDENT) == [], (
                mpair,
                table.entries,
            )
