"""Test input generation.

Metamorphic instances swap a matched trigger for every other trigger of the
same type, producing dense probes around a known behavior. The template
generator goes further: pairs the detector considers clean, with exactly one
trigger occurrence on each side, are templatized by excising the trigger and
its matched target form, and every same-type mapping is substituted back in
to yield synthetic parallel data that is correct by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .corpus import SentencePair
from .tables import TransformationEntry, TransformationTable
from .token_detectors import GuardPolicy, check_pair, find_triggers

PLACEHOLDER = "[VAL]"


@dataclass(frozen=True)
class MetamorphicInstance:
    original_id: int
    new_source: str
    substituted_from: str
    substituted_to: str
    type_tag: str


@dataclass(frozen=True)
class Template:
    """A sentence pair with one placeholder slot per side.

    ``source_surface`` and ``matched_target_form`` keep the exact excised
    text so substituting them back reproduces the original pair verbatim.
    """

    source_template: str
    target_template: str
    slot_entry: TransformationEntry
    matched_target_form: str
    source_surface: str
    pair_id: int

    def revert(self) -> tuple[str, str]:
        return (
            self.source_template.replace(PLACEHOLDER, self.source_surface),
            self.target_template.replace(PLACEHOLDER, self.matched_target_form),
        )


@dataclass(frozen=True)
class MetaCorpusPair:
    source: str
    target: str
    provenance: tuple[int, str, str]  # (template index, source token, target form)


@dataclass
class MetaCorpusResult:
    templates: list[Template]
    pairs: list[MetaCorpusPair]
    skipped: dict[str, int]


def metamorphic_generate(
    sentence: str, table: TransformationTable, original_id: int = 0
) -> list[MetamorphicInstance]:
    """One instance per (trigger occurrence, other same-type trigger),
    substituting at the matched span and leaving the rest untouched."""
    instances: list[MetamorphicInstance] = []
    for match in find_triggers(sentence, table):
        for other in table.entries:
            if other.type_tag != match.entry.type_tag or other is match.entry:
                continue
            new_source = (
                sentence[: match.span.start] + other.trigger + sentence[match.span.end :]
            )
            instances.append(
                MetamorphicInstance(
                    original_id=original_id,
                    new_source=new_source,
                    substituted_from=match.entry.trigger,
                    substituted_to=other.trigger,
                    type_tag=match.entry.type_tag,
                )
            )
    return instances


def locate_target_form(
    target: str, entry: TransformationEntry
) -> Optional[tuple[int, int]]:
    """The unique span where one of the entry's target forms occurs.

    Case-insensitive substring search; at the same start the longest form
    wins. Returns None when no form occurs or when a second, disjoint
    occurrence makes the excision ambiguous.
    """
    low = target.lower()
    found: list[tuple[int, int]] = []
    for form in dict.fromkeys(f.lower() for f in entry.targets):
        pos = 0
        while True:
            idx = low.find(form, pos)
            if idx < 0:
                break
            found.append((idx, idx + len(form)))
            pos = idx + len(form)
    if not found:
        return None
    found.sort(key=lambda span: (span[0], -(span[1] - span[0])))
    chosen = found[0]
    for start, end in found[1:]:
        if start >= chosen[1]:
            return None  # second disjoint occurrence: ambiguous
    return chosen


def templatize_pair(
    pair: SentencePair,
    table: TransformationTable,
    policy: GuardPolicy,
    skipped: Optional[dict[str, int]] = None,
) -> Optional[Template]:
    """Selection plus templatization for one pair; None with the skip reason
    counted when the pair does not qualify."""

    def skip(reason: str) -> None:
        if skipped is not None:
            skipped[reason] = skipped.get(reason, 0) + 1

    if PLACEHOLDER in pair.source or PLACEHOLDER in pair.target:
        skip("placeholder-present")
        return None
    if check_pair(pair, table, policy):
        skip("flagged")
        return None
    matches = find_triggers(pair.source, table)
    if not matches:
        skip("no-trigger")
        return None
    if len(matches) > 1:
        skip("multiple-triggers")
        return None
    match = matches[0]
    located = locate_target_form(pair.target, match.entry)
    if located is None:
        skip("target-form-unlocatable")
        return None
    form_start, form_end = located
    return Template(
        source_template=(
            pair.source[: match.span.start] + PLACEHOLDER + pair.source[match.span.end :]
        ),
        target_template=(
            pair.target[:form_start] + PLACEHOLDER + pair.target[form_end:]
        ),
        slot_entry=match.entry,
        matched_target_form=pair.target[form_start:form_end],
        source_surface=match.span.surface,
        pair_id=pair.id,
    )


def meta_corpus_generate(
    corpus: Iterable[SentencePair],
    table: TransformationTable,
    policy: GuardPolicy,
) -> MetaCorpusResult:
    """Selection, templatization and same-type substitution over a corpus.

    Every emitted pair re-checks clean under the same detector: the slot is
    filled with the entry's trigger on the source side and its canonical
    target form on the target side.
    """
    skipped: dict[str, int] = {}
    templates: list[Template] = []
    for pair in corpus:
        template = templatize_pair(pair, table, policy, skipped)
        if template is not None:
            templates.append(template)
    pairs: list[MetaCorpusPair] = []
    for index, template in enumerate(templates):
        for entry in table.by_type(template.slot_entry.type_tag):
            pairs.append(
                MetaCorpusPair(
                    source=template.source_template.replace(PLACEHOLDER, entry.trigger),
                    target=template.target_template.replace(
                        PLACEHOLDER, entry.canonical_target
                    ),
                    provenance=(index, entry.trigger, entry.canonical_target),
                )
            )
    return MetaCorpusResult(templates=templates, pairs=pairs, skipped=skipped)
