"""Seeded synthetic-corpus generation with planted ground truth.

The generator plants acknowledgee names into templated acknowledgement
prose, together with the traps the cleaning cascade exists for: byline
self-mentions, blacklisted grant/organization names, and person-shaped names
whose surnames are not in the benchmark lexicon. By construction the cascade
accepts exactly the planted names, so generated corpora double as an oracle
for end-to-end precision/recall.

Everything derives from the master seed through named Mersenne Twister
streams (one per purpose, sub-seeded via SHA-256), so equal configurations
produce byte-identical artifacts.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from bisect import bisect_left
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path

from .ingest import record_to_json
from .model import AuthorName, DocType, Record, fold_surname, linkage_key, normalize_name
from .ner import HONORIFICS, STOPWORDS


@dataclass(frozen=True)
class Distribution:
    """Finite-support integer distribution sampled by inverse CDF."""

    values: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values or len(self.values) != len(self.probs):
            raise ValueError("distribution needs matching, non-empty values/probs")
        if any(p < 0 for p in self.probs):
            raise ValueError("probabilities must be non-negative")
        if abs(math.fsum(self.probs) - 1.0) > 1e-9:
            raise ValueError("probabilities must sum to 1")

    @cached_property
    def _cumulative(self) -> tuple[float, ...]:
        total = 0.0
        out = []
        for p in self.probs:
            total += p
            out.append(total)
        out[-1] = 1.0
        return tuple(out)

    def mean(self) -> float:
        return math.fsum(v * p for v, p in zip(self.values, self.probs))

    def sample(self, rng: random.Random) -> int:
        return self.values[bisect_left(self._cumulative, rng.random())]


def truncated_geometric(lo: int, hi: int, mean: float) -> Distribution:
    """Geometric-shaped distribution on lo..hi with the exact requested mean,
    found by bisecting the decay rate."""
    if not lo <= mean <= hi:
        raise ValueError(f"mean {mean} outside support [{lo}, {hi}]")
    values = tuple(range(lo, hi + 1))

    def moments(decay: float) -> float:
        weights = [decay**i for i in range(len(values))]
        total = math.fsum(weights)
        return math.fsum(v * w for v, w in zip(values, weights)) / total

    low, high = 0.0, 1.0
    for _ in range(200):
        mid = (low + high) / 2
        if moments(mid) < mean:
            low = mid
        else:
            high = mid
    decay = (low + high) / 2
    weights = [decay**i for i in range(len(values))]
    total = math.fsum(weights)
    return Distribution(values, tuple(w / total for w in weights))


def shifted_binomial(lo: int, trials: int, mean: float) -> Distribution:
    """lo + Binomial(trials, q) with q chosen to hit the requested mean."""
    q = (mean - lo) / trials
    if not 0 <= q <= 1:
        raise ValueError(f"mean {mean} outside support [{lo}, {lo + trials}]")
    values = tuple(range(lo, lo + trials + 1))
    probs = tuple(
        math.comb(trials, i) * q**i * (1 - q) ** (trials - i) for i in range(trials + 1)
    )
    return Distribution(values, probs)


def single_spiked(single_share: float, tail_mean: float, hi: int = 60) -> Distribution:
    """Author-count distribution: a planted share of single-authored papers
    plus a geometric tail on 2..hi tuned so the overall mean is exact."""
    if not 0 <= single_share < 1:
        raise ValueError("single_share must be in [0, 1)")
    tail = truncated_geometric(2, hi, tail_mean)
    return Distribution(
        (1,) + tail.values,
        (single_share,) + tuple(p * (1 - single_share) for p in tail.probs),
    )


@dataclass(frozen=True)
class DisciplineProfile:
    discipline: str
    papers: int
    ack_text_share: float
    author_dist: Distribution
    ack_positive_dist: Distribution
    ackee_presence: float
    single_author_ackee_share: float
    self_mention_rate: float = 0.06
    blacklist_distractor_rate: float = 0.05
    unknown_name_rate: float = 0.06

    def validate(self) -> None:
        if self.papers < 0:
            raise ValueError("papers must be >= 0")
        for label in (
            "ack_text_share",
            "ackee_presence",
            "single_author_ackee_share",
            "self_mention_rate",
            "blacklist_distractor_rate",
            "unknown_name_rate",
        ):
            value = getattr(self, label)
            if not 0 <= value <= 1:
                raise ValueError(f"{label} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class PhraseTemplates:
    """Sentence templates used to assemble acknowledgement prose; every
    template carries exactly one '{}' slot."""

    thanks: tuple[str, ...] = (
        "We thank {} for helpful discussions.",
        "We are grateful to {} for technical assistance.",
        "The authors thank {} for comments on an earlier version of the manuscript.",
        "{} provided valuable input on the analysis.",
        "We acknowledge {} for assistance with the experiments.",
    )
    honorific_thanks: str = "We thank Dr. {} for expert advice."
    funding: tuple[str, ...] = (
        "This work was supported by research grant {}.",
        "This study was funded under award {}.",
        "Financial support was provided by the national research fund (grant {}).",
        "The project received funding through contract no. {}.",
    )
    acronym_funding: str = "Partial funding came from the NSC (grant {})."
    blacklist_mention: tuple[str, ...] = (
        "Additional support came from a {} fellowship.",
        "This project was backed by the {} programme.",
    )
    unknown_mention: str = "We also thank {} for administrative help."
    self_mention: str = "{} contributed equally to this work."

    def validate(self) -> None:
        flat = list(self.thanks) + list(self.funding) + list(self.blacklist_mention)
        flat += [
            self.honorific_thanks,
            self.acronym_funding,
            self.unknown_mention,
            self.self_mention,
        ]
        for template in flat:
            if template.count("{}") != 1:
                raise ValueError(f"template needs exactly one '{{}}' slot: {template!r}")


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    profiles: tuple[DisciplineProfile, ...]
    year: int = 2015
    templates: PhraseTemplates = PhraseTemplates()

    def validate(self) -> None:
        if not self.profiles:
            raise ValueError("config needs at least one discipline profile")
        self.templates.validate()
        seen = set()
        for profile in self.profiles:
            profile.validate()
            if profile.discipline in seen:
                raise ValueError(f"duplicate profile for {profile.discipline!r}")
            seen.add(profile.discipline)


# Per-discipline calibration targets: corpus-share weight, share of papers
# with acknowledgement text, share of those with >=1 acknowledgee, share of
# single-authored papers, mean authors and mean acknowledgees (both over
# papers with acknowledgement text).
_TARGETS = [
    ("Earth & Space", 92238, 0.791, 0.571, 0.06, 4.6, 2.3),
    ("Biology", 105279, 0.725, 0.568, 0.08, 4.5, 2.2),
    ("Biomedical Research", 189066, 0.836, 0.374, 0.015, 7.1, 1.4),
    ("Physics", 124556, 0.768, 0.366, 0.05, 10.7, 1.0),
    ("Psychology", 31286, 0.482, 0.513, 0.10, 3.6, 2.2),
    ("Chemistry", 151947, 0.815, 0.295, 0.04, 5.4, 0.9),
    ("Social Sciences", 50420, 0.337, 0.547, 0.28, 2.7, 2.8),
    ("Engineering & Technology", 241124, 0.687, 0.265, 0.07, 4.9, 0.8),
    ("Clinical Medicine", 389311, 0.561, 0.307, 0.018, 7.5, 1.0),
    ("Mathematics", 49997, 0.708, 0.235, 0.22, 2.4, 0.7),
    ("Health", 37309, 0.501, 0.302, 0.08, 4.3, 1.7),
    ("Professional Fields", 41015, 0.306, 0.404, 0.16, 2.9, 2.2),
]

DEFAULT_SINGLE_AUTHOR_ACKEE_SHARE = 0.40


def _allocate(total: int, weights: list[int]) -> list[int]:
    """Largest-remainder apportionment; deterministic, sums exactly to total."""
    grand = sum(weights)
    quotas = [total * w / grand for w in weights]
    counts = [math.floor(q) for q in quotas]
    remainder = total - sum(counts)
    order = sorted(range(len(weights)), key=lambda i: (counts[i] - quotas[i], i))
    for i in order[:remainder]:
        counts[i] += 1
    return counts


def build_profile(
    discipline: str,
    papers: int,
    ack_text_share: float,
    ackee_share: float,
    single_share: float,
    mean_authors: float,
    mean_acks: float,
    single_author_ackee_share: float = DEFAULT_SINGLE_AUTHOR_ACKEE_SHARE,
) -> DisciplineProfile:
    """Assemble a profile whose configured moments hit the targets exactly.

    The single-author acknowledgee share is planted directly; the presence
    probability for multi-author papers is solved so the overall share of
    papers with acknowledgees still equals `ackee_share`, and the positive
    acknowledgee-count distribution is scaled so the overall mean
    acknowledgees equals `mean_acks`.
    """
    author_dist = single_spiked(single_share, (mean_authors - single_share) / (1 - single_share))
    presence_multi = (ackee_share - single_share * single_author_ackee_share) / (1 - single_share)
    if not 0 <= presence_multi <= 1:
        raise ValueError(f"{discipline}: unsatisfiable acknowledgee share {ackee_share}")
    return DisciplineProfile(
        discipline=discipline,
        papers=papers,
        ack_text_share=ack_text_share,
        author_dist=author_dist,
        ack_positive_dist=shifted_binomial(1, 8, mean_acks / ackee_share),
        ackee_presence=presence_multi,
        single_author_ackee_share=single_author_ackee_share,
    )


def default_config(
    seed: int,
    total_papers: int = 10_000,
    papers_per_discipline: int | None = None,
) -> GeneratorConfig:
    """Profiles for all 12 disciplines at their calibrated targets. Paper
    counts follow the disciplines' corpus-share weights and sum to
    `total_papers`, unless a flat per-discipline count is given."""
    if papers_per_discipline is not None:
        counts = [papers_per_discipline] * len(_TARGETS)
    else:
        counts = _allocate(total_papers, [t[1] for t in _TARGETS])
    profiles = tuple(
        build_profile(name, count, ack_share, ackee_share, single, authors, acks)
        for count, (name, _, ack_share, ackee_share, single, authors, acks) in zip(
            counts, _TARGETS
        )
    )
    return GeneratorConfig(seed=seed, profiles=profiles)


# ---------------------------------------------------------------------------
# name pools

_ONSETS = "b br c ch d f g gr h j k l m n p r s sh st t v w y z".split()
_VOWELS = "a e i o u ai ei ia ou".split()
_CODAS = ["", "n", "m", "r", "l", "s", "k", "nd"]

# Capitalized words appearing in prose templates; kept out of the name pools
# so template text can never collide with a planted name.
_TEMPLATE_WORDS = frozenset(
    "Partial Additional Financial NSC Carlos Salud Instituto Marie Curie "
    "Frederick Banting Boehringer Ingelheim III".split()
)


def _stream(seed: int, purpose: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}|{purpose}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _word(rng: random.Random, syllables: int) -> str:
    parts = []
    for _ in range(syllables):
        parts.append(rng.choice(_ONSETS) + rng.choice(_VOWELS) + rng.choice(_CODAS))
    return "".join(parts).capitalize()


@dataclass(frozen=True)
class _Pools:
    givens: tuple[str, ...]
    surnames: tuple[str, ...]          # in the benchmark lexicon
    noise_surnames: tuple[str, ...]    # in the lexicon, never planted
    unknown_surnames: tuple[str, ...]  # outside the lexicon


def _build_pools(seed: int) -> _Pools:
    rng = _stream(seed, "pools")
    denied = {fold_surname(w) for w in _TEMPLATE_WORDS | STOPWORDS | HONORIFICS}

    def pool(size: int, syllables: int) -> tuple[str, ...]:
        words: list[str] = []
        seen = set()
        while len(words) < size:
            word = _word(rng, syllables)
            folded = fold_surname(word)
            if len(folded) < 3 or folded in denied or folded in seen:
                continue
            seen.add(folded)
            denied.add(folded)
            words.append(word)
        return tuple(words)

    return _Pools(
        givens=pool(240, 2),
        surnames=pool(800, 2),
        noise_surnames=pool(400, 3),
        unknown_surnames=pool(200, 3),
    )


# ---------------------------------------------------------------------------
# text assembly

def _join_names(names: list[str]) -> str:
    if len(names) == 1:
        return names[0]
    if len(names) == 2:
        return f"{names[0]} and {names[1]}"
    return ", ".join(names[:-1]) + f", and {names[-1]}"


def _render_person(rng: random.Random, given: str, surname: str) -> str:
    style = rng.random()
    if style < 0.60:
        return f"{given} {surname}"
    if style < 0.85:
        return f"{given[0]}. {surname}"
    return f"{given} {rng.choice('BCDFGHJKLMNPRSTW')}. {surname}"


@dataclass(frozen=True)
class TruthEntry:
    """Ground truth for one record: canonical planted names plus the planted
    distractor surfaces and their kinds."""

    record_id: str
    planted: tuple[str, ...]
    distractors: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class GeneratedArtifacts:
    corpus: Path
    lexicon: Path
    blacklist: Path
    ground_truth: Path


def _packaged_blacklist_names() -> list[str]:
    with resources.files("ackmine").joinpath("data/blacklist.txt").open(
        encoding="utf-8"
    ) as handle:
        return [
            line.split("#", 1)[0].strip()
            for line in handle
            if line.split("#", 1)[0].strip()
        ]


def _slug(discipline: str) -> str:
    return "".join(c if c.isalnum() else "-" for c in discipline.lower()).strip("-")


def generate(config: GeneratorConfig, out_dir: str | Path) -> GeneratedArtifacts:
    """Write corpus.jsonl, lexicon.txt, blacklist.txt and ground_truth.jsonl.

    Deterministic from the config; generation streams record by record so
    memory stays flat regardless of corpus size.
    """
    config.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pools = _build_pools(config.seed)
    blacklist_names = _packaged_blacklist_names()

    paths = GeneratedArtifacts(
        corpus=out / "corpus.jsonl",
        lexicon=out / "lexicon.txt",
        blacklist=out / "blacklist.txt",
        ground_truth=out / "ground_truth.jsonl",
    )

    lexicon_entries = sorted(
        set(pools.surnames)
        | set(pools.noise_surnames)
        | {fold_surname(n.split()[-1]) for n in blacklist_names}
    )
    paths.lexicon.write_text(
        "# synthetic person-name benchmark lexicon\n" + "\n".join(lexicon_entries) + "\n",
        encoding="utf-8",
    )
    paths.blacklist.write_text("\n".join(blacklist_names) + "\n", encoding="utf-8")

    with open(paths.corpus, "w", encoding="utf-8") as corpus_handle, open(
        paths.ground_truth, "w", encoding="utf-8"
    ) as truth_handle:
        for profile in config.profiles:
            _generate_discipline(
                profile,
                config,
                pools,
                blacklist_names,
                corpus_handle,
                truth_handle,
            )
    return paths


def _generate_discipline(profile, config, pools, blacklist_names, corpus_handle, truth_handle):
    rng = _stream(config.seed, f"discipline|{profile.discipline}")
    slug = _slug(profile.discipline)

    for index in range(profile.papers):
        record_id = f"{slug}-{index:07d}"
        n_authors = profile.author_dist.sample(rng)
        authors = []
        byline_keys = set()
        for _ in range(n_authors):
            given = rng.choice(pools.givens)
            surname = rng.choice(pools.surnames)
            byline_keys.add((given[0].lower(), fold_surname(surname)))
            rendered_given = f"{given[0]}." if rng.random() < 0.7 else given
            authors.append((given, surname, rendered_given))

        templates = config.templates
        ack_text = None
        planted: list[tuple[str, str]] = []  # (canonical, surface)
        distractors: list[tuple[str, str]] = []
        if rng.random() < profile.ack_text_share:
            presence = (
                profile.single_author_ackee_share
                if n_authors == 1
                else profile.ackee_presence
            )
            n_ack = profile.ack_positive_dist.sample(rng) if rng.random() < presence else 0

            used_keys = set(byline_keys)
            for _ in range(n_ack):
                for _attempt in range(1000):
                    given = rng.choice(pools.givens)
                    surname = rng.choice(pools.surnames)
                    key = (given[0].lower(), fold_surname(surname))
                    if key not in used_keys:
                        used_keys.add(key)
                        break
                else:
                    raise RuntimeError("name pools exhausted while planting acknowledgees")
                surface = _render_person(rng, given, surname)
                planted.append((normalize_name(surface).canonical(), surface))

            sentences = []
            mentions = [surface for _, surface in planted]
            while mentions:
                take = min(len(mentions), rng.randint(1, 3))
                group, mentions = mentions[:take], mentions[take:]
                if take == 1 and rng.random() < 0.15:
                    sentences.append(templates.honorific_thanks.format(group[0]))
                else:
                    sentences.append(
                        rng.choice(templates.thanks).format(_join_names(group))
                    )

            grant_no = f"{rng.randint(2015, 2016)}-{rng.randint(10000, 99999)}"
            if rng.random() < 0.12:
                sentences.append(templates.acronym_funding.format(grant_no))
            else:
                sentences.append(rng.choice(templates.funding).format(grant_no))

            if rng.random() < profile.blacklist_distractor_rate:
                name = rng.choice(blacklist_names)
                sentences.append(rng.choice(templates.blacklist_mention).format(name))
                distractors.append((name, "blacklist"))
            if rng.random() < profile.unknown_name_rate:
                surface = f"{rng.choice(pools.givens)} {rng.choice(pools.unknown_surnames)}"
                sentences.append(templates.unknown_mention.format(surface))
                distractors.append((surface, "unknown_surname"))

            rng.shuffle(sentences)
            if rng.random() < profile.self_mention_rate:
                mentioned = [f"{g} {s}" for g, s, _ in authors[:3]]
                sentences.insert(0, templates.self_mention.format(_join_names(mentioned)))
                distractors.extend((m, "self") for m in mentioned)

            ack_text = " ".join(sentences)

        record = Record(
            id=record_id,
            year=config.year,
            discipline=profile.discipline,
            doc_type=DocType.REVIEW if rng.random() < 0.1 else DocType.ARTICLE,
            authors=tuple(AuthorName(rg, s) for _, s, rg in authors),
            ack_text=ack_text,
        )
        corpus_handle.write(record_to_json(record) + "\n")
        truth_handle.write(
            json.dumps(
                {
                    "id": record_id,
                    "planted": [canonical for canonical, _ in planted],
                    "distractors": [
                        {"surface": surface, "kind": kind} for surface, kind in distractors
                    ],
                },
                ensure_ascii=False,
            )
            + "\n"
        )


def load_ground_truth(path: str | Path) -> dict[str, TruthEntry]:
    truth: dict[str, TruthEntry] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            obj = json.loads(line)
            truth[obj["id"]] = TruthEntry(
                record_id=obj["id"],
                planted=tuple(obj["planted"]),
                distractors=tuple((d["surface"], d["kind"]) for d in obj["distractors"]),
            )
    return truth


# ---------------------------------------------------------------------------
# evaluation

@dataclass(frozen=True)
class RecordEval:
    record_id: str
    n_planted: int
    n_extracted: int
    n_matched: int

    @property
    def precision(self) -> float | None:
        return self.n_matched / self.n_extracted if self.n_extracted else None

    @property
    def recall(self) -> float | None:
        return self.n_matched / self.n_planted if self.n_planted else None


@dataclass(frozen=True)
class EvalResult:
    per_record: tuple[RecordEval, ...]
    precision: float | None
    recall: float | None


def _keys_of(names: Iterable[str]) -> set:
    keys = set()
    for raw in names:
        name = normalize_name(raw)
        if name is not None:
            keys.add(linkage_key(name))
    return keys


def evaluate(
    extracted: Mapping[str, Iterable[str]],
    truth: Mapping[str, TruthEntry] | Mapping[str, Sequence[str]],
) -> EvalResult:
    """Score extracted acknowledgee names against planted ground truth.

    Matching is on linkage keys. Micro-averaged precision is None when
    nothing was extracted; recall is None when nothing was planted.
    """
    if set(extracted) != set(truth):
        missing = len(set(truth) - set(extracted))
        extra = len(set(extracted) - set(truth))
        raise ValueError(f"record id mismatch: {missing} missing, {extra} unexpected")
    per_record = []
    total_planted = total_extracted = total_matched = 0
    for record_id in sorted(extracted):
        entry = truth[record_id]
        planted_names = entry.planted if isinstance(entry, TruthEntry) else entry
        planted_keys = _keys_of(planted_names)
        extracted_keys = _keys_of(extracted[record_id])
        matched = len(planted_keys & extracted_keys)
        per_record.append(
            RecordEval(record_id, len(planted_keys), len(extracted_keys), matched)
        )
        total_planted += len(planted_keys)
        total_extracted += len(extracted_keys)
        total_matched += matched
    return EvalResult(
        per_record=tuple(per_record),
        precision=total_matched / total_extracted if total_extracted else None,
        recall=total_matched / total_planted if total_planted else None,
    )
