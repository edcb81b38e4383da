"""Deterministic synthetic corpus with planted lexical cues.

Sixty conversation snippets whose attempt and response texts carry
class-correlated cues (swearing, politeness, emoticons, harmful and emotion
vocabulary, author names), used by demos and the end-to-end evaluation
checks.  The generator emits a raw comment dump and derives the snippets
through the regular mining path, so the corpus also exercises ingestion.
"""

from __future__ import annotations

import random
from pathlib import Path
from typing import Sequence

from .corpus import Comment, Snippet, has_trigger, mine_snippets, write_snippets
from .features import Resources
from .linguistics.analysis import analyze
from .linguistics.embeddings import EmbeddingTable
from .schema import (
    AttemptLabel,
    Disclosure,
    Intention,
    Interpretation,
    ResponseLabel,
    SnippetAnnotation,
    Strategy,
    write_annotations,
)

DEFAULT_SEED = 7
EMBEDDING_DIM = 25

# (intention, disclosure) plan: counts sum to 60.
_ATTEMPT_PLAN: list[tuple[Intention, Disclosure, int]] = [
    (Intention.TROLLING, Disclosure.EXPOSED, 17),
    (Intention.TROLLING, Disclosure.HIDDEN, 10),
    (Intention.PLAYING, Disclosure.EXPOSED, 8),
    (Intention.PLAYING, Disclosure.HIDDEN, 4),
    (Intention.NO_TROLLING, Disclosure.NONE, 21),
]

# (interpretation, strategy) plan: counts sum to 120 (two responses each).
_RESPONSE_PLAN: list[tuple[Interpretation, Strategy, int]] = [
    (Interpretation.TROLLING, Strategy.ENGAGE, 14),
    (Interpretation.TROLLING, Strategy.TROLL, 12),
    (Interpretation.TROLLING, Strategy.FRUSTRATE, 10),
    (Interpretation.TROLLING, Strategy.NEUTRALIZE, 8),
    (Interpretation.TROLLING, Strategy.PRAISE, 4),
    (Interpretation.TROLLING, Strategy.FOLLOW, 4),
    (Interpretation.PLAYING, Strategy.PRAISE, 5),
    (Interpretation.PLAYING, Strategy.FOLLOW, 5),
    (Interpretation.PLAYING, Strategy.ENGAGE, 4),
    (Interpretation.PLAYING, Strategy.FRUSTRATE, 3),
    (Interpretation.PLAYING, Strategy.NEUTRALIZE, 3),
    (Interpretation.PLAYING, Strategy.TROLL, 2),
    (Interpretation.NO_TROLLING, Strategy.NORMAL, 30),
    (Interpretation.NO_TROLLING, Strategy.ENGAGE, 4),
    (Interpretation.NO_TROLLING, Strategy.TROLL, 3),
    (Interpretation.NO_TROLLING, Strategy.FRUSTRATE, 3),
    (Interpretation.NO_TROLLING, Strategy.NEUTRALIZE, 3),
    (Interpretation.NO_TROLLING, Strategy.PRAISE, 2),
    (Interpretation.NO_TROLLING, Strategy.FOLLOW, 1),
]

_ATTEMPT_TEMPLATES: dict[tuple[Intention, Disclosure], list[str]] = {
    (Intention.TROLLING, Disclosure.EXPOSED): [
        "you are all worthless idiots and this damn thread proves it",
        "shut up you pathetic losers nobody wants your shit opinions",
        "what a bunch of brainless scum go cry somewhere else dammit",
        "your stupid hobby is garbage and so is everyone posting this crap",
    ],
    (Intention.TROLLING, Disclosure.HIDDEN): [
        "genuinely curious why anyone with a working brain would post this",
        "just wondering when this board got taken over by such experts",
        "merely pointing out that people who enjoy this usually struggle with basics",
        "honest question did anyone here actually finish school",
    ],
    (Intention.PLAYING, Disclosure.EXPOSED): [
        "haha i am totally stealing your lunch money nerds :P just kidding",
        "breaking news this thread is now my kingdom bow before me xD",
        "i hereby declare pineapple the supreme topping fight me :D kidding obviously",
    ],
    (Intention.PLAYING, Disclosure.HIDDEN): [
        "i have secretly replaced all your bookmarks with cat pictures wink",
        "totally serious offer i will trade my imaginary yacht for this post wink",
    ],
    (Intention.NO_TROLLING, Disclosure.NONE): [
        "please check the pinned guide it answers this exact question thanks",
        "i compared both models last week and posted the results here",
        "the update ships next month according to the official blog",
        "thanks for sharing i found the second chapter really helpful",
    ],
}

_RESPONSE_TEMPLATES: dict[tuple[Interpretation, Strategy], list[str]] = {
    (Interpretation.TROLLING, Strategy.ENGAGE): [
        "you stupid troll i am so angry right now shut your mouth",
        "what an infuriating troll comment i hate everything you stand for",
    ],
    (Interpretation.TROLLING, Strategy.TROLL): [
        "nice try troll now crawl back under your bridge you pathetic worm",
        "spoken like a true troll your keyboard deserves a smarter owner",
    ],
    (Interpretation.TROLLING, Strategy.FRUSTRATE): [
        "please stop this troll act it is lazy and helps nobody here",
        "this troll routine is weak criticism not comedy do better",
    ],
    (Interpretation.TROLLING, Strategy.NEUTRALIZE): [
        "ok troll whatever moving on folks nothing to see here",
        "noted another troll post ignoring it and getting back on topic",
    ],
    (Interpretation.TROLLING, Strategy.PRAISE): [
        "haha well played troll that was honestly a brilliant wind up",
        "i must admit troll that bait was impressively crafted bravo",
    ],
    (Interpretation.TROLLING, Strategy.FOLLOW): [
        "count me in fellow troll lets stir this pot together",
        "joining the troll parade this thread was too quiet anyway",
    ],
    (Interpretation.PLAYING, Strategy.PRAISE): [
        "haha you are kidding and it is glorious :D well done",
        "this joke build is hilarious xD take my upvote",
    ],
    (Interpretation.PLAYING, Strategy.FOLLOW): [
        "kidding along i raise you one imaginary castle :P",
        "playing along sir i too pledge my lunch money to the cause",
    ],
    (Interpretation.PLAYING, Strategy.ENGAGE): [
        "even kidding this stings a bit i am actually upset now",
        "i know it is a joke but honestly it made me mad",
    ],
    (Interpretation.PLAYING, Strategy.FRUSTRATE): [
        "the kidding went too far please tone the joke down",
        "jokes are fine but this one is tired criticism intended",
    ],
    (Interpretation.PLAYING, Strategy.NEUTRALIZE): [
        "ok jokester whatever have fun i am not biting",
        "sure sure very funny moving right along now",
    ],
    (Interpretation.PLAYING, Strategy.TROLL): [
        "two can play clown here is a meaner joke about your avatar",
        "if we are joking then your entire post history is the punchline",
    ],
    (Interpretation.NO_TROLLING, Strategy.NORMAL): [
        "here is the source article you asked about hope it helps",
        "the schedule moved to friday according to the announcement",
        "i tried that setting yesterday and it worked fine for me",
    ],
    (Interpretation.NO_TROLLING, Strategy.ENGAGE): [
        "honestly this made me upset even though you meant it plainly",
        "i am somehow furious at this perfectly ordinary comment",
    ],
    (Interpretation.NO_TROLLING, Strategy.TROLL): [
        "boring take here is a spicy insult you did not ask for",
        "normal comment meet abnormal reply you absolute cabbage",
    ],
    (Interpretation.NO_TROLLING, Strategy.FRUSTRATE): [
        "mild criticism this adds little to the discussion",
        "not provocative just underwhelming please add sources",
    ],
    (Interpretation.NO_TROLLING, Strategy.NEUTRALIZE): [
        "fair enough nothing dramatic here carry on everyone",
        "plain comment plain reply all calm on this thread",
    ],
    (Interpretation.NO_TROLLING, Strategy.PRAISE): [
        "genuinely nice write up thanks for the effort",
        "good honest post appreciate the detail",
    ],
    (Interpretation.NO_TROLLING, Strategy.FOLLOW): [
        "adding on in the same plain spirit here is my data point",
    ],
}

_CONTEXT_TEMPLATES = [
    "i posted a photo of my garden project from last weekend",
    "sharing my notes from the lecture for anyone who missed it",
    "here is my review of the new release after a week of use",
    "asking for recommendations on beginner equipment",
    "wrote a long comparison of the two approaches below",
]

_FILLER = ["today", "honestly", "folks", "again", "buddy", "friend", "everyone", "seriously"]

_TROLL_AUTHORS = ["dumbass_dave", "shitlord99", "mr_asshole", "bastard_bob", "crapquake"]
_PLAYFUL_AUTHORS = ["jokey_jane", "punny_pete", "gigglegoblin", "memelord_milo"]
_PLAIN_AUTHORS = ["helpful_hank", "quiet_quinn", "sensible_sam", "plain_paula", "notes_nina"]
_COUNTER_AUTHORS = ["pissed_pat", "damnright_dan"]
_RESPONDER_AUTHORS = ["reader_rae", "lurker_lou", "casual_cass", "thread_tom", "new_here_nell"]


def _author_for_attempt(intention: Intention, rng: random.Random) -> str:
    if intention is Intention.TROLLING:
        return rng.choice(_TROLL_AUTHORS)
    if intention is Intention.PLAYING:
        return rng.choice(_PLAYFUL_AUTHORS)
    return rng.choice(_PLAIN_AUTHORS)


def _author_for_response(strategy: Strategy, rng: random.Random) -> str:
    if strategy is Strategy.TROLL:
        return rng.choice(_COUNTER_AUTHORS)
    return rng.choice(_RESPONDER_AUTHORS)


def _expand(plan: Sequence[tuple], rng: random.Random) -> list[tuple]:
    out = []
    for *labels, count in plan:
        out.extend([tuple(labels)] * count)
    rng.shuffle(out)
    return out


def synthetic_comments(seed: int = DEFAULT_SEED) -> tuple[list[Comment], dict[str, SnippetAnnotation]]:
    """Raw comment dump plus gold labels keyed by the mined snippet ids."""
    rng = random.Random(seed)
    attempts = _expand(_ATTEMPT_PLAN, rng)
    responses = _expand(_RESPONSE_PLAN, rng)
    assert len(responses) == 2 * len(attempts)

    comments: list[Comment] = []
    gold: dict[str, SnippetAnnotation] = {}
    for k, (intention, disclosure) in enumerate(attempts):
        thread_id = f"synth{k:03d}"
        ctx_id, att_id = f"c{k:03d}ctx", f"c{k:03d}att"
        base_time = 1_000_000 + 100 * k

        attempt_text = rng.choice(_ATTEMPT_TEMPLATES[(intention, disclosure)])
        attempt_text = f"{attempt_text} {rng.choice(_FILLER)}"

        pair = [responses[2 * k], responses[2 * k + 1]]
        response_comments = []
        response_labels = []
        for j, (interp, strat) in enumerate(pair):
            rid = f"c{k:03d}r{j}"
            text = f"{rng.choice(_RESPONSE_TEMPLATES[(interp, strat)])} {rng.choice(_FILLER)}"
            response_comments.append((rid, interp, strat, text))
            response_labels.append((rid, interp, strat))
        # the mining invariant: at least one response must carry the trigger
        if not any(has_trigger(text) for _, _, _, text in response_comments):
            rid, interp, strat, text = response_comments[0]
            response_comments[0] = (rid, interp, strat, text + " and no i do not think you are a troll")

        comments.append(
            Comment(ctx_id, None, thread_id, rng.choice(_PLAIN_AUTHORS),
                    rng.choice(_CONTEXT_TEMPLATES), base_time)
        )
        comments.append(
            Comment(att_id, ctx_id, thread_id, _author_for_attempt(intention, rng),
                    attempt_text, base_time + 1)
        )
        for j, (rid, interp, strat, text) in enumerate(response_comments):
            comments.append(
                Comment(rid, att_id, thread_id, _author_for_response(strat, rng),
                        text, base_time + 2 + j)
            )

        snippet_id = f"{thread_id}/{att_id}"
        gold[snippet_id] = SnippetAnnotation(
            snippet_id=snippet_id,
            annotator_id="gold",
            discarded=False,
            attempt=AttemptLabel(intention=intention, disclosure=disclosure),
            responses=tuple(
                ResponseLabel(rid, interp, strat) for rid, interp, strat in response_labels
            ),
        )
    return comments, gold


def synthetic_corpus(seed: int = DEFAULT_SEED) -> tuple[list[Snippet], dict[str, SnippetAnnotation]]:
    """Mined snippets plus gold labels; mining must recover every snippet."""
    comments, gold = synthetic_comments(seed)
    snippets = mine_snippets(comments)
    mined_ids = {s.snippet_id for s in snippets}
    if mined_ids != set(gold):
        raise RuntimeError(
            "synthetic corpus drifted: mined snippets do not match planted gold "
            f"(+{sorted(mined_ids - set(gold))[:3]} -{sorted(set(gold) - mined_ids)[:3]})"
        )
    return snippets, gold


def corpus_vocabulary(snippets: Sequence[Snippet]) -> list[str]:
    vocab = set()
    for snippet in snippets:
        comments = [snippet.attempt, *snippet.responses]
        if snippet.context:
            comments.append(snippet.context)
        for comment in comments:
            vocab.update(t.lowercase for t in analyze(comment.body).tokens)
    return sorted(vocab)


def synthetic_resources(snippets: Sequence[Snippet], dimension: int = EMBEDDING_DIM) -> Resources:
    """Feature resources with a deterministic embedding table over the corpus."""
    table = EmbeddingTable.deterministic(corpus_vocabulary(snippets), dimension)
    return Resources(embeddings=table)


def write_synthetic(out_dir: str | Path, seed: int = DEFAULT_SEED) -> None:
    """Materialize snippets.jsonl, annotations/gold.jsonl and an embedding file."""
    out = Path(out_dir)
    (out / "annotations").mkdir(parents=True, exist_ok=True)
    (out / "embeddings").mkdir(parents=True, exist_ok=True)
    snippets, gold = synthetic_corpus(seed)
    write_snippets(snippets, out / "snippets.jsonl")
    write_annotations(
        [gold[s.snippet_id] for s in snippets], out / "annotations" / "gold.jsonl"
    )
    table = EmbeddingTable.deterministic(corpus_vocabulary(snippets), EMBEDDING_DIM)
    table.save(out / "embeddings" / f"synthetic_{EMBEDDING_DIM}d.txt")
