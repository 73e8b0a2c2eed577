"""Deterministic fixture transcripts and audio for offline pipeline tests.

Four spoken-style transcripts with the disfluencies the pipeline targets:
filler words, immediate repetitions, and emphasis words. Word timings are
synthesized at a steady speaking rate with longer pauses at sentence ends.
"""

from __future__ import annotations

import numpy as np

TALK_ROUTINE = """\
So um I wake up at six and I make coffee first thing. I really love the quiet \
of the morning you know before anyone else is awake. Then I go for a run \
around the park which takes about thirty minutes. After the run I take a \
shower and I make a very simple breakfast of eggs and toast.

Then I sit down at my desk and I check my email. I check my, my calendar \
for the day and write a short list of tasks. Honestly the list is basically \
the only thing keeping me organized. I pick the hardest task and I start \
there because my focus is sharpest early.

By noon I take a break and stretch my legs. I eat lunch outside when the \
weather is nice which it usually is in the spring. That small ritual really \
helps me reset for the afternoon."""

TALK_COOKING = """\
My favorite meal to cook is um a big pot of ramen from scratch. The broth \
takes like twelve hours so I start it the night before. You simmer pork \
bones and you skim the fat and you add aromatics near the end. The smell \
fills the whole apartment and it is honestly very comforting.

The noodles are the part I love most. I knead the dough and I rest it and I \
roll it out in the, in the evening. Fresh noodles have a chew that dried \
ones just never match. When friends come over they always ask for seconds \
which makes the long process feel completely worth it."""

TALK_CHALLENGE = """\
A few years ago I had to give a talk in front of um five hundred people and \
I was terrified. I practiced every single day for three weeks. I recorded \
myself and I listened back and I fixed the parts that sounded flat. My \
hands were shaking when I walked on stage.

But then something clicked and I just started talking like I was with \
friends. The audience laughed at my first joke and the fear sort of melted \
away. I finished the talk and people actually came up to ask questions \
afterward. That day taught me that preparation beats talent when talent \
does not prepare.

Now I volunteer to speak whenever I can. Each talk gets a little easier \
than the, the last one. The nerves never fully leave but they become fuel \
instead of poison."""

TALK_TECHNOLOGY = """\
The piece of technology I use every day is honestly just my bicycle \
computer. It tracks my speed and my distance and my heart rate on every \
ride. I upload the rides and I compare them week over week which keeps me \
motivated. The data is um surprisingly detailed for such a small device.

Before I had it I would kind of guess how hard I was training. Now I can \
see exactly when I am improving and when I am just tired. My coach reads \
the same charts and we adjust the plan together. It is a really simple tool \
but it completely changed how I ride."""

FIXTURE_TEXTS = {
    "routine": TALK_ROUTINE,
    "cooking": TALK_COOKING,
    "challenge": TALK_CHALLENGE,
    "technology": TALK_TECHNOLOGY,
}

WORDS_PER_SECOND = 2.8
SENTENCE_PAUSE = 0.30  # seconds
WORD_GAP = 0.04


def transcript_document(name: str) -> dict:
    """Build an aligned-transcript document for one fixture text."""
    text = FIXTURE_TEXTS[name]
    words = []
    paragraphs = []
    clock = 0.25
    index = 0
    for block in text.split("\n\n"):
        start_index = index
        for token in block.split():
            duration = max(0.12, min(0.6, len(token) / (WORDS_PER_SECOND * 2.2)))
            words.append(
                {"text": token, "start": round(clock, 3), "end": round(clock + duration, 3)}
            )
            clock += duration
            clock += SENTENCE_PAUSE if token[-1:] in ".!?" else WORD_GAP
            index += 1
        paragraphs.append([start_index, index])
    return {
        "audio_duration": round(clock + 0.25, 3),
        "words": words,
        "paragraphs": paragraphs,
    }


def fixture_corpus() -> dict[str, dict]:
    return {name: transcript_document(name) for name in FIXTURE_TEXTS}


def sine_clip(duration_s: float, sample_rate: int = 16000, freq: float = 440.0) -> np.ndarray:
    """Int16 mono test tone."""
    n = int(round(duration_s * sample_rate))
    t = np.arange(n) / sample_rate
    return (np.sin(2 * np.pi * freq * t) * 12000).astype(np.int16)


def fixture_audio_for(doc: dict, sample_rate: int = 16000) -> np.ndarray:
    return sine_clip(doc["audio_duration"], sample_rate)
