#!/usr/bin/env python3
"""Compile the flat emotion wordlist shipped under resources/lexicons/.

Seven seed emotions, each expanded with dictionary synonyms and close
derivational relatives.  Rerun after editing the synonym table:

    python tools/compile_emotion_lexicon.py
"""

from __future__ import annotations

from pathlib import Path

EMOTION_SYNONYMS: dict[str, list[str]] = {
    "anger": [
        "angry", "rage", "raging", "fury", "furious", "wrath", "outrage",
        "outraged", "irritation", "irritated", "irritating", "annoyance",
        "annoyed", "annoying", "mad", "madden", "maddening", "livid",
        "resentment", "resentful", "indignation", "indignant", "exasperated",
        "exasperation", "infuriated", "infuriating", "enraged", "irate",
        "temper", "seething", "fuming", "hostile", "hostility",
    ],
    "embarrassment": [
        "embarrassed", "embarrassing", "shame", "ashamed", "shameful",
        "humiliation", "humiliated", "humiliating", "awkward", "awkwardness",
        "mortified", "mortification", "sheepish", "blush", "blushing",
        "disgrace", "disgraced", "disgraceful", "cringe", "cringed",
        "cringing", "cringeworthy", "self-conscious", "flustered",
    ],
    "empathy": [
        "empathetic", "empathic", "empathize", "compassion", "compassionate",
        "sympathy", "sympathetic", "sympathize", "understanding", "pity",
        "kindness", "caring", "warmth", "tenderness", "concern", "concerned",
        "considerate", "supportive", "comforting",
    ],
    "fear": [
        "afraid", "scared", "scary", "frightened", "frightening", "fright",
        "terror", "terrified", "terrifying", "dread", "dreadful", "panic",
        "panicked", "panicking", "anxious", "anxiety", "horror", "horrified",
        "horrifying", "alarmed", "alarming", "apprehensive", "apprehension",
        "fearful", "petrified", "uneasy", "worried", "worry", "worrying",
        "intimidated", "intimidating", "spooked",
    ],
    "pride": [
        "proud", "proudly", "dignity", "dignified", "honor", "honored",
        "honour", "honoured", "self-respect", "self-esteem", "accomplished",
        "accomplishment", "triumphant", "triumph", "boastful", "boasting",
        "bragging", "smug", "vain", "vanity", "arrogant", "arrogance",
    ],
    "relief": [
        "relieved", "relieving", "reassured", "reassurance", "reassuring",
        "comfort", "comforted", "consolation", "consoled", "consoling",
        "soothed", "soothing", "alleviated", "alleviation", "unburdened",
        "calmed", "calming", "respite",
    ],
    "sadness": [
        "sad", "sadly", "sorrow", "sorrowful", "grief", "grieving",
        "mourning", "mournful", "misery", "miserable", "depressed",
        "depressing", "depression", "despair", "despairing", "dejected",
        "dejection", "downcast", "gloomy", "gloom", "heartbroken",
        "heartbreak", "heartbreaking", "melancholy", "unhappy", "unhappiness",
        "woe", "woeful", "tearful", "weeping", "crying", "devastated",
        "devastating", "hopeless", "hopelessness",
    ],
}

HEADER = (
    "# Emotion wordlist compiled from seven seed emotions plus dictionary\n"
    "# synonyms. Generated by tools/compile_emotion_lexicon.py; edit the\n"
    "# synonym table there, not this file.\n"
)


def compile_entries() -> list[str]:
    entries = set()
    for seed, synonyms in EMOTION_SYNONYMS.items():
        entries.add(seed)
        entries.update(synonyms)
    return sorted(entries)


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "src" / "trollbench" / "resources" / "lexicons" / "emotion.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    entries = compile_entries()
    out.write_text(HEADER + "\n".join(entries) + "\n", encoding="utf-8")
    print(f"wrote {len(entries)} entries to {out}")


if __name__ == "__main__":
    main()
