#!/usr/bin/env python3
"""Mining suspected trolling attempts out of a raw comment dump.

A comment becomes a suspect when at least one direct, non-deleted reply
contains a token within edit distance 1 of "troll"; the snippet then packs
the suspect's parent (context), the suspect itself, and all surviving
direct responses.
"""

import io
import json

from trollbench.corpus import (
    build_threads,
    extract_snippets,
    find_suspects,
    levenshtein,
    parse_dump,
)

raw_dump = [
    {"id": "a1", "parent_id": "t3_post", "link_id": "t3_post",
     "author": "opener", "body": "Sharing my weekend project, feedback welcome.", "created_utc": 10},
    {"id": "a2", "parent_id": "t1_a1", "link_id": "t3_post",
     "author": "grump", "body": "This is the worst thing I have ever seen.", "created_utc": 20},
    {"id": "a3", "parent_id": "t1_a2", "link_id": "t3_post",
     "author": "defender", "body": "Ignore him, obvious troll.", "created_utc": 30},
    {"id": "a4", "parent_id": "t1_a2", "link_id": "t3_post",
     "author": "other", "body": "[deleted]", "created_utc": 40},
    {"id": "a5", "parent_id": "t1_a1", "link_id": "t3_post",
     "author": "fan", "body": "Looks great, nice work!", "created_utc": 50},
]

stream = io.StringIO("\n".join(json.dumps(rec) for rec in raw_dump))
comments = list(parse_dump(stream, "reddit-jsonl"))
print(f"parsed {len(comments)} comments")

threads = build_threads(comments)
thread = threads["post"]
print(f"thread 'post': roots={thread.roots}")

print("\nedit distances to 'troll':")
for token in ("troll", "trolls", "trolling", "brotroll"):
    print(f"  {token:10s} -> {levenshtein(token, 'troll')}")

suspects = find_suspects(thread)
print(f"\nsuspects: {sorted(suspects)}  (a2 has a replying child containing 'troll')")

snippets = extract_snippets(thread, suspects)
for snippet in snippets:
    print(f"\nsnippet {snippet.snippet_id}")
    print(f"  context : {snippet.context.body!r}")
    print(f"  attempt : {snippet.attempt.body!r}")
    for response in snippet.responses:
        print(f"  response: {response.body!r}")
    print("  (the deleted reply a4 never surfaces)")
