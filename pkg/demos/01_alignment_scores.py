"""How close are two strings? The three alignment kernels side by side.

Global alignment scores whole sentences against each other, local alignment
finds the best shared stretch between two words, and the LCS measures how
much of a sentence survives a reordering.

    python3 demos/01_alignment_scores.py
"""
from tasml.alignment import (
    ScoringScheme,
    global_alignment_score,
    local_alignment_score,
    longest_common_subsequence,
    record_cell_visits,
)

scheme = ScoringScheme(match_score=1, mismatch_score=-1, gap_penalty=-1)

stored = "the warriors raided the island"
for query in ["the warriors raided the island", "the warriors raided the islands", "the raiders attacked the coast"]:
    score = global_alignment_score(query, stored, scheme)
    perfect = len(query) * scheme.match_score
    print(f"global  {query!r:36} score {score:3d}  shortfall {perfect - score}")

print()
for a, b in [("raided", "raiders"), ("explored", "explorer"), ("raided", "attacked"), ("sea", "longships")]:
    print(f"local   {a:>9} / {b:<9} {local_alignment_score(a, b, scheme)}")

print()
length, witness = longest_common_subsequence("in the market merchants sold amber", "merchants sold amber in the market")
print(f"lcs     {length} characters survive the reorder: {witness!r}")

# every kernel fills exactly one (m+1) x (n+1) table
with record_cell_visits() as log:
    global_alignment_score("kitten", "sitting")
print(f"cells   {log[0].visits} visited for 6 x 7 characters")
