"""Expected chart rows for the worked parses, shared across test modules.

Each list is the full hand-checked derivation of one fixture sentence,
rendered exactly as the matching system's item renderer prints it.
"""

from deduce.systems import item_renderer

TOPDOWN_ROWS = [
    "[. S, 0]",
    "[. NP VP, 0]",
    "[. Det N OptRel VP, 0]",
    "[. a N OptRel VP, 0]",
    "[. N OptRel VP, 1]",
    "[. program OptRel VP, 1]",
    "[. OptRel VP, 2]",
    "[. VP, 2]",
    "[. IV, 2]",
    "[. halts, 2]",
    "[., 3]",
]

BOTTOMUP_ROWS = [
    "[., 0]",
    "[a ., 1]",
    "[Det ., 1]",
    "[Det program ., 2]",
    "[Det N ., 2]",
    "[Det N OptRel ., 2]",
    "[NP ., 2]",
    "[NP halts ., 3]",
    "[NP IV ., 3]",
    "[NP VP ., 3]",
    "[S ., 3]",
]

EARLEY_ROWS = [
    "[0, S' -> . S, 0]",
    "[0, S -> . NP VP, 0]",
    "[0, NP -> . Det N OptRel, 0]",
    "[0, Det -> . a, 0]",
    "[0, Det -> a ., 1]",
    "[0, NP -> Det . N OptRel, 1]",
    "[1, N -> . program, 1]",
    "[1, N -> program ., 2]",
    "[0, NP -> Det N . OptRel, 2]",
    "[2, OptRel -> ., 2]",
    "[0, NP -> Det N OptRel ., 2]",
    "[0, S -> NP . VP, 2]",
    "[2, VP -> . IV, 2]",
    "[2, IV -> . halts, 2]",
    "[2, IV -> halts ., 3]",
    "[2, VP -> IV ., 3]",
    "[0, S -> NP VP ., 3]",
    "[0, S' -> S ., 3]",
]

CCG_ROWS = [
    "[NP, 0, 1]",
    "[(S\\NP)/(S\\NP), 1, 2]",
    "[(S\\NP)/NP, 2, 3]",
    "[(S\\NP)/NP, 1, 3]",
    "[NP, 3, 4]",
    "[S\\NP, 1, 4]",
    "[S, 0, 4]",
]


def proved_renderings(result):
    """Rendered items of the chart prefix (popped, hence proved)."""
    render = item_renderer(result.system.name)
    return [
        render(stored.item)
        for stored in result.store.items()
        if stored.index < result.store.head
    ]
