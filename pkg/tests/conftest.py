from __future__ import annotations

from bumpless.diagram import Diagram, from_text


def D(s: str, mode=None) -> Diagram:
    """Diagram from rows joined by '/'."""
    return from_text(s.replace("/", "\n"), mode)


# reference diagrams as tile text
DROOPED_1423 = "..r-/r-jr/|r-+/||r+"
DROOPED_1423_CO = "||l+/l+nl/.l+-/..l-"
REDUCED_2143 = ".r--/.|r-/r+jr/||r+"
NONREDUCED_2143 = "..r-/.r+-/r+jr/||r+"
ISSUE = "..r----/r-j..r-/|.r--+-/|r+--+-/|||.rjr/|||r+-+/|||||r+"
DOUBLE_CONFIG = ".....r--/..r--jr-/r-+---+-/|.|.r-+-/|.|.|rjr/|.|r++-+/|.||||r+/|r++++++"

# end states of the seven droop plans, with the co-BPD permutations
PLAN_END = {
    "1423": ("..r-/r-jr/|r-+/||r+", "3412"),
    "12543": ("..r--/r-jr-/|r-jr/||.r+/||r++", "34512"),
    "13254": ("..r--/r-jr-/|r-+-/||rjr/|||r+", "34152"),
    "25143": ("...r-/.r-jr/.|r-+/r+jr+/||r++", "45231"),
    "215643": ("...r--/..r+--/r-j|r-/|r-j|r/||.r++/||r+++", "435612"),
    "216543": ("...r--/..r+--/r-j|.r/|r-jr+/||.r++/||r+++", "436512"),
    "241653": ("...r--/.r-jr-/.|r-+-/r+jrjr/||.|r+/||r+++", "452631"),
}

# blocked occurrences resolved by drooping the blocking elbows first
CLEARED = {
    "13524": ("1423", "..r--/r-jr-/|.rjr/|r+-+/|||r+", "34512"),
    "124653": ("12543", "..r---/r-jr--/|r-jr-/||.rjr/||.|r+/||r+++", "345612"),
    "246153": ("25143", "...r--/.r-jr-/.|.rjr/.|r+-+/r+j|r+/||r+++", "456231"),
    "1342576": (
        "13254", "..r----/r-jr---/|.rjr--/|r+-+--/|||rjr-/||||rjr/|||||r+", "3451672",
    ),
}
