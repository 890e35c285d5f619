"""Worked examples shared by the unit tests and the acceptance suite."""
from __future__ import annotations

from pathlib import Path

from flm import LingMatrix, LinguisticSpace

MODELS = Path(__file__).resolve().parent.parent / "models"
GOLDEN = Path(__file__).resolve().parent / "golden"

QUALITY = "0 worst very_bad bad very_poor poor average good very_good".split()
SPEED = "0 very_slow slow fairly_slow below_average average above_average fairly_fast fast very_fast".split()
RATING_COVERS = [
    ("worst", "very_bad"), ("very_bad", "bad"), ("bad", "average"), ("average", "above_average"),
    ("above_average", "good"), ("good", "very_good"), ("very_good", "best"), ("very_good", "excellent"),
]
FREQUENCY_COVERS = [
    ("never", "occasionally"), ("occasionally", "at_times"), ("at_times", "some_times"),
    ("some_times", "less_often"), ("less_often", "often"),
    ("often", "very_often"), ("very_often", "always"), ("always", "most_of_the_time"),
    ("often", "more_often"), ("more_often", "most_often"), ("most_often", "most_of_the_time"),
    ("never", "less_frequently"), ("less_frequently", "frequently"), ("frequently", "more_frequently"),
    ("more_frequently", "most_of_the_time"),
    ("much", "very_much"), ("very_much", "most_of_the_time"),
]
GRADE4 = "0 bad fair good best".split()


def quality() -> LinguisticSpace:
    return LinguisticSpace.chain("quality", QUALITY)


def speed_scale() -> LinguisticSpace:
    return LinguisticSpace.chain("speed", SPEED)


def rating() -> LinguisticSpace:
    return LinguisticSpace.poset("rating", RATING_COVERS)


def frequency() -> LinguisticSpace:
    return LinguisticSpace.poset("frequency", FREQUENCY_COVERS, greatest="most_of_the_time")


def size() -> LinguisticSpace:
    aliases = {f"{w}_{m}": f"{s}{m}" for w, s in (("negative", "-"), ("positive", "+"))
               for m in ("small", "medium", "large")}
    return LinguisticSpace.signed_chain("size", ["small", "medium", "large"], aliases=aliases)


def grade4() -> LinguisticSpace:
    return LinguisticSpace.chain("grade", GRADE4)


def mutate(rng, data: bytes) -> bytes:
    """One to four random byte substitutions, insertions or deletions."""
    b = bytearray(data)
    for _ in range(rng.randint(1, 4)):
        k = rng.randrange(len(b) + 1)
        op = rng.randrange(3)
        if op == 0 and k < len(b):
            b[k] = rng.randrange(256)
        elif op == 1:
            b[k:k] = bytes([rng.choice(b" \n#:;<>-[](){}x0+=,^aZ9\t\xff")])
        elif k < len(b):
            del b[k]
    return bytes(b)


def grid(space: LinguisticSpace, text: str) -> LingMatrix:
    """Rows separated by ';', entries by whitespace."""
    return LingMatrix.from_names(space, [r.split() for r in text.split(";")])


# 5-vector times 5x4 matrix over a speed chain
SPEED7 = "0 very_slow slow medium just_fast fast very_fast".split()
SPEED_X = "fast slow very_slow just_fast very_fast"
SPEED_M = ("slow medium fast slow; very_slow slow medium very_slow; fast slow fast just_fast;"
           " fast medium slow fast; just_fast slow very_slow fast")
SPEED_RESULTS = {
    "maxmin": "just_fast medium fast fast",
    "minmin": "very_slow very_slow very_slow very_slow",
    "maxmax": "very_fast very_fast very_fast very_fast",
    "minmax": "slow slow medium slow",
}

# 5x5 with a zero in every row and column
GRADE5 = "0 worst bad fair good best".split()
ZERO_RULE_M = ("good bad 0 best worst; bad 0 good 0 best; 0 good bad worst 0;"
               " fair best 0 bad good; good bad good 0 bad")

# row and column of ten entries
QUALITY8 = "0 very_bad bad fair very_fair good better best".split()
TEN_Y = "bad 0 good very_bad 0 best fair best better 0"
TEN_X = "good bad fair 0 very_fair best bad 0 good better"
TEN_RESULTS = {"minmin": "0", "maxmin": "best", "minmax": "very_bad", "maxmax": "best"}

# relation equation P o Q = R
P_TEXT = "good bad fair best; bad fair good good; 0 good fair good; good bad good fair"
Q_TEXT = ("good bad good fair 0 best; bad good best good bad 0; best fair best 0 good bad;"
          " 0 fair good bad good good")
R_TEXT = ("good fair good fair good good; good fair good fair good good; fair good good good good good;"
          " good fair good fair good good")

# transit cognitive map
FREQ6 = "0 some often very_often much very_much".split()
TRANSIT_M = ("0 often 0 0 0 often 0 0; 0 0 0 very_much often 0 0 very_often;"
             " 0 0 0 very_much much 0 some 0; 0 0 much 0 0 0 0 very_often;"
             " 0 0 often 0 0 0 much 0; 0 0 0 0 0 0 0 very_often;"
             " 0 0 0 0 much 0 0 0; very_often 0 0 0 much very_often 0 0")
TRANSIT_X = "often 0 some 0 often some 0 often"
TRANSIT_TRACE = [
    "often often some very_much often some much often",
    "often very_much some very_much often some very_much often",
    "often very_much some very_much often some very_much often",
]

# signed cognitive map
CHILD_M = ("0 0 0 +often +very_much 0; 0 0 -often 0 0 0; +often -much 0 0 0 +much;"
           " 0 0 +often 0 0 0; +very_much 0 0 0 0 0; 0 0 +much 0 0 0")
CHILD_X = "+often 0 0 0 0 0"
CHILD_CLAIMED_FIXED = "+often 0 +often +often +often 0"

# relational map
GAIN = "0 heavy_loss loss just_loss no_loss_no_gain just_gain gain good_gain".split()
EMPLOYEE_N = ("good_gain 0 0 just_loss 0; gain 0 0 0 0; no_loss_no_gain 0 0 0 0; gain 0 0 0 0;"
              " 0 no_loss_no_gain 0 0 0; 0 0 0 0 loss; just_loss 0 0 0 0; 0 0 0 heavy_loss 0")
EMPLOYEE_X = "gain 0 loss 0 gain loss 0 0"
EMPLOYEE_Y = "good_gain gain gain gain gain"

# signed distance table: (a, b, distance)
GAP = "0 over_lap very_small just_small small just_large large larger very_large largest".split()
SIZE_DISTANCES = [
    ("negative_large", "negative_medium", "over_lap"), ("negative_large", "negative_small", "very_small"),
    ("negative_large", "0", "small"), ("negative_large", "positive_small", "just_large"),
    ("negative_large", "positive_medium", "large"), ("negative_large", "positive_large", "largest"),
    ("negative_medium", "negative_small", "over_lap"), ("negative_medium", "0", "just_small"),
    ("negative_medium", "positive_small", "large"), ("negative_medium", "positive_medium", "larger"),
    ("negative_medium", "positive_large", "very_large"), ("negative_small", "0", "very_small"),
    ("negative_small", "positive_small", "small"), ("negative_small", "positive_medium", "large"),
    ("negative_small", "positive_large", "just_large"), ("positive_small", "0", "very_small"),
    ("positive_medium", "0", "just_small"), ("positive_large", "0", "small"),
    ("positive_small", "positive_medium", "over_lap"), ("positive_small", "positive_large", "small"),
    ("positive_medium", "positive_large", "over_lap"),
]
# two distances stated for the six-grade table; the rest of that table is a fixture
GRADE_DISTANCES_STATED = [("good", "bad", "far"), ("best", "worst", "very_far")]

# polynomials with term coefficients
POLY_ORDER = "0 very_bad bad fair very_fair better good best".split()
POLY_P = {0: "good", 1: "very_bad", 2: "fair", 3: "best"}
POLY_Q = {0: "better", 1: "bad", 2: "very_fair", 4: "good"}
POLY_MIN = {0: "better", 1: "very_bad", 2: "fair"}
POLY_MAX = {0: "good", 1: "bad", 2: "very_fair", 3: "best", 4: "good"}

# ten-concept graph edges
STRENGTH = "0 bad just_fair fair very_fair good very_good best".split()
TEN_EDGES = [
    ("C1", "C2", "good"), ("C1", "C4", "fair"), ("C1", "C6", "good"), ("C1", "C7", "good"),
    ("C3", "C2", "just_fair"), ("C4", "C5", "good"), ("C4", "C8", "very_good"), ("C5", "C10", "bad"),
    ("C6", "C7", "best"), ("C7", "C3", "very_fair"), ("C8", "C5", "very_fair"), ("C9", "C10", "fair"),
]
