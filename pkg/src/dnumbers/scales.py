"""Built-in linguistic scales for criterion weights and candidate ratings."""

from .fuzzy import LinguisticScale

WEIGHT_SCALE = LinguisticScale.from_pairs(
    [
        ("VL", (0.0, 0.0, 0.1)),
        ("L", (0.0, 0.1, 0.3)),
        ("ML", (0.1, 0.3, 0.5)),
        ("M", (0.3, 0.5, 0.7)),
        ("MH", (0.5, 0.7, 0.9)),
        ("H", (0.7, 0.9, 1.0)),
        ("VH", (0.9, 1.0, 1.0)),
    ],
    universe=(0.0, 1.0),
)

RATING_SCALE = LinguisticScale.from_pairs(
    [
        ("VP", (0.0, 0.0, 1.0)),
        ("P", (0.0, 1.0, 3.0)),
        ("MP", (1.0, 3.0, 5.0)),
        ("F", (3.0, 5.0, 7.0)),
        ("MG", (5.0, 7.0, 9.0)),
        ("G", (7.0, 9.0, 10.0)),
        ("VG", (9.0, 10.0, 10.0)),
    ],
    universe=(0.0, 10.0),
)

WEIGHT_NAMES = {
    "VL": "Very low", "L": "Low", "ML": "Medium low", "M": "Medium",
    "MH": "Medium high", "H": "High", "VH": "Very high",
}

RATING_NAMES = {
    "VP": "Very poor", "P": "Poor", "MP": "Medium poor", "F": "Fair",
    "MG": "Medium good", "G": "Good", "VG": "Very good",
}
