"""Published reference tables, transcribed verbatim for comparison.

Nothing in the computational modules reads these; they exist so that
the verification suite has something independent to compare against.
"""

# Root sublattices of E8 by rank (Dynkin).
TABLE2 = {
    8: ["A8", "D8", "A7+A1", "A5+A2+A1", "A4^2", "A2^4", "E6+A2", "E7+A1",
        "D6+A1^2", "D5+A3", "D4^2", "D4+A1^4", "A3^2+A1^2", "A1^8"],
    7: ["A6+A1", "A4+A2+A1", "A5+A2", "A2^3+A1", "E6+A1", "E7", "D7", "D5+A1^2",
        "D4+A1^3", "A3^2+A1", "A1^7", "D6+A1", "D5+A2", "A3+A2+A1^2", "D4+A3",
        "A3+A1^4", "A4+A3", "A5+A1^2", "A7"],
    6: ["A2^3", "E6", "D6", "D4+A1^2", "A3^2", "D5+A1", "A3+A1^3", "D4+A2", "A1^6",
        "A2+A1^4", "A4+A1^2", "A6", "A3+A2+A1", "A5+A1", "A4+A2", "A2^2+A1^2"],
    5: ["D5", "A3+A1^2", "A3+A2", "A5", "A1^5", "A4+A1", "D4+A1", "A2+A1^3", "A2^2+A1"],
    4: ["D4", "A1^4", "A2+A1^2", "A2^2", "A3+A1", "A4"],
    3: ["A3", "A2+A1", "A1^3"],
    2: ["A2", "A1^2"],
    1: ["A1"],
}

# Configurations of (-2)-curves on S - Y, non-fibered pairs.
TABLE3 = {
    "D4": ["D4", "A1^4", "A3", "A1^3", "A2", "A1^2", "A1"],
    "D5": ["A3", "A2", "A1^2", "A1"],
    "D6": ["A1^2", "A1"],
    "D7": [],
    "D8": [],
    "E6": ["A2", "A1"],
    "E7": ["A1"],
    "E8": [],
}

# Reducible fibres away from Y, fibered pairs.
TABLE4 = {
    "D4": ["D4", "A3", "A1^3", "A2", "A1^2", "A1"],
    "D5": ["A3", "A2", "A1^2", "A1"],
    "D6": ["A1^2", "A1"],
    "D7": [],
    "D8": [],
    "E6": ["A2", "A1"],
    "E7": ["A1"],
    "E8": [],
}

EULER_EXCLUDED = ["D4+A1^4", "A1^8", "A1^7"]

# Special-parameter configuration tables: (params, active loci, type).
D4_CONFIGS = [
    ((0, 0, 0, 1), {"C0", "C1", "Ct", "Ceps"}, "D4"),
    ((0, 0, 1, 0), {"C0", "C1", "Ceps", "Cinf"}, "D4"),
    ((0, 1, 0, 0), {"C0", "Ct", "Ceps", "Cinf"}, "D4"),
    ((1, 0, 0, 0), {"C1", "Ct", "Ceps", "Cinf"}, "D4"),
    ((0, 0, 0, 0), {"C0", "C1", "Ct", "Cinf"}, "A1^4"),
]
E6_CONFIGS = [((0, 0), {"C0", "Cinf"}, "A2")]
D5_CONFIGS = [((0, 0, 0), {"C0", "Ceps", "Cinf"}, "A3")]
D6_CONFIGS = [
    ((0, 0), {"C1", "C2"}, "A1^2"),
    ((-1, 1), {"C1", "C3"}, "A1^2"),
    ((-1, -1), {"C2", "C4"}, "A1^2"),
    ((-2, 0), {"C3", "C4"}, "A1^2"),
]
