"""Reference matrices and vectors, transcribed digit for digit.

Coordinates of every vector here follow the column order of ``FIG1_ROWS``;
the residue of that matrix is the code called ``C6`` throughout.
"""

from __future__ import annotations

import hashlib

FIG1_ROWS = (
    "111111111111111100000000",
    "020000001111311100020000",
    "111111110000000011111111",
    "010010111013010210110100",
    "111000011130020100011110",
    "011110003020011101111000",
    "000000002022020000000000",
    "000000002220000200000000",
    "000000002000022200000000",
    "020020220000000000000000",
    "222000020000000000000000",
    "022220000000000000000000",
    "020000022020000000000000",
    "020020002000020000000000",
    "022000002000000200000000",
    "020000020000000000020200",
    "020020000000000000220000",
    "022000000000000000022000",
)

# extremal Type II codes [I_12 | M] keyed by the label of their residue code
APPENDIX_BLOCKS = {
    "d12^2": (
        "311222000022", "112302000002", "310010020022",
        "130221220020", "330202300020", "121311130200",
        "323111323220", "103111322100", "101133102210",
        "101331322003", "132202213331", "213131331333",
    ),
    "d10e7^2": (
        "333220002022", "132120002220", "132012002022",
        "332023220200", "002220333202", "213113033002",
        "213113101200", "233113312000", "220002220131",
        "121311022231", "321111002301", "123133202312",
    ),
    "d8^3": (
        "131000222202", "132122020002", "110232020022",
        "220001310020", "202001321022", "013310313220",
        "231133213000", "121331120100", "101131102032",
        "301111300221", "130221300133", "231330002113",
    ),
    "d6^4": (
        "311222200002", "130102222200", "020213122002",
        "220013010200", "033301131202", "213321132320",
        "312230333300", "121311003120", "121130132010",
        "303110112021", "112203132233", "031131002233",
    ),
    "d4^6": (
        "311002220220", "200333022220", "220022311222",
        "011031123102", "121330332122", "332121211120",
        "301123121212", "031110033232", "312231130030",
        "101231031201", "310310303221", "033123130021",
    ),
    "e8^3": (
        "213120000200", "103102202202", "132100002020",
        "131022002202", "222001310220", "002012130200",
        "220011032000", "022211320222", "202002022131",
        "000020203233", "222200023303", "022202201310",
    ),
    "d16e8": (
        "211302200000", "103102022022", "332320022222",
        "333020220220", "022001331331", "200230113111",
        "220013033113", "220231321111", "002231110131",
        "022013313031", "220231133321", "002233113310",
    ),
}

# vectors spanning the realizable minimum-weight-8 codes
REALIZABLE_VECTORS = {
    "v7": "100001110011001101100110",
    "v81": "010000010000101000110011",
    "v82": "100001110010110100110011",
    "v83": "100001110010110100000000",
    "v841": "000011000001110101000100",
    "v842": "000011110000110000110000",
    "v91": "010000010000111100101000",
    "v92": "100001000010001001011001",
    "v931": "000010010010000100011011",
    "v932": "000011000000111101111011",
    "v94": "010000100000001101110010",
    "v95": "100001110010110100110011",
    "v96": "100001110000000000110011",
    "v101": "100001110000000000110011",
    "v102": "100000100010000100010111",
    "v103": "100000010010100001100101",
    "v11": "100000100000100101000111",
    "v12": "100000010000010100011101",
}

# vectors spanning the maximal non-realizable codes
NONREALIZABLE_VECTORS = {
    "w7": "000001100011000000011011",
    "w81": "000000110001111001111011",
    "w82": "000000110111010001110111",
    "w91": "000010010011010101000100",
    "w92": "000010010001000101010011",
    "w93": "000000000101000000000101",
    "w94": "000000000100001000001001",
    "w95": "000000000001010000010100",
    "w96": "000000000011100101110010",
    "w97": "000000000111100000101101",
    "w98": "000000000101000001010000",
    "w9": "000010010100101100100100",
    "w101": "000000000101011001100101",
    "w102": "000000000100101100000000",
}

# a few codes are built from their parent with two vectors
TABLE2 = (
    ("C6", None, ()),
    ("C7_1", None, ()),
    ("C7_2", None, ()),
    ("C7_3", "C6", ("v7",)),
    ("C8_1", "C7_3", ("v81",)),
    ("C8_2", "C7_3", ("v82",)),
    ("C8_3", "C7_3", ("v83",)),
    ("C8_4", "C6", ("v841", "v842")),
    ("C9_1", "C8_3", ("v91",)),
    ("C9_2", "C8_4", ("v92",)),
    ("C9_3", "C7_3", ("v931", "v932")),
    ("C9_4", "C8_3", ("v94",)),
    ("C9_5", "C8_1", ("v95",)),
    ("C9_6", "C8_3", ("v96",)),
    ("C10_1", "C9_4", ("v101",)),
    ("C10_2", "C9_4", ("v102",)),
    ("C10_3", "C9_4", ("v103",)),
    ("C11", "C10_1", ("v11",)),
    ("C12", "C11", ("v12",)),
)

# label, vectors added to C6, quotient dimension m, number of lift classes N
TABLE4 = (
    ("N9_1", ("w7", "w81", "w91"), 14, 159),
    ("N9_2", ("w7", "w81", "w92"), 14, 372),
    ("N9_3", ("w7", "w81", "w93"), 14, 170),
    ("N9_4", ("w7", "w82", "w94"), 14, 388),
    ("N9_5", ("w7", "w82", "w95"), 14, 228),
    ("N9_6", ("w7", "w82", "w96"), 14, 254),
    ("N9_7", ("w7", "w82", "w97"), 14, 287),
    ("N9_8", ("w7", "w82", "w98"), 14, 488),
    ("N10_1", ("w7", "w81", "w9", "w101"), 23, 299),
    ("N10_2", ("w7", "w81", "w9", "w102"), 23, 378),
)

# numbers of inequivalent codes: k -> (total, R_k8, R_k4, N_k8, N_k4)
TABLE1 = {
    12: (9, 1, 8, 0, 0),
    11: (21, 1, 20, 0, 0),
    10: (49, 3, 44, 0, 2),
    9: (60, 6, 40, 4, 10),
    8: (32, 4, 16, 8, 4),
    7: (7, 3, 2, 2, 0),
    6: (1, 1, 0, 0, 0),
}


def _digest(parts) -> str:
    return hashlib.sha256("\n".join(parts).encode()).hexdigest()


def registry_digests() -> dict[str, str]:
    return {
        "fig1": _digest(FIG1_ROWS),
        "appendix": _digest(f"{k}:{r}" for k, rows in APPENDIX_BLOCKS.items() for r in rows),
        "realizable_vectors": _digest(f"{k}:{v}" for k, v in REALIZABLE_VECTORS.items()),
        "nonrealizable_vectors": _digest(f"{k}:{v}" for k, v in NONREALIZABLE_VECTORS.items()),
    }


PINNED_DIGESTS = {
    "fig1": "0feae66e97c7787cc4d3edd958a76bed50cd8f6e0fa2d8ffd08585725874a562",
    "appendix": "540a0b7e662296d59630e39febe171660a9ad8c1e591c8f4e77b85ad1f67ce06",
    "realizable_vectors": "a76b96663677b32c4d26cda0a8e91be7ad0717bcfa7f0b32b194a7da4736bb0f",
    "nonrealizable_vectors": "83dfeee1c9b853b9befbc4a2b6914cefc535086bdeec7cf221efba5c01a6bf77",
}


def vector(name: str) -> int:
    """A named table vector as a bit mask."""
    from .gf2core import vec
    table = REALIZABLE_VECTORS if name.startswith("v") else NONREALIZABLE_VECTORS
    return vec(table[name])


def fig1_code():
    from .z4core import z4_from_rows
    return z4_from_rows(24, FIG1_ROWS)


def appendix_code(label: str):
    from .z4core import z4_from_rows
    rows = ["0" * i + "1" + "0" * (11 - i) + m for i, m in enumerate(APPENDIX_BLOCKS[label])]
    return z4_from_rows(24, rows)


def c6():
    return fig1_code().residue


def table2_code(label: str):
    """Codes of the realizable minimum-weight-8 list, built from their parents."""
    from .gf2core import named_code, span_with
    if label == "C6":
        return c6()
    if label in ("C7_1", "C7_2"):
        return named_code(label)
    for name, parent, vectors in TABLE2:
        if name == label:
            code = table2_code(parent)
            for v in vectors:
                code = span_with(code, vector(v))
            return code
    raise KeyError(label)


def table4_code(label: str):
    from .gf2core import span_with
    for name, vectors, _, _ in TABLE4:
        if name == label:
            code = c6()
            for v in vectors:
                code = span_with(code, vector(v))
            return code
    raise KeyError(label)
