"""Explicit bases of Harm_i(R^m)^G for the exceptional groups, and the reference u-tables.

Reference values are stored as strings in the ``exactnum.parse`` syntax, with an
optional ``(...)/den`` wrapper.  Corner vectors of E7 and E8 used here may be the
negatives of other published ones; every tabulated degree is even except E6 5 and 9,
whose corners agree, so the tables are unaffected.
"""
from __future__ import annotations

from functools import lru_cache

from ..exactnum import FieldElement, parse
from .invariants import InvariantSpec, ZonalGroupSum, sym, zonal


def field(text: str) -> FieldElement:
    text = text.replace(" ", "")
    if text.startswith("(") and ")/" in text:
        body, den = text[1:].split(")/")
        return parse(body) / int(den)
    if text.startswith("-(") and ")/" in text:
        return -field(text[1:])
    return parse(text)


def _group_sum(base) -> ZonalGroupSum:
    return ZonalGroupSum(base)


def _f4() -> list[InvariantSpec]:
    f6 = sym(4, (1, (6,)), (-5, (4, 2)), (30, (2, 2, 2)))
    f8 = sym(4, (1, (8,)), ("-28/3", (6, 2)), ("98/3", (4, 4)), (-28, (4, 2, 2)),
             (504, (2, 2, 2, 2)))
    f12_1 = sym(4, (1, (12,)), (-22, (10, 2)), (79, (8, 4)), (258, (8, 2, 2)),
                (-116, (6, 6)), (-236, (6, 4, 2)), (-4392, (6, 2, 2, 2)),
                (570, (4, 4, 4)), (3660, (4, 4, 2, 2)))
    f12_2 = sym(4, (1, (12,)), (-22, (10, 2)), ("133/2", (8, 4)), ("591/2", (8, 2, 2)),
                ("-157/2", (6, 6)), ("-1369/4", (6, 4, 2)), (-4167, (6, 2, 2, 2)),
                ("2265/2", (4, 4, 4)), ("6945/2", (4, 4, 2, 2)))
    return [InvariantSpec("F4", "6", f6), InvariantSpec("F4", "8", f8),
            InvariantSpec("F4", "12,1", f12_1), InvariantSpec("F4", "12,2", f12_2)]


def _h3() -> list[InvariantSpec]:
    f6 = sym(3, (2, (6,)), (21, (5, 1)), (-15, (4, 2)), (field("21*r10"), (4, 1, 1)),
             (field("-70 + 7*r10"), (3, 3)), (field("-21*r10"), (3, 2, 1)),
             (180, (2, 2, 2)))
    h10 = zonal(3, (256, 10, 0), (-5760, 8, 1), (20160, 6, 2), (-16800, 4, 3),
                (3150, 2, 4), (-63, 0, 5))
    h12 = zonal(3, (1024, 12, 0), (-33792, 10, 1), (190080, 8, 2), (-295680, 6, 3),
                (138600, 4, 4), (-16632, 2, 5), (231, 0, 6))
    return [InvariantSpec("H3", "6", f6), InvariantSpec("H3", "10", _group_sum(h10)),
            InvariantSpec("H3", "12", _group_sum(h12))]


def _h4() -> list[InvariantSpec]:
    h12 = zonal(4, (13, 12, 0), (-286, 10, 1), (1287, 8, 2), (-1716, 6, 3), (715, 4, 4),
                (-78, 2, 5), (1, 0, 6))
    h20 = zonal(4, (21, 20, 0), (-1330, 18, 1), (20349, 16, 2), (-116280, 14, 3),
                (293930, 12, 4), (-352716, 10, 5), (203490, 8, 6), (-54264, 6, 7),
                (5985, 4, 8), (-210, 2, 9), (1, 0, 10))
    h24 = zonal(4, (1, 24, 0), (-92, 22, 1), ("10626/5", 20, 2), (-19228, 18, 3),
                (81719, 16, 4), (-178296, 14, 5), (208012, 12, 6), ("-653752/5", 10, 7),
                (43263, 8, 8), (-7084, 6, 9), (506, 4, 10), (-12, 2, 11), ("1/25", 0, 12))
    return [InvariantSpec("H4", str(h.degree), _group_sum(h)) for h in (h12, h20, h24)]


def _e6() -> list[InvariantSpec]:
    f5 = sym(6, (1, (5,)), (1, (4, 1)), (-2, (3, 2)), (1, (3, 1, 1)), (-3, (2, 1, 1, 1)),
             (24, (1, 1, 1, 1, 1)))
    f6 = sym(6, (1, (6,)), ("3/2", (5, 1)), (-3, (4, 2)), ("15/14", (4, 1, 1)),
             ("5/7", (3, 3)), ("-30/7", (3, 2, 1)), ("30/7", (3, 1, 1, 1)), (9, (2, 2, 2)),
             ("45/7", (2, 2, 1, 1)), ("-180/7", (2, 1, 1, 1, 1)), ("180/7", (1, 1, 1, 1, 1, 1)))
    h8 = zonal(6, (1, 8, 0), ("-28/5", 6, 1), (6, 4, 2), ("-4/3", 2, 3), ("1/33", 0, 4))
    h9 = sym(6, (1, (9,)), ("-36/5", (7, 2)), ("126/5", (5, 4)), (-63, (4, 3, 2)),
             (63, (4, 2, 2, 1)), (252, (3, 2, 2, 2)), (-945, (2, 2, 2, 2, 1)))
    h10 = zonal(6, (1, 10, 0), (-9, 8, 1), (18, 6, 2), (-10, 4, 3), ("15/11", 2, 4),
                ("-3/143", 0, 5))
    return [InvariantSpec("E6", "5", f5), InvariantSpec("E6", "6", f6),
            InvariantSpec("E6", "8", _group_sum(h8)), InvariantSpec("E6", "9", _group_sum(h9)),
            InvariantSpec("E6", "10", _group_sum(h10))]


def _e7() -> list[InvariantSpec]:
    h6 = zonal(7, (32, 6, 0), (-80, 4, 1), (30, 2, 2), (-1, 0, 3))
    h8 = zonal(7, (384, 8, 0), (-1792, 6, 1), (1680, 4, 2), (-336, 2, 3), (7, 0, 4))
    h10 = zonal(7, (256, 10, 0), (-1920, 8, 1), (3360, 6, 2), (-1680, 4, 3), (210, 2, 4),
                (-3, 0, 5))
    h12_1 = zonal(7, (4096, 12, 0), (-45056, 10, 1), (126720, 8, 2), (-118272, 6, 3),
                  (36960, 4, 4), (-3168, 2, 5), (33, 0, 6))
    h12_2 = zonal(7, (2048, 11, 1, 0), (-14080, 9, 1, 1), (25344, 7, 1, 2),
                  (-14784, 5, 1, 3), (2640, 3, 1, 4), (-99, 1, 1, 5))
    return [InvariantSpec("E7", "6", _group_sum(h6)), InvariantSpec("E7", "8", _group_sum(h8)),
            InvariantSpec("E7", "10", _group_sum(h10)),
            InvariantSpec("E7", "12,1", _group_sum(h12_1)),
            InvariantSpec("E7", "12,2", _group_sum(h12_2))]


def _e8() -> list[InvariantSpec]:
    h8 = zonal(8, (429, 8, 0), (-1716, 6, 1), (1430, 4, 2), (-260, 2, 3), (5, 0, 4))
    h12 = zonal(8, (1547, 12, 0), (-14586, 10, 1), (36465, 8, 2), (-30940, 6, 3),
                (8925, 4, 4), (-714, 2, 5), (7, 0, 6))
    h14 = zonal(8, (969, 14, 0), (-12597, 12, 1), (46189, 10, 2), (-62985, 8, 3),
                (33915, 6, 4), (-6783, 4, 5), (399, 2, 6), (-3, 0, 7))
    h16 = zonal(8, (6783, 16, 0), (-116280, 14, 1), (587860, 12, 2), (-1175720, 10, 3),
                (1017450, 8, 4), (-379848, 6, 5), (55860, 4, 6), (-2520, 2, 7), (15, 0, 8))
    return [InvariantSpec("E8", str(h.degree), _group_sum(h)) for h in (h8, h12, h14, h16)]


_BUILDERS = {"F4": _f4, "H3": _h3, "H4": _h4, "E6": _e6, "E7": _e7, "E8": _e8}


@lru_cache(maxsize=None)
def invariant_basis(label: str) -> tuple[InvariantSpec, ...]:
    key = label.replace("(", "").replace(")", "").upper()
    if key not in _BUILDERS:
        raise KeyError(f"no invariant basis shipped for {label!r}")
    return tuple(_BUILDERS[key]())


def basis_labels() -> tuple[str, ...]:
    return tuple(_BUILDERS)


# reference u-vectors, entry k is f(v_k') for the unit corner v_k'
_PRINTED_U = {
    "F4": {
        "6": ["-1", "-1/9", "1/9", "1"],
        "8": ["1", "-13/27", "-13/27", "1"],
        "12,1": ["0", "128/243", "-25/243", "1"],
        "12,2": ["25/128", "1751/3456", "0", "1"],
    },
    "H3": {
        "6": ["(-4+14*r10)/5", "(2-7*r10)/8", "(4-14*r10)/9"],
        "10": ["-(49637120+43124224*r10)/98415", "(9694750+8422700*r10)/19683",
               "-(1240928000+1078105600*r10)/1594323"],
        "12": ["(-6897476096+191679488*r10)/492075", "(-390677357+10856846*r10)/39366",
               "(6897476096-191679488*r10)/14348907"],
    },
    "H4": {
        "12": ["-4500", "540", "32500/27", "5625/4"],
        "20": ["6975", "-58869/25", "4035425/2187", "216225/64"],
        "24": ["-2367/16", "-4689027/50000", "416329/104976", "622521/16384"],
    },
    "E6": {
        "5": ["3/4*r3", "6/125*r30", "0", "-6/125*r30", "-3/4*r3", "0"],
        "6": ["81/56", "-81/700", "-9/28", "-81/700", "81/56", "-27/28"],
        "8": ["800", "-6784/25", "-640/9", "-6784/25", "800", "3200/3"],
        "9": ["2065*r3", "-185024/625*r30", "0", "185024/625*r30", "-2065*r3", "0"],
        "10": ["11520/13", "423936/1625", "51200/351", "423936/1625", "11520/13",
               "-10240/39"],
    },
    "E7": {
        "6": ["(-7700659200+9488793600*r2)/16807", "(-427814400+527155200*r2)/2401",
              "(-1818211200+2240409600*r2)/16807", "(-547602432+674758656*r2)/16807",
              "(2887747200-3558297600*r2)/16807", "(20535091200-25303449600*r2)/16807",
              "(-123210547200+151820697600*r2)/823543"],
        "8": ["(6579988992000-5480856576000*r2)/823543",
              "(731109888000-608984064000*r2)/823543",
              "(-3527605209600+2938348108800*r2)/823543",
              "(-3134999199744+2611323666432*r2)/823543",
              "(-1809496972800+1507235558400*r2)/823543",
              "(3509327462400-2923123507200*r2)/823543",
              "(-115807806259200+96463075737600*r2)/40353607"],
        "10": ["(-6428624451840+415928908800*r2)/5764801",
               "(357145802880-23107161600*r2)/823543",
               "(2388412556760-154529143200*r2)/5764801",
               "(-73143460429824+4732346695680*r2)/720600125",
               "(-7433097022440+480917800800*r2)/5764801",
               "(30476441845760-1971811123200*r2)/5764801",
               "(3291455719342080-212955601305600*r2)/1977326743"],
        "12,1": ["(27363005574796800+17942314142016000*r2)/1977326743",
                 "(-760132890073600-689327933184000*r2)/282475249",
                 "(-513174301527400-792264524693400*r2)/1977326743",
                 "(-14026148038967296-72141536776421376*r2)/49433168575",
                 "(3931481294451000-4960153279164600*r2)/1977326743",
                 "(-12979679661260800-37832882828083200*r2)/1977326743",
                 "(249757080640811827200+284898146732782387200*r2)/33232930569601"],
        "12,2": ["(-2419675164360000-1489162193640000*r2)/1977326743",
                 "(113867977056000+18727597152000*r2)/282475249",
                 "(156757191916575-26126480038725*r2)/1977326743",
                 "(16622260339703808-6701937797136384*r2)/49433168575",
                 "(1494452243214675-1107985853945025*r2)/1977326743",
                 "(8313279170969600-2771226582220800*r2)/1977326743",
                 "(-51686387833407897600+773622407142604800*r2)/33232930569601"],
    },
    "E8": {
        "8": ["174182400", "4926873600/49", "82059264", "62705664", "19353600",
              "-116121600", "-1045094400", "97977600"],
        "12": ["1680315840", "15655887360/49", "14950365696/125", "-2608490304/125",
               "-275607360", "-734952960", "4480842240", "148777965"],
        "14": ["1207483200", "-567924825600/16807", "-2009165312/15", "-671799744/5",
               "-253422400/3", "184307200", "-2634508800", "-293294925"],
        "16": ["1490121360", "-393199971840/2401", "3287394820358656/1265625",
               "36512571016971/62500", "1232569520/3", "2075906560", "7529034240",
               "-9749511135/16"],
    },
}

# reference certificates: combination of u-vectors and the printed positive vector
_PRINTED_CERTIFICATES = {
    "F4": ({"12,1": -1, "12,2": 2},
           ["25/64", "7567/15552", "25/243", "1"]),
    "H4": ({"20": 1, "24": -30},
           ["91305/8", "2293281/5000", "30201755/17496", "18338985/8192"]),
    "E6": ({"10": 1, "8": 1},
           ["11745/2816", "13527/220000", "387/1760", "13527/220000", "11745/2816",
            "621/352"]),
    "E7": ({"12,1": -2, "12,2": -25, "10": 1}, None),
    "E8": ({"16": 1, "14": -3, "12": 2},
           ["1228303440", "9691313402880/16807", "4098709695302656/1265625",
            "59096571112971/62500", "339192560/3", "53079040", "24394245120",
            "9089540145/16"]),
}


def printed_u(label: str) -> dict[str, list[FieldElement]]:
    key = label.upper()
    return {deg: [field(x) for x in row] for deg, row in _PRINTED_U[key].items()}


def printed_certificate(label: str):
    """(coefficients by degree label, printed vector or None)."""
    key = label.upper()
    if key not in _PRINTED_CERTIFICATES:
        return None
    coefs, vec = _PRINTED_CERTIFICATES[key]
    return dict(coefs), (None if vec is None else [field(x) for x in vec])
