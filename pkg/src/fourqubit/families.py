"""Constructors for the nine SLOCC families and a catalog of named states."""

import numpy as np

from .errors import InvalidInputError
from .states import PureState4, basis_state

FAMILIES = (
    "G_abcd",
    "L_abc2",
    "L_a2b2",
    "L_ab3",
    "L_a4",
    "L_a2_0_31",
    "L_0_53",
    "L_0_71",
    "L_0_31_0_31",
)

FAMILY_ARITY = {
    "G_abcd": 4,
    "L_abc2": 3,
    "L_a2b2": 2,
    "L_ab3": 2,
    "L_a4": 1,
    "L_a2_0_31": 1,
    "L_0_53": 0,
    "L_0_71": 0,
    "L_0_31_0_31": 0,
}


def _b(label):
    return basis_state(label).amplitudes


def construct(family, params=(), normalize=False):
    """Build a family representative with the given parameters.

    Amplitudes follow the printed normal forms exactly; they are NOT unit
    norm unless ``normalize`` is set.  Parameter count must match the family
    arity (4, 3, 2, 2, 1, 1, 0, 0, 0).
    """
    if family not in FAMILY_ARITY:
        raise InvalidInputError("unknown family %r" % family)
    params = tuple(complex(p) for p in params)
    if len(params) != FAMILY_ARITY[family]:
        raise InvalidInputError(
            "%s takes %d parameters, got %d"
            % (family, FAMILY_ARITY[family], len(params))
        )
    if any(not np.isfinite(p) for p in params):
        raise InvalidInputError("non-finite parameter")

    if family == "G_abcd":
        a, b, c, d = params
        v = (a + d) / 2.0 * (_b("0000") + _b("1111"))
        v += (a - d) / 2.0 * (_b("0011") + _b("1100"))
        v += (b + c) / 2.0 * (_b("0101") + _b("1010"))
        v += (b - c) / 2.0 * (_b("0110") + _b("1001"))
    elif family == "L_abc2":
        a, b, c = params
        v = (a + b) / 2.0 * (_b("0000") + _b("1111"))
        v += (a - b) / 2.0 * (_b("0011") + _b("1100"))
        v += c * (_b("0101") + _b("1010"))
        v += _b("0110")
    elif family == "L_a2b2":
        a, b = params
        v = a * (_b("0000") + _b("1111"))
        v += b * (_b("0101") + _b("1010"))
        v += _b("0110") + _b("0011")
    elif family == "L_ab3":
        a, b = params
        v = a * (_b("0000") + _b("1111"))
        v += (a + b) / 2.0 * (_b("0101") + _b("1010"))
        v += (a - b) / 2.0 * (_b("0110") + _b("1001"))
        v += (1j / np.sqrt(2.0)) * (
            _b("0001") + _b("0010") + _b("0111") + _b("1011")
        )
    elif family == "L_a4":
        (a,) = params
        v = a * (_b("0000") + _b("0101") + _b("1010") + _b("1111"))
        v += 1j * _b("0001") + _b("0110") - 1j * _b("1011")
    elif family == "L_a2_0_31":
        (a,) = params
        v = a * (_b("0000") + _b("1111"))
        v += _b("0011") + _b("0101") + _b("0110")
    elif family == "L_0_53":
        v = _b("0000") + _b("0101") + _b("1000") + _b("1110")
    elif family == "L_0_71":
        v = _b("0000") + _b("1011") + _b("1101") + _b("1110")
    else:  # L_0_31_0_31
        v = _b("0000") + _b("0111")

    if np.vdot(v, v).real <= 0.0:
        raise InvalidInputError(
            "parameters %r give the zero vector for %s" % (params, family)
        )
    state = PureState4(v)
    return state.normalized() if normalize else state


def _ghz4():
    return PureState4((_b("0000") + _b("1111")) / np.sqrt(2.0))


def _ghz3_x0():
    return PureState4((_b("0000") + _b("1110")) / np.sqrt(2.0))


def _w3_x0():
    return PureState4((_b("0010") + _b("0100") + _b("1000")) / np.sqrt(3.0))


def _w4():
    return PureState4(
        (_b("0001") + _b("0010") + _b("0100") + _b("1000")) / 2.0
    )


def _la4_companion():
    return PureState4((_b("0001") + _b("0110") + _b("1000")) / np.sqrt(3.0))


def _phi4_cluster():
    return PureState4((_b("0000") + _b("0011") + _b("1100") - _b("1111")) / 2.0)


def _two_epr():
    return PureState4(
        (_b("0000") + _b("0011") + _b("1100") + _b("1111")) / 2.0
    )


def _epr_12():
    return PureState4((_b("0000") + _b("1100")) / np.sqrt(2.0))


# name -> (builder, expected family label, human description)
NAMED_STATES = {
    "product_0000": (
        lambda: basis_state("0000"),
        "L_abc2(0,0,0)",
        "completely separable |0000>",
    ),
    "epr_12": (
        _epr_12,
        "L_a2b2(0,0)",
        "EPR pair on qubits 1,2 with qubits 3,4 in |00>",
    ),
    "two_epr": (
        _two_epr,
        "G_abcd(1,0,0,0)",
        "EPR pairs on qubits 1,2 and 3,4",
    ),
    "ghz3": (
        _ghz3_x0,
        "L_0_31_0_31",
        "3-qubit GHZ state with qubit 4 in |0>",
    ),
    "w3": (
        _w3_x0,
        "L_a2_0_31(0)",
        "3-qubit W state with qubit 4 in |0>",
    ),
    "ghz4": (_ghz4, "G_abcd", "4-qubit GHZ state"),
    "phi4_cluster": (_phi4_cluster, "G_abcd", "4-qubit cluster state"),
    "w4": (_w4, "L_ab3(0,0)", "4-qubit W state"),
    "la4_companion": (
        _la4_companion,
        "L_a4(0)",
        "(|0001> + |0110> + |1000>)/sqrt(3)",
    ),
}


def named_state(name):
    """Catalog state by name (see NAMED_STATES for the list)."""
    try:
        builder = NAMED_STATES[name][0]
    except KeyError:
        raise InvalidInputError("unknown state name %r" % name) from None
    return builder()
