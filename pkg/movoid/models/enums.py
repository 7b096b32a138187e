from enum import Enum
from fractions import Fraction


class SpaceKind(str, Enum):
    ELLIPTIC = "Q-"
    SYMPLECTIC = "W"
    HERMITIAN = "H"

    @property
    def twice_e(self) -> int:
        """Type constant e of the polar space, doubled so it stays integral."""
        return {SpaceKind.ELLIPTIC: 4, SpaceKind.SYMPLECTIC: 2, SpaceKind.HERMITIAN: 3}[self]

    @property
    def e(self) -> Fraction:
        return Fraction(self.twice_e, 2)

    @classmethod
    def parse(cls, value: str) -> "SpaceKind":
        aliases = {"Q-": cls.ELLIPTIC, "Q": cls.ELLIPTIC, "ELLIPTIC": cls.ELLIPTIC,
                   "W": cls.SYMPLECTIC, "SYMPLECTIC": cls.SYMPLECTIC,
                   "H": cls.HERMITIAN, "HERMITIAN": cls.HERMITIAN}
        try:
            return aliases[value.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown space kind '{value}'") from None


class SearchStatus(str, Enum):
    SOLUTIONS_FOUND = "SOLUTIONS_FOUND"
    EXHAUSTED_NONE = "EXHAUSTED_NONE"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


class Theorem(str, Enum):
    BKLP = "bklp"
    SMALL = "small"
    BDS_H4 = "bds-h4"
    Q7 = "q7"
    MAIN = "main"
    ASYMPTOTIC = "asymptotic"


class IdentityId(str, Enum):
    WEIGHTED = "weighted"
    LE1 = "le1"
    COUNTING = "counting"
    POINT_SUMS_A = "point-sums-a"
    POINT_SUMS_B = "point-sums-b"
    POINT_SUMS_C = "point-sums-c"
    AID1 = "aid1"
    AID2 = "aid2"
    AID2_EQ = "aid2-eq"
    EQNEW = "eqnew"
    SMALL_QUADRATIC = "small-quadratic"
