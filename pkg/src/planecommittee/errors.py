"""Domain errors with stable machine-readable codes.

Three families, matching the CLI exit codes:
  InputError      (exit 2)  the input is malformed or violates a contract
  NegativeResult  (exit 1)  well-formed input, but the declarative answer is
                            "no" (no committee, wrong consistency class, ...)
  InternalError   (exit 3)  an invariant the algorithms promise was violated
"""
from __future__ import annotations


class PlaneCommitteeError(Exception):
    code = "Error"

    def __init__(self, message: str = "", **data):
        super().__init__(message or self.code)
        self.data = data


class InputError(PlaneCommitteeError):
    code = "InputError"


class NegativeResult(PlaneCommitteeError):
    code = "NegativeResult"


class InternalError(PlaneCommitteeError):
    code = "InternalError"


# --- input family -----------------------------------------------------------

class ParseError(InputError):
    code = "ParseError"


class EmptyInputError(InputError):
    code = "EmptyInput"


class ZeroNormalError(InputError):
    code = "ZeroNormal"


class DuplicateInequalityError(InputError):
    code = "DuplicateInequality"


class ZeroPointError(InputError):
    code = "ZeroPoint"


class OriginOnBoundaryError(InputError):
    code = "OriginOnBoundary"


class OriginInClosureError(InputError):
    code = "OriginInClosure"


class MemberEqualsOriginError(InputError):
    code = "MemberEqualsOrigin"


class EmptyCommitteeError(InputError):
    code = "EmptyCommittee"


class WrongCardinalityError(InputError):
    code = "WrongCardinality"


class InconsistentSeedError(InputError):
    code = "InconsistentSeed"


# --- negative results -------------------------------------------------------

class InconsistentError(NegativeResult):
    code = "Inconsistent"


class ConsistentSystemError(NegativeResult):
    code = "ConsistentSystem"


class PairwiseInconsistentError(NegativeResult):
    code = "PairwiseInconsistent"


class RankDeficientError(NegativeResult):
    code = "RankDeficient"


class RankOneError(NegativeResult):
    code = "RankOne"


class ParallelBordersError(NegativeResult):
    code = "ParallelBorders"


class NotGeneralPositionError(NegativeResult):
    code = "NotGeneralPosition"


class NotAPolygonError(NegativeResult):
    code = "NotAPolygon"


class OriginNotInteriorError(NegativeResult):
    code = "OriginNotInterior"


class NoCommitteeDetectedError(NegativeResult):
    code = "NoCommitteeDetected"


class GenerationTimeoutError(NegativeResult):
    code = "GenerationTimeout"
