"""Exception hierarchy.

Every error carries a short machine-readable ``code``.  Errors deriving from
:class:`ValidationError` signal malformed input (CLI exit status 1); errors
deriving from :class:`CheckFailure` signal that a computed identity or
numerical estimate did not hold (CLI exit status 2).
"""


class KDiffError(Exception):
    code = "Error"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_json(self):
        body = {"error": self.code, "message": str(self)}
        if self.details:
            body["details"] = self.details
        return body


class ValidationError(KDiffError):
    code = "ValidationError"


class CheckFailure(KDiffError):
    code = "CheckFailure"


def _make(name, base):
    return type(name, (base,), {"code": name, "__doc__": f"``{name}`` error."})


# stratum layer
SumMismatch = _make("SumMismatch", ValidationError)
EmptySignature = _make("EmptySignature", ValidationError)
NonIntegralGenus = _make("NonIntegralGenus", ValidationError)
NotPrimitive = _make("NotPrimitive", ValidationError)

# level graphs
EdgeBalance = _make("EdgeBalance", ValidationError)
LegOrder = _make("LegOrder", ValidationError)
VertexSum = _make("VertexSum", ValidationError)
LevelOrientation = _make("LevelOrientation", ValidationError)
Stability = _make("Stability", ValidationError)
GenusMismatch = _make("GenusMismatch", ValidationError)
Disconnected = _make("Disconnected", ValidationError)
LevelNormalization = _make("LevelNormalization", ValidationError)
InvalidPassage = _make("InvalidPassage", ValidationError)
NotHorizontal = _make("NotHorizontal", ValidationError)
BoundsTooLarge = _make("BoundsTooLarge", ValidationError)

# covers / torus / residues
DeckOrder = _make("DeckOrder", ValidationError)
EnhancementLift = _make("EnhancementLift", ValidationError)
QuotientMismatch = _make("QuotientMismatch", ValidationError)
DegreeSum = _make("DegreeSum", ValidationError)
Inconsistent = _make("Inconsistent", ValidationError)
DimensionMismatch = _make("DimensionMismatch", ValidationError)
InvalidRole = _make("InvalidRole", ValidationError)
IdentityViolation = _make("IdentityViolation", CheckFailure)
ShapeMismatch = _make("ShapeMismatch", CheckFailure)
ExponentMismatch = _make("ExponentMismatch", CheckFailure)

# metric
DegenerateResidue = _make("DegenerateResidue", ValidationError)
DomainError = _make("DomainError", ValidationError)
BoundaryPoint = _make("BoundaryPoint", ValidationError)
NonConvergent = _make("NonConvergent", CheckFailure)

# io
UnsupportedFormat = _make("UnsupportedFormat", ValidationError)
