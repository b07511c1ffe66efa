"""Engine errors.  Each carries a stable machine-readable ``code``."""


class EngineError(Exception):
    code = "engine-error"

    def __init__(self, detail: str = ""):
        self.detail = detail
        super().__init__("%s: %s" % (self.code, detail) if detail else self.code)


def _make(name: str, code: str) -> type:
    return type(name, (EngineError,), {"code": code})


NotSemisimple = _make("NotSemisimple", "not-semisimple")
NotSplit = _make("NotSplit", "not-split")
NoNormalizedIntegral = _make("NoNormalizedIntegral", "no-normalized-integral")
DegreeOutOfRange = _make("DegreeOutOfRange", "degree-out-of-range")
TruncationUnsafe = _make("TruncationUnsafe", "truncation-unsafe")
NotStabilized = _make("NotStabilized", "not-stabilized")
SizeBudgetExceeded = _make("SizeBudgetExceeded", "size-budget-exceeded")
TwistNotAutomorphism = _make("TwistNotAutomorphism", "twist-not-automorphism")
NotIdempotent = _make("NotIdempotent", "not-idempotent")
NotInvariant = _make("NotInvariant", "not-invariant")
PNotCentralInvariant = _make("PNotCentralInvariant", "p-not-central-invariant")
WitnessEquationsFail = _make("WitnessEquationsFail", "witness-equations-fail")
NotACocycle = _make("NotACocycle", "not-a-cocycle")
HNotSemisimple = _make("HNotSemisimple", "H-not-semisimple")
NoModularGroupLike = _make("NoModularGroupLike", "no-modular-group-like")
VNotCorepresentation = _make("VNotCorepresentation", "V-not-corepresentation")
NoHaarFunctional = _make("NoHaarFunctional", "no-haar-functional")
ClassNotFound = _make("ClassNotFound", "class-not-found")
DecompositionFailed = _make("DecompositionFailed", "decomposition-failed")
UnknownFixture = _make("UnknownFixture", "unknown-fixture")
SchemaError = _make("SchemaError", "schema-error")
NotWellDefined = _make("NotWellDefined", "not-well-defined")
