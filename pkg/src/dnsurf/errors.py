"""Exception hierarchy. Every error carries a stable ``code`` used by the CLI."""

from __future__ import annotations


class DnsError(ValueError):
    code = "E_GENERIC"


class NonInvolutiveGluing(DnsError):
    code = "E_NON_INVOLUTIVE"


class SelfGluedFace(DnsError):
    code = "E_SELF_GLUED"


class NotASimplicialPoset(DnsError):
    code = "E_NOT_POSET"


class UnknownVertex(DnsError):
    code = "E_UNKNOWN_VERTEX"


class NotVertexDetermined(DnsError):
    code = "E_NOT_VERTEX_DETERMINED"


class NotAnAutomorphism(DnsError):
    code = "E_NOT_AUTOMORPHISM"


class FixedFace(DnsError):
    code = "E_FIXED_FACE"


class ComplexMismatch(DnsError):
    code = "E_COMPLEX_MISMATCH"


class NotACocycle(DnsError):
    code = "E_NOT_COCYCLE"


class NotACutFunction(DnsError):
    code = "E_NOT_CUT"


class NotClosed(DnsError):
    code = "E_NOT_CLOSED"


class NotClosed3ManifoldFVector(DnsError):
    code = "E_BAD_FVECTOR"


class BudgetExceeded(DnsError):
    code = "E_BUDGET"


class NoSuchR(DnsError):
    code = "E_NO_SUCH_R"


class WrongH1Dimension(DnsError):
    code = "E_H1_DIM"


class BadParity(DnsError):
    code = "E_BAD_PARITY"


class TooSmall(DnsError):
    code = "E_TOO_SMALL"


class InvalidLensParams(DnsError):
    code = "E_LENS_PARAMS"


class FormatError(DnsError):
    code = "E_FORMAT"
