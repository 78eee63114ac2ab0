"""Well-orders, finite closures and almost-agreeing omega-orders on ordinals below w^3."""

from .errors import (
    CapExceededError,
    CertificateViolation,
    DomainError,
    GuardExceededError,
    IterationCeilingError,
    NotALimitError,
    OrdTowerError,
    OrdinalSyntaxError,
)
from .family import (
    Entailment,
    FamilyWindow,
    cofinal_extend,
    entails,
    enumerate_family,
    is_closed,
    ladder,
)
from .omega import (
    AAOrders,
    CanonicalOmega,
    ExceptionCert,
    ListOrder,
    OmegaOrder,
    VerifyResult,
    adjust_one,
)
from .ordinals import (
    ONE,
    W,
    ZERO,
    Ordinal,
    add,
    compare,
    difference,
    enum_below,
    enum_prefix,
    fund_seq,
    ordinal,
    oset,
    parse_ordinal,
)
from .rng import Lcg
from .tower import Tower
from .vc import (
    RmkResult,
    RmkValue,
    SetSystemWindow,
    certificate_json,
    cond4_check,
    example_R,
    hunt_shattered,
    is_shattered,
    rmk_eval,
    sauer_check,
    shatter_certificate,
    trace,
    vc_dim,
)
from .verify import CheckResult, VerifyConfig, run_suites

__all__ = [
    "AAOrders", "CanonicalOmega", "CapExceededError", "CertificateViolation",
    "CheckResult", "DomainError", "Entailment", "ExceptionCert", "FamilyWindow",
    "GuardExceededError", "IterationCeilingError", "Lcg", "ListOrder",
    "NotALimitError", "ONE", "OmegaOrder", "OrdTowerError", "Ordinal",
    "OrdinalSyntaxError", "RmkResult", "RmkValue", "SetSystemWindow", "Tower",
    "VerifyConfig", "VerifyResult", "W", "ZERO", "add", "adjust_one",
    "certificate_json", "cofinal_extend", "compare", "cond4_check",
    "difference", "entails",
    "enum_below", "enum_prefix", "enumerate_family", "example_R", "fund_seq",
    "hunt_shattered", "is_closed", "is_shattered", "ladder", "ordinal", "oset",
    "parse_ordinal", "rmk_eval", "run_suites", "sauer_check",
    "shatter_certificate", "trace", "vc_dim",
]
