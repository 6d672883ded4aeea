"""Identity corpus: registry, verification driver, and entry modules."""

from .registry import (
    CATEGORIES,
    ENGINE_VERSION,
    EvalContext,
    Identity,
    OracleRef,
    Report,
    Source,
    VerificationOutcome,
    builtin_manifest,
    check_functional_equation,
    manifest_selftest,
    negative_controls,
    verify,
    verify_all,
)

__all__ = [
    "CATEGORIES",
    "ENGINE_VERSION",
    "EvalContext",
    "Identity",
    "OracleRef",
    "Report",
    "Source",
    "VerificationOutcome",
    "builtin_manifest",
    "check_functional_equation",
    "manifest_selftest",
    "negative_controls",
    "verify",
    "verify_all",
]
