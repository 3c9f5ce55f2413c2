"""Exact computation and generation certificates for the second Houghton
group H_2 and the subgroups G_k generated by Alt(Z) together with t^k."""

from .perm import FinPerm, PermError
from .elem import (
    ElemError,
    G,
    Group,
    GroupElement,
    H2,
    finitary,
    identity,
    in_class_tk,
    make_s,
    member,
    parse_element,
    t,
)
from .certs import (
    CertError,
    NegativeCertificate,
    PositiveCertificate,
    cert_from_json,
    cert_to_json,
    verify,
    verify_negative,
    verify_positive,
)

__all__ = [
    "FinPerm",
    "PermError",
    "ElemError",
    "G",
    "Group",
    "GroupElement",
    "H2",
    "finitary",
    "identity",
    "in_class_tk",
    "make_s",
    "member",
    "parse_element",
    "t",
    "CertError",
    "NegativeCertificate",
    "PositiveCertificate",
    "cert_from_json",
    "cert_to_json",
    "verify",
    "verify_negative",
    "verify_positive",
]
