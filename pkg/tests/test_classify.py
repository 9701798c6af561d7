import pytest

from twoclosure.catalog import realize_name
from twoclosure.classify import (
    REASON_CYCLIC,
    REASON_QUATERNION_TIMES_ODD_CYCLIC,
    STATUS_NOT_NILPOTENT,
    STATUS_NOT_TWO_CLOSED,
    center_cyclic_test,
    certify_coprime_product,
    classify_nilpotent,
    is_generalized_quaternion,
    not_two_closed_witness,
)
from twoclosure.errors import PreconditionError
from twoclosure.group import build_group, sylow_decomposition
from twoclosure.orbital import two_closure
from twoclosure.perm import parse_cycles
from twoclosure.witnesses import check_certificate


def test_generalized_quaternion_predicate():
    assert is_generalized_quaternion(realize_name("Q8"))
    assert is_generalized_quaternion(realize_name("Q16"))
    assert not is_generalized_quaternion(realize_name("C8"))
    assert not is_generalized_quaternion(realize_name("D8"))
    with pytest.raises(PreconditionError):
        is_generalized_quaternion(realize_name("C6"))


def test_classification_examples():
    assert classify_nilpotent(realize_name("C12")).reason == REASON_CYCLIC
    assert classify_nilpotent(realize_name("Q8xC3")).reason == REASON_QUATERNION_TIMES_ODD_CYCLIC
    verdict = classify_nilpotent(realize_name("Q8xC2"))
    assert verdict.status == STATUS_NOT_TWO_CLOSED
    assert verdict.certificate.construction == "center"
    assert verdict.certificate.group.degree == 24
    assert classify_nilpotent(realize_name("D8")).status == STATUS_NOT_TWO_CLOSED
    s3 = build_group(3, (parse_cycles("(1,2,3)", 3), parse_cycles("(1,2)", 3)))
    assert classify_nilpotent(s3).status == STATUS_NOT_NILPOTENT


def test_every_negative_verdict_carries_a_valid_certificate():
    for name in ("C2xC2", "C2xC4", "D8", "E27", "Q8xC3xC3"):
        verdict = classify_nilpotent(realize_name(name))
        assert verdict.status == STATUS_NOT_TWO_CLOSED
        assert verdict.certificate is not None
        assert check_certificate(verdict.certificate) == []


def test_witness_router_rejects_closed_groups():
    with pytest.raises(PreconditionError, match="2-closed"):
        not_two_closed_witness(realize_name("Q8"))
    with pytest.raises(PreconditionError, match="2-closed"):
        not_two_closed_witness(realize_name("C12"))


def test_witness_router_construction_choices():
    assert not_two_closed_witness(realize_name("C2xC2")).construction == "abelian-p"
    assert not_two_closed_witness(realize_name("E27")).construction == "odd-p"
    assert not_two_closed_witness(realize_name("D8")).construction == "two-group"
    assert not_two_closed_witness(realize_name("D16")).construction == "semidirect"
    assert not_two_closed_witness(realize_name("Q8xC2")).construction == "center"
    # noncyclic odd part routes through the abelian Sylow subgroup
    cert = not_two_closed_witness(realize_name("Q8xC3xC3"))
    assert cert.construction == "abelian-p" and cert.group.degree == 9


def test_center_cyclic_test_examples():
    test = center_cyclic_test(realize_name("Q8xC2"))
    assert not test.passes and test.certificate.group.degree == 24
    test = center_cyclic_test(realize_name("C2xQ8xC3"))
    assert not test.passes and test.certificate.group.degree == 24
    assert check_certificate(test.certificate) == []
    assert center_cyclic_test(realize_name("C30")).passes
    assert center_cyclic_test(realize_name("D8")).passes  # cyclic center, inconclusive


def test_coprime_product_certification():
    q8c3 = realize_name("Q8xC3")
    decomposition = sylow_decomposition(q8c3)
    result = certify_coprime_product(q8c3, decomposition.sylows[3], decomposition.sylows[2])
    assert result.certified
    assert result.detail == {
        "abelian_factor_closed": True,
        "quotient_factor_closed": True,
        "block_count": 9,
    }
    assert two_closure(q8c3).same_group(q8c3)


def test_coprime_certification_rejects_bad_hypotheses():
    q8c3 = realize_name("Q8xC3")
    decomposition = sylow_decomposition(q8c3)
    with pytest.raises(PreconditionError, match="abelian"):
        certify_coprime_product(q8c3, decomposition.sylows[2], decomposition.sylows[3])
    v4 = realize_name("C2xC2")
    part = sylow_decomposition(v4).sylows[2]
    with pytest.raises(PreconditionError, match="coprime"):
        certify_coprime_product(v4, part, part)
