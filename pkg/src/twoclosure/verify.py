"""Property and reproduction suites.

Three suites back the CLI ``verify`` command: ``axioms`` (closure axioms on
random and catalog groups), ``lemmas`` (commutation, center, witness and
block-quotient properties), and ``classification`` (the nilpotent truth table
with its positive- and negative-side consistency checks).  Each check returns
a CheckResult; a seed only ever changes sampling order, never correctness.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .actions import disjoint_union_action, quotient_action
from .catalog import faithful_representations, realize_name, subgroup_lattice
from .classify import (
    STATUS_NOT_TWO_CLOSED,
    STATUS_TWO_CLOSED,
    certify_coprime_product,
    center_cyclic_test,
    classify_nilpotent,
)
from .group import (
    PermGroup,
    center,
    intersection_elements,
    is_cyclic,
    is_normal,
    sylow_decomposition,
)
from .orbital import (
    is_in_two_closure,
    orbital_partition,
    two_closure,
    two_equivalent,
)
from .perm import Permutation
from .witnesses import (
    abelian_p_witness,
    center_witness,
    check_certificate,
    odd_p_witness,
    semidirect_witness,
    two_group_witness,
)

TWO_CLOSED_FAMILIES = [f"C{n}" for n in range(1, 31)] + [
    "Q8",
    "Q16",
    "Q32",
    "Q8xC3",
    "Q8xC5",
    "Q16xC3",
    "Q16xC9",
]
NOT_TWO_CLOSED_FAMILIES = [
    "C2xC2",
    "C2xC4",
    "C3xC3",
    "C2xC2xC2",
    "D8",
    "D16",
    "SD16",
    "Q8xC2",
    "Q16xC2",
    "Q8xC3xC3",
    "E27",
]
COPRIME_PRODUCT_PARTS = [
    ("C2xC2", "C3"),
    ("C4", "C3"),
    ("Q8", "C3"),
    ("D8", "C3"),
    ("C2xC2", "C3xC3"),
    ("C8", "C5"),
    ("C2xC4", "C5"),
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, failures: list[str], context: str) -> CheckResult:
    if failures:
        return CheckResult(name, False, "; ".join(failures[:5]))
    return CheckResult(name, True, context)


def random_groups(seed: int, samples: int, max_degree: int) -> list[PermGroup]:
    """Deterministically sampled generator sets on 3..max_degree points."""
    rng = random.Random(seed)
    groups = []
    for _ in range(samples):
        degree = rng.randint(3, max_degree)
        count = rng.randint(1, 3)
        gens = []
        for _ in range(count):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Permutation(tuple(images)))
        groups.append(PermGroup(degree, tuple(gens)))
    return groups


def catalog_realizations(max_degree: int) -> list[tuple[str, PermGroup]]:
    out = []
    for name in TWO_CLOSED_FAMILIES + NOT_TWO_CLOSED_FAMILIES:
        group = realize_name(name)
        if group.degree <= max_degree:
            out.append((name, group))
    return out


# ---------------------------------------------------------------------------
# axioms suite

def check_closure_axioms(seed: int = 7, samples: int = 200, max_degree: int = 7) -> list[CheckResult]:
    rng = random.Random(seed ^ 0x5EED)
    population: list[tuple[str, PermGroup]] = [
        (f"random-{i}", g) for i, g in enumerate(random_groups(seed, samples, max_degree))
    ]
    population += catalog_realizations(12)

    containment, idempotence, preservation, conjugation, maximality = [], [], [], [], []
    for name, group in population:
        partition = orbital_partition(group)
        closure = two_closure(group)
        if not group.is_subgroup_of(closure):
            containment.append(f"{name}: group escapes its closure")
        if not all(is_in_two_closure(g, partition) for g in group.generators):
            containment.append(f"{name}: a generator fails definitional membership")
        if not two_closure(closure).same_group(closure):
            idempotence.append(f"{name}: closure is not idempotent")
        if orbital_partition(closure).colors != partition.colors:
            preservation.append(f"{name}: closure changed the orbital partition")
        degree = group.degree
        for _ in range(5):
            images = list(range(degree))
            rng.shuffle(images)
            x = Permutation(tuple(images))
            left = two_closure(group.conjugated_by(x))
            right = closure.conjugated_by(x)
            if not left.same_group(right):
                conjugation.append(f"{name}: conjugation equivariance failed")
                break
        if degree <= 6:
            thetas = [Permutation(p) for p in itertools.permutations(range(degree))]
        else:
            thetas = []
            for _ in range(60):
                images = list(range(degree))
                rng.shuffle(images)
                thetas.append(Permutation(tuple(images)))
        for theta in thetas:
            if closure.contains(theta) != is_in_two_closure(theta, partition):
                maximality.append(f"{name}: closure disagrees with definitional membership")
                break

    context = f"{len(population)} groups (seed {seed})"
    return [
        _result("closure-containment", containment, context),
        _result("closure-idempotence", idempotence, context),
        _result("orbital-partition-preserved", preservation, context),
        _result("conjugation-equivariance", conjugation, context),
        _result("closure-maximality", maximality, context),
    ]


# ---------------------------------------------------------------------------
# lemmas suite

def check_paired_involutions_example() -> list[CheckResult]:
    """The worked 6-point example: closure and sub-closures, exactly."""
    from .perm import parse_cycles

    failures = []
    g1 = parse_cycles("(1,2)(3,4)", 6)
    g2 = parse_cycles("(3,4)(5,6)", 6)
    group = PermGroup(6, (g1, g2))
    closure = two_closure(group)
    expected = PermGroup(
        6,
        (parse_cycles("(1,2)", 6), parse_cycles("(3,4)", 6), parse_cycles("(5,6)", 6)),
    )
    if closure.order != 8 or not closure.same_group(expected):
        failures.append(f"closure has order {closure.order}, expected the order-8 group")
    if set(closure.elements()) != set(expected.elements()):
        failures.append("closure element set differs from <(1,2),(3,4),(5,6)>")
    for gen in (g1, g2):
        part = PermGroup(6, (gen,))
        part_closure = two_closure(part)
        if not part_closure.same_group(part):
            failures.append(f"<{gen.cycle_string()}> is not its own closure")
    return [_result("paired-involutions-example", failures, "order 8, sub-closures fixed")]


def _coprime_unions() -> list[tuple[str, object]]:
    out = []
    for left, right in COPRIME_PRODUCT_PARTS:
        union = disjoint_union_action([realize_name(left), realize_name(right)])
        out.append((f"{left}|{right}", union))
    return out


def check_commutation_and_center() -> list[CheckResult]:
    commute, abelian, lifting, direct, stab = [], [], [], [], []
    for name, union in _coprime_unions():
        group = union.group
        a_part, b_part = union.embedded
        closure_a = two_closure(a_part)
        closure_b = two_closure(b_part)
        for x in closure_a.strong_generators:
            for y in closure_b.strong_generators:
                if x * y != y * x:
                    commute.append(f"{name}: commuting parts have non-commuting closures")
        if group.is_abelian() and not two_closure(group).is_abelian():
            abelian.append(f"{name}: abelian group has non-abelian closure")
        closure = two_closure(group)
        for z in center(group).elements():
            if any(z * s != s * z for s in closure.strong_generators):
                lifting.append(f"{name}: a central element fails to centralize the closure")
                break
        z_group = center(group)
        z_a = center(a_part)
        z_b = center(b_part)
        closure_z = two_closure(z_group)
        closure_za = two_closure(z_a)
        closure_zb = two_closure(z_b)
        product = {x * y for x in closure_za.elements() for y in closure_zb.elements()}
        if product != set(closure_z.elements()):
            direct.append(f"{name}: center closure is not the product of part center closures")
        if len(intersection_elements(closure_za, closure_zb)) != 1:
            direct.append(f"{name}: part center closures intersect nontrivially")
        for alpha in range(group.degree):
            ga = group.point_stabilizer(alpha)
            ha = a_part.point_stabilizer(alpha)
            ka = b_part.point_stabilizer(alpha)
            combined = {h * k for h in ha.elements() for k in ka.elements()}
            if combined != set(ga.elements()):
                stab.append(f"{name}: point {alpha + 1} stabilizer does not split")
                break
    context = f"{len(COPRIME_PRODUCT_PARTS)} coprime unions"
    return [
        _result("commuting-closures", commute, context),
        _result("abelian-closure", abelian, context),
        _result("center-lifting", lifting, context),
        _result("coprime-center-product", direct, context),
        _result("coprime-stabilizer-splitting", stab, context),
    ]


def standard_witness_certificates() -> list[tuple[str, object]]:
    """The fixed certificate battery used by the lemmas suite."""
    d8 = realize_name("D8")
    d8_lattice = subgroup_lattice(d8)
    d8_four = next(
        h.group for h in d8_lattice if h.normal and h.group.order == 4 and not is_cyclic(h.group)
    )
    d8_m = next(h.group for h in d8_lattice if h.group.order == 4 and is_cyclic(h.group))
    d8_h = next(h.group for h in d8_lattice if h.group.order == 2 and h.core.order == 1)
    sd16 = realize_name("SD16")
    sd16_lattice = subgroup_lattice(sd16)
    sd16_m = next(h.group for h in sd16_lattice if h.group.order == 8 and is_cyclic(h.group))
    sd16_h = next(h.group for h in sd16_lattice if h.group.order == 2 and h.core.order == 1)
    e27 = realize_name("E27")
    e27_pp = next(
        h.group
        for h in subgroup_lattice(e27)
        if h.normal and h.group.order == 9 and not is_cyclic(h.group)
    )
    return [
        ("abelian-p(2;1,1)", abelian_p_witness(2, (1, 1))),
        ("abelian-p(3;1,1)", abelian_p_witness(3, (1, 1))),
        ("two-group(D8)", two_group_witness(d8, d8_four)),
        ("odd-p(E27)", odd_p_witness(e27, e27_pp)),
        ("semidirect(D8)", semidirect_witness(d8, d8_m, d8_h)),
        ("semidirect(SD16)", semidirect_witness(sd16, sd16_m, sd16_h)),
        ("center(Q8xC2)", center_witness(realize_name("Q8xC2"))),
    ]


def check_witness_certificates() -> list[CheckResult]:
    expected_degrees = {
        "abelian-p(2;1,1)": 6,
        "abelian-p(3;1,1)": 9,
        "two-group(D8)": 8,
        "odd-p(E27)": 9,
        "semidirect(D8)": 6,
        "semidirect(SD16)": 10,
        "center(Q8xC2)": 24,
    }
    validity, growth, bounds = [], [], []
    for name, cert in standard_witness_certificates():
        problems = check_certificate(cert)
        if problems:
            validity.append(f"{name}: {problems[0]}")
        if cert.group.degree != expected_degrees[name]:
            validity.append(f"{name}: degree {cert.group.degree} != {expected_degrees[name]}")
        if cert.group.degree <= 32:
            closure = two_closure(cert.group)
            if closure.order <= cert.group.order:
                growth.append(f"{name}: closure did not grow")
            if cert.construction == "abelian-p":
                p = cert.parameters["prime"]
                if closure.order < p * cert.group.order:
                    bounds.append(f"{name}: closure order below p * group order")
                if not closure.is_abelian():
                    bounds.append(f"{name}: closure of an abelian group is not abelian")
                if p == 2 and closure.order != 8:
                    bounds.append(f"{name}: expected closure order exactly 8, got {closure.order}")
    context = "7 constructions"
    return [
        _result("witness-certificates-validate", validity, context),
        _result("witness-closure-growth", growth, context),
        _result("abelian-p-closure-bounds", bounds, context),
    ]


def check_quotient_lemmas() -> list[CheckResult]:
    kernel_checks, equivalence_checks, normality_checks = [], [], []

    def qt_instance(name: str, group: PermGroup, h_part: PermGroup) -> None:
        closure = two_closure(group)
        h_closure = two_closure(h_part)
        if not is_normal(closure, h_part):
            normality_checks.append(f"{name}: abelian factor is not normal in the closure")
        qa = quotient_action(group, h_part)
        if not qa.kernel.same_group(h_part):
            kernel_checks.append(f"{name}: block kernel differs from the abelian factor")
        qa_closure = quotient_action(closure, h_part)
        if not qa_closure.kernel.same_group(h_closure):
            kernel_checks.append(f"{name}: closure block kernel differs from the factor closure")
        if not two_equivalent(
            PermGroup(qa.image.degree, tuple(qa.embed(g) for g in group.strong_generators)),
            PermGroup(qa.image.degree, tuple(qa_closure.embed(g) for g in closure.strong_generators)),
        ):
            equivalence_checks.append(f"{name}: block images are not 2-equivalent")

    c6 = realize_name("C6")
    qt_instance("C6|C3", c6, sylow_decomposition(c6).sylows[3])
    q8c3 = realize_name("Q8xC3")
    qt_instance("Q8xC3|C3", q8c3, sylow_decomposition(q8c3).sylows[3])
    v4c3 = disjoint_union_action([realize_name("C2xC2"), realize_name("C3")])
    qt_instance("C2xC2|C3-part", v4c3.group, v4c3.embedded[0])

    from .perm import parse_cycles

    remark = PermGroup(6, (parse_cycles("(1,2)(3,4)", 6), parse_cycles("(3,4)(5,6)", 6)))
    remark_closure = two_closure(remark)
    for sub in subgroup_lattice(remark):
        if sub.group.order != 2:
            continue
        if not is_normal(remark_closure, sub.group):
            normality_checks.append("embedded-four-group: subgroup not normal in the closure")
            continue
        qa = quotient_action(remark, sub.group)
        qa_closure = quotient_action(remark_closure, sub.group)
        if not two_equivalent(
            PermGroup(qa.image.degree, tuple(qa.embed(g) for g in remark.strong_generators)),
            PermGroup(
                qa.image.degree, tuple(qa_closure.embed(g) for g in remark_closure.strong_generators)
            ),
        ):
            equivalence_checks.append("embedded-four-group: block images are not 2-equivalent")
    context = "C6, Q8xC3, C2xC2 instances"
    return [
        _result("block-kernel-claims", kernel_checks, context),
        _result("block-image-2-equivalence", equivalence_checks, context),
        _result("abelian-factor-normal-in-closure", normality_checks, context),
    ]


def check_disjoint_union_contrapositive() -> list[CheckResult]:
    """A union with a non-closed part cannot be closed."""
    failures = []
    inner = abelian_p_witness(2, (1, 1))
    union = disjoint_union_action([inner.group, realize_name("C3")])
    closure = two_closure(union.group)
    if closure.order <= union.group.order:
        failures.append("union with a non-closed part came out closed")
    part_closure = two_closure(union.embedded[0])
    if part_closure.order <= union.embedded[0].order:
        failures.append("embedded non-closed part came out closed")
    return [_result("disjoint-union-contrapositive", failures, "cell witness | C3")]


def check_universal_embedding_invariants() -> list[CheckResult]:
    """Order preservation and stabilizer agreement for a nested embedding."""
    failures = []
    q8c2 = realize_name("Q8xC2")
    cert = center_witness(q8c2)
    if cert.group.order != q8c2.order:
        failures.append("embedded image order differs from the group order")
    for point in range(cert.group.degree):
        direct = cert.group.point_stabilizer(point)
        by_definition = [g for g in cert.group.elements() if g.images[point] == point]
        if set(direct.elements()) != set(by_definition):
            failures.append(f"stabilizer of point {point + 1} disagrees with enumeration")
            break
    return [_result("universal-embedding-invariants", failures, "center witness of Q8xC2")]


def suite_lemmas() -> list[CheckResult]:
    results = []
    results += check_paired_involutions_example()
    results += check_commutation_and_center()
    results += check_witness_certificates()
    results += check_quotient_lemmas()
    results += check_disjoint_union_contrapositive()
    results += check_universal_embedding_invariants()
    return results


# ---------------------------------------------------------------------------
# classification suite

def check_truth_table() -> list[CheckResult]:
    verdicts, certificates = [], []
    for name in TWO_CLOSED_FAMILIES:
        verdict = classify_nilpotent(realize_name(name))
        if verdict.status != STATUS_TWO_CLOSED:
            verdicts.append(f"{name}: expected 2-closed, got {verdict.status}")
    for name in NOT_TWO_CLOSED_FAMILIES:
        verdict = classify_nilpotent(realize_name(name))
        if verdict.status != STATUS_NOT_TWO_CLOSED:
            verdicts.append(f"{name}: expected not 2-closed, got {verdict.status}")
        elif verdict.certificate is None:
            certificates.append(f"{name}: negative verdict without a certificate")
        else:
            problems = check_certificate(verdict.certificate)
            if problems:
                certificates.append(f"{name}: {problems[0]}")
    context = f"{len(TWO_CLOSED_FAMILIES)} positives, {len(NOT_TWO_CLOSED_FAMILIES)} negatives"
    return [
        _result("classification-truth-table", verdicts, context),
        _result("negative-verdict-certificates", certificates, context),
    ]


def check_positive_consistency(max_degree: int = 16) -> list[CheckResult]:
    closure_checks, certization = [], []
    rep_count = 0
    for name in TWO_CLOSED_FAMILIES:
        group = realize_name(name)
        sample = faithful_representations(group, max_degree)
        for entry in sample.entries:
            rep_count += 1
            if not two_closure(entry.action).same_group(entry.action):
                closure_checks.append(f"{name}: a degree-{entry.degree} representation closed up")
    q8c3 = realize_name("Q8xC3")
    decomposition = sylow_decomposition(q8c3)
    certification = certify_coprime_product(
        q8c3, decomposition.sylows[3], decomposition.sylows[2]
    )
    if not certification.certified:
        certization.append(f"coprime certification failed: {certification.detail}")
    if not two_closure(q8c3).same_group(q8c3):
        certization.append("direct closure of the 11-point action disagrees")
    return [
        _result("positive-representations-closed", closure_checks, f"{rep_count} representations"),
        _result("coprime-product-certification", certization, "Q8xC3 on 11 points"),
    ]


def check_center_cyclic_suite() -> list[CheckResult]:
    failures = []
    for name in ("Q8xC2", "C2xQ8xC3"):
        test = center_cyclic_test(realize_name(name))
        if test.passes:
            failures.append(f"{name}: noncyclic center not detected")
        elif test.certificate is None or test.certificate.group.degree != 24:
            degree = test.certificate.group.degree if test.certificate else None
            failures.append(f"{name}: expected a degree-24 certificate, got {degree}")
        elif check_certificate(test.certificate):
            failures.append(f"{name}: certificate failed validation")
    for name in [f"C{n}" for n in range(1, 31)] + ["Q8", "Q16", "Q32"]:
        if not center_cyclic_test(realize_name(name)).passes:
            failures.append(f"{name}: cyclic center flagged as noncyclic")
    return [_result("cyclic-center-test", failures, "noncyclic fails at degree 24, cyclic passes")]


def check_theorem_filter() -> list[CheckResult]:
    """Positive classification implies the cyclic-center test passes."""
    failures = []
    for name in TWO_CLOSED_FAMILIES + NOT_TWO_CLOSED_FAMILIES:
        group = realize_name(name)
        verdict = classify_nilpotent(group)
        if verdict.status == STATUS_TWO_CLOSED and not center_cyclic_test(group).passes:
            failures.append(f"{name}: 2-closed verdict with a noncyclic center")
    return [_result("cyclic-center-filter", failures, "whole catalog")]


def check_trivial_stabilizer_instances() -> list[CheckResult]:
    """Cyclic p-groups and generalized quaternion groups: every sampled faithful
    representation has a point with trivial stabilizer and is closed."""
    failures = []
    names = ["C2", "C3", "C4", "C5", "C7", "C8", "C9", "C16", "Q8", "Q16"]
    for name in names:
        group = realize_name(name)
        for entry in faithful_representations(group, 16).entries:
            action = entry.action
            if not any(action.point_stabilizer(p).order == 1 for p in range(action.degree)):
                failures.append(f"{name}: a representation with no regular point")
            if not two_closure(action).same_group(action):
                failures.append(f"{name}: a representation closed up")
    return [_result("trivial-stabilizer-instances", failures, f"{len(names)} groups")]


def check_noncyclic_abelian_instances() -> list[CheckResult]:
    failures = []
    for name in ("C2xC2", "C2xC4", "C3xC3", "C2xC2xC2"):
        cert = classify_nilpotent(realize_name(name)).certificate
        if cert is None or check_certificate(cert):
            failures.append(f"{name}: no valid certificate")
    return [_result("noncyclic-abelian-certificates", failures, "4 groups")]


def suite_classification() -> list[CheckResult]:
    results = []
    results += check_truth_table()
    results += check_positive_consistency()
    results += check_center_cyclic_suite()
    results += check_theorem_filter()
    results += check_trivial_stabilizer_instances()
    results += check_noncyclic_abelian_instances()
    return results


def suite_axioms(seed: int = 7, max_degree: int = 7, samples: int = 200) -> list[CheckResult]:
    return check_closure_axioms(seed=seed, samples=samples, max_degree=max_degree)


SUITES = {
    "axioms": suite_axioms,
    "lemmas": lambda seed=7, max_degree=7, samples=200: suite_lemmas(),
    "classification": lambda seed=7, max_degree=7, samples=200: suite_classification(),
}
