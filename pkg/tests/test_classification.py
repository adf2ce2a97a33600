"""Graph matchings, rational witnesses, and the equivalence classification."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest

from realforms.classification import (
    ORIGIN_LABEL,
    PINNED_LABELS,
    ClassificationResult,
    admissible_matchings,
    classification_report,
    classify,
    equivalence_criterion,
    incidence_graph,
    matching_as_labels,
    matchings_report,
    solve_linear_witness,
)
from realforms.errors import ForbiddenParameter
from realforms.intersection import LABEL_AT_INFINITY

GRID = sorted({
    Fraction(p) for p in (
        "-3", "-2", "-1/2", "-1/3", "-5", "1/3", "1/2", "2", "3", "5",
        "2/5", "5/2", "7/3", "3/7",
    )
})


def brute_force_matchings(src, dst):
    """Exhaustive search over all vertex bijections fixing the two pinned
    vertices, filtered by weight preservation and conjugation-equivariance.
    Bijections are only generated within equal self-intersection groups,
    which weight preservation forces anyway."""
    n = src.size()
    pin_src = [src.index_of(label) for label in PINNED_LABELS]
    pin_dst = [dst.index_of(label) for label in PINNED_LABELS]
    free_src = {}
    free_dst = {}
    for i in range(n):
        if i not in pin_src:
            free_src.setdefault(src.weights[i][i], []).append(i)
    for j in range(n):
        if j not in pin_dst:
            free_dst.setdefault(dst.weights[j][j], []).append(j)
    if sorted(free_src) != sorted(free_dst):
        return []
    groups = sorted(free_src)
    if any(len(free_src[g]) != len(free_dst[g]) for g in groups):
        return []

    found = []

    def assemble(choices):
        m = [None] * n
        for i, j in zip(pin_src, pin_dst):
            m[i] = j
        for g, perm in zip(groups, choices):
            for i, j in zip(free_src[g], perm):
                m[i] = j
        return m

    def product_of_permutations(groups_left, chosen):
        if not groups_left:
            m = assemble(chosen)
            ok = all(
                dst.weights[m[i]][m[j]] == src.weights[i][j]
                for i in range(n) for j in range(i, n)
            )
            if ok and all(
                m[src.real_action[i]] == dst.real_action[m[i]] for i in range(n)
            ):
                found.append(tuple(m))
            return
        g = groups_left[0]
        for perm in permutations(free_dst[g]):
            product_of_permutations(groups_left[1:], chosen + [perm])

    product_of_permutations(groups, [])
    return sorted(found)


# -- incidence graphs ---------------------------------------------------------


def test_graph_shape():
    g = incidence_graph(2)
    assert g.size() == 12
    assert LABEL_AT_INFINITY in g.labels and ORIGIN_LABEL in g.labels
    i = g.index_of(ORIGIN_LABEL)
    plus = g.index_of("L(x+iy)")
    minus = g.index_of("L(x-iy)")
    assert g.weights[i][plus] == 1 and g.weights[i][minus] == 1
    # the conjugation action swaps the two isotropic boundary lines
    assert g.real_action[plus] == minus and g.real_action[minus] == plus
    # and fixes the pinned vertices
    z = g.index_of(LABEL_AT_INFINITY)
    assert g.real_action[z] == z and g.real_action[i] == i
    # the line at infinity meets no exceptional curve
    for label in ("E(0,0)", "E(1,i)", "E(a,ai)", "E(1,-i)", "E(a,-ai)"):
        assert g.weights[z][g.index_of(label)] == 0


def test_real_action_is_weight_preserving_involution():
    for value in (2, Fraction(1, 2), "symbolic"):
        g = incidence_graph(value)
        act = g.real_action
        assert all(act[act[i]] == i for i in range(g.size()))
        assert all(
            g.weights[act[i]][act[j]] == g.weights[i][j]
            for i in range(g.size()) for j in range(g.size())
        )


def test_graph_rejects_forbidden_parameter():
    with pytest.raises(ForbiddenParameter):
        incidence_graph(0)
    with pytest.raises(ForbiddenParameter):
        incidence_graph(1)


# -- matchings ------------------------------------------------------------------


def test_matchings_match_brute_force_oracle():
    pairs = [(2, 3), (2, Fraction(1, 2)), (2, 2)]
    for a, b in pairs:
        src, dst = incidence_graph(a), incidence_graph(b)
        fast = admissible_matchings(src, dst)
        assert fast == brute_force_matchings(src, dst)
        assert len(fast) == 4


def test_identity_matching_on_diagonal():
    g = incidence_graph(3)
    matchings = admissible_matchings(g, g)
    assert tuple(range(g.size())) in matchings


def test_matchings_send_conjugate_center_pairs_together():
    src, dst = incidence_graph(2), incidence_graph(3)
    first_pair = {src.index_of("E(1,i)"), src.index_of("E(a,ai)")}
    target_plus = {dst.index_of("E(1,i)"), dst.index_of("E(a,ai)")}
    target_minus = {dst.index_of("E(1,-i)"), dst.index_of("E(a,-ai)")}
    for m in admissible_matchings(src, dst):
        image = {m[i] for i in first_pair}
        assert image in (target_plus, target_minus)


def test_matchings_invert_when_swapping_roles():
    src, dst = incidence_graph(2), incidence_graph(5)
    forward = admissible_matchings(src, dst)
    backward = admissible_matchings(dst, src)
    inverses = []
    for m in backward:
        inv = [0] * len(m)
        for i, j in enumerate(m):
            inv[j] = i
        inverses.append(tuple(inv))
    assert sorted(inverses) == forward


def test_matching_label_map():
    g = incidence_graph(2)
    identity = tuple(range(g.size()))
    labels = matching_as_labels(g, g, identity)
    assert labels[ORIGIN_LABEL] == ORIGIN_LABEL
    assert len(labels) == 12


# -- witnesses -------------------------------------------------------------------


def test_witness_for_reciprocal_pair():
    src = incidence_graph(2)
    dst = incidence_graph(Fraction(1, 2))
    matchings = admissible_matchings(src, dst)
    matrices = [solve_linear_witness(src, dst, m) for m in matchings]
    found = [m for m in matrices if m is not None]
    half = Fraction(1, 2)
    assert ((half, Fraction(0)), (Fraction(0), half)) in found


def test_no_witness_for_inequivalent_pair():
    src, dst = incidence_graph(2), incidence_graph(3)
    for m in admissible_matchings(src, dst):
        assert solve_linear_witness(src, dst, m) is None


def test_classify_reciprocal_and_diagonal():
    result = classify(2, Fraction(1, 2))
    assert result.equivalent
    assert result.witness.matrix == (
        (Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 2))
    )
    assert result.witness.scalar == Fraction(1, 4)

    diagonal = classify(3, 3)
    assert diagonal.equivalent
    assert diagonal.witness.matrix == (
        (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    )
    # the reflection is also among the valid witnesses
    matrices = {w.matrix for w in diagonal.witnesses}
    assert ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1))) in matrices


def test_classify_inequivalent_pair_keeps_traces():
    result = classify(2, 3)
    assert not result.equivalent
    assert result.witness is None
    assert result.matchings_admissible == 4
    assert len(result.traces) == 4
    assert all(t["outcome"] == "no linear solution" for t in result.traces)


def test_classify_rejects_forbidden_values():
    with pytest.raises(ForbiddenParameter):
        classify(0, 2)
    with pytest.raises(ForbiddenParameter):
        classify(2, 1)


def test_witness_structure_identities():
    """Every equivalent verdict carries a witness whose matrix is invertible,
    preserves the sum of squares up to its recorded scalar, and is returned
    first under the canonical ordering."""
    for a, b in ((2, Fraction(1, 2)), (Fraction(-3), Fraction(-1, 3)), (5, 5)):
        result = classify(a, b)
        assert result.equivalent
        for w in result.witnesses:
            (p, q), (r, s) = w.matrix
            assert p * s - q * r != 0
            assert p * q + r * s == 0
            assert p * p + r * r == w.scalar == q * q + s * s
            assert w.scalar != 0
        assert result.witness == result.witnesses[0]


def test_classify_symbolic_parameters():
    diagonal = classify("symbolic", "symbolic")
    assert diagonal.equivalent
    assert diagonal.witness.matrix == (
        (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    )
    distinct = classify("symbolic", "b")
    assert not distinct.equivalent
    mixed = classify("symbolic", 3)
    assert not mixed.equivalent


# -- the closed-form criterion ------------------------------------------------------


def test_equivalence_criterion():
    assert equivalence_criterion(2, 2)
    assert equivalence_criterion(2, Fraction(1, 2))
    assert not equivalence_criterion(2, 3)
    assert equivalence_criterion("symbolic", "symbolic")
    assert not equivalence_criterion("symbolic", "b")
    assert not equivalence_criterion("symbolic", 2)
    assert equivalence_criterion(Fraction(-3), Fraction(-1, 3))


def test_verdict_equals_criterion_on_grid():
    graphs = {v: incidence_graph(v) for v in GRID}
    checked = 0
    for a in GRID:
        for b in GRID:
            result = classify(a, b, src_graph=graphs[a], dst_graph=graphs[b])
            assert result.equivalent == equivalence_criterion(a, b), (a, b)
            if result.equivalent:
                assert result.witness is not None
            checked += 1
    assert checked == len(GRID) ** 2


def test_classify_symmetric_verdicts():
    values = (Fraction(2), Fraction(1, 2), Fraction(-3), Fraction(7, 3))
    graphs = {v: incidence_graph(v) for v in values}
    for a in values:
        for b in values:
            fwd = classify(a, b, src_graph=graphs[a], dst_graph=graphs[b])
            rev = classify(b, a, src_graph=graphs[b], dst_graph=graphs[a])
            assert fwd.equivalent == rev.equivalent


# -- certified reports ----------------------------------------------------------------


def test_matchings_report():
    report = matchings_report(2, 3)
    assert report.passed
    assert matchings_report("symbolic", "symbolic").passed


def test_classification_report():
    for a, b in ((2, 3), (2, Fraction(1, 2)), (4, 4)):
        assert classification_report(a, b).passed
    assert classification_report("symbolic", "symbolic").passed
    assert classification_report("symbolic", "b").passed


def test_result_serialization():
    result = classify(2, Fraction(1, 2))
    data = result.to_json()
    assert data["alpha"] == "2" and data["beta"] == "1/2"
    assert data["equivalent"] is True
    assert data["witness"]["matrix"] == [["1/2", "0"], ["0", "1/2"]]
    assert data["witness"]["sum_of_squares_scalar"] == "1/4"
    assert data["matchings_admissible"] == 4
    assert isinstance(result, ClassificationResult)
