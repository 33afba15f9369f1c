from fractions import Fraction

import pytest

from leibder import catalog
from leibder.algebra import Algebra
from leibder.linalg import RatMatrix, in_span
from leibder.solver import (
    LinearForm,
    SolutionSpace,
    SpaceKind,
    SpaceKindError,
    build_antider_system,
    build_bider_system,
    build_der_system,
    build_system,
    check_bider_closure,
    check_der_closure,
    components,
    compute_space,
    general_element,
    generic_dimension,
    latex_label,
    oracle_dimension,
    projection_report,
    rebase,
    special_values,
    unknown_label,
    unknown_labels,
    verify_space,
)

IDS = [f"L{i}" for i in range(1, 22)]
GENERIC = (Fraction(2), Fraction(3), Fraction(5))
RESTRICTED = (Fraction(0), Fraction(1))

# Dimensions obtained by exact elimination, rows L1..L21.
EXPECTED = {
    SpaceKind.DER: (4, 4, 5, 3, 5, 4, 6, 5, 5, 4, 5, 5, 5, 5, 5, 5, 6, 7, 7, 7, 7),
    SpaceKind.ANTIDER: (3, 5, 6, 5, 5, 5, 6, 6, 6, 6, 6, 6, 6, 9, 9, 9, 8, 8, 6, 6, 9),
    SpaceKind.BIDER: (3, 5, 6, 5, 7, 5, 7, 6, 6, 6, 8, 8, 8, 7, 7, 7, 10, 11, 12, 10, 9),
}


def _samples(entry_id):
    return catalog.default_samples(entry_id, GENERIC, RESTRICTED)


def _dimension(entry_id, kind):
    if catalog.entry(entry_id).parameterized:
        return generic_dimension(entry_id, kind, _samples(entry_id)).dim
    return compute_space(catalog.get(entry_id), kind).dim


def _algebras():
    for entry_id in IDS:
        if catalog.entry(entry_id).parameterized:
            for alpha in _samples(entry_id):
                yield catalog.get(entry_id, alpha)
        else:
            yield catalog.get(entry_id)


def test_system_shapes():
    a = catalog.get("L1")
    assert (build_der_system(a).matrix.rows, build_der_system(a).matrix.cols) == (64, 16)
    assert build_antider_system(a).unknown_labels[0] == "D11"
    bider = build_bider_system(a)
    assert (bider.matrix.rows, bider.matrix.cols) == (192, 32)
    assert bider.unknown_labels[16] == "D11"


def test_dimensions_for_all_catalog_rows():
    for kind, expected in EXPECTED.items():
        computed = tuple(_dimension(entry_id, kind) for entry_id in IDS)
        assert computed == expected, kind


def test_dimension_ranges():
    assert (min(EXPECTED[SpaceKind.DER]), max(EXPECTED[SpaceKind.DER])) == (3, 7)
    assert (min(EXPECTED[SpaceKind.ANTIDER]), max(EXPECTED[SpaceKind.ANTIDER])) == (3, 9)
    assert (min(EXPECTED[SpaceKind.BIDER]), max(EXPECTED[SpaceKind.BIDER])) == (3, 12)


def test_reversed_elimination_gives_same_dimension():
    for a in _algebras():
        for kind in SpaceKind:
            assert oracle_dimension(build_system(a, kind)) == compute_space(a, kind).dim, a.name


def test_every_basis_element_satisfies_its_definition():
    for a in _algebras():
        for kind in SpaceKind:
            report = verify_space(compute_space(a, kind), a)
            assert report.ok, (a.name, kind, report.failures)


def test_der_and_bider_are_closed_under_their_brackets():
    for a in _algebras():
        assert check_der_closure(compute_space(a, SpaceKind.DER), a).closed, a.name
        assert check_bider_closure(compute_space(a, SpaceKind.BIDER), a).closed, a.name


def test_closure_rejects_wrong_kind():
    a = catalog.get("L1")
    with pytest.raises(SpaceKindError):
        check_der_closure(compute_space(a, SpaceKind.ANTIDER), a)
    with pytest.raises(SpaceKindError):
        check_bider_closure(compute_space(a, SpaceKind.DER), a)


def test_zero_algebra_spaces_are_full():
    zero = Algebra.zero(4)
    assert compute_space(zero, SpaceKind.DER).dim == 16
    assert compute_space(zero, SpaceKind.ANTIDER).dim == 16
    assert compute_space(zero, SpaceKind.BIDER).dim == 32
    assert compute_space(zero, SpaceKind.DER).free_labels == unknown_labels(SpaceKind.DER, 4)


def test_der_of_l1_general_element():
    el = general_element(compute_space(catalog.get("L1"), SpaceKind.DER))
    assert el.parameters == ("d11", "d21", "d31", "d41")
    d = el.grids[0]
    assert d[0][0].render() == "d11"
    assert d[1][1].render() == "2*d11"
    assert d[3][3].render() == "4*d11"
    assert d[2][1].render() == "d21"
    assert d[3][1].render() == "d31"
    assert d[0][1].render() == "0"

    (m,) = el.substitute({"d11": Fraction(1)})
    assert m == RatMatrix.from_rows([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 4]])


def test_bider_of_l1_general_element():
    el = general_element(compute_space(catalog.get("L1"), SpaceKind.BIDER))
    assert el.parameters == ("d31", "d41", "D41")
    d, D = el.grids
    assert d[2][0].render() == "d31"
    assert D[2][0].render() == "d31"
    assert d[3][0].render() == "d41"
    assert D[3][0].render() == "D41"
    assert d[1][0].render() == "0"


def test_free_style_keeps_canonical_basis():
    sp = compute_space(catalog.get("L1"), SpaceKind.DER)
    el = general_element(sp, style="free")
    assert sorted(el.parameters) == sorted(sp.free_labels)
    assert set(el.generators) == set(sp.vectors)
    with pytest.raises(ValueError):
        general_element(sp, style="pretty")


def test_linear_form_rendering():
    assert LinearForm(((Fraction(2), "d11"),)).render() == "2*d11"
    assert LinearForm(((Fraction(-1), "d11"),)).render() == "-d11"
    assert LinearForm(((Fraction(1, 2), "d44"),)).render() == "1/2*d44"
    assert LinearForm(((Fraction(1), "d21"), (Fraction(-3), "d31"))).render() == "d21 - 3*d31"
    assert LinearForm(()).render() == "0"
    assert LinearForm(((Fraction(2), "d11"),)).render_latex() == "2d_{11}"
    assert LinearForm(((Fraction(1, 2), "d44"),)).render_latex() == "\\frac{1}{2}d_{44}"


def test_labels_for_large_dimensions():
    assert unknown_label("d", 3, 1, 4) == "d31"
    assert unknown_label("d", 3, 10, 10) == "d3_10"
    assert latex_label("d3_10") == "d_{3,10}"
    assert latex_label("D41") == "D_{41}"


def test_verify_space_flags_a_non_derivation():
    a = catalog.get("L1")
    identity = RatMatrix.identity(4)
    fake = SolutionSpace(
        algebra="L1",
        kind=SpaceKind.DER,
        n=4,
        dim=1,
        basis=(identity,),
        free_labels=("d11",),
        vectors=(identity.entries,),
        unknown_labels=unknown_labels(SpaceKind.DER, 4),
    )
    report = verify_space(fake, a)
    assert report.ok is False
    assert report.failures[0].condition == "derivation"
    assert report.failures[0].pair == (1, 1)


def test_projections_stay_in_their_spaces():
    for a in _algebras():
        report = projection_report(
            compute_space(a, SpaceKind.BIDER),
            compute_space(a, SpaceKind.DER),
            compute_space(a, SpaceKind.ANTIDER),
        )
        assert report.bounded and report.d_in_der and report.D_in_antider, a.name


def test_generic_dimension_and_special_values():
    l4 = generic_dimension("L4", SpaceKind.DER, RESTRICTED)
    assert dict(l4.per_sample) == {0: 3, 1: 4}
    assert l4.dim == 3

    jumps = dict(special_values("L13", SpaceKind.DER, [Fraction(1), Fraction(7)], GENERIC))
    assert jumps.get(Fraction(1)) == 7
    assert all(dim > 5 for dim in jumps.values())

    jumps = dict(special_values("L14", SpaceKind.DER, [Fraction(0)], GENERIC))
    assert jumps == {Fraction(0): 7}

    with pytest.raises(catalog.ParameterError):
        generic_dimension("L1", SpaceKind.DER, GENERIC)
    with pytest.raises(ValueError):
        generic_dimension("L13", SpaceKind.DER, [])


def test_unit_substitution_reproduces_generators():
    for entry_id in ("L1", "L11", "L19"):
        sp = compute_space(catalog.get(entry_id), SpaceKind.BIDER)
        for style in ("leading", "free"):
            el = general_element(sp, style=style)
            for name, vector in zip(el.parameters, el.generators):
                d, D = el.substitute({name: Fraction(1)})
                assert d.entries + D.entries == vector
        free = general_element(sp, style="free")
        for name, element in zip(sp.free_labels, sp.basis):
            assert free.substitute({name: Fraction(1)}) == element


def test_der_closure_of_zero_algebra():
    zero = Algebra.zero(2)
    assert check_der_closure(compute_space(zero, SpaceKind.DER), zero).closed


def test_rebased_basis_matches_parameters():
    for a in _algebras():
        for kind in SpaceKind:
            sp = compute_space(a, kind)
            for style in ("leading", "free"):
                el = general_element(sp, style=style)
                rebased = rebase(sp, el)
                assert rebased.free_labels == el.parameters, (a.name, kind, style)
                assert rebased.dim == sp.dim
                for index, name in enumerate(el.parameters):
                    values = {other: Fraction(0) for other in el.parameters}
                    values[name] = Fraction(1)
                    assert el.substitute(values) == components(rebased.basis[index]), (
                        a.name,
                        kind,
                        name,
                    )
                    assert in_span(sp.vectors, rebased.vectors[index])
                assert verify_space(rebased, a).ok


def test_rebase_rejects_foreign_element():
    a = catalog.get("L1")
    der = compute_space(a, SpaceKind.DER)
    bider = compute_space(a, SpaceKind.BIDER)
    with pytest.raises(SpaceKindError):
        rebase(der, general_element(bider))


def test_witnesses_are_one_based():
    zero = Algebra.zero(2)
    e12 = RatMatrix.from_rows([[0, 1], [0, 0]])
    e21 = RatMatrix.from_rows([[0, 0], [1, 0]])
    fake = SolutionSpace(
        algebra="pair",
        kind=SpaceKind.DER,
        n=2,
        dim=2,
        basis=(e12, e21),
        free_labels=("d12", "d21"),
        vectors=(e12.entries, e21.entries),
        unknown_labels=unknown_labels(SpaceKind.DER, 2),
    )
    report = check_der_closure(fake, zero)
    assert report.closed is False
    assert report.witness == (1, 2)

    a = catalog.get("L1")
    identity = RatMatrix.identity(4)
    single = SolutionSpace(
        algebra="L1",
        kind=SpaceKind.DER,
        n=4,
        dim=1,
        basis=(identity,),
        free_labels=("d11",),
        vectors=(identity.entries,),
        unknown_labels=unknown_labels(SpaceKind.DER, 4),
    )
    assert verify_space(single, a).failures[0].element == 1
