"""Catalog validation: the builtin catalog is clean, single-fault
mutations are caught with the right rule id, and the report is
order-independent."""

import dataclasses
import random

from ranslicer.model import (
    Catalog,
    DuIlCapacity,
    FronthaulTech,
    GnbIlCapacity,
    InstantiationLevel,
    VnfIlRef,
)
from ranslicer.validate import validate_catalog


def test_builtin_catalog_is_clean(catalog, area):
    assert validate_catalog(catalog) == []
    assert validate_catalog(catalog, area) == []


def test_builtin_template_values(catalog):
    from ranslicer.model import Sst

    embb = catalog.nssts_for(Sst.EMBB)[0]
    assert embb.radio_config.numerology_mu == 2
    assert embb.nsd_ref == "nsd-gnb-v1"
    mmtc = catalog.nssts_for(Sst.MMTC)[0]
    assert mmtc.radio_config.five_qi.id == 4
    assert mmtc.radio_config.five_qi.packet_delay_budget_ms == 300.0


def test_builtin_catalog_shape(catalog):
    assert len(catalog.nssts) == 3
    assert {int(t.s_nssai.sst) for t in catalog.nssts} == {1, 2, 3}
    assert len(catalog.gnb_nsds) == 1
    assert len(catalog.gnb_nsds[0].flavors) == 3
    assert len(catalog.cu_vnfds) == 1
    assert len(catalog.cu_vnfds[0].flavors) == 1
    assert len(catalog.du_vnfds) == 1
    assert len(catalog.du_vnfds[0].flavors) == 2
    assert len(catalog.ru_pnfds) == 18


def _replace_gnb(catalog: Catalog, nsd) -> Catalog:
    return dataclasses.replace(catalog, gnb_nsds=(nsd,))


def _replace_du(catalog: Catalog, vnfd) -> Catalog:
    return dataclasses.replace(catalog, du_vnfds=(vnfd,))


def _replace_cu(catalog: Catalog, vnfd) -> Catalog:
    return dataclasses.replace(catalog, cu_vnfds=(vnfd,))


def _first_gnb_level(nsd) -> InstantiationLevel:
    return nsd.flavors[0].il_subsets[0].levels[0]


def _mutate_level(nsd, flavor_idx, subset_idx, level_idx, new_level):
    flavor = nsd.flavors[flavor_idx]
    subset = flavor.il_subsets[subset_idx]
    levels = list(subset.levels)
    levels[level_idx] = new_level
    subsets = list(flavor.il_subsets)
    subsets[subset_idx] = dataclasses.replace(subset, levels=tuple(levels))
    flavors = list(nsd.flavors)
    flavors[flavor_idx] = dataclasses.replace(flavor, il_subsets=tuple(subsets))
    return dataclasses.replace(nsd, flavors=tuple(flavors))


def _mutations(catalog: Catalog):
    """(name, mutated catalog, expected rule id) triples, one fault each."""
    nsd = catalog.gnb_nsds[0]
    du = catalog.du_vnfds[0]
    cu = catalog.cu_vnfds[0]

    yield ("gnb-two-flavors",
           _replace_gnb(catalog, dataclasses.replace(nsd, flavors=nsd.flavors[:2])),
           "flavor-count")
    yield ("du-one-flavor",
           _replace_du(catalog, dataclasses.replace(du, flavors=du.flavors[:1])),
           "flavor-count")
    yield ("cu-two-flavors",
           _replace_cu(catalog, dataclasses.replace(cu, flavors=cu.flavors * 2)),
           "flavor-count")

    bad_nsst = dataclasses.replace(catalog.nssts[0], nsd_ref="nsd-missing")
    yield ("nsst-dangling-nsd-ref",
           dataclasses.replace(catalog, nssts=(bad_nsst,) + catalog.nssts[1:]),
           "dangling-reference")

    level = _first_gnb_level(nsd)
    role: GnbIlCapacity = level.role_capacity
    bad_cu_ref = dataclasses.replace(
        level, role_capacity=dataclasses.replace(role, cu_il_ref=VnfIlRef("vnfd-cu-v1", 1, "cu-missing"))
    )
    yield ("gnb-il-dangling-cu-ref", _replace_gnb(catalog, _mutate_level(nsd, 0, 0, 0, bad_cu_ref)),
           "dangling-reference")

    bad_du_ref = dataclasses.replace(
        level,
        role_capacity=dataclasses.replace(
            role, du_il_refs=(VnfIlRef("vnfd-du-missing", 2, "du-c-sub-s6-l1"),)
        ),
    )
    yield ("gnb-il-dangling-du-vnfd", _replace_gnb(catalog, _mutate_level(nsd, 0, 0, 0, bad_du_ref)),
           "dangling-reference")

    # DU subset with its level order reversed: capacities decrease.
    flavor = du.flavors[0]
    subset = flavor.il_subsets[0]
    reversed_subset = dataclasses.replace(subset, levels=tuple(reversed(subset.levels)))
    subsets = (reversed_subset,) + flavor.il_subsets[1:]
    yield ("du-levels-reversed",
           _replace_du(catalog, dataclasses.replace(
               du, flavors=(dataclasses.replace(flavor, il_subsets=subsets),) + du.flavors[1:])),
           "non-monotone-levels")

    # CU subset where two consecutive levels are identical in capacity.
    cflavor = cu.flavors[0]
    csubset = cflavor.il_subsets[0]
    stalled = dataclasses.replace(csubset, levels=(csubset.levels[0], csubset.levels[0]))
    yield ("cu-levels-stalled",
           _replace_cu(catalog, dataclasses.replace(
               cu, flavors=(dataclasses.replace(cflavor, il_subsets=(stalled,) + cflavor.il_subsets[1:]),))),
           "non-monotone-levels")

    # RU whose connection technology contradicts its region.
    flipped = dataclasses.replace(
        catalog.ru_pnfds[0],
        connection_tech=FronthaulTech.CPRI
        if catalog.ru_pnfds[0].connection_tech is FronthaulTech.ECPRI
        else FronthaulTech.ECPRI,
    )
    yield ("ru-flipped-tech",
           dataclasses.replace(catalog, ru_pnfds=(flipped,) + catalog.ru_pnfds[1:]),
           "ru-tech-mismatch")

    # du_count disagrees with the number of DU references.
    bad_count = dataclasses.replace(
        level, role_capacity=dataclasses.replace(role, du_count=role.du_count + 1)
    )
    yield ("gnb-il-du-count", _replace_gnb(catalog, _mutate_level(nsd, 0, 0, 0, bad_count)),
           "du-count-mismatch")

    # Flavor 1 claiming eCPRI support.
    bad_flavor = dataclasses.replace(nsd.flavors[0], fronthaul_techs=frozenset({FronthaulTech.ECPRI}))
    yield ("gnb-flavor1-ecpri",
           _replace_gnb(catalog, dataclasses.replace(nsd, flavors=(bad_flavor,) + nsd.flavors[1:])),
           "flavor-tech-mapping")

    # CPRI-only flavor referencing an eCPRI DU IL.
    wrong_tech = dataclasses.replace(
        level,
        role_capacity=dataclasses.replace(role, du_il_refs=(VnfIlRef("vnfd-du-v1", 1, "du-e-cc-s8-l1"),)),
    )
    yield ("gnb-f1-ecpri-du", _replace_gnb(catalog, _mutate_level(nsd, 0, 0, 0, wrong_tech)),
           "tech-not-permitted")

    # Negative DU capacity.
    dlevel = subset.levels[0]
    negative = dataclasses.replace(
        dlevel, role_capacity=DuIlCapacity(dlevel.role_capacity.max_cell_sites, -5.0)
    )
    neg_subset = dataclasses.replace(subset, levels=(negative,) + subset.levels[1:])
    yield ("du-negative-capacity",
           _replace_du(catalog, dataclasses.replace(
               du, flavors=(dataclasses.replace(flavor, il_subsets=(neg_subset,) + flavor.il_subsets[1:]),)
               + du.flavors[1:])),
           "non-positive-capacity")

    # Declared gNB IL capacity above what its CU/DU references carry.
    inflated = dataclasses.replace(
        level, role_capacity=dataclasses.replace(role, aggregate_capacity_mbps=1e9)
    )
    yield ("gnb-il-overdeclared", _replace_gnb(catalog, _mutate_level(nsd, 0, 0, 0, inflated)),
           "gnb-il-capacity")

    # Empty level list inside a CU subset.
    hollow = dataclasses.replace(csubset, levels=())
    yield ("cu-empty-levels",
           _replace_cu(catalog, dataclasses.replace(
               cu, flavors=(dataclasses.replace(cflavor, il_subsets=(hollow,) + cflavor.il_subsets[1:]),))),
           "empty-levels")


def test_mutations_are_rejected_with_the_right_rule(catalog, area):
    count = 0
    for name, mutated, rule in _mutations(catalog):
        report = validate_catalog(mutated, area)
        assert report, f"{name}: expected a violation"
        assert rule in {v.rule for v in report}, (
            f"{name}: expected rule {rule}, got {[v.rule for v in report]}"
        )
        count += 1
    assert count >= 10


def test_report_is_order_independent(catalog, area):
    mutated = next(_mutations(catalog))[1]
    rng = random.Random(7)
    for cat in (catalog, mutated):
        baseline = validate_catalog(cat, area)
        for _ in range(5):
            shuffled = Catalog(
                nssts=tuple(rng.sample(cat.nssts, len(cat.nssts))),
                gnb_nsds=tuple(rng.sample(cat.gnb_nsds, len(cat.gnb_nsds))),
                cu_vnfds=tuple(rng.sample(cat.cu_vnfds, len(cat.cu_vnfds))),
                du_vnfds=tuple(rng.sample(cat.du_vnfds, len(cat.du_vnfds))),
                ru_pnfds=tuple(rng.sample(cat.ru_pnfds, len(cat.ru_pnfds))),
            )
            assert validate_catalog(shuffled, area) == baseline


def test_validation_is_deterministic(catalog, area):
    first = validate_catalog(catalog, area)
    second = validate_catalog(catalog, area)
    assert first == second == []


def test_unknown_region_flagged_without_area(catalog, area):
    import dataclasses as dc

    stray = dc.replace(
        catalog.ru_pnfds[0],
        ru_id="ru-stray",
        location=dc.replace(catalog.ru_pnfds[0].location, region_id="atlantis"),
    )
    mutated = dc.replace(catalog, ru_pnfds=catalog.ru_pnfds + (stray,))
    assert validate_catalog(mutated) == []  # no area: RU checks are off
    report = validate_catalog(mutated, area)
    assert {v.rule for v in report} == {"unknown-region"}
