"""Catalog consistency checking.

``validate_catalog`` walks a catalog and returns every rule violation as
data; an empty report means the catalog is fit for planning.  Violations
carry the owning document id, a JSON-pointer-ish path and a stable rule
id.  The report is sorted, so it is independent of document order.

Rule ids:

==================== =====================================================
flavor-count         descriptor has the wrong number of flavors (3/2/1)
flavor-tech-mapping  flavor id, fronthaul techs and split option disagree
empty-subsets        flavor carries no IL subsets
empty-levels         IL subset carries no levels
bad-subset-key       subset key has the wrong kind or an inverted range
role-mismatch        IL role does not match the descriptor kind
non-positive-capacity  VM sizing or capacity field is not positive
non-monotone-levels  levels not ascending / nothing strictly increases
dangling-reference   a cross-reference does not resolve
du-count-mismatch    gNB IL du_count differs from its DU reference count
tech-not-permitted   referenced DU flavor tech outside the gNB flavor
gnb-il-capacity      declared gNB IL capacity exceeds CU/DU backing
duplicate-id         document or IL identifier used twice
unknown-region       RU names a region absent from the deployment area
ru-tech-mismatch     RU connection tech differs from its region's
==================== =====================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .model import (
    Catalog,
    CuIlCapacity,
    CuSubsetKey,
    CuVnfd,
    DuIlCapacity,
    DuSubsetKey,
    DuVnfd,
    Flavor,
    FronthaulTech,
    GnbIlCapacity,
    GnbNsd,
    GnbSubsetKey,
    IlSubset,
    InstantiationLevel,
)

if TYPE_CHECKING:
    from .topology import DeploymentArea


@dataclass(frozen=True, order=True)
class Violation:
    document_id: str
    path: str
    rule: str
    message: str


# Fixed flavor-id semantics for the gNB NSD (paperless catalogs must still
# honour these; planning keys off them).
GNB_FLAVOR_TECHS: dict[int, frozenset[FronthaulTech]] = {
    1: frozenset({FronthaulTech.CPRI}),
    2: frozenset({FronthaulTech.ECPRI}),
    3: frozenset({FronthaulTech.CPRI, FronthaulTech.ECPRI}),
}

# DU-RU split option implied by the fronthaul technology.
SPLIT_FOR_TECH: dict[FronthaulTech, int] = {
    FronthaulTech.ECPRI: 7,
    FronthaulTech.CPRI: 8,
}

CU_SPLIT_OPTION = 2


def validate_catalog(catalog: Catalog, area: "DeploymentArea | None" = None) -> list[Violation]:
    """Return all invariant violations in ``catalog``; empty means valid.

    RU-versus-region technology checks need topology context and run only
    when ``area`` is given (the CLI passes it for ``validate <catalog>
    <topology>``).
    """
    report: list[Violation] = []
    _check_duplicate_ids(catalog, report)
    for nsd in catalog.gnb_nsds:
        _check_gnb_nsd(nsd, catalog, report)
    for vnfd in catalog.du_vnfds:
        _check_du_vnfd(vnfd, report)
    for vnfd in catalog.cu_vnfds:
        _check_cu_vnfd(vnfd, report)
    for nsst in catalog.nssts:
        if catalog.gnb_nsd(nsst.nsd_ref) is None:
            report.append(
                Violation(nsst.nsst_id, "nsd_ref", "dangling-reference",
                          f"gNB NSD {nsst.nsd_ref!r} not in catalog")
            )
    if area is not None:
        _check_rus(catalog, area, report)
    return sorted(set(report))


def _check_duplicate_ids(catalog: Catalog, report: list[Violation]) -> None:
    for name, ids in (
        ("nsst", [t.nsst_id for t in catalog.nssts]),
        ("gnb_nsd", [d.descriptor_id for d in catalog.gnb_nsds]),
        ("vnfd", [d.descriptor_id for d in (*catalog.cu_vnfds, *catalog.du_vnfds)]),
        ("ru_pnfd", [r.ru_id for r in catalog.ru_pnfds]),
    ):
        seen: set[str] = set()
        for doc_id in ids:
            if doc_id in seen:
                report.append(Violation(doc_id, "", "duplicate-id", f"duplicate {name} id"))
            seen.add(doc_id)


def _check_levels(
    doc_id: str,
    path: str,
    subset: IlSubset,
    role_type: type,
    report: list[Violation],
) -> None:
    if not subset.levels:
        report.append(Violation(doc_id, path, "empty-levels", "IL subset has no levels"))
        return
    for i, level in enumerate(subset.levels):
        lpath = f"{path}.levels[{i}]"
        if not isinstance(level.role_capacity, role_type):
            report.append(
                Violation(doc_id, lpath, "role-mismatch",
                          f"expected {role_type.__name__} role")
            )
            return
        vm = level.vm_spec
        if vm.vcpu_count <= 0 or vm.cpu_ghz <= 0 or vm.ram_gb <= 0:
            report.append(Violation(doc_id, lpath, "non-positive-capacity", "VM sizing must be positive"))
        for cap_name, value in _capacity_fields(level):
            if value <= 0:
                report.append(
                    Violation(doc_id, lpath, "non-positive-capacity", f"{cap_name} must be positive")
                )
    for i in range(1, len(subset.levels)):
        prev, cur = subset.levels[i - 1], subset.levels[i]
        lpath = f"{path}.levels[{i}]"
        prev_vm = (prev.vm_spec.vcpu_count, prev.vm_spec.cpu_ghz, prev.vm_spec.ram_gb)
        cur_vm = (cur.vm_spec.vcpu_count, cur.vm_spec.cpu_ghz, cur.vm_spec.ram_gb)
        if any(c < p for p, c in zip(prev_vm, cur_vm)):
            report.append(
                Violation(doc_id, lpath, "non-monotone-levels", "VM resources decrease along the subset")
            )
        prev_caps = [v for _, v in _capacity_fields(prev)]
        cur_caps = [v for _, v in _capacity_fields(cur)]
        if any(c < p for p, c in zip(prev_caps, cur_caps)):
            report.append(
                Violation(doc_id, lpath, "non-monotone-levels", "capacities decrease along the subset")
            )
        elif not any(c > p for p, c in zip(prev_caps, cur_caps)):
            report.append(
                Violation(doc_id, lpath, "non-monotone-levels",
                          "no capacity field strictly increases between consecutive levels")
            )


def _capacity_fields(level: InstantiationLevel) -> list[tuple[str, float]]:
    role = level.role_capacity
    if isinstance(role, DuIlCapacity):
        return [("max_cell_sites", role.max_cell_sites),
                ("aggregate_capacity_mbps", role.aggregate_capacity_mbps)]
    if isinstance(role, CuIlCapacity):
        return [("max_dus", role.max_dus),
                ("aggregate_capacity_mbps", role.aggregate_capacity_mbps)]
    return [("du_count", role.du_count),
            ("aggregate_capacity_mbps", role.aggregate_capacity_mbps)]


def _check_level_ids(doc_id: str, flavors: tuple[Flavor, ...], report: list[Violation]) -> None:
    seen: set[str] = set()
    for flavor in flavors:
        for subset in flavor.il_subsets:
            for level in subset.levels:
                if level.il_id in seen:
                    report.append(
                        Violation(doc_id, f"il:{level.il_id}", "duplicate-id", "duplicate IL id")
                    )
                seen.add(level.il_id)


def _check_gnb_nsd(nsd: GnbNsd, catalog: Catalog, report: list[Violation]) -> None:
    doc_id = nsd.descriptor_id
    if len(nsd.flavors) != 3:
        report.append(
            Violation(doc_id, "flavors", "flavor-count",
                      f"expected 3 flavors, found {len(nsd.flavors)}")
        )
    _check_level_ids(doc_id, nsd.flavors, report)
    for fi, flavor in enumerate(nsd.flavors):
        fpath = f"flavors[{fi}]"
        expected = GNB_FLAVOR_TECHS.get(flavor.flavor_id)
        if expected is None or flavor.fronthaul_techs != expected or flavor.split_option is not None:
            report.append(
                Violation(doc_id, fpath, "flavor-tech-mapping",
                          f"gNB flavor {flavor.flavor_id} must carry techs "
                          f"{sorted(t.value for t in expected) if expected else '1..3'} and no split option")
            )
        if not flavor.il_subsets:
            report.append(Violation(doc_id, fpath, "empty-subsets", "flavor has no IL subsets"))
        for si, subset in enumerate(flavor.il_subsets):
            spath = f"{fpath}.il_subsets[{si}]"
            if not isinstance(subset.key, GnbSubsetKey):
                report.append(Violation(doc_id, spath, "bad-subset-key", "expected a served-regions key"))
                continue
            _check_levels(doc_id, spath, subset, GnbIlCapacity, report)
            for li, level in enumerate(subset.levels):
                if isinstance(level.role_capacity, GnbIlCapacity):
                    _check_gnb_il(doc_id, f"{spath}.levels[{li}]", flavor, level, catalog, report)


def _check_gnb_il(
    doc_id: str,
    path: str,
    flavor: Flavor,
    level: InstantiationLevel,
    catalog: Catalog,
    report: list[Violation],
) -> None:
    role: GnbIlCapacity = level.role_capacity
    if role.du_count != len(role.du_il_refs):
        report.append(
            Violation(doc_id, path, "du-count-mismatch",
                      f"du_count={role.du_count} but {len(role.du_il_refs)} DU IL references")
        )
    cu = catalog.resolve_vnf_il(role.cu_il_ref)
    if cu is None or not isinstance(cu.level.role_capacity, CuIlCapacity) or not any(
        cu.vnfd_id == d.descriptor_id for d in catalog.cu_vnfds
    ):
        report.append(
            Violation(doc_id, f"{path}.cu_il_ref", "dangling-reference",
                      f"CU IL {role.cu_il_ref} not found")
        )
        cu = None
    du_capacity = 0.0
    for ri, ref in enumerate(role.du_il_refs):
        rpath = f"{path}.du_il_refs[{ri}]"
        du = catalog.resolve_vnf_il(ref)
        if du is None or not isinstance(du.level.role_capacity, DuIlCapacity) or not any(
            du.vnfd_id == d.descriptor_id for d in catalog.du_vnfds
        ):
            report.append(Violation(doc_id, rpath, "dangling-reference", f"DU IL {ref} not found"))
            continue
        du_capacity += du.level.role_capacity.aggregate_capacity_mbps
        if not du.flavor.fronthaul_techs <= flavor.fronthaul_techs:
            report.append(
                Violation(doc_id, rpath, "tech-not-permitted",
                          f"DU flavor techs {sorted(t.value for t in du.flavor.fronthaul_techs)} "
                          f"not permitted by gNB flavor {flavor.flavor_id}")
            )
    if cu is not None and len(role.du_il_refs) == role.du_count:
        cu_role: CuIlCapacity = cu.level.role_capacity
        backing = min(cu_role.aggregate_capacity_mbps, du_capacity)
        if role.du_count > cu_role.max_dus:
            report.append(
                Violation(doc_id, path, "gnb-il-capacity",
                          f"du_count={role.du_count} exceeds referenced CU IL max_dus={cu_role.max_dus}")
            )
        if role.aggregate_capacity_mbps > backing:
            report.append(
                Violation(doc_id, path, "gnb-il-capacity",
                          f"declared capacity {role.aggregate_capacity_mbps} exceeds CU/DU backing {backing}")
            )


def _check_du_vnfd(vnfd: DuVnfd, report: list[Violation]) -> None:
    doc_id = vnfd.descriptor_id
    if len(vnfd.flavors) != 2:
        report.append(
            Violation(doc_id, "flavors", "flavor-count",
                      f"expected 2 flavors, found {len(vnfd.flavors)}")
        )
    _check_level_ids(doc_id, vnfd.flavors, report)
    techs_seen: set[FronthaulTech] = set()
    for fi, flavor in enumerate(vnfd.flavors):
        fpath = f"flavors[{fi}]"
        if len(flavor.fronthaul_techs) != 1:
            report.append(
                Violation(doc_id, fpath, "flavor-tech-mapping",
                          "DU flavor must carry exactly one fronthaul tech")
            )
        else:
            (tech,) = flavor.fronthaul_techs
            techs_seen.add(tech)
            if flavor.split_option != SPLIT_FOR_TECH[tech]:
                report.append(
                    Violation(doc_id, fpath, "flavor-tech-mapping",
                              f"{tech.value} maps to split option {SPLIT_FOR_TECH[tech]}, "
                              f"found {flavor.split_option}")
                )
        if not flavor.il_subsets:
            report.append(Violation(doc_id, fpath, "empty-subsets", "flavor has no IL subsets"))
        for si, subset in enumerate(flavor.il_subsets):
            spath = f"{fpath}.il_subsets[{si}]"
            key = subset.key
            if not isinstance(key, DuSubsetKey):
                report.append(Violation(doc_id, spath, "bad-subset-key", "expected a DU cell-site key"))
                continue
            if not 1 <= key.min_cell_sites <= key.max_cell_sites:
                report.append(
                    Violation(doc_id, spath, "bad-subset-key",
                              f"cell-site range [{key.min_cell_sites}, {key.max_cell_sites}] is invalid")
                )
            if len(flavor.fronthaul_techs) == 1 and key.fronthaul_tech not in flavor.fronthaul_techs:
                report.append(
                    Violation(doc_id, spath, "bad-subset-key",
                              "subset fronthaul tech differs from its flavor")
                )
            _check_levels(doc_id, spath, subset, DuIlCapacity, report)
            for li, level in enumerate(subset.levels):
                role = level.role_capacity
                if isinstance(role, DuIlCapacity) and role.max_cell_sites < key.max_cell_sites:
                    report.append(
                        Violation(doc_id, f"{spath}.levels[{li}]", "bad-subset-key",
                                  "level serves fewer cell sites than the subset range promises")
                    )
    if len(vnfd.flavors) == 2 and techs_seen == {FronthaulTech.CPRI, FronthaulTech.ECPRI}:
        pass  # one flavor per split option, as required
    elif len(vnfd.flavors) == 2:
        report.append(
            Violation(doc_id, "flavors", "flavor-tech-mapping",
                      "DU VNFD must carry one CPRI and one eCPRI flavor")
        )


def _check_cu_vnfd(vnfd: CuVnfd, report: list[Violation]) -> None:
    doc_id = vnfd.descriptor_id
    if len(vnfd.flavors) != 1:
        report.append(
            Violation(doc_id, "flavors", "flavor-count",
                      f"expected 1 flavor, found {len(vnfd.flavors)}")
        )
    _check_level_ids(doc_id, vnfd.flavors, report)
    for fi, flavor in enumerate(vnfd.flavors):
        fpath = f"flavors[{fi}]"
        if flavor.split_option != CU_SPLIT_OPTION:
            report.append(
                Violation(doc_id, fpath, "flavor-tech-mapping",
                          f"CU flavor must declare split option {CU_SPLIT_OPTION}")
            )
        if not flavor.il_subsets:
            report.append(Violation(doc_id, fpath, "empty-subsets", "flavor has no IL subsets"))
        for si, subset in enumerate(flavor.il_subsets):
            spath = f"{fpath}.il_subsets[{si}]"
            key = subset.key
            if not isinstance(key, CuSubsetKey):
                report.append(Violation(doc_id, spath, "bad-subset-key", "expected a served-DU-count key"))
                continue
            if not 1 <= key.min_dus <= key.max_dus:
                report.append(
                    Violation(doc_id, spath, "bad-subset-key",
                              f"DU-count range [{key.min_dus}, {key.max_dus}] is invalid")
                )
            _check_levels(doc_id, spath, subset, CuIlCapacity, report)


def _check_rus(catalog: Catalog, area: "DeploymentArea", report: list[Violation]) -> None:
    for ru in catalog.ru_pnfds:
        region = area.region(ru.location.region_id)
        if region is None:
            report.append(
                Violation(ru.ru_id, "location.region_id", "unknown-region",
                          f"region {ru.location.region_id!r} not in deployment area")
            )
            continue
        if ru.connection_tech is not region.fronthaul_tech:
            report.append(
                Violation(ru.ru_id, "connection_tech", "ru-tech-mismatch",
                          f"RU uses {ru.connection_tech.value} but region "
                          f"{region.region_id} runs {region.fronthaul_tech.value}")
            )
