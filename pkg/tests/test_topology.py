"""Deployment-area queries: RU coverage, fronthaul techs, PoP latency."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ranslicer.errors import TopologyError
from ranslicer.model import FronthaulTech
from ranslicer.topology import (
    DeploymentArea,
    Pop,
    PopTier,
    TransportLink,
    check_area,
    fronthaul_techs,
    pop_latency,
    select_rus,
)


class TestSelectRus:
    def test_city_center_only(self, area):
        rus = select_rus(area, ["city-center"])
        assert [r.ru_id for r in rus] == [f"ru-cc-{i:02d}" for i in range(1, 9)]

    def test_all_regions_gives_all_rus(self, area):
        rus = select_rus(area, ["city-center", "industrial", "suburban"])
        assert len(rus) == len(area.rus)
        assert [r.ru_id for r in rus] == sorted(r.ru_id for r in area.rus)

    def test_empty_targets(self, area):
        assert select_rus(area, []) == []

    def test_unknown_region(self, area):
        with pytest.raises(TopologyError) as err:
            select_rus(area, ["mars"])
        assert err.value.code == "UNKNOWN_REGION"

    @given(
        a=st.sets(st.sampled_from(["city-center", "industrial", "suburban"])),
        b=st.sets(st.sampled_from(["city-center", "industrial", "suburban"])),
    )
    def test_union_distributes(self, a, b):
        from ranslicer.topology import reference_area

        area = reference_area()
        union = {r.ru_id for r in select_rus(area, sorted(a | b))}
        parts = {r.ru_id for r in select_rus(area, sorted(a))} | {
            r.ru_id for r in select_rus(area, sorted(b))
        }
        assert union == parts


class TestFronthaulTechs:
    def test_reference_regions(self, area):
        assert fronthaul_techs(area, ["suburban"]) == {FronthaulTech.CPRI}
        assert fronthaul_techs(area, ["city-center"]) == {FronthaulTech.ECPRI}
        assert fronthaul_techs(area, ["city-center", "industrial", "suburban"]) == {
            FronthaulTech.CPRI, FronthaulTech.ECPRI,
        }

    def test_ru_tech_matches_region(self, area):
        for ru in area.rus:
            assert ru.connection_tech is area.region(ru.location.region_id).fronthaul_tech


def _triangle() -> DeploymentArea:
    pops = tuple(Pop(p, PopTier.EDGE, 8, 16.0) for p in ("pa", "pb", "pc"))
    links = (
        TransportLink("pa", "pb", 1.0),
        TransportLink("pb", "pc", 1.0),
        TransportLink("pa", "pc", 2.5),
    )
    return DeploymentArea((), pops, links, ())


def _enumerate_paths(area: DeploymentArea, src: str, dst: str) -> float | None:
    """Oracle: cheapest simple path by exhaustive enumeration."""
    pops = [p.pop_id for p in area.pops]
    best = None
    for length in range(len(pops)):
        for middle in itertools.permutations([p for p in pops if p not in (src, dst)], length):
            path = (src, *middle, dst)
            total = 0.0
            ok = True
            for a, b in zip(path, path[1:]):
                weights = [
                    l.latency_ms for l in area.links if {l.a, l.b} == {a, b}
                ]
                if not weights:
                    ok = False
                    break
                total += min(weights)
            if ok and (best is None or total < best):
                best = total
    return best


class TestPopLatency:
    def test_self_is_zero(self, area):
        assert pop_latency(area, "pop-edge-1", "pop-edge-1") == 0.0

    def test_single_edge(self, area):
        assert pop_latency(area, "pop-agg-city-center", "pop-edge-1") == 0.5

    def test_triangle_two_hop_beats_direct(self):
        tri = _triangle()
        assert pop_latency(tri, "pa", "pc") == 2.0
        assert pop_latency(tri, "pa", "pc") == _enumerate_paths(tri, "pa", "pc")

    def test_matches_exhaustive_oracle_on_reference_area(self, area):
        for a, b in itertools.combinations([p.pop_id for p in area.pops], 2):
            assert pop_latency(area, a, b) == pytest.approx(_enumerate_paths(area, a, b))

    def test_symmetry_and_triangle_inequality(self, area):
        ids = [p.pop_id for p in area.pops]
        for a, b in itertools.combinations(ids, 2):
            assert pop_latency(area, a, b) == pop_latency(area, b, a)
        for a, b, c in itertools.permutations(ids, 3):
            assert pop_latency(area, a, c) <= pop_latency(area, a, b) + pop_latency(area, b, c) + 1e-9

    def test_unreachable(self, area):
        import dataclasses

        island = dataclasses.replace(
            area, pops=area.pops + (Pop("pop-island", PopTier.EDGE, 8, 16.0),)
        )
        with pytest.raises(TopologyError) as err:
            pop_latency(island, "pop-edge-1", "pop-island")
        assert err.value.code == "UNREACHABLE"

    def test_unknown_pop(self, area):
        with pytest.raises(TopologyError):
            pop_latency(area, "pop-edge-1", "nope")


class TestAreaChecks:
    def test_reference_area_is_clean(self, area):
        assert check_area(area) == []

    def test_detects_uncovered_cell_site(self, area):
        import dataclasses

        stripped = dataclasses.replace(area, rus=area.rus[1:])
        problems = check_area(stripped)
        assert any("hosts no RU" in p for p in problems)

    def test_detects_shared_aggregation_pop(self, area):
        import dataclasses

        regions = list(area.regions)
        regions[1] = dataclasses.replace(regions[1], aggregation_pop=regions[0].aggregation_pop)
        shared = dataclasses.replace(area, regions=tuple(regions))
        problems = check_area(shared)
        assert any("serves both" in p for p in problems)
