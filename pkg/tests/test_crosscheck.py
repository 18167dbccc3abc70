
from okaforge.algebra import GaussianRational as GR
from okaforge.crosscheck import grid_search_pairs, match_pair_sets
from okaforge.domains import PuncturedPlane
from okaforge.doublepoints import double_points
from okaforge.cli.parser import parse_map


def test_grid_finds_the_pairs_of_a_simple_map():
    psi = parse_map("(z^2, z^3)")
    # z^2 = w^2 and z^3 = w^3 with z != w has no solution; the grid must agree
    assert grid_search_pairs(psi.first, psi.second, box=3.0, per_axis=7) == []


def test_grid_and_resultant_agree_on_a_polynomial_map():
    psi = parse_map("(z^3 - 2z, z*(z-1))")
    X = PuncturedPlane([GR(0), GR(1)])
    report = double_points(psi, X)
    oracle = grid_search_pairs(psi.first, psi.second, punctures=[0, 1], box=4.0, per_axis=9)
    missing, extra = match_pair_sets(report.pairs, oracle, box=4.0)
    assert missing == [] and extra == []
    assert len(report.pairs) >= 1


def test_grid_respects_punctures():
    psi = parse_map("(z^2, z^2*(z-1))")
    found = grid_search_pairs(psi.first, psi.second, punctures=[0, 1], box=3.0, per_axis=7)
    assert all(abs(x) > 1e-6 and abs(y) > 1e-6 for x, y in found)


def test_match_pair_sets_reports_both_sides():
    class P:
        def __init__(self, x, y):
            self.x, self.y = x, y

    cert = [P(1 + 0j, 2 + 0j), P(0.5j, -0.5j)]
    oracle = [(2 + 0j, 1 + 0j), (3 + 0j, -3 + 0j)]
    missing, extra = match_pair_sets(cert, oracle, box=5.0)
    assert missing == [(0.5j, -0.5j)]
    assert extra == [(3 + 0j, -3 + 0j)]


def test_match_pair_sets_ignores_certified_pairs_near_the_box_edge():
    class P:
        def __init__(self, x, y):
            self.x, self.y = x, y

    missing, _ = match_pair_sets([P(4.9 + 0j, 0j)], [], box=5.0, margin=0.25)
    assert missing == []
