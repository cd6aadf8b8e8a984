"""
Tests for tours: lengths, validation, edge sets and the .tour format.
"""
import pytest

from conftest import tsplib_file
from tour import (Tour, TourFormatError, edges_of, read_tour, tour_from_adjacency,
                  tour_length, validate, write_tour)
from tsp_instance import load_instance


class TestTourLength:
    def test_triangle(self, triangle):
        assert tour_length(triangle, Tour((0, 1, 2))) == 12

    def test_reversal_and_rotation_invariant(self, generator):
        inst = generator.random_instance(25)
        t = generator.random_tour(25)
        length = tour_length(inst, t)
        assert tour_length(inst, Tour(tuple(reversed(t.order)))) == length
        assert tour_length(inst, Tour(t.order[7:] + t.order[:7])) == length

    def test_square_perimeter_and_crossing(self, square):
        assert tour_length(square, Tour((0, 1, 2, 3))) == 40
        assert tour_length(square, Tour((0, 2, 1, 3))) == 48

    def test_accepts_plain_sequences(self, triangle):
        assert tour_length(triangle, [2, 1, 0]) == 12

    def test_berlin52_optimal_tour(self):
        inst = load_instance(tsplib_file("berlin52.tsp"))
        with open(tsplib_file("berlin52.opt.tour")) as f:
            t = read_tour(f.read(), inst.n)
        assert tour_length(inst, t) == 7542


class TestValidate:
    def test_ok(self):
        assert validate(Tour((0, 1, 2, 3)), 4) == (True, "ok")

    def test_duplicate_city(self):
        ok, message = validate([0, 1, 1, 3], 4)
        assert not ok
        assert "duplicate city 1" in message

    def test_wrong_length(self):
        ok, message = validate([0, 1, 2], 4)
        assert not ok
        assert "wrong length" in message

    def test_city_outside_range(self):
        ok, message = validate([0, 1, 2, 4], 4)
        assert not ok
        assert "outside" in message


class TestEdges:
    def test_triangle_edges(self):
        assert edges_of(Tour((0, 1, 2))) == {(0, 1), (1, 2), (0, 2)}

    def test_rotation_invariance(self):
        assert edges_of(Tour((0, 1, 2, 3))) == edges_of(Tour((1, 2, 3, 0)))

    def test_reversal_invariance(self):
        assert edges_of(Tour((0, 1, 2, 3))) == edges_of(Tour((0, 3, 2, 1)))

    def test_every_city_has_degree_two(self, generator):
        t = generator.random_tour(50)
        edges = t.edges
        assert len(edges) == 50
        degree = [0] * 50
        for u, v in edges:
            degree[u] += 1
            degree[v] += 1
        assert set(degree) == {2}

    def test_equality_follows_edge_sets(self):
        assert Tour((0, 1, 2, 3)) == Tour((2, 1, 0, 3))
        assert Tour((0, 1, 2, 3)) != Tour((0, 2, 1, 3))
        assert len({Tour((0, 1, 2, 3)), Tour((1, 2, 3, 0)), Tour((0, 3, 2, 1))}) == 1


class TestNavigation:
    def test_succ_pred_wrap(self):
        t = Tour((2, 0, 3, 1))
        assert t.succ(1) == 2
        assert t.pred(2) == 1
        assert t.succ(0) == 3

    def test_adjacency(self):
        assert Tour((2, 0, 3, 1)).adjacency() == [[2, 3], [3, 2], [1, 0], [0, 1]]

    def test_from_adjacency(self):
        t = Tour((2, 0, 3, 1))
        assert tour_from_adjacency(t.adjacency()) == t

    def test_from_adjacency_rejects_two_cycles(self):
        adj = [[1, 2], [2, 0], [0, 1], [4, 5], [5, 3], [3, 4]]
        with pytest.raises(ValueError):
            tour_from_adjacency(adj)


class TestTourFile:
    def test_write_includes_length_comment(self):
        text = write_tour(Tour((0, 2, 1)), "tri", 12)
        assert "COMMENT : Length = 12" in text
        assert "TOUR_SECTION\n1\n3\n2\n-1\nEOF" in text

    def test_read_written_tour(self):
        t = Tour((3, 0, 2, 1, 4))
        assert read_tour(write_tour(t, "five")).order == t.order

    def test_read_without_terminator(self):
        assert read_tour("TOUR_SECTION\n1 2 3\n", 3).order == (0, 1, 2)

    def test_missing_section(self):
        with pytest.raises(TourFormatError, match="TOUR_SECTION"):
            read_tour("NAME : x\nDIMENSION : 3\n")

    def test_dimension_mismatch(self):
        with pytest.raises(TourFormatError, match="DIMENSION"):
            read_tour("DIMENSION : 4\nTOUR_SECTION\n1\n2\n3\n-1\n", 3)

    def test_invalid_permutation(self):
        with pytest.raises(TourFormatError, match="duplicate"):
            read_tour("TOUR_SECTION\n1\n2\n2\n-1\n", 3)

    def test_non_integer_id(self):
        with pytest.raises(TourFormatError, match="non-integer"):
            read_tour("TOUR_SECTION\n1\nx\n-1\n")
