#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "penpc/errors.hpp"
#include "penpc/eval.hpp"
#include "penpc/graph.hpp"

using penpc::Confusion;
using penpc::UndirectedGraph;

TEST_CASE("confusion counts over unordered pairs") {
  UndirectedGraph truth(3, {{0, 1}, {1, 2}});
  UndirectedGraph est(3, {{0, 1}, {0, 2}});
  Confusion c = penpc::confusion(est, truth);
  CHECK(c.tp == 1);
  CHECK(c.fp == 1);
  CHECK(c.tn == 0);
  CHECK(c.fn == 1);
  CHECK(c.total() == 3);
  CHECK(penpc::tpr(c) == doctest::Approx(0.5));
  CHECK(penpc::fpr(c) == doctest::Approx(1.0));
  CHECK(penpc::hamming(c) == 2);
}

TEST_CASE("perfect recovery and empty graphs") {
  UndirectedGraph g(4, {{0, 1}, {2, 3}});
  Confusion c = penpc::confusion(g, g);
  CHECK(c.tp == 2);
  CHECK(c.fp == 0);
  CHECK(c.fn == 0);
  CHECK(c.tn == 4);
  CHECK(penpc::tpr(c) == 1.0);
  CHECK(penpc::fpr(c) == 0.0);
  CHECK(penpc::hamming(c) == 0);

  Confusion empty = penpc::confusion(UndirectedGraph(4), UndirectedGraph(4));
  CHECK(empty.tn == 6);
  CHECK(penpc::fpr(empty) == 0.0);
  CHECK(penpc::hamming(empty) == 0);
  CHECK_THROWS_AS(penpc::tpr(empty), penpc::numeric_error);

  UndirectedGraph full(3, {{0, 1}, {0, 2}, {1, 2}});
  Confusion all_true = penpc::confusion(full, full);
  CHECK_THROWS_AS(penpc::fpr(all_true), penpc::numeric_error);
}

TEST_CASE("confusion requires matching vertex counts") {
  CHECK_THROWS_AS(penpc::confusion(UndirectedGraph(3), UndirectedGraph(4)),
                  std::invalid_argument);
}

TEST_CASE("roc points group by alpha and sort by fpr") {
  Confusion a{8, 1, 9, 2};   // tpr 0.8, fpr 0.1
  Confusion b{6, 1, 19, 4};  // tpr 0.6, fpr 0.05
  Confusion c{9, 3, 7, 1};   // tpr 0.9, fpr 0.3
  auto points = penpc::roc_points({{0.05, a}, {0.01, b}, {0.05, c}});
  REQUIRE(points.size() == 2);
  // alpha = 0.01 alone; alpha = 0.05 averaged
  CHECK(points[0].first == doctest::Approx(0.05));
  CHECK(points[0].second == doctest::Approx(0.6));
  CHECK(points[1].first == doctest::Approx(0.2));
  CHECK(points[1].second == doctest::Approx(0.85));
  CHECK_THROWS_AS(penpc::roc_points({}), std::invalid_argument);
}
