// Small named graphs reused across tests, with hand-computed covariance
// and precision matrices for the four-variable model.
#pragma once

#include <Eigen/Dense>

#include "penpc/graph.hpp"
#include "penpc/simulate.hpp"

namespace fixtures {

// Vertex roles throughout: 0 and 2 are the pair of interest, 1 a parent
// of 2 (or of both), 3 a common child of 0 and 2, 4 an extra vertex.

// 0 -> 3 <- 2, 1 -> 2. Unit weights, unit noise.
inline penpc::DirectedGraph four_dag() {
  return penpc::DirectedGraph(4, {{0, 3}, {1, 2}, {2, 3}});
}

inline Eigen::MatrixXd four_sigma() {
  Eigen::MatrixXd s(4, 4);
  s << 1, 0, 0, 1,
       0, 1, 1, 1,
       0, 1, 2, 2,
       1, 1, 2, 4;
  return s;
}

inline Eigen::MatrixXd four_omega() {
  Eigen::MatrixXd w(4, 4);
  w <<  2,  0,  1, -1,
        0,  2, -1,  0,
        1, -1,  2, -1,
       -1,  0, -1,  1;
  return w;
}

// Five-vertex family: the pair (0,2) is never adjacent, yet shares the
// child 3, so the moral graph always contains 0-2 and pruning must find
// the right separating set.
//   (a) collider only: separated marginally.
inline penpc::DirectedGraph five_a() {
  return penpc::DirectedGraph(5, {{0, 3}, {1, 2}, {2, 3}});
}
//   (b) shared parent 1: separated by {1} only.
inline penpc::DirectedGraph five_b() {
  return penpc::DirectedGraph(5, {{1, 0}, {1, 2}, {0, 3}, {2, 3}});
}
//   (c) shared parents 1 and 4: separated by {1,4} only.
inline penpc::DirectedGraph five_c() {
  return penpc::DirectedGraph(5,
                              {{1, 0}, {1, 2}, {4, 0}, {4, 2}, {0, 3}, {2, 3}});
}
//   (d) like (b) plus a child 4 of the collider (conditioning on 4 opens 3).
inline penpc::DirectedGraph five_d() {
  return penpc::DirectedGraph(5, {{1, 0}, {1, 2}, {0, 3}, {2, 3}, {3, 4}});
}

}  // namespace fixtures
