#pragma once

#include "qdd/complex_table.hpp"

#include <array>
#include <cstdint>

namespace qdd {

/// Qubit index, doubling as DD level. Level 0 is the most significant qubit
/// and sits at the top of the diagram.
using Qubit = std::int32_t;

/// Weighted edge into a decision diagram. A null node pointer denotes the
/// terminal; an edge with canonical-zero weight always points to the terminal
/// and represents an all-zero block (zero stub).
template <class Node> struct Edge {
  Node* node = nullptr;
  Complex w{};

  [[nodiscard]] bool isTerminal() const { return node == nullptr; }
  [[nodiscard]] bool isZero() const { return w.isZero(); }

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.node == b.node && a.w == b.w;
  }
  friend bool operator!=(const Edge& a, const Edge& b) { return !(a == b); }
};

/// Vector DD node: two successors (qubit = |0>, |1>).
struct vNode {
  std::array<Edge<vNode>, 2> e;
  vNode* next = nullptr; // unique-table chain / free list
  std::uint64_t id = 0;  // stable creation id, deterministic across runs
  std::uint32_t ref = 0;
  Qubit level = 0;
};

/// Matrix DD node: four successors in block order
/// (e00=a upper-left, e01=b upper-right, e10=c lower-left, e11=d lower-right).
struct mNode {
  std::array<Edge<mNode>, 4> e;
  mNode* next = nullptr;
  std::uint64_t id = 0;
  std::uint32_t ref = 0;
  Qubit level = 0;
};

using vEdge = Edge<vNode>;
using mEdge = Edge<mNode>;

/// Stable id of an edge target (0 = terminal).
template <class Node> std::uint64_t nodeId(const Node* p) {
  return p == nullptr ? 0 : p->id;
}

} // namespace qdd
