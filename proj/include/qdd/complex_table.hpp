#pragma once

#include "qdd/errors.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <deque>
#include <unordered_map>

namespace qdd {

using fp = double;

/// Componentwise tolerance for canonicalizing complex numbers and for
/// collapsing all-zero blocks to zero stubs.
inline constexpr fp kEps = 1e-10;

/// Row-major 2x2 complex matrix (single-qubit gates and Kraus operators).
using Mat2 = std::array<std::complex<fp>, 4>;

namespace detail {
struct CxEntry {
  fp re;
  fp im;
  std::uint32_t id;
  std::uint32_t next; // chain within a grid bucket
};
} // namespace detail

/// Canonical complex number. A handle into the owning ComplexTable; two
/// handles compare equal iff they refer to the same table entry, which by
/// construction means the underlying values agree within kEps.
class Complex {
public:
  Complex() = default;

  [[nodiscard]] fp re() const { return e_->re; }
  [[nodiscard]] fp im() const { return e_->im; }
  [[nodiscard]] std::complex<fp> value() const { return {e_->re, e_->im}; }
  [[nodiscard]] std::uint32_t id() const { return e_->id; }
  [[nodiscard]] bool isZero() const { return e_->id == 0; }
  [[nodiscard]] bool isOne() const { return e_->id == 1; }

  friend bool operator==(Complex a, Complex b) { return a.e_ == b.e_; }
  friend bool operator!=(Complex a, Complex b) { return a.e_ != b.e_; }

private:
  explicit Complex(const detail::CxEntry* e) : e_(e) {}
  const detail::CxEntry* e_ = nullptr;
  friend class ComplexTable;
};

/// Tolerance-bucketed interning store for complex edge weights.
///
/// lookup() returns the handle of an existing entry whose components both
/// lie within kEps of the query, inserting a fresh entry otherwise. Entries
/// are bucketed on a kEps-grid, so a lookup probes the query's cell and its
/// eight neighbors. Entry ids are assigned in insertion order and the whole
/// structure is deterministic for a deterministic call sequence.
class ComplexTable {
public:
  ComplexTable();

  /// Canonicalize (re, im). Throws NumericError on non-finite input.
  Complex lookup(fp re, fp im);
  Complex lookup(const std::complex<fp>& c) { return lookup(c.real(), c.imag()); }

  [[nodiscard]] Complex zero() const { return Complex{&pool_[0]}; }
  [[nodiscard]] Complex one() const { return Complex{&pool_[1]}; }

  /// Number of distinct canonical entries.
  [[nodiscard]] std::size_t size() const { return pool_.size(); }

private:
  static std::uint64_t cellKey(std::int64_t qre, std::int64_t qim);
  const detail::CxEntry* findInCell(std::uint64_t key, fp re, fp im) const;
  Complex insert(fp re, fp im, std::uint64_t homeKey);

  std::deque<detail::CxEntry> pool_; // stable addresses
  std::unordered_map<std::uint64_t, std::uint32_t> buckets_;
};

} // namespace qdd
