#include "qdd/complex_table.hpp"

#include <cmath>
#include <limits>

namespace qdd {

namespace {

constexpr std::uint32_t kNoNext = std::numeric_limits<std::uint32_t>::max();

// Values this large would overflow the grid quantization. Quantum states and
// operators live well inside this range.
constexpr fp kMaxMagnitude = 1e6;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t quantize(fp x) { return std::llround(x / kEps); }

} // namespace

ComplexTable::ComplexTable() {
  // Entry 0 is the canonical zero, entry 1 the canonical one.
  insert(0.0, 0.0, cellKey(0, 0));
  insert(1.0, 0.0, cellKey(quantize(1.0), 0));
}

std::uint64_t ComplexTable::cellKey(std::int64_t qre, std::int64_t qim) {
  return mix64(static_cast<std::uint64_t>(qre)) ^
         (mix64(static_cast<std::uint64_t>(qim)) << 1);
}

const detail::CxEntry* ComplexTable::findInCell(std::uint64_t key, fp re,
                                                fp im) const {
  auto it = buckets_.find(key);
  if (it == buckets_.end()) {
    return nullptr;
  }
  for (std::uint32_t i = it->second; i != kNoNext; i = pool_[i].next) {
    const auto& e = pool_[i];
    if (std::abs(e.re - re) < kEps && std::abs(e.im - im) < kEps) {
      return &e;
    }
  }
  return nullptr;
}

Complex ComplexTable::insert(fp re, fp im, std::uint64_t homeKey) {
  const auto id = static_cast<std::uint32_t>(pool_.size());
  auto [it, fresh] = buckets_.try_emplace(homeKey, id);
  pool_.push_back(detail::CxEntry{re, im, id, fresh ? kNoNext : it->second});
  it->second = id;
  return Complex{&pool_.back()};
}

Complex ComplexTable::lookup(fp re, fp im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw NumericError("complex lookup with non-finite component");
  }
  if (std::abs(re) > kMaxMagnitude || std::abs(im) > kMaxMagnitude) {
    throw NumericError("complex magnitude exceeds supported range");
  }
  if (std::abs(re) < kEps && std::abs(im) < kEps) {
    return zero();
  }
  // avoid storing negative zero
  if (re == 0.0) {
    re = 0.0;
  }
  if (im == 0.0) {
    im = 0.0;
  }

  const auto qre = quantize(re);
  const auto qim = quantize(im);
  const auto home = cellKey(qre, qim);
  if (const auto* e = findInCell(home, re, im)) {
    return Complex{e};
  }
  // A within-kEps entry can live one grid cell away in either component.
  for (int dr = -1; dr <= 1; ++dr) {
    for (int di = -1; di <= 1; ++di) {
      if (dr == 0 && di == 0) {
        continue;
      }
      if (const auto* e = findInCell(cellKey(qre + dr, qim + di), re, im)) {
        return Complex{e};
      }
    }
  }
  return insert(re, im, home);
}

} // namespace qdd
