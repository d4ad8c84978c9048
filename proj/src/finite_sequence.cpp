#include "bmt/finite_sequence.hpp"

#include <algorithm>

#include "bmt/summation.hpp"

namespace bmt {

FiniteSequence::FiniteSequence(long offset, std::vector<cplx> values)
    : offset_(offset), values_(std::move(values)) {
  size_t lead = 0;
  while (lead < values_.size() && values_[lead] == cplx{0.0, 0.0}) ++lead;
  size_t tail = values_.size();
  while (tail > lead && values_[tail - 1] == cplx{0.0, 0.0}) --tail;
  if (lead > 0 || tail < values_.size()) {
    values_.assign(values_.begin() + static_cast<long>(lead),
                   values_.begin() + static_cast<long>(tail));
    offset_ += static_cast<long>(lead);
  }
  if (values_.empty()) offset_ = 0;
}

FiniteSequence FiniteSequence::delta(long n, cplx v) {
  return FiniteSequence(n, {v});
}

FiniteSequence FiniteSequence::shifted(long j) const {
  if (empty()) return {};
  return FiniteSequence(offset_ + j, values_);
}

FiniteSequence FiniteSequence::reflected() const {
  if (empty()) return {};
  std::vector<cplx> v(values_.rbegin(), values_.rend());
  return FiniteSequence(-hi(), std::move(v));
}

FiniteSequence FiniteSequence::conjugated() const {
  std::vector<cplx> v(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) v[i] = std::conj(values_[i]);
  return FiniteSequence(offset_, std::move(v));
}

double FiniteSequence::l1() const {
  NeumaierSum s;
  for (const cplx& v : values_) s.add(std::abs(v));
  return s.value();
}

double FiniteSequence::linf() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

FiniteSequence operator+(const FiniteSequence& x, const FiniteSequence& y) {
  if (x.empty()) return y;
  if (y.empty()) return x;
  const long lo = std::min(x.lo(), y.lo());
  const long hi = std::max(x.hi(), y.hi());
  std::vector<cplx> v(static_cast<size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) v[static_cast<size_t>(n - lo)] = x.at(n) + y.at(n);
  return FiniteSequence(lo, std::move(v));
}

FiniteSequence operator-(const FiniteSequence& x, const FiniteSequence& y) {
  return x + (cplx{-1.0, 0.0} * y);
}

FiniteSequence operator*(cplx c, const FiniteSequence& x) {
  std::vector<cplx> v(x.values());
  for (cplx& z : v) z *= c;
  return FiniteSequence(x.offset(), std::move(v));
}

FiniteSequence FiniteSequence::Builder::build() const {
  if (entries_.empty()) return {};
  const long lo = entries_.begin()->first;
  const long hi = entries_.rbegin()->first;
  std::vector<cplx> v(static_cast<size_t>(hi - lo + 1));
  for (const auto& [n, z] : entries_) v[static_cast<size_t>(n - lo)] = z;
  return FiniteSequence(lo, std::move(v));
}

double sup_distance(const FiniteSequence& x, const FiniteSequence& y) {
  if (x.empty() && y.empty()) return 0.0;
  const long lo = std::min(x.empty() ? y.lo() : x.lo(), y.empty() ? x.lo() : y.lo());
  const long hi = std::max(x.empty() ? y.hi() : x.hi(), y.empty() ? x.hi() : y.hi());
  double m = 0.0;
  for (long n = lo; n <= hi; ++n) m = std::max(m, std::abs(x.at(n) - y.at(n)));
  return m;
}

} // namespace bmt
