#pragma once

#include <complex>
#include <map>
#include <vector>

#include "bmt/util.hpp"

namespace bmt {

// A finitely supported complex sequence on Z, stored as (offset, values).
// Entries outside [offset, offset+size-1] are implicitly zero.  Construction
// trims exactly-zero leading/trailing entries, so two sequences are equal as
// functions on Z iff their representations compare equal.  The empty sequence
// is normalized to offset 0.
class FiniteSequence {
 public:
  FiniteSequence() = default;
  FiniteSequence(long offset, std::vector<cplx> values);

  static FiniteSequence delta(long n, cplx v = 1.0);

  bool empty() const { return values_.empty(); }
  long size() const { return static_cast<long>(values_.size()); }
  long offset() const { return offset_; }
  // First/last index of the stored window; call only when non-empty.
  long lo() const { return offset_; }
  long hi() const { return offset_ + size() - 1; }

  cplx at(long n) const {
    const long i = n - offset_;
    if (i < 0 || i >= size()) return {0.0, 0.0};
    return values_[static_cast<size_t>(i)];
  }
  const std::vector<cplx>& values() const { return values_; }

  bool operator==(const FiniteSequence& other) const = default;

  // s(n) = (*this)(n - j)
  FiniteSequence shifted(long j) const;
  // s(n) = (*this)(-n)
  FiniteSequence reflected() const;
  FiniteSequence conjugated() const;

  double l1() const;
  double linf() const;

  friend FiniteSequence operator+(const FiniteSequence& x, const FiniteSequence& y);
  friend FiniteSequence operator-(const FiniteSequence& x, const FiniteSequence& y);
  friend FiniteSequence operator*(cplx c, const FiniteSequence& x);

  // Convenience for assembling sequences entry by entry in index order.
  class Builder {
   public:
    void add(long n, cplx v) { entries_[n] += v; }
    FiniteSequence build() const;

   private:
    std::map<long, cplx> entries_;
  };

 private:
  long offset_ = 0;
  std::vector<cplx> values_;
};

// sup-norm of the difference, over all of Z.
double sup_distance(const FiniteSequence& x, const FiniteSequence& y);

} // namespace bmt
