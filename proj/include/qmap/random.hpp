#pragma once

#include <random>

#include "qmap/maps.hpp"

namespace qmap::rnd {

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  long small(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  TowerElem gaussian(long range, bool complex = false) {
    long re = small(-range, range);
    return complex ? TowerElem(Rational(re), Rational(small(-range, range))) : TowerElem(re);
  }
  SourceAut linear_source(long range = 3, bool complex = false) {
    for (;;) {
      SourceAut s;
      for (auto& row : s.M)
        for (auto& e : row) e = gaussian(range, complex);
      if (!s.det().is_zero()) return s;
    }
  }
  SourceAut affine_source(long range = 3, bool complex = false) {
    SourceAut s = linear_source(range, complex);
    for (auto& e : s.t) e = gaussian(range, complex);
    return s;
  }
  TargetAut linear_target(long range = 3, bool complex = false) {
    for (;;) {
      TargetAut t;
      for (auto& row : t.N)
        for (auto& e : row) e = gaussian(range, complex);
      if (!t.det().is_zero()) return t;
    }
  }
  TargetAut affine_target(long range = 3, bool complex = false) {
    TargetAut t = linear_target(range, complex);
    for (auto& e : t.u) e = gaussian(range, complex);
    return t;
  }
  std::mt19937& engine() { return gen_; }

 private:
  std::mt19937 gen_;
};

}  // namespace qmap::rnd
