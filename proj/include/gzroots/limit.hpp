#pragma once

#include <vector>

#include "gzroots/genrep.hpp"
#include "gzroots/series.hpp"

namespace gz {

// Limit of the symmetric GZ action as q approaches a root of unity along the
// unit circle (theta = theta0 + s^2, s -> 0+). Per weight space, the GZ lattice
// is enlarged by the images of all e_l and f_l until it is stable; the
// generators are finite on the stable lattice and their s = 0 values form the
// representation. Each new basis vector is labelled by its pivot pattern.

struct LimitComponent {
  int coordinate = 0;
  int valuation = 0;
  cplx leading;
};

struct LimitState {
  int pivot = 0;
  int valuation = 0;
  bool modified = false;
  std::vector<LimitComponent> components;
};

struct LimitOptions {
  int max_iterations = 32;
  int terms = Laurent::default_terms;
};

struct LimitBuild {
  GeneratorSet rep;
  std::vector<LimitState> states;  // indexed like rep.basis
  int iterations = 0;
  int precision = 0;  // fewest known orders in s past the leading lattice term
};

LimitBuild build_limit_rep(const TopRow& top, const QPoint& q, const LimitOptions& opt = {});

}  // namespace gz
