#include "matchgap/densities.hpp"

#include <algorithm>

namespace matchgap {

namespace {

double rat_d(const Rat& x) { return x.convert_to<double>(); }

double set_size_d(const ParamSet& p, int level) {
  return p.set_size_exact(level).convert_to<double>();
}

}  // namespace

double density_dense(const ParamSet& p, int level) {
  return p.dense_at(level) / set_size_d(p, level);
}

double density_dense_top_yes(const ParamSet& p) {
  return p.dense_at(1) / set_size_d(p, 1);
}

double density_dense_top_no(const ParamSet& p) {
  return (p.dense_at(1) + p.sparse) / set_size_d(p, 1);
}

double density_sparse(const ParamSet& p) {
  return p.sparse / set_size_d(p, 1);
}

double density_cross_top_yes(const ParamSet& p) {
  return p.sparse / (rat_d(Rat(1) - p.xi) * set_size_d(p, 1));
}

double density_closing_top_yes(const ParamSet& p) {
  return rat_d(p.xi) * p.dense_at(1) / set_size_d(p, 1);
}

double density_closing_top_no(const ParamSet& p) {
  return (rat_d(p.xi) * p.dense_at(1) - rat_d(Rat(1) - p.xi) * p.sparse) /
         set_size_d(p, 1);
}

double density_dummy(const ParamSet& p, int level) {
  const double base =
      rat_d(p.gamma) * p.dense_at(level) / (rat_d(p.zeta) * set_size_d(p, level));
  return level == 1 ? base : base / 2.0;
}

double density_dummy_layer(const ParamSet& p, int level, std::int64_t i) {
  return static_cast<double>(p.layers - i + 1) * density_dummy(p, level);
}

double density_dummy_self(const ParamSet& p, int level, std::int64_t i) {
  const double d = p.dense_at(level);
  const double zeta = rat_d(p.zeta);
  const double gamma = rat_d(p.gamma);
  const double n_set = set_size_d(p, level);
  if (level == 1) {
    const double coeff =
        static_cast<double>(4 * p.layers - 4 * i + 2) - rat_d(p.xi);
    const double numerator =
        d * (1.0 + gamma) + p.sparse - coeff * gamma * d / zeta;
    return numerator / (zeta * n_set);
  }
  const double coeff = static_cast<double>(2 * p.layers - 2 * i + 1);
  const double numerator = d * (1.0 + gamma) - coeff * gamma * d / zeta;
  return numerator / (zeta * n_set);
}

double max_gadget_density(const ParamSet& p, int level) {
  double best = density_dense(p, level);
  best = std::max(best, density_dummy_layer(p, level, 1));
  for (std::int64_t i = 1; i <= p.layers; ++i) {
    best = std::max(best, density_dummy_self(p, level, i));
  }
  if (level == 1) {
    best = std::max(best, density_dense_top_no(p));
    best = std::max(best, density_sparse(p));
    best = std::max(best, density_cross_top_yes(p));
    best = std::max(best, density_closing_top_yes(p));
  }
  return best;
}

double expected_degree_scale(const ParamSet& p, int level) {
  const double d = p.dense_at(level);
  const double dummies = static_cast<double>(p.layers) * rat_d(p.gamma) * d;
  if (level == 1) {
    return d + dummies + p.sparse;
  }
  return d + dummies;
}

}  // namespace matchgap
