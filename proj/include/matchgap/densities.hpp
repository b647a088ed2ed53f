#ifndef MATCHGAP_DENSITIES_HPP
#define MATCHGAP_DENSITIES_HPP

#include "matchgap/params.hpp"

namespace matchgap {

// Pair densities of the gadget families, as functions of the parameter
// set.  "Pair density" is the per-vertex-pair edge probability scale: a
// gadget of density p between sets X and Y places Binomial slots so that
// each (x, y) pair carries expected multiplicity p.
//
// Level 1 families (layers i in [1, r], sides j in {1, 2}):
//   dense        (B_i^j, A_i^j), i < r                      d_1 / N_1
//   dense_top    (A_r^j, B_r^j)       YES: d_1 / N_1   NO: (d_1 + s) / N_1
//   sparse       (B_i^j, A_{i-1}^j), i > 1; and (S^j, B_1^j)    s / N_1
//   cross_top    (A_r^1, A_r^2)       YES only     s / ((1 - xi) N_1)
//   closing_top  (B_r^1, B_r^2)       YES: xi d_1 / N_1
//                                     NO:  (xi d_1 - (1 - xi) s) / N_1
//   dummy        (A_i^j, D_k^{3-j}) and (B_i^j, D_k^j), k < i
//                and (D_i^1, D_k^2), i != k          gamma d_1 / (zeta N_1)
//   dummy_layer  same families at k == i      (r - i + 1) gamma d_1 / (zeta N_1)
//   dummy_self   (D_i^1, D_i^2)
//        (d_1 (1 + gamma) + s - (4r - 4i + 2 - xi) gamma d_1 / zeta) / (zeta N_1)
//
// Level ell > 1 families (dummy sides j' run over two families, so the
// per-family weight halves; no sparse/top/closing entries):
//   dense        (B_i^j, A_i^j), all i in [r]               d_ell / N_ell
//   dummy        (B_i^j, D_k^{j'}), j' in {j, j+2}, k < i
//                (A_i^j, D_k^{j'}), j' in {3-j, 5-j}, k < i
//                (D_i^j, D_k^{j'}), j in {1,3}, j' in {2,4}, i != k
//                                             gamma d_ell / (2 zeta N_ell)
//   dummy_layer  same A/B families at k == i
//                                   (r - i + 1) gamma d_ell / (2 zeta N_ell)
//   dummy_self   (D_i^j, D_i^{j+1}), j in {1, 3}
//        (d_ell (1 + gamma) - (2r - 2i + 1) gamma d_ell / zeta) / (zeta N_ell)
//
// All other set pairs carry no gadget.  Expected own-level degrees come out
// flat: d_1 + r gamma d_1 + s for every non-S vertex at level 1 (s for S),
// and d_ell + r gamma d_ell at levels above (0 for S).

double density_dense(const ParamSet& p, int level);
double density_dense_top_yes(const ParamSet& p);
double density_dense_top_no(const ParamSet& p);
double density_sparse(const ParamSet& p);
double density_cross_top_yes(const ParamSet& p);
double density_closing_top_yes(const ParamSet& p);
double density_closing_top_no(const ParamSet& p);
double density_dummy(const ParamSet& p, int level);
double density_dummy_layer(const ParamSet& p, int level, std::int64_t i);
double density_dummy_self(const ParamSet& p, int level, std::int64_t i);

// Largest pair density any gadget reaches at the given level (case-max).
double max_gadget_density(const ParamSet& p, int level);

// Expected own-level degree of a non-S vertex at the given level.
double expected_degree_scale(const ParamSet& p, int level);

}  // namespace matchgap

#endif  // MATCHGAP_DENSITIES_HPP
