#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tautrel/cohft.hpp"
#include "tautrel/matrix_series.hpp"
#include "tautrel/phi_scalar.hpp"
#include "tautrel/rational.hpp"
#include "tautrel/taut_class.hpp"

namespace tautrel {

/// (6m)! / ((2m)! (3m)!)
Rational fz_coefficient(int m);

/// Coefficients of T^0..T^order of B_0 (which = 0) or B_1 (which = 1).
std::vector<Rational> b_series(int which, int order);

/// Delta_e as a series in psi', psi'' with parity marks: coeff(p, q, s1, s2)
/// multiplies zeta'^s1 zeta''^s2 psi'^p psi''^q, for p + q <= order.
class EdgeFactor {
 public:
  /// Divides the numerator by psi' + psi''; throws std::logic_error on a
  /// nonzero remainder.
  explicit EdgeFactor(int order);

  int order() const { return order_; }
  const Rational& coeff(int p, int q, int s1, int s2) const { return c_[p][q][s1][s2]; }

 private:
  using Cell = std::array<std::array<Rational, 2>, 2>;
  int order_;
  std::vector<std::vector<Cell>> c_;
};

/// R^d_{g,A} for A in {0,1}^n: the degree-d part of
/// sum_Gamma 1/(|Aut| 2^{h^1}) [Gamma, prod kappa_v prod zeta^{a_l} B_l prod Delta_e]
/// at the coefficient of prod_v zeta_v^{g(v)-1}, with zeta_v^2 = 1.
TautClass relation_class(int g, int n, const std::vector<int>& a, int d);

/// All (A, d) with A in {0,1}^n, (g - 1 + sum a) / 3 < d <= 3g - 3 + n.
std::vector<std::pair<std::vector<int>, int>> ptilde_enumerate(int g, int n);

/// Relations with entries a_i = 0, 1 mod 3 and a partition sigma: each
/// a_i >= 3 multiplies by psi_i^{floor(a_i / 3)} (lowering d accordingly),
/// and the sigma parts are appended as sigma_j + 3 and pushed forward.
TautClass extended_relation(int g, int n, const std::vector<int>& a, const std::vector<int>& sigma, int d);

/// "R g=<g> n=<n> d=<d> A=<a1,...,an>" followed by the class lines.
std::string relation_record(int g, int n, const std::vector<int>& a, int d, const TautClass& r);

/// (g - 1 + sum a) / 3 when integral.
std::optional<int> witten_degree(int g, const std::vector<int>& a);

/// W_{g,n}(A) = 2^g 1728^{-D} R^D_{g,A} for D = witten_degree, else 0: the
/// top-degree part of the shifted class.
TautClass witten_class(int g, const std::vector<int>& a);

/// The (unshifted) 3-spin CohFT given by witten_class.
class WittenCohFT : public CohFT<Rational> {
 public:
  WittenCohFT();

 protected:
  TautClass compute(int g, const std::vector<int>& args, int max_degree) const override;
};

// ---------------------------------------------------------------------------
// A_2 at the point (0, y), phi = y / 3, phi kept symbolic.

struct A2Data {
  /// Flat frame (d_x, d_y): eta antidiagonal, unit d_x, d_y . d_y = phi d_x,
  /// Euler data alpha = (1, 2/3), beta = (0, 2 phi), delta = 1/3.
  FrobeniusData<PhiScalar> flat;
  /// Structure constants in the frame (phi^{1/4} d_x, phi^{-1/4} d_y).
  std::vector<std::vector<VectorT<PhiScalar>>> hat_product;
  /// Shifted degree operator and multiplication by E in the hat frame.
  MatrixT<PhiScalar> mu;
  MatrixT<PhiScalar> xi;
  /// diag(phi^{1/4}, phi^{-1/4}): hat vector i is frame(i, i) times d_i.
  MatrixT<PhiScalar> frame;
};

A2Data a2_frobenius();

/// R-matrix in the hat frame from [R_{m+1}, xi] = (m + mu) R_m, R_0 = 1; throws
/// std::logic_error if a step has no solution.
RMatrixT<PhiScalar> a2_rmatrix_recursion(int order);
/// R-matrix in the hat frame assembled from the even and odd parts of B_0, B_1.
RMatrixT<PhiScalar> a2_rmatrix_closed(int order);
/// The hat-frame R-matrix conjugated to the flat frame.
RMatrixT<PhiScalar> to_flat_frame(const RMatrixT<PhiScalar>& hat);

/// Shifted Witten class as the unit-preserving action of the A_2 R-matrix on
/// the topological part, in the flat frame; order bounds 3g - 3 + n.
CohFTPtr<PhiScalar> shifted_witten_action(int order);

/// 2^g sum_d phi^{(3/2)(D - d)} 1728^{-d} R^d_{g,A}.
PhiTautClass shifted_witten_formula(int g, const std::vector<int>& a);

}  // namespace tautrel
