#pragma once

// Root systems of the classical families and the group constants that feed
// the exponent lower bound
//   delta >= (3 ht(g) dim G)^-(rank K + 1).

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kmeff::rootdata {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Family { A, B, C, D };

Family parse_family(const std::string& name);
char family_letter(Family f);

struct RootSystem {
  Family family;
  int rank;
  /// Simple roots as coordinate vectors in the standard realization
  /// (R^{rank+1} for A, R^{rank} otherwise).
  std::vector<std::vector<int>> simple_roots;
  /// Positive roots as nonnegative integer coefficient vectors over the
  /// simple roots, sorted by height then lexicographically.
  std::vector<std::vector<int>> positive_roots;

  /// Sum of coefficients of the highest root.
  int height_sum() const;
  /// Largest single coefficient appearing in the highest root.
  int max_coefficient() const;
};

/// Builds Phi^+ from the Cartan integers by the root-string algorithm. Throws
/// InvalidArgument for rank < 1, or rank < 2 for type D.
RootSystem build_root_system(Family family, int rank);

struct GroupConstants {
  int dim_g = 0;      // dim_R G
  int dim_u = 0;      // dim U = |Phi^+| for split forms
  int dim_k = 0;      // dim_R K
  int rank_k = 0;     // rank of the maximal compact subgroup
  int ht_sum = 0;     // max over Phi^+ of the coefficient sum
  int coeff_max = 0;  // max single coefficient of the highest root
};

/// Constants of SL(n, R) (root system A_{n-1}, K = SO(n)). Throws
/// InvalidArgument for n < 2.
GroupConstants group_constants(int n);

/// (6 ht dim U + 1)^{rank K}: bound on the vanishing order of the wedge
/// family over K.
BigInt order_bound_real(const GroupConstants& gc);

struct DeltaLowerBound {
  /// (3 ht dim G)^-(rank K + 1), exact.
  Rational bound;
  /// The chain of upper bounds on 1/delta, weakest last:
  ///   2 ht dim K ord  <=  2 ht dim K (6 ht dim U + 1)^{rank K}
  ///                   <=  (3 ht dim G)^{rank K + 1}.
  /// The first two coincide here because ord is replaced by its bound.
  BigInt inverse_via_order;
  BigInt inverse_via_weights;
  BigInt inverse_final;

  double as_double() const;
};

DeltaLowerBound delta_lower_bound(const GroupConstants& gc);

/// "p/q" in lowest terms.
std::string to_string(const Rational& r);

}  // namespace kmeff::rootdata
