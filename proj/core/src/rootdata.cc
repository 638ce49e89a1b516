#include "kmeff/rootdata.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "kmeff/errors.h"

namespace kmeff::rootdata {

namespace {

using Coeffs = std::vector<int>;
using Coords = std::vector<int>;

int dot(const Coords& a, const Coords& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0);
}

std::vector<Coords> simple_roots_for(Family family, int rank) {
  const int dim = family == Family::A ? rank + 1 : rank;
  std::vector<Coords> roots;
  auto unit = [dim](int i) {
    Coords v(dim, 0);
    v[i] = 1;
    return v;
  };
  const int chain = family == Family::A ? rank : rank - 1;
  for (int i = 0; i < chain; ++i) {
    Coords v = unit(i);
    v[i + 1] = -1;
    roots.push_back(v);
  }
  switch (family) {
    case Family::A:
      break;
    case Family::B:
      roots.push_back(unit(rank - 1));
      break;
    case Family::C: {
      Coords v = unit(rank - 1);
      v[rank - 1] = 2;
      roots.push_back(v);
      break;
    }
    case Family::D: {
      Coords v = unit(rank - 1);
      v[rank - 2] = 1;
      roots.push_back(v);
      break;
    }
  }
  return roots;
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "A" || name == "a") return Family::A;
  if (name == "B" || name == "b") return Family::B;
  if (name == "C" || name == "c") return Family::C;
  if (name == "D" || name == "d") return Family::D;
  throw InvalidArgument("unsupported root system family '" + name + "'");
}

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

int RootSystem::height_sum() const {
  const Coeffs& top = positive_roots.back();
  return std::accumulate(top.begin(), top.end(), 0);
}

int RootSystem::max_coefficient() const {
  const Coeffs& top = positive_roots.back();
  return *std::max_element(top.begin(), top.end());
}

RootSystem build_root_system(Family family, int rank) {
  if (rank < 1 || (family == Family::D && rank < 2)) {
    throw InvalidArgument(std::string("build_root_system: unsupported rank ") +
                          std::to_string(rank) + " for type " + family_letter(family));
  }
  RootSystem rs{family, rank, simple_roots_for(family, rank), {}};
  const auto& simple = rs.simple_roots;

  // Cartan integers <alpha_j, alpha_i^vee> = 2 (alpha_j, alpha_i) / (alpha_i, alpha_i).
  std::vector<std::vector<int>> cartan(rank, std::vector<int>(rank));
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      cartan[j][i] = 2 * dot(simple[j], simple[i]) / dot(simple[i], simple[i]);
    }
  }

  // Root strings: for beta in Phi^+ and simple alpha_i, beta + alpha_i is a
  // root iff p - <beta, alpha_i^vee> > 0, where p is the largest k with
  // beta - k alpha_i a root. Roots are generated height by height.
  std::map<Coeffs, bool> known;
  std::vector<Coeffs> layer;
  for (int i = 0; i < rank; ++i) {
    Coeffs c(rank, 0);
    c[i] = 1;
    layer.push_back(c);
    known[c] = true;
  }
  std::vector<Coeffs> all = layer;
  while (!layer.empty()) {
    std::vector<Coeffs> next;
    for (const Coeffs& beta : layer) {
      for (int i = 0; i < rank; ++i) {
        int p = 0;
        Coeffs down = beta;
        while (true) {
          --down[i];
          if (down[i] < 0 || !known.count(down)) break;
          ++p;
        }
        int pairing = 0;
        for (int j = 0; j < rank; ++j) pairing += beta[j] * cartan[j][i];
        if (p - pairing > 0) {
          Coeffs up = beta;
          ++up[i];
          if (!known.count(up)) {
            known[up] = true;
            next.push_back(up);
          }
        }
      }
    }
    std::sort(next.begin(), next.end());
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::stable_sort(all.begin(), all.end(), [](const Coeffs& a, const Coeffs& b) {
    return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
  });
  rs.positive_roots = std::move(all);
  return rs;
}

GroupConstants group_constants(int n) {
  if (n < 2) throw InvalidArgument("group_constants: SL(n, R) needs n >= 2");
  const RootSystem rs = build_root_system(Family::A, n - 1);
  GroupConstants gc;
  gc.dim_g = n * n - 1;
  gc.dim_u = static_cast<int>(rs.positive_roots.size());
  gc.dim_k = n * (n - 1) / 2;
  gc.rank_k = n / 2;
  gc.ht_sum = rs.height_sum();
  gc.coeff_max = rs.max_coefficient();
  return gc;
}

BigInt order_bound_real(const GroupConstants& gc) {
  BigInt base = BigInt(6) * gc.ht_sum * gc.dim_u + 1;
  return boost::multiprecision::pow(base, static_cast<unsigned>(gc.rank_k));
}

double DeltaLowerBound::as_double() const { return bound.convert_to<double>(); }

DeltaLowerBound delta_lower_bound(const GroupConstants& gc) {
  DeltaLowerBound out;
  const BigInt ord = order_bound_real(gc);
  out.inverse_via_order = BigInt(2) * gc.ht_sum * gc.dim_k * ord;
  out.inverse_via_weights = out.inverse_via_order;
  out.inverse_final = boost::multiprecision::pow(BigInt(3) * gc.ht_sum * gc.dim_g,
                                                 static_cast<unsigned>(gc.rank_k + 1));
  out.bound = Rational(BigInt(1), out.inverse_final);
  return out;
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace kmeff::rootdata
