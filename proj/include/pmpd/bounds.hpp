#pragma once

#include <algorithm>
#include <string>
#include <string_view>

#include "pmpd/error.hpp"
#include "pmpd/seeds.hpp"
#include "pmpd/tolerance.hpp"

namespace pmpd {

struct QDecomposition {
  int p = 0;
  int q = 0;
  friend bool operator==(const QDecomposition&, const QDecomposition&) = default;
};

/// k = p*n + q + 1 with p >= 1 and 0 <= q < n.
inline QDecomposition q_decompose(int k, int n) {
  if (n < 1 || k < n + 1)
    throw Error(ErrorCode::k_too_small, "k = " + std::to_string(k) + " needs to be at least n+1 = " +
                                            std::to_string(n + 1));
  const int p = (k - 1) / n;
  return {p, (k - 1) - p * n};
}

enum class BoundCase { q0_or_not_less, q1_min_case, q2plus_rstar };

constexpr std::string_view to_string(BoundCase c) {
  switch (c) {
    case BoundCase::q0_or_not_less: return "Q0_or_NotLess";
    case BoundCase::q1_min_case: return "Q1_MinCase";
    case BoundCase::q2plus_rstar: return "Q2plus_Rstar";
  }
  return "Unknown";
}

struct BoundReport {
  int k = 0;
  int n = 0;
  int p = 0;
  int q = 0;
  double lb = 0.0;
  BoundCase case_tag = BoundCase::q0_or_not_less;
  double rd_n1 = 0.0;
  double rd_n2 = 0.0;
  double r_n1 = 0.0;
  /// Every seed entering the selected expression is Optimal.
  bool certified = false;
  /// k >= n^2 + n + 1, where the bound is expected to be tight.
  bool tight_range_note = false;
  /// The same expression evaluated on the seeds' dual bounds. Always a
  /// proven lower bound; equals lb when certified.
  double proven_lb = 0.0;

  bool advisory() const { return !certified; }
};

/// The bound expression on given seed values, written in its monotone form
/// so that it can also be fed lower estimates of the seeds.
inline double bound_expression(int q, double rd_n1, double rd_n2, double r_n1) {
  if (q == 0) return rd_n1;
  if (q == 1) return std::max(rd_n1, std::min(rd_n2, r_n1));
  return std::max(rd_n1, r_n1);
}

inline BoundReport lower_bound(const SeedWalks& seeds, int k) {
  const int n = seeds.n;
  const auto [p, q] = q_decompose(k, n);
  BoundReport r;
  r.k = k;
  r.n = n;
  r.p = p;
  r.q = q;
  r.rd_n1 = seeds.rd_n1();
  r.rd_n2 = seeds.rd_n2();
  r.r_n1 = seeds.r_n1();
  r.tight_range_note = k >= n * n + n + 1;

  const bool less = definitely_lt(r.rd_n1, r.r_n1);
  if (less && q == 1) {
    r.case_tag = BoundCase::q1_min_case;
    r.lb = std::min(r.rd_n2, r.r_n1);
    r.certified = seeds.wd_n1.optimal() && seeds.wd_n2.optimal() && seeds.w_n1.optimal();
  } else if (less && q >= 2) {
    r.case_tag = BoundCase::q2plus_rstar;
    r.lb = r.r_n1;
    r.certified = seeds.wd_n1.optimal() && seeds.w_n1.optimal();
  } else {
    r.case_tag = BoundCase::q0_or_not_less;
    r.lb = r.rd_n1;
    r.certified = seeds.wd_n1.optimal();
  }
  r.proven_lb = r.certified ? r.lb
                            : bound_expression(q, seeds.wd_n1.cert.dual_bound, seeds.wd_n2.cert.dual_bound,
                                               seeds.w_n1.cert.dual_bound);
  return r;
}

enum class Modality { unimodal, bimodal, trimodal };

constexpr std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::unimodal: return "Unimodal";
    case Modality::bimodal: return "Bimodal";
    case Modality::trimodal: return "Trimodal";
  }
  return "Unknown";
}

constexpr int mode_count(Modality m) {
  return m == Modality::unimodal ? 1 : m == Modality::bimodal ? 2 : 3;
}

/// Classification from raw seed values; no certification check.
inline Modality classify_values(double rd_n1, double rd_n2, double r_n1) {
  if (approx_le(r_n1, rd_n1)) return Modality::unimodal;
  if (definitely_gt(r_n1, rd_n2)) return Modality::trimodal;
  return Modality::bimodal;
}

inline Modality classify_asymptotic(const SeedWalks& seeds) {
  if (!seeds.certified()) throw Error(ErrorCode::uncertified_seeds, "classification needs optimal seeds");
  return classify_values(seeds.rd_n1(), seeds.rd_n2(), seeds.r_n1());
}

}  // namespace pmpd
