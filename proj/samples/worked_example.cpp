// Seeds, bounds and constructions on the five-target example instance.

#include <iomanip>
#include <iostream>

#include "pmpd/pmpd.hpp"

int main() {
  using namespace pmpd;
  const Instance inst = from_matrix({{0, 1.415, 7.995, 6.375, 14.375, 10.225},
                                     {1.415, 0, 8, 5.46, 12.96, 9.31},
                                     {7.995, 8, 0, 10, 17.5, 16.81},
                                     {6.375, 5.46, 10, 0, 8, 14.27},
                                     {14.375, 12.96, 17.5, 8, 0, 9},
                                     {10.225, 9.31, 16.81, 14.27, 9, 0}},
                                    5);
  const SeedWalks seeds = compute_seeds(inst);
  std::cout << std::fixed << std::setprecision(2);
  std::cout << "WD(n+1) " << to_string(seeds.wd_n1.walk) << " " << seeds.rd_n1() << "\n";
  std::cout << "WD(n+2) " << to_string(seeds.wd_n2.walk) << " " << seeds.rd_n2() << "\n";
  std::cout << "W(n+1)  " << to_string(seeds.w_n1.walk) << " " << seeds.r_n1() << "\n";
  std::cout << "modality " << to_string(classify_values(seeds.rd_n1(), seeds.rd_n2(), seeds.r_n1())) << "\n";

  for (int k : {36, 37, 38}) {
    const BuildResult b = build(seeds, inst, k);
    std::cout << "k=" << k << " scheme " << to_string(b.scheme) << " ub " << b.ub << " lb " << b.bound.lb
              << " gap " << b.gap_pct << "% x=" << b.plan.x << " y=" << b.plan.y << "\n";
  }
  return 0;
}
