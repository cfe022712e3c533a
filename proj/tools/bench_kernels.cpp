// Compares the serial and OpenMP kernels (subset-DP determinant and
// intersection-lattice expansion) on synthetic inputs and checks that
// both produce identical results.

#include <chrono>
#include <cstdio>
#include <random>

#include "liespec/arrangement.hpp"
#include "liespec/mpoly.hpp"
#include "liespec/parallel.hpp"

using namespace liespec;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

PolyMatrix random_pencil_matrix(std::mt19937_64& rng, int k, int nvars) {
  TowerContext q;
  std::uniform_int_distribution<long> cdist(-4, 4);
  PolyMatrix m = make_poly_matrix(k, nvars, q);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      MultiPoly entry(nvars, q);
      for (int v = 0; v < nvars; ++v) {
        long c = cdist(rng);
        if (c == 0) continue;
        Monomial mon{std::vector<int>(nvars, 0)};
        mon.exps[v] = 1;
        entry.add_term(mon, FieldElement(Rational(c), q));
      }
      m.at(i, j) = std::move(entry);
    }
  return m;
}

std::vector<Hyperplane> random_arrangement(std::mt19937_64& rng, int count, int nvars) {
  TowerContext q;
  std::uniform_int_distribution<long> cdist(-2, 2);
  std::vector<Hyperplane> hs;
  while (static_cast<int>(hs.size()) < count) {
    std::vector<FieldElement> normal{FieldElement::one(q)};
    for (int v = 1; v < nvars; ++v) normal.emplace_back(Rational(cdist(rng)), q);
    bool dup = false;
    for (const auto& h : hs)
      if (h.normal == normal) dup = true;
    if (!dup) hs.push_back(Hyperplane{std::move(normal)});
  }
  return hs;
}

}  // namespace

int main() {
  std::mt19937_64 rng(2024);
  std::printf("threads available: %d\n\n", parallel::max_threads());
  std::printf("%-28s %10s %10s %8s %6s\n", "kernel", "serial[s]", "openmp[s]", "speedup",
              "equal");

  for (int k : {7, 8, 9}) {
    PolyMatrix m = random_pencil_matrix(rng, k, 4);
    auto t0 = std::chrono::steady_clock::now();
    MultiPoly a = det_serial(m);
    auto t1 = std::chrono::steady_clock::now();
    MultiPoly b = det_parallel(m);
    auto t2 = std::chrono::steady_clock::now();
    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    char label[64];
    std::snprintf(label, sizeof label, "det %dx%d, 4 vars", k, k);
    std::printf("%-28s %10.3f %10.3f %7.2fx %6s\n", label, ts, tp, ts / tp,
                a == b ? "yes" : "NO");
  }

  for (int count : {10, 12, 14}) {
    auto hs = random_arrangement(rng, count, 5);
    auto t0 = std::chrono::steady_clock::now();
    IntersectionLattice a = intersection_lattice_serial(hs);
    auto t1 = std::chrono::steady_clock::now();
    IntersectionLattice b = intersection_lattice_parallel(hs);
    auto t2 = std::chrono::steady_clock::now();
    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    bool equal = a.flats.size() == b.flats.size() &&
                 poincare_polynomial(a) == poincare_polynomial(b);
    char label[64];
    std::snprintf(label, sizeof label, "lattice %d planes, rank<=5", count);
    std::printf("%-28s %10.3f %10.3f %7.2fx %6s\n", label, ts, tp, ts / tp,
                equal ? "yes" : "NO");
  }
  return 0;
}
