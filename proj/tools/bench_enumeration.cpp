// benchmark: plain serial recursion vs block-partitioned OpenMP enumeration
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "paraferm/enumeration.hpp"
#include "paraferm/models.hpp"

using namespace paraferm;

namespace {

double time_of(const char* label, double& result, const std::function<double()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  result = fn();
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::printf("  %-22s %10.2f ms   Z = %.12e\n", label, ms, result);
  return ms;
}

void bench_case(const char* name, int rows, int cols, ModelId model, const WeightSet& ws) {
  std::printf("%s  (%dx%d, %s)\n", name, rows, cols, model_name(model).c_str());
  RhombicDomain dom = build_domain(rows, cols, 1.2);
  EnumOptions opt;
  opt.cap = 1000000000000ull;
  opt.prefix_faces = 3;

  double z_ref = 0, z_ser = 0, z_par = 0;
  double t_ref = time_of("reference (recursive)", z_ref,
                         [&] { return partition_function_reference(dom, model, ws, opt); });
  EnumOptions ser = opt;
  ser.parallel = false;
  double t_ser =
      time_of("blocked serial", z_ser, [&] { return partition_function(dom, model, ws, ser); });
  double t_par =
      time_of("blocked parallel", z_par, [&] { return partition_function(dom, model, ws, opt); });
  std::printf("  agreement: |ref-par| = %.3e, speedup vs reference = %.2fx, vs serial = %.2fx\n\n",
              std::abs(z_ref - z_par), t_ref / t_par, t_ser / t_par);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel path runs serially\n\n");
#endif
  bench_case("dense partition function", 4, 5, ModelId::DensePotts, dense_weights(kPi / 4, 0.3));
  bench_case("dilute partition function", 3, 4, ModelId::DiluteOn, on_integrable_weights(0.8, 1.1));
  bench_case("two-colour partition function", 3, 3, ModelId::C2Loop, c2_integrable_weights(0.9, 1.3));
  return 0;
}
