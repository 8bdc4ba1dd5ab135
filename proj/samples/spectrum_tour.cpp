// Prints a few levels, the spacing asymptote and a thermodynamic point.

#include <cstdio>

#include "sdskgo/spectrumnd.hpp"
#include "sdskgo/thermo.hpp"

int main() {
  using namespace sdskgo;
  const auto cfg = OscillatorConfig::natural(3);
  const auto params = derive_params(0.005, 0.005, cfg);

  std::printf("nu = %.6f  theta = %.3g\n", nu_exponent(params, cfg), params.theta);
  for (std::int64_t n = 0; n <= 4; ++n)
    for (std::int64_t l = n % 2; l <= n; l += 2)
      std::printf("E(n=%lld, l=%lld) = %.12f\n", static_cast<long long>(n), static_cast<long long>(l),
                  energy_nd(n, l, 3, params, cfg));
  std::printf("spacing limit = %.6f\n", spacing_asymptote(params, cfg));

  const auto weak = derive_params(5e-7, 5e-7, cfg);
  const auto tp = make_thermo_params(weak, cfg);
  const double t = 20.0;
  std::printf("Z direct = %.6f  Z closed = %.6f  C = %.6f\n", partition_direct(t, tp, cfg),
              partition_highT(t, tp, cfg).value, specific_heat(t, tp, cfg));
}
