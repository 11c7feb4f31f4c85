// Prints the eigenvalues of U_n^rho on Pi_n for a few rho, and how far the
// Lagrange-type interpolant of exp sits from classical interpolation.
#include <cstdio>

#include "genbern/genbern.hpp"

using namespace genbern;

int main() {
  const int n = 4;
  for (const char* rho_text : {"1/2", "1", "2", "10", "100"}) {
    const OperatorSpec<Rational> spec(n, Rational(rho_text));
    const auto es = eigen_system(spec);
    std::printf("rho = %-4s lambdas:", rho_text);
    for (const auto& l : es.lambdas) std::printf(" %.6f", l.get_d());

    const auto fspec = spec.cast<double>();
    const auto f = TargetFunction::exp();
    const double gap = grid_max_abs(apply_L(fspec, f).interpolant - lagrange_classical<double>(n, f));
    std::printf("   |L f - L_n f| = %.3e\n", gap);
  }
}
