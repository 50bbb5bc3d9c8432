#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqbias/characters.hpp"
#include "fqbias/counting.hpp"
#include "fqbias/lfunc.hpp"

namespace fqbias {

// Contributes 2 Re(c e^{i X gamma}), gamma in (0, pi).
struct Oscillator {
  double gamma;
  std::complex<double> c;
};

// sign * (C0 + c1 (-1)^X + sum 2 Re(c_j e^{i X gamma_j}))
struct MainTermSpec {
  FactorFunction f = FactorFunction::BigOmega;
  unsigned k = 1;
  int sign = 1;
  double C0 = 0, c1 = 0;
  std::vector<Oscillator> oscillators;
  // Imaginary parts left over in C0 and c1 after summing over characters.
  double imaginary_residual = 0;
  std::vector<std::string> warnings;
};

struct CharacterZeros {
  Character chi;
  std::complex<double> weight;  // c(chi, A, B)
  std::optional<ZeroData> zeros;
};

// Zero data of every character in the race (race_weights), computed from L-polynomials.
std::vector<CharacterZeros> race_zero_data(const ResidueSet& A, const ResidueSet& B, const Limits& limits = {});

// printed_angles: for zeros with Re(alpha) < 0 keep the upper-half-plane coefficient
// alpha/(alpha-1) but attach it to the conjugate angle.
MainTermSpec build_main_term(const std::vector<CharacterZeros>& data, FactorFunction f, unsigned k, std::uint64_t q,
                             bool printed_angles = false);
MainTermSpec build_main_term(const ResidueSet& A, const ResidueSet& B, FactorFunction f, unsigned k,
                             const Limits& limits = {});

// X gamma reduced to [0, 2 pi) with compensated arithmetic.
double reduce_phase(std::uint64_t X, double gamma);
double eval_main_term(const MainTermSpec& spec, std::uint64_t X);
// Without the sign and the constant parts: the oscillating part only.
double eval_oscillation(const MainTermSpec& spec, std::uint64_t X);

// Explicit main term for pi_{f_k}(n, chi) (n >= 2, k >= 1); real_character gives delta(chi^2) = 1.
std::complex<double> pi_fk_asymptotic(const ZeroData& zeros, bool real_character, unsigned n, unsigned k,
                                      FactorFunction f);

struct GeometricLogSum {
  std::complex<double> partial_sum;  // sum_{n<=X} alpha^n (log n)^k / n; inf when it overflows
  std::complex<double> normalized;   // X / (alpha^X (log X)^k) * partial_sum
  std::complex<double> limit;        // alpha / (alpha - 1)
};
GeometricLogSum geometric_log_sum(std::complex<double> alpha, unsigned k, std::uint64_t X);

}  // namespace fqbias
