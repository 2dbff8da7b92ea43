#include "nlskdv/counterexamples.hpp"

namespace nlskdv {

namespace {

double sq(double x) { return x * x; }
double cube(double x) { return x * x * x; }

SpaceTimeSpectrum schrodinger_wave(double dtau, std::int64_t n) {
  return make_chi_spectrum(dtau, n, -sq(static_cast<double>(n)));
}

SpaceTimeSpectrum airy_wave(double dtau, std::int64_t n) {
  return make_chi_spectrum(dtau, n, cube(static_cast<double>(n)));
}

}  // namespace

void CounterexampleSpec::validate() const {
  if (N < 8 || N % 2 != 0) throw ArgumentError("CounterexampleSpec: N must be even and >= 8");
}

std::pair<SpaceTimeSpectrum, SpaceTimeSpectrum> build_counterexample(const CounterexampleSpec& spec,
                                                                     double dtau) {
  spec.validate();
  const std::int64_t N = spec.N;
  switch (spec.family) {
    case CounterexampleFamily::UV1:
      return {schrodinger_wave(dtau, (-N * N - N) / 2), airy_wave(dtau, N)};
    case CounterexampleFamily::UV2:
      return {schrodinger_wave(dtau, 0), airy_wave(dtau, N)};
    case CounterexampleFamily::DU2_1:
      return {schrodinger_wave(dtau, (-N * N + N) / 2), schrodinger_wave(dtau, (-N * N - N) / 2)};
    case CounterexampleFamily::DU2_2:
      return {schrodinger_wave(dtau, 0), schrodinger_wave(dtau, -N)};
  }
  throw ArgumentError("build_counterexample: unknown family");
}

BilinearRatio bilinear_ratio(const CounterexampleSpec& spec, double b, double dtau) {
  auto [first, second] = build_counterexample(spec, dtau);
  const bool uv =
      spec.family == CounterexampleFamily::UV1 || spec.family == CounterexampleFamily::UV2;

  BilinearRatio out;
  if (uv) {
    SpaceTimeSpectrum product = convolve_spacetime(first, second);
    out.lhs = spacetime_norm(product, {WeightFamily::Schrodinger, spec.k, b - 1.0});
    out.rhs = spacetime_norm(first, {WeightFamily::Schrodinger, spec.k, b}) *
              spacetime_norm(second, {WeightFamily::Airy, spec.s, b});
  } else {
    SpaceTimeSpectrum product =
        mode_derivative(convolve_spacetime(first, conjugate_flip(second)));
    out.lhs = spacetime_norm(product, {WeightFamily::Airy, spec.s, b - 1.0});
    out.rhs = spacetime_norm(first, {WeightFamily::Schrodinger, spec.k, b}) *
              spacetime_norm(second, {WeightFamily::Schrodinger, spec.k, b});
  }
  if (out.rhs == 0.0) throw DegenerateInputError("bilinear_ratio: vanishing right-hand side");
  out.ratio = out.lhs / out.rhs;
  return out;
}

}  // namespace nlskdv
